"""Koszul complexes attached to k-invariant subspaces, their homology, and cup products.

The complex is Lambda(e_1..e_w) tensor Lambda(x_1..x_r) with the derivation
determined by d(e_i) = 0 and d(x_i) = q_i for chosen quadratics q_i in the
e-variables.  On a monomial with T = {t_1 < ... < t_k}:

    d(e_S x_T) = sum_j (-1)^(|S| + j - 1) q_(t_j) ^ e_S x_(T \\ t_j)

Homology in each degree is ker d / im d, computed by exact F_p elimination;
representatives are canonical, so repeated runs agree byte for byte.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import fplin
from .extalg import Ambient, AmbientMismatch, ExtElement, Monomial, QuadraticForm, basis, _basis_bits, _merge_sign
from .fplin import FpMatrix, Prime, as_prime

__all__ = [
    "KInvariantSubspace",
    "KoszulComplex",
    "BettiTable",
    "CohomologyClass",
    "BocksteinNotContained",
    "DegenerateSubspace",
    "DependentQuadratics",
    "NotACocycle",
    "canonicalize",
    "differential",
    "differential_matrix",
    "betti",
    "cup",
    "unp_complex",
]

HARD_SIZE_LIMIT = 22
WARN_SIZE_LIMIT = 16


class BocksteinNotContained(ValueError):
    """The subspace does not project onto all w Bockstein coordinates."""

    def __init__(self, corank: int):
        super().__init__(f"Bockstein projection has corank {corank}")
        self.corank = corank


class DegenerateSubspace(ValueError):
    """The given basis vectors are linearly dependent."""


class DependentQuadratics(ValueError):
    """The quadratics are linearly dependent (pass force=True to proceed)."""


class NotACocycle(ValueError):
    """The element is not annihilated by the differential."""


@dataclass(frozen=True)
class KInvariantSubspace:
    """A subspace of the degree-2 cohomology of (Z/p)^w, given by a basis.

    Each basis entry pairs a length-w coefficient vector over the Bockstein
    block with a quadratic form in the e-variables.  Nothing beyond shapes is
    checked here; rank conditions belong to ``canonicalize``.
    """

    w: int
    p: Prime
    basis: tuple[tuple[tuple[int, ...], ExtElement], ...]

    def __post_init__(self):
        if not isinstance(self.p, Prime):
            object.__setattr__(self, "p", as_prime(self.p))
        norm = []
        for bvec, quad in self.basis:
            bvec = tuple(int(c) % self.p for c in bvec)
            if len(bvec) != self.w:
                raise ValueError(f"Bockstein part has length {len(bvec)}, expected {self.w}")
            if quad.ambient.w != self.w or quad.ambient.p != self.p:
                raise AmbientMismatch("quadratic part lives over the wrong ambient")
            QuadraticForm.from_element(quad)
            norm.append((bvec, quad))
        object.__setattr__(self, "basis", tuple(norm))

    @property
    def v(self) -> int:
        return len(self.basis)


class KoszulComplex:
    """Lambda(e_1..e_w) tensor Lambda(x_1..x_r) with d(x_i) = q_i.

    Quadratics are rejected when linearly dependent unless force=True, in
    which case homology is still computed but the usual degree-1 dimension
    guarantee is off.  Sizes are capped at w + r <= 22 (warning above 16):
    matrix sides reach C(w+r, d).
    """

    __slots__ = ("w", "r", "p", "quadratics", "quadratics_independent", "ambient")

    def __init__(self, w: int, p, quadratics, *, force: bool = False):
        self.p = as_prime(p)
        self.w = int(w)
        quads = tuple(quadratics)
        self.r = len(quads)
        if self.w < 0:
            raise ValueError("w must be nonnegative")
        if self.w + self.r > HARD_SIZE_LIMIT:
            raise ValueError(
                f"w + r = {self.w + self.r} exceeds the hard limit {HARD_SIZE_LIMIT}"
            )
        if self.w + self.r > WARN_SIZE_LIMIT:
            warnings.warn(
                f"w + r = {self.w + self.r}: matrix sides reach C({self.w + self.r}, d); expect long runtimes",
                RuntimeWarning,
                stacklevel=2,
            )
        self.ambient = Ambient(self.w, self.r, self.p)
        self.quadratics = tuple(self._embed(q) for q in quads)
        self.quadratics_independent = self._independent()
        if not self.quadratics_independent:
            if not force:
                raise DependentQuadratics(
                    "quadratics are linearly dependent; pass force=True to compute anyway"
                )
            warnings.warn(
                "dependent quadratics: computing homology without the b_1 = w guarantee",
                RuntimeWarning,
                stacklevel=2,
            )

    def _embed(self, q: ExtElement) -> ExtElement:
        if q.ambient.w != self.w or q.ambient.p != self.p:
            raise AmbientMismatch(
                f"quadratic over (w={q.ambient.w}, p={int(q.ambient.p)}) does not match (w={self.w}, p={int(self.p)})"
            )
        terms = {(mono.e_bits, mono.x_bits): c for mono, c in q.terms()}
        return QuadraticForm(self.ambient, terms)

    def _independent(self) -> bool:
        if self.r == 0:
            return True
        pairs = _basis_bits(self.w, 0, 2)
        col = {eb: i for i, (eb, _) in enumerate(pairs)}
        m = np.zeros((self.r, len(pairs)), dtype=np.int64)
        for i, q in enumerate(self.quadratics):
            for mono, c in q.terms():
                m[i, col[mono.e_bits]] = c
        return fplin.rank(FpMatrix(m, self.p)) == self.r

    @property
    def top_degree(self) -> int:
        return self.w + self.r

    @property
    def hypothesis_met(self) -> bool:
        """Whether p clears the collapse bound p > r + 1."""
        return self.p > self.r + 1

    def __repr__(self) -> str:
        return f"KoszulComplex(w={self.w}, r={self.r}, p={int(self.p)})"


def canonicalize(k: KInvariantSubspace, *, force: bool = False) -> KoszulComplex:
    """Row-reduce a k-invariant basis into the canonical complex.

    Succeeds exactly when the projection onto the Bockstein block is
    surjective; the reduced basis is then b_1 + ..., ..., b_w + ...,
    q_1, ..., q_(v-w) with the trailing quadratics carrying no Bockstein
    part.  Raises DegenerateSubspace on a dependent input basis and
    BocksteinNotContained (with the corank) when the projection is not onto.
    """
    w, v, p = k.w, k.v, k.p
    pairs = _basis_bits(w, 0, 2)
    col = {eb: w + i for i, (eb, _) in enumerate(pairs)}
    m = np.zeros((v, w + len(pairs)), dtype=np.int64)
    for i, (bvec, quad) in enumerate(k.basis):
        m[i, :w] = bvec
        for mono, c in quad.terms():
            m[i, col[mono.e_bits]] = c
    red, piv = fplin.rref(FpMatrix(m, p))
    if len(piv) < v:
        raise DegenerateSubspace(f"basis has rank {len(piv)} < {v}")
    b_rank = sum(1 for c in piv if c < w)
    if b_rank < w:
        raise BocksteinNotContained(w - b_rank)

    # Pivots now sit in all w Bockstein columns, so rows w..v-1 have zero
    # Bockstein part and give the quadratics.
    amb0 = Ambient(w, 0, p)
    quads = []
    for i in range(w, v):
        terms = {(eb, 0): int(red.entries[i, w + j]) for j, (eb, _) in enumerate(pairs)}
        quads.append(QuadraticForm(amb0, terms))
    return KoszulComplex(w, p, quads, force=force)


def _diff_term(c: KoszulComplex, e_bits: int, x_bits: int) -> dict[tuple[int, int], int]:
    """Differential of a single monomial as a term map (not reduced mod p)."""
    out: dict[tuple[int, int], int] = {}
    w = c.w
    e_deg = e_bits.bit_count()
    comb_right_base = e_bits  # e-part of the right factor's combined mask
    m = x_bits
    pos = 1
    while m:
        low = m & -m
        t = low.bit_length()
        lead = -1 if (e_deg + pos - 1) & 1 else 1
        rem_x = x_bits ^ low
        comb_right = comb_right_base | (rem_x << w)
        for mono, qc in c.quadratics[t - 1].terms():
            qe = mono.e_bits
            if qe & e_bits:
                continue
            s = _merge_sign(qe, comb_right)
            k = (qe | e_bits, rem_x)
            out[k] = out.get(k, 0) + lead * s * qc
        m ^= low
        pos += 1
    return out


def differential(c: KoszulComplex, elem: ExtElement) -> ExtElement:
    """Apply the derivation d; raises total degree by one on each term."""
    if elem.ambient != c.ambient:
        raise AmbientMismatch(f"{elem.ambient} != {c.ambient}")
    out: dict[tuple[int, int], int] = {}
    for mono, coeff in elem.terms():
        for k, v in _diff_term(c, mono.e_bits, mono.x_bits).items():
            out[k] = out.get(k, 0) + coeff * v
    return ExtElement(c.ambient, out)


def differential_matrix(c: KoszulComplex, d: int) -> FpMatrix:
    """Matrix of d from the degree-d basis to the degree-(d+1) basis.

    Rows are indexed by the codomain basis, columns by the domain basis, both
    in the canonical order.  For d = top degree the codomain is empty.
    """
    dom = _basis_bits(c.w, c.r, d) if 0 <= d <= c.top_degree else ()
    cod = _basis_bits(c.w, c.r, d + 1) if d + 1 <= c.top_degree else ()
    index = {key: i for i, key in enumerate(cod)}
    a = np.zeros((len(cod), len(dom)), dtype=np.int64)
    for j, (eb, xb) in enumerate(dom):
        for k, v in _diff_term(c, eb, xb).items():
            v %= c.p
            if v:
                a[index[k], j] = v
    return FpMatrix(a, c.p)


@dataclass(frozen=True)
class CohomologyClass:
    """A homology class with its canonical representative cocycle."""

    degree: int
    representative: ExtElement
    table: "BettiTable"

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        return cup(self, other)

    def __str__(self) -> str:
        return f"[{self.representative}]"


class BettiTable:
    """Homology dimensions (and optionally representatives) of a complex.

    ``dims[d]`` is the dimension in degree d for d = 0..w+r.  When computed
    with representatives, ``representatives[d]`` lists canonical cocycles
    whose classes form a basis.  Compared by identity; cup products require
    both classes to come from the same table.
    """

    def __init__(self, complex: KoszulComplex, dims, representatives, matrices):
        self.complex = complex
        self.dims = tuple(int(b) for b in dims)
        self.representatives = representatives
        self._matrices = matrices
        self._rep_vectors: dict[int, np.ndarray] | None = None

    def classes(self, degree: int) -> list[CohomologyClass]:
        if self.representatives is None:
            raise ValueError("table was computed without representatives")
        if not 0 <= degree <= self.complex.top_degree:
            return []
        return [CohomologyClass(degree, r, self) for r in self.representatives[degree]]

    def unit(self) -> CohomologyClass:
        return self.class_from_cocycle(self.complex.ambient.one())

    def class_from_cocycle(self, elem: ExtElement, degree: int | None = None) -> CohomologyClass:
        """Express a cocycle in homology coordinates (reduce mod boundaries)."""
        if self.representatives is None:
            raise ValueError("table was computed without representatives")
        c = self.complex
        if elem.ambient != c.ambient:
            raise AmbientMismatch(f"{elem.ambient} != {c.ambient}")
        if elem.is_zero():
            return CohomologyClass(0 if degree is None else degree, elem, self)
        d = elem.degree()
        if d is None:
            raise ValueError("representative must be homogeneous")
        if degree is not None and degree != d:
            raise ValueError(f"element has degree {d}, expected {degree}")
        if not differential(c, elem).is_zero():
            raise NotACocycle(f"d({elem}) != 0")

        keys = _basis_bits(c.w, c.r, d)
        index = {k: i for i, k in enumerate(keys)}
        vec = np.zeros(len(keys), dtype=np.int64)
        for mono, coeff in elem.terms():
            vec[index[(mono.e_bits, mono.x_bits)]] = coeff

        reps = self.representatives[d]
        rmat = np.zeros((len(keys), len(reps)), dtype=np.int64)
        for j, r in enumerate(reps):
            for mono, coeff in r.terms():
                rmat[index[(mono.e_bits, mono.x_bits)], j] = coeff
        bmat = self._matrices[d - 1].entries if d > 0 else np.zeros((len(keys), 0), dtype=np.int64)
        sol = fplin.solve(FpMatrix(np.concatenate([rmat, bmat], axis=1), c.p), vec)
        if sol is None:
            raise NotACocycle("cocycle does not lie in the kernel of the differential")
        out = c.ambient.zero()
        for j, r in enumerate(reps):
            out = out + int(sol[j]) * r
        return CohomologyClass(d, out, self)


def _keys_to_elements(c: KoszulComplex, d: int, vectors) -> list[ExtElement]:
    keys = _basis_bits(c.w, c.r, d)
    out = []
    for v in vectors:
        out.append(ExtElement(c.ambient, {keys[i]: int(v[i]) for i in np.nonzero(v)[0]}))
    return out


def betti(c: KoszulComplex, *, with_representatives: bool = True, workers: int | None = None) -> BettiTable:
    """Homology of the complex: dims b_0..b_(w+r) and canonical representatives.

    b_d = dim ker(d_d) - rank(d_(d-1)).  Degrees are independent; pass
    ``workers`` > 1 to evaluate them in a thread pool (output is identical
    either way).
    """
    top = c.top_degree
    mats = [differential_matrix(c, d) for d in range(top + 1)]

    def degree_data(d: int):
        if with_representatives:
            ker = fplin.kernel_basis(mats[d])
            bnd = list(mats[d - 1].entries.T) if d > 0 else []
            reps = fplin.quotient_representatives(ker, bnd, c.p)
            return len(ker), reps
        return mats[d].cols - fplin.rank(mats[d]), None

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            data = list(pool.map(degree_data, range(top + 1)))
    else:
        data = [degree_data(d) for d in range(top + 1)]

    dims = []
    reps_by_degree = [] if with_representatives else None
    prev_rank = 0
    for d in range(top + 1):
        ker_dim, reps = data[d]
        dims.append(ker_dim - prev_rank)
        prev_rank = mats[d].cols - ker_dim
        if with_representatives:
            reps_by_degree.append(tuple(_keys_to_elements(c, d, reps)))
    if with_representatives:
        reps_by_degree = tuple(reps_by_degree)
    return BettiTable(c, dims, reps_by_degree, mats)


def cup(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Cup product of two classes from the same table.

    The wedge of the representatives is verified to be a cocycle and reduced
    modulo boundaries.  Degrees beyond w + r carry no classes, so the product
    is the zero class there (rather than an error).
    """
    if a.table is not b.table:
        raise ValueError("classes come from different Betti tables")
    t = a.table
    d = a.degree + b.degree
    if d > t.complex.top_degree:
        return CohomologyClass(d, t.complex.ambient.zero(), t)
    z = a.representative * b.representative
    if z.is_zero():
        return CohomologyClass(d, z, t)
    if not differential(t.complex, z).is_zero():
        raise NotACocycle("product of representatives is not a cocycle")
    return t.class_from_cocycle(z, degree=d)


def unp_complex(n: int, p, *, force: bool = False) -> KoszulComplex:
    """The universal complex for n generators: w = n and all products e_i e_j.

    Built by canonicalizing the full k-invariant subspace (Bockstein basis
    plus every quadratic e_i e_j with i < j), so r = C(n, 2).
    """
    p = as_prime(p)
    amb0 = Ambient(n, 0, p)
    entries: list[tuple[tuple[int, ...], ExtElement]] = []
    for i in range(n):
        bvec = tuple(1 if j == i else 0 for j in range(n))
        entries.append((bvec, amb0.zero()))
    zero_b = tuple(0 for _ in range(n))
    for eb, _ in _basis_bits(n, 0, 2):
        entries.append((zero_b, QuadraticForm(amb0, {(eb, 0): 1})))
    k = KInvariantSubspace(n, p, tuple(entries))
    assert k.v == n + comb(n, 2)
    return canonicalize(k, force=force)

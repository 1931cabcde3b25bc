"""Bigraded model with the primary Bockstein as a derivation (odd p > 3).

The algebra has an exterior block on degree-1 generators x_1..x_n and
x_(i,j) for i < j, and a polynomial block on degree-2 generators z_1..z_n and
z_(i,j).  The Bockstein acts by

    beta(x_k) = 0                  beta(x_(i,j)) = -x_i x_j
    beta(z_k) = 0                  beta(z_(i,j)) = z_i x_j - z_j x_i

extended as a graded derivation: beta(uv) = beta(u) v + (-1)^|u| u beta(v).

Restriction to the universal subgroup kills every x_(i,j) and every product
x_i x_j, and renames z to s in printed output; the Bockstein descends since
it preserves that ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from random import Random
from typing import Iterator, Mapping

from .extalg import _merge_sign
from .fplin import Prime, as_prime

__all__ = [
    "Generators",
    "BigradedElement",
    "BocksteinReport",
    "PrimeTooSmall",
    "bockstein",
    "restrict_to_unp",
    "verify_differential",
]


class PrimeTooSmall(ValueError):
    """The stated Bockstein formulas require p > 3."""


@dataclass(frozen=True)
class Generators:
    """Generator bookkeeping for n base indices, possibly in the restricted quotient."""

    n: int
    p: Prime
    restricted: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not isinstance(self.p, Prime):
            object.__setattr__(self, "p", as_prime(self.p))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return _pairs(self.n)

    @property
    def count(self) -> int:
        """Generators per block: n singles plus C(n, 2) pairs."""
        return self.n + len(self.pairs)

    def _zero_exps(self) -> tuple[int, ...]:
        return (0,) * self.count

    def _single(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} out of range 1..{self.n}")
        return i - 1

    def _pair(self, i: int, j: int) -> int:
        try:
            return self.n + self.pairs.index((i, j))
        except ValueError:
            raise ValueError(f"({i}, {j}) is not a pair with 1 <= i < j <= {self.n}") from None

    def x(self, i: int) -> "BigradedElement":
        return BigradedElement(self, {(1 << self._single(i), self._zero_exps()): 1})

    def x_pair(self, i: int, j: int) -> "BigradedElement":
        if self.restricted:
            return self.zero()
        return BigradedElement(self, {(1 << self._pair(i, j), self._zero_exps()): 1})

    def zeta(self, i: int) -> "BigradedElement":
        e = list(self._zero_exps())
        e[self._single(i)] = 1
        return BigradedElement(self, {(0, tuple(e)): 1})

    def zeta_pair(self, i: int, j: int) -> "BigradedElement":
        e = list(self._zero_exps())
        e[self._pair(i, j)] = 1
        return BigradedElement(self, {(0, tuple(e)): 1})

    def one(self) -> "BigradedElement":
        return BigradedElement(self, {(0, self._zero_exps()): 1})

    def zero(self) -> "BigradedElement":
        return BigradedElement(self, {})

    def scalar(self, c: int) -> "BigradedElement":
        return BigradedElement(self, {(0, self._zero_exps()): c})


@lru_cache(maxsize=64)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i, j in combinations(range(1, n + 1), 2))


def _term_degree(mask: int, exps: tuple[int, ...]) -> int:
    return mask.bit_count() + 2 * sum(exps)


def _killed(amb: Generators, mask: int) -> bool:
    """Whether the restricted quotient kills an exterior mask."""
    singles = (1 << amb.n) - 1
    return bool(mask & ~singles) or (mask & singles).bit_count() >= 2


class BigradedElement:
    """A sum of terms (exterior mask, polynomial exponent vector) -> residue."""

    __slots__ = ("ambient", "_terms")

    def __init__(self, ambient: Generators, terms: Mapping[tuple[int, tuple[int, ...]], int]):
        self.ambient = ambient
        p = ambient.p
        clean: dict[tuple[int, tuple[int, ...]], int] = {}
        for (mask, exps), c in terms.items():
            if mask >> ambient.count or len(exps) != ambient.count:
                raise ValueError("term does not fit the generator set")
            if ambient.restricted and _killed(ambient, mask):
                continue
            c %= p
            if c:
                clean[(mask, exps)] = c
        self._terms = clean

    def terms(self) -> Iterator[tuple[tuple[int, tuple[int, ...]], int]]:
        def key(t):
            mask, exps = t
            return (_term_degree(mask, exps), tuple(-e for e in exps), mask)

        for t in sorted(self._terms, key=key):
            yield t, self._terms[t]

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | None:
        degs = {_term_degree(m, e) for m, e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def _require_same(self, other: "BigradedElement") -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"mixed generator sets {self.ambient} and {other.ambient}")

    def __add__(self, other: "BigradedElement") -> "BigradedElement":
        if not isinstance(other, BigradedElement):
            return NotImplemented
        self._require_same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BigradedElement(self.ambient, out)

    def __sub__(self, other: "BigradedElement") -> "BigradedElement":
        return self + (-other)

    def __neg__(self) -> "BigradedElement":
        return BigradedElement(self.ambient, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return BigradedElement(self.ambient, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BigradedElement):
            return NotImplemented
        self._require_same(other)
        out: dict[tuple[int, tuple[int, ...]], int] = {}
        for (m1, e1), c1 in self._terms.items():
            for (m2, e2), c2 in other._terms.items():
                if m1 & m2:
                    continue
                k = (m1 | m2, tuple(a + b for a, b in zip(e1, e2)))
                out[k] = out.get(k, 0) + c1 * c2 * _merge_sign(m1, m2)
        return BigradedElement(self.ambient, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedElement):
            return NotImplemented
        return self.ambient == other.ambient and self._terms == other._terms

    def __hash__(self):
        return hash((self.ambient, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return format_bigraded(self)

    def __repr__(self) -> str:
        return f"<BigradedElement {format_bigraded(self)!r}>"


def format_bigraded(elem: BigradedElement) -> str:
    """Readable text with minimal-magnitude signed coefficients."""
    amb = elem.ambient
    p = amb.p
    pol_name = "s" if amb.restricted else "z"

    def gen_name(g: int, block: str) -> str:
        if g < amb.n:
            return f"{block}{g + 1}"
        i, j = amb.pairs[g - amb.n]
        return f"{block}({i},{j})"

    parts: list[str] = []
    for (mask, exps), c in elem.terms():
        factors = []
        for g, e in enumerate(exps):
            if e:
                name = gen_name(g, pol_name)
                factors.append(name if e == 1 else f"{name}^{e}")
        m = mask
        while m:
            low = m & -m
            factors.append(gen_name(low.bit_length() - 1, "x"))
            m ^= low
        signed = c if c <= p // 2 else c - p
        mag = abs(signed)
        body = " ".join(factors) if factors else "1"
        if factors and mag == 1:
            text = body
        else:
            text = f"{mag} {body}" if factors else str(mag)
        if not parts:
            parts.append(text if signed > 0 else f"-{text}")
        else:
            parts.append(("+ " if signed > 0 else "- ") + text)
    return " ".join(parts) if parts else "0"


def _beta_ext_gen(amb: Generators, g: int) -> dict:
    if g < amb.n:
        return {}
    i, j = amb.pairs[g - amb.n]
    return {((1 << (i - 1)) | (1 << (j - 1)), amb._zero_exps()): -1}


def _beta_pol_gen(amb: Generators, g: int) -> dict:
    if g < amb.n:
        return {}
    i, j = amb.pairs[g - amb.n]
    ei = list(amb._zero_exps())
    ei[i - 1] = 1
    ej = list(amb._zero_exps())
    ej[j - 1] = 1
    return {(1 << (j - 1), tuple(ei)): 1, (1 << (i - 1), tuple(ej)): -1}


def _mul_term_dicts(d1: dict, d2: dict) -> dict:
    out: dict = {}
    for (m1, e1), c1 in d1.items():
        for (m2, e2), c2 in d2.items():
            if m1 & m2:
                continue
            k = (m1 | m2, tuple(a + b for a, b in zip(e1, e2)))
            out[k] = out.get(k, 0) + c1 * c2 * _merge_sign(m1, m2)
    return out


def _acc(into: dict, d: dict, scale: int = 1) -> None:
    for k, c in d.items():
        into[k] = into.get(k, 0) + scale * c


def _beta_term(amb: Generators, mask: int, exps: tuple[int, ...]) -> dict:
    """Derivation recursion: split off the lowest factor and apply Leibniz."""
    if mask:
        low = mask & -mask
        g = low.bit_length() - 1
        rest = {(mask ^ low, exps): 1}
        out = _mul_term_dicts(_beta_ext_gen(amb, g), rest)
        # x_g has odd degree, so the second Leibniz summand picks up a sign
        _acc(out, _mul_term_dicts({(low, amb._zero_exps()): 1}, _beta_term(amb, mask ^ low, exps)), -1)
        return out
    g = next((k for k, e in enumerate(exps) if e), None)
    if g is None:
        return {}
    lowered = list(exps)
    lowered[g] -= 1
    rest = {(0, tuple(lowered)): 1}
    out = _mul_term_dicts(_beta_pol_gen(amb, g), rest)
    single = list(amb._zero_exps())
    single[g] = 1
    _acc(out, _mul_term_dicts({(0, tuple(single)): 1}, _beta_term(amb, 0, tuple(lowered))))
    return out


def bockstein(a: BigradedElement, p=None) -> BigradedElement:
    """Apply the Bockstein derivation; requires p > 3 per the stated formulas."""
    if p is not None and as_prime(p) != a.ambient.p:
        raise ValueError(f"element lives over p = {int(a.ambient.p)}, not {int(as_prime(p))}")
    if a.ambient.p <= 3:
        raise PrimeTooSmall("the primary Bockstein formulas hold for p > 3")
    out: dict = {}
    for (mask, exps), c in a._terms.items():
        _acc(out, _beta_term(a.ambient, mask, exps), c)
    return BigradedElement(a.ambient, out)


def restrict_to_unp(a: BigradedElement) -> BigradedElement:
    """Project to the restricted quotient: x_(i,j) -> 0 and x_i x_j -> 0.

    Polynomial generators survive (printed as s instead of z).  The Bockstein
    descends: restrict(beta(a)) = beta(restrict(a)).
    """
    amb = Generators(a.ambient.n, a.ambient.p, restricted=True)
    return BigradedElement(amb, a._terms)


@dataclass(frozen=True)
class BocksteinReport:
    n: int
    p: int
    max_degree: int
    monomials_checked: int
    beta_squared_violations: int
    leibniz_pairs: int
    leibniz_violations: int
    seed: int


def _monomials_up_to(amb: Generators, d: int) -> list[tuple[int, tuple[int, ...]]]:
    out = []
    count = amb.count

    def exp_vectors(budget: int, length: int):
        if length == 0:
            yield ()
            return
        for first in range(budget + 1):
            for rest in exp_vectors(budget - first, length - 1):
                yield (first,) + rest

    for mask in range(1 << count):
        ext_deg = mask.bit_count()
        if ext_deg > d:
            continue
        for exps in exp_vectors((d - ext_deg) // 2, count):
            out.append((mask, exps))
    return out


def verify_differential(
    n: int, p, max_degree: int, *, leibniz_pairs: int = 100, seed: int = 0
) -> BocksteinReport:
    """Exhaustively check beta(beta(m)) = 0 on monomials of degree <= max_degree,
    plus the Leibniz rule on seeded random homogeneous pairs."""
    p = as_prime(p)
    if p <= 3:
        raise PrimeTooSmall("the primary Bockstein formulas hold for p > 3")
    amb = Generators(n, p)
    monos = _monomials_up_to(amb, max_degree)
    bad_square = 0
    for mask, exps in monos:
        m = BigradedElement(amb, {(mask, exps): 1})
        if not bockstein(bockstein(m)).is_zero():
            bad_square += 1

    rng = Random(seed)
    by_degree: dict[int, list] = {}
    for mask, exps in monos:
        by_degree.setdefault(_term_degree(mask, exps), []).append((mask, exps))
    degrees = sorted(by_degree)
    bad_leibniz = 0
    for _ in range(leibniz_pairs):
        def random_homogeneous():
            d = rng.choice(degrees)
            pool = by_degree[d]
            picks = rng.sample(pool, k=min(len(pool), rng.randint(1, 3)))
            return BigradedElement(amb, {t: rng.randrange(1, p) for t in picks}), d

        u, du = random_homogeneous()
        v, _ = random_homogeneous()
        lhs = bockstein(u * v)
        rhs = bockstein(u) * v + (u * bockstein(v) if du % 2 == 0 else -(u * bockstein(v)))
        if lhs != rhs:
            bad_leibniz += 1

    return BocksteinReport(
        n=n,
        p=int(p),
        max_degree=max_degree,
        monomials_checked=len(monos),
        beta_squared_violations=bad_square,
        leibniz_pairs=leibniz_pairs,
        leibniz_violations=bad_leibniz,
        seed=seed,
    )

"""Exact dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced to [0, p).  Since the
modulus is capped below 2**31, every product of two residues fits in int64
and no intermediate value ever overflows.  All pivoting is deterministic
(first nonzero entry, columns scanned left to right), so kernel bases and
quotient representatives are reproducible byte for byte.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Prime",
    "FpMatrix",
    "BoundaryNotCycle",
    "rank",
    "kernel_basis",
    "quotient_representatives",
    "rref",
    "solve",
]

_MODULUS_CAP = 1 << 31


class BoundaryNotCycle(ValueError):
    """A claimed boundary vector lies outside the span of the cycles."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime(int):
    """An odd prime below 2**31, validated by trial division."""

    def __new__(cls, value: int) -> "Prime":
        v = int(value)
        if v >= _MODULUS_CAP:
            raise ValueError(f"modulus {v} exceeds the 2**31 cap")
        if v < 3 or v % 2 == 0 or not _is_prime(v):
            raise ValueError(f"{v} is not an odd prime")
        return super().__new__(cls, v)


def as_prime(p) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


class FpMatrix:
    """Immutable dense matrix over F_p.

    ``entries`` is a read-only (rows x cols) int64 view with residues in
    [0, p).  Zero rows or columns are fine; both dimensions may be 0.
    """

    __slots__ = ("p", "_a")

    def __init__(self, entries, p):
        self.p = as_prime(p)
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            if a.ndim == 1 and a.size == 0:
                a = a.reshape(0, 0)
            else:
                raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        np.mod(a, self.p, out=a)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int, p) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def entries(self) -> np.ndarray:
        return self._a

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self._a.shape == other._a.shape and bool(
            np.array_equal(self._a, other._a)
        )

    def __repr__(self) -> str:
        return f"FpMatrix({self._a.tolist()!r}, p={int(self.p)})"


def _echelon(a: np.ndarray, p: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a copy of ``a`` mod p.

    Deterministic pivoting: columns scanned left to right, pivot is the first
    nonzero entry at or below the current row.  ``reduced`` eliminates above
    the pivots as well (RREF); otherwise only below (enough for ranks).
    """
    R = a.copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        if inv != 1:
            R[r] = R[r] * inv % p
        if reduced:
            rows = np.nonzero(R[:, c])[0]
            rows = rows[rows != r]
        else:
            rows = r + 1 + np.nonzero(R[r + 1:, c])[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(R[rows, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(m: FpMatrix) -> int:
    """Rank of the matrix over F_p."""
    return len(_echelon(m.entries, m.p, reduced=False)[1])


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    R, piv = _echelon(m.entries, m.p, reduced=True)
    return FpMatrix(R, m.p), piv


def kernel_basis(m: FpMatrix) -> list[np.ndarray]:
    """Canonical basis of the right kernel {v : m @ v = 0 mod p}.

    One vector per free column of the RREF, in increasing column order; the
    free coordinate is set to 1 and the pivot coordinates back-substituted.
    Exactly cols - rank vectors are returned.
    """
    R, piv = _echelon(m.entries, m.p, reduced=True)
    p = m.p
    n = m.cols
    pivset = set(piv)
    out: list[np.ndarray] = []
    for f in range(n):
        if f in pivset:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for k, c in enumerate(piv):
            v[c] = (-int(R[k, f])) % p
        out.append(v)
    return out


def solve(m: FpMatrix, b) -> np.ndarray | None:
    """One solution of m @ x = b, or None if the system is inconsistent.

    The returned solution is canonical: free variables are set to 0.
    """
    rhs = np.mod(np.asarray(b, dtype=np.int64).reshape(-1, 1), m.p)
    if rhs.shape[0] != m.rows:
        raise ValueError(f"rhs length {rhs.shape[0]} != rows {m.rows}")
    aug = np.concatenate([m.entries, rhs], axis=1)
    R, piv = _echelon(aug, m.p, reduced=True)
    if piv and piv[-1] == m.cols:
        return None
    x = np.zeros(m.cols, dtype=np.int64)
    for k, c in enumerate(piv):
        x[c] = R[k, m.cols]
    return x


class _Echelon:
    """Incremental echelon basis used for span membership and reduction."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows: list[np.ndarray] = []   # each with leading coefficient 1
        self.lead: list[int] = []          # pivot column per row, increasing insert order

    def reduce(self, v: np.ndarray) -> np.ndarray:
        w = np.mod(v, self.p)
        for row, c in zip(self.rows, self.lead):
            f = int(w[c])
            if f:
                w = (w - f * row) % self.p
        return w

    def add(self, v: np.ndarray) -> bool:
        """Reduce v against the basis; absorb the remainder.  True if new."""
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        inv = pow(int(w[c]), self.p - 2, self.p)
        if inv != 1:
            w = w * inv % self.p
        self.rows.append(w)
        self.lead.append(c)
        return True


def quotient_representatives(cycles, boundaries, p) -> list[np.ndarray]:
    """Vectors completing span(boundaries) to span(cycles).

    Requires span(boundaries) <= span(cycles); raises BoundaryNotCycle
    otherwise.  Exactly dim span(cycles) - dim span(boundaries) vectors come
    back, each nonzero modulo span(boundaries), produced deterministically by
    reducing the cycle list in order against a growing echelon basis.
    """
    p = as_prime(p)
    cyc = [np.mod(np.asarray(v, dtype=np.int64), p) for v in cycles]
    bnd = [np.mod(np.asarray(v, dtype=np.int64), p) for v in boundaries]
    lengths = {v.shape[0] for v in cyc} | {v.shape[0] for v in bnd}
    if len(lengths) > 1:
        raise ValueError(f"mixed vector lengths {sorted(lengths)}")
    if not lengths:
        return []
    n = lengths.pop()

    cyc_span = _Echelon(n, p)
    for v in cyc:
        cyc_span.add(v)
    bnd_span = _Echelon(n, p)
    for i, v in enumerate(bnd):
        if cyc_span.reduce(v).any():
            raise BoundaryNotCycle(f"boundary {i} is not in the span of the cycles")
        bnd_span.add(v)

    reps: list[np.ndarray] = []
    for v in cyc:
        w = bnd_span.reduce(v)
        if w.any():
            reps.append(w)
            bnd_span.add(w)
    return reps

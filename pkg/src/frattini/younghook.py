"""Homology dimensions of the universal extensions via symmetric Young diagrams.

The degree-i dimension for n generators is a sum of hook-content evaluations

    a_i = sum over f + g = i, over self-conjugate diagrams Y with f + 2g
          boxes and f diagonal hooks, of  prod_{(s,t) in Y} (n + t - s) / h(s, t)

where h is the hook length.  Self-conjugate diagrams with f diagonal boxes
biject with partitions into f distinct odd parts (unfold the diagonal hooks),
which is how enumeration works here.  Everything is exact: the product is a
Fraction whose denominator must cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "SelfConjugatePartition",
    "NonIntegerResult",
    "enumerate_self_conjugate",
    "hook_content_dimension",
    "unp_betti",
    "closed_form",
]

DEFAULT_N_CAP = 8


class NonIntegerResult(ArithmeticError):
    """The hook-content product failed to be an integer (internal check)."""


def _conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for q in parts if q >= j) for j in range(1, parts[0] + 1))


@dataclass(frozen=True)
class SelfConjugatePartition:
    """A partition equal to its transpose; parts weakly decreasing."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(q) for q in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(q <= 0 for q in parts) or any(
            parts[i] < parts[i + 1] for i in range(len(parts) - 1)
        ):
            raise ValueError(f"{parts} is not a partition")
        if _conjugate(parts) != parts:
            raise ValueError(f"{parts} is not self-conjugate")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def diagonal(self) -> int:
        return sum(1 for i, q in enumerate(self.parts, 1) if q >= i)


def _distinct_odd(total: int, count: int, max_part: int):
    """Partitions of ``total`` into ``count`` distinct odd parts, descending."""
    if count == 0:
        if total == 0:
            yield ()
        return
    smallest_rest = (count - 1) ** 2  # 1 + 3 + ... + (2(count-1) - 1)
    top = min(max_part, total - smallest_rest)
    if top % 2 == 0:
        top -= 1
    for o in range(top, 2 * count - 3, -2):
        for rest in _distinct_odd(total - o, count - 1, o - 2):
            yield (o,) + rest


def _fold(odds: tuple[int, ...]) -> tuple[int, ...]:
    """Fold distinct odd hook lengths into a self-conjugate partition."""
    f = len(odds)
    arms = [(o - 1) // 2 for o in odds]
    rows = [i + arms[i - 1] for i in range(1, f + 1)]
    for j in range(f + 1, (1 + arms[0]) + 1 if f else 1):
        rows.append(sum(1 for i in range(f) if (i + 1) + arms[i] >= j))
    return tuple(rows)


def enumerate_self_conjugate(size: int, diagonal: int) -> list[SelfConjugatePartition]:
    """All self-conjugate partitions of ``size`` with the given diagonal length.

    Deterministic order: parts tuples descending lexicographically.
    """
    if size < 0 or diagonal < 0:
        raise ValueError("size and diagonal must be nonnegative")
    out = [SelfConjugatePartition(_fold(odds)) for odds in _distinct_odd(size, diagonal, size)]
    out.sort(key=lambda sc: sc.parts, reverse=True)
    return out


def hook_content_dimension(part: SelfConjugatePartition, n: int) -> int:
    """prod over cells of (n + column - row) / hook(cell), exactly.

    Vanishes whenever the diagram has more than n rows.  Raises
    NonIntegerResult if the denominator fails to cancel (never expected).
    """
    parts = part.parts
    if len(parts) > n:
        return 0
    conj = _conjugate(parts)
    acc = Fraction(1)
    for s, row_len in enumerate(parts, 1):
        for t in range(1, row_len + 1):
            hook = (row_len - t) + (conj[t - 1] - s) + 1
            acc *= Fraction(n + t - s, hook)
    if acc.denominator != 1:
        raise NonIntegerResult(f"hook-content product {acc} for {parts}, n={n}")
    return int(acc)


def unp_betti(n: int, *, n_cap: int = DEFAULT_N_CAP) -> list[int]:
    """Dimensions a_0..a_m for the universal extension on n generators, m = C(n+1, 2).

    Capped at n <= n_cap (default 8) since the diagram count grows quickly;
    pass a larger cap explicitly to go beyond.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > n_cap:
        raise ValueError(f"n = {n} exceeds the cap {n_cap}; pass n_cap explicitly to override")
    m = comb(n + 1, 2)
    out = [0] * (m + 1)
    out[0] = 1
    for i in range(1, m + 1):
        total = 0
        for f in range(0, i + 1):
            g = i - f
            for sc in enumerate_self_conjugate(f + 2 * g, f):
                total += hook_content_dimension(sc, n)
        out[i] = total
    return out


def closed_form(n: int, i: int) -> int:
    """Known closed forms for the first few dimensions (i <= 3)."""
    if i == 0:
        return 1
    if i == 1:
        return n
    if i == 2:
        return n * (n + 1) * (n - 1) // 3
    if i == 3:
        return n * (n * n - 1) * (3 * n - 4) * (n + 3) // 60
    raise ValueError(f"no closed form wired in for i = {i}")

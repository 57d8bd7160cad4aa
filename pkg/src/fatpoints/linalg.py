"""Exact rank and kernel computations over the rationals.

The exact path clears denominators row by row and runs fraction-free
(Bareiss) elimination on integers.  The modular path reduces the cleared
integer rows modulo primes below 2**16 and eliminates with numpy int64
arithmetic; products stay below 2**32 so nothing overflows.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

EXACT = "exact"
MODULAR = "modular"
MULTIMODULAR = "multimodular"
MULTIMODULAR_CERTIFY = "multimodular-certify"
STRATEGIES = (EXACT, MODULAR, MULTIMODULAR, MULTIMODULAR_CERTIFY)

PRIME_LOW, PRIME_HIGH = 2**15, 2**16


class InvalidArgument(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for d in range(3, r + 1, 2):
        if n % d == 0:
            return False
    return True


def random_primes(count: int, seed: int = 0, low: int = PRIME_LOW, high: int = PRIME_HIGH) -> list[int]:
    """Distinct primes drawn uniformly from [low, high), reproducible in ``seed``."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        c = rng.randrange(low, high) | 1
        if c < high and _is_prime(c) and c not in out:
            out.append(c)
    return sorted(out)


DEFAULT_PRIMES = tuple(random_primes(2, seed=20170))


class ExactMatrix:
    """Dense row-major matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        entries = [e if isinstance(e, Fraction) else Fraction(e) for e in entries]
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise InvalidArgument(f"expected {rows}x{cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise InvalidArgument("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    def row(self, i: int) -> list[Fraction]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)])

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise InvalidArgument("vector length mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class RankResult:
    rank: int
    strategy: str
    primes_used: tuple[int, ...] = ()
    warnings: tuple[str, ...] = field(default=())

    @property
    def certified(self) -> bool:
        return self.strategy in (EXACT, "multimodular-certified")


def integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Rows of ``M`` scaled by their denominator lcm; rank and kernel are unchanged."""
    out = []
    for r in M.to_rows():
        den = 1
        for e in r:
            den = math.lcm(den, e.denominator)
        row = [e.numerator * (den // e.denominator) for e in r]
        g = 0
        for e in row:
            g = math.gcd(g, e)
        if g > 1:
            row = [e // g for e in row]
        out.append(row)
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free two-step elimination.

    ``rows`` is consumed.  Every division is exact by Sylvester's identity,
    so entries stay equal to minors of the input.
    """
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    prev = 1
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        pc = p[c]
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            rc = r[c]
            if rc:
                rows[i] = [(pc * r[j] - rc * p[j]) // prev if j > c else 0 for j in range(ncols)]
            elif pc != prev:
                rows[i] = [(pc * r[j]) // prev if j > c else 0 for j in range(ncols)]
        prev = pc
        rank += 1
        if rank == len(rows):
            break
    return rank


def modular_rank(rows: list[list[int]], p: int) -> int:
    """Rank of the integer matrix ``rows`` reduced modulo the prime ``p``."""
    if not rows or not rows[0]:
        return 0
    A = np.array([[e % p for e in r] for r in rows], dtype=np.int64)
    nr, nc = A.shape
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        nz = np.nonzero(A[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank, c:] = (A[rank, c:] * inv) % p
        below = A[rank + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + rank + 1
            A[idx, c:] = (A[idx, c:] - np.outer(below[mask], A[rank, c:])) % p
        rank += 1
    return rank


def _check_primes(primes: Sequence[int]) -> tuple[int, ...]:
    primes = tuple(int(p) for p in primes)
    if len(set(primes)) != len(primes):
        raise InvalidArgument("repeated primes")
    for p in primes:
        if p == 2 or not _is_prime(p):
            raise InvalidArgument(f"{p} is not an odd prime")
    return primes


def _merge(ranks: dict[int, int]) -> int:
    # deterministic merge: primes ascending, maximum rank
    return max(ranks[p] for p in sorted(ranks))


def rank(M: ExactMatrix, strategy: str = MULTIMODULAR_CERTIFY, primes: Sequence[int] | None = None) -> RankResult:
    """Rank of ``M`` over the rationals.

    ``modular`` and ``multimodular`` return lower bounds (exact unless a
    chosen prime divides every maximal nonzero minor).  ``multimodular-certify``
    returns the true rank: a modular rank equal to min(rows, cols) is already
    proven, anything lower is escalated to exact elimination.
    """
    if strategy not in STRATEGIES:
        raise InvalidArgument(f"unknown strategy {strategy!r}")
    if primes is not None:
        primes = _check_primes(primes)
    if M.rows == 0 or M.cols == 0:
        return RankResult(0, EXACT if strategy == EXACT else _label(strategy, True), ())
    rows = integer_rows(M)
    if strategy == EXACT:
        return RankResult(bareiss_rank(rows), EXACT)
    if strategy == MODULAR:
        ps = primes[:1] if primes else DEFAULT_PRIMES[:1]
        return RankResult(modular_rank(rows, ps[0]), MODULAR, tuple(ps))
    ps = tuple(sorted(primes)) if primes else DEFAULT_PRIMES
    ranks = {p: modular_rank(rows, p) for p in ps}
    r = _merge(ranks)
    full = min(M.rows, M.cols)
    warnings: tuple[str, ...] = ()
    if strategy == MULTIMODULAR_CERTIFY:
        if r == full:
            return RankResult(r, "multimodular-certified", ps)
        return RankResult(bareiss_rank(rows), "multimodular-certified", ps)
    if len(set(ranks.values())) > 1:
        warnings = (f"modular ranks disagree {dict(sorted(ranks.items()))}; reporting maximum",)
    strat = "multimodular-certified" if r == full else "multimodular-heuristic"
    return RankResult(r, strat, ps, warnings)


def _label(strategy: str, certified: bool) -> str:
    if strategy in (MULTIMODULAR, MULTIMODULAR_CERTIFY):
        return "multimodular-certified"
    return strategy


def rref(M: ExactMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns.

    Elimination runs on integer rows kept primitive by gcd division; the
    final rows are divided by their pivots.
    """
    rows = [r for r in integer_rows(M) if any(r)]
    ncols = M.cols
    pivots: list[int] = []
    rk = 0
    for c in range(ncols):
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk]
        pc = p[c]
        for i in range(len(rows)):
            if i == rk or not rows[i][c]:
                continue
            r = rows[i]
            rc = r[c]
            new = [pc * a - rc * b for a, b in zip(r, p)]
            g = 0
            for e in new:
                g = math.gcd(g, e)
            if g > 1:
                new = [e // g for e in new]
            rows[i] = new
        pivots.append(c)
        rk += 1
        if rk == len(rows):
            break
    rows = rows[:rk]
    out = []
    for r, c in zip(rows, pivots):
        pc = r[c]
        out.append([Fraction(e, pc) for e in r])
    return out, pivots


def kernel_basis(M: ExactMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column.

    Free columns are taken left to right and each vector is scaled so its
    first nonzero entry is 1.
    """
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, c in zip(R, pivots):
            if c < f:
                v[c] = -r[f]
        basis.append(normalize_vector(v))
    return basis


def normalize_vector(v: Sequence[Fraction]) -> list[Fraction]:
    for e in v:
        if e:
            return [x / e for x in v]
    return list(v)


def row_space_basis(vectors: Sequence[Sequence[Fraction]], length: int) -> list[list[Fraction]]:
    """Canonical basis (RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    R, _ = rref(ExactMatrix.from_rows(vectors, length))
    return R


def span_rank(vectors: Sequence[Sequence[Fraction]], length: int, strategy: str = MULTIMODULAR_CERTIFY) -> int:
    if not vectors:
        return 0
    return rank(ExactMatrix.from_rows(vectors, length), strategy).rank

"""Forms vanishing to prescribed order at points: conditions matrices,
initial degrees of symbolic powers, Hilbert functions and graded pieces.

A form of degree t lies in the m-th symbolic power of the ideal of X
exactly when its coefficient vector is in the kernel of the conditions
matrix B_{m,t}, whose rows are the derivatives of order <= m-1 of the
degree-t monomials evaluated at each point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .linalg import ExactMatrix, RankResult
from .points import PointConfig, evaluation_matrix
from .polys import dim_forms, monomials, monomials_upto, multiply, times_monomial

HOMOGENEOUS = "homogeneous"
AFFINE = "affine"
MODES = (HOMOGENEOUS, AFFINE)


class InsufficientGenerators(ValueError):
    pass


@dataclass
class ConditionsMatrix:
    matrix: ExactMatrix
    m: int
    t: int
    mode: str
    column_index: tuple[tuple[int, ...], ...]
    row_index: tuple[tuple[int, tuple[int, ...]], ...]
    charts: tuple[int, ...] = ()


def _scaled_derivative(alpha: Sequence[int], beta: Sequence[int], coords: Sequence[int]) -> int:
    # binom(alpha, beta) * coords^(alpha - beta); zero unless beta <= alpha
    v = 1
    for a, b, c in zip(alpha, beta, coords):
        if b > a:
            return 0
        v *= math.comb(a, b)
        if a > b:
            v *= c ** (a - b)
    return v


def chart_of(coords: Sequence[int]) -> int:
    """Index of the coordinate of largest absolute value, lowest index on ties."""
    best = 0
    for i, c in enumerate(coords):
        if abs(c) > abs(coords[best]):
            best = i
    return best


def conditions_matrix(cfg: PointConfig, m: int, t: int, mode: str = AFFINE) -> ConditionsMatrix:
    """The matrix B_{m,t}; its kernel is the degree-t part of I_X^(m).

    Homogeneous mode uses every derivative of order <= m-1 in all N+1
    variables, scaled by 1/beta! so that entries are binom(alpha, beta) *
    p^(alpha - beta).  Affine mode dehomogenizes at the chart of each point
    and uses the N affine variables; each row is multiplied by a power of
    the chart coordinate to keep entries integral.
    """
    if m < 1 or t < 0:
        raise linalg.InvalidArgument("need m >= 1 and t >= 0")
    if mode not in MODES:
        raise linalg.InvalidArgument(f"unknown mode {mode!r}")
    N = cfg.N
    cols = monomials(N + 1, t)
    rows: list[list[int]] = []
    row_index = []
    charts = []
    if mode == HOMOGENEOUS:
        betas = monomials_upto(N + 1, m - 1)
        for i, p in enumerate(cfg.points):
            for b in betas:
                rows.append([_scaled_derivative(a, b, p.coords) for a in cols])
                row_index.append((i, b))
    else:
        betas = monomials_upto(N, m - 1)
        for i, p in enumerate(cfg.points):
            j = chart_of(p.coords)
            charts.append(j)
            lam_j = p.coords[j]
            others = [c for k, c in enumerate(p.coords) if k != j]
            for b in betas:
                row = []
                for a in cols:
                    a_aff = a[:j] + a[j + 1:]
                    v = _scaled_derivative(a_aff, b, others)
                    if v and a[j]:
                        v *= lam_j ** a[j]
                    row.append(v)
                rows.append(row)
                row_index.append((i, b))
    M = ExactMatrix(len(rows), len(cols), [e for r in rows for e in r])
    return ConditionsMatrix(M, m, t, mode, cols, tuple(row_index), tuple(charts))


def conditions_shape(n: int, N: int, m: int, t: int, mode: str = AFFINE) -> tuple[int, int]:
    per_point = math.comb(m + N, m - 1) if mode == HOMOGENEOUS else math.comb(m - 1 + N, N)
    return n * per_point, math.comb(t + N, N)


@dataclass
class AlphaResult:
    m: int
    alpha: int
    certified: bool
    certificate: dict
    warnings: list[str] = field(default_factory=list)


def _pigeonhole_degree(n: int, N: int, m: int) -> int:
    # least t with fewer conditions than monomials (affine row count; same kernel)
    rows = n * math.comb(m - 1 + N, N)
    t = 0
    while math.comb(t + N, N) <= rows:
        t += 1
    return t


def _rank_record(r: RankResult) -> dict:
    return {"rank": r.rank, "strategy": r.strategy, "primes": list(r.primes_used)}


def alpha_symbolic(cfg: PointConfig, m: int, strategy: str = linalg.MULTIMODULAR_CERTIFY,
                   mode: str = AFFINE, alpha1: int | None = None) -> AlphaResult:
    """Least degree of a nonzero form vanishing to order ``m`` at every point.

    Kernel nontriviality is monotone in the degree, so the search is a
    binary search on [m, upper], where upper is the smaller of m*alpha_1 and
    the first degree with more monomials than conditions.  Full column rank
    found modulo a prime is already a proof, so the search runs on modular
    ranks and only the final degree is checked with ``strategy``.
    """
    if m < 1:
        raise linalg.InvalidArgument("m must be >= 1")
    N, n = cfg.N, cfg.n
    upper = _pigeonhole_degree(n, N, m)
    upper_reason = "pigeonhole"
    warnings: list[str] = []
    alpha1_certified = True
    if m > 1:
        if alpha1 is None:
            a1 = alpha_symbolic(cfg, 1, strategy, mode)
            alpha1, alpha1_certified = a1.alpha, a1.certified
            warnings.extend(a1.warnings)
        if m * alpha1 < upper:
            upper, upper_reason = m * alpha1, "power of a minimal-degree form"

    probe = linalg.EXACT if strategy == linalg.EXACT else linalg.MULTIMODULAR

    def full_rank(t: int) -> tuple[bool, RankResult | None]:
        rows, cols = conditions_shape(n, N, m, t, mode)
        if rows < cols:
            return False, None
        r = linalg.rank(conditions_matrix(cfg, m, t, mode).matrix, probe)
        return r.rank == cols, r

    lo, hi = m, upper
    while True:
        while lo < hi:
            mid = (lo + hi) // 2
            if full_rank(mid)[0]:
                lo = mid + 1
            else:
                hi = mid
        t = lo
        rows, cols = conditions_shape(n, N, m, t, mode)
        if t == upper or rows < cols:
            at = None
            kernel_dim = f">= {max(cols - rows, 1)}"
            reason = "pigeonhole" if rows < cols else upper_reason
            certified = rows < cols or alpha1_certified
            break
        at = linalg.rank(conditions_matrix(cfg, m, t, mode).matrix, strategy)
        warnings.extend(at.warnings)
        if at.rank < cols:
            kernel_dim = cols - at.rank
            reason = "rank"
            certified = at.certified
            break
        lo, hi = t + 1, upper
    cert: dict = {"degree": t, "columns": cols, "kernel_dim": kernel_dim, "reason": reason,
                  "upper_bound": upper, "upper_bound_reason": upper_reason}
    if at is not None:
        cert["rank_at_alpha"] = _rank_record(at)
    if t - 1 >= 0:
        if t - 1 < m:
            cert["below"] = {"degree": t - 1, "full_rank": True, "reason": "degree below multiplicity"}
        else:
            ok, r = full_rank(t - 1)
            if not ok:
                raise RuntimeError(f"search invariant broken at degree {t - 1}")
            cert["below"] = {"degree": t - 1, "full_rank": True, **_rank_record(r)}
    if not certified:
        warnings.append(f"alpha_{m} rests on an uncertified rank computation")
    return AlphaResult(m, t, certified, cert, warnings)


def has_kernel(cfg: PointConfig, m: int, t: int, strategy: str = linalg.MULTIMODULAR_CERTIFY,
               mode: str = AFFINE) -> bool:
    rows, cols = conditions_shape(cfg.n, cfg.N, m, t, mode)
    if rows < cols:
        return True
    return linalg.rank(conditions_matrix(cfg, m, t, mode).matrix, strategy).rank < cols


@dataclass
class AlphaTable:
    label: str
    N: int
    entries: dict[int, AlphaResult] = field(default_factory=dict)

    def alpha(self, m: int) -> int:
        return self.entries[m].alpha

    def values(self) -> dict[int, int]:
        return {m: r.alpha for m, r in sorted(self.entries.items())}

    def violations(self) -> list[str]:
        """Breaches of m <= alpha_m <= m*alpha_1 and alpha_{qt} <= q*alpha_t."""
        out = []
        vals = self.values()
        a1 = vals.get(1)
        for m, a in vals.items():
            if a < m:
                out.append(f"alpha_{m}={a} < {m}")
            if a1 is not None and a > m * a1:
                out.append(f"alpha_{m}={a} > {m}*alpha_1")
        for t, q in itertools.product(vals, repeat=2):
            if q * t in vals and vals[q * t] > q * vals[t]:
                out.append(f"alpha_{q * t}={vals[q * t]} > {q}*alpha_{t}")
        return out


def alpha_table(cfg: PointConfig, m_max: int, strategy: str = linalg.MULTIMODULAR_CERTIFY,
                mode: str = AFFINE) -> AlphaTable:
    table = AlphaTable(cfg.label, cfg.N)
    a1 = alpha_symbolic(cfg, 1, strategy, mode)
    table.entries[1] = a1
    for m in range(2, m_max + 1):
        table.entries[m] = alpha_symbolic(cfg, m, strategy, mode, alpha1=a1.alpha)
    return table


@dataclass
class GradedBasis:
    degree: int
    nvars: int
    forms: list[list[Fraction]]

    @property
    def dim(self) -> int:
        return len(self.forms)


def graded_piece(cfg: PointConfig, m: int, d: int, mode: str = AFFINE) -> GradedBasis:
    """Basis of the degree-d part of I_X^(m)."""
    if d < m:
        return GradedBasis(d, cfg.N + 1, [])
    return GradedBasis(d, cfg.N + 1, linalg.kernel_basis(conditions_matrix(cfg, m, d, mode).matrix))


def hilbert_function(cfg: PointConfig, d: int, strategy: str = linalg.MULTIMODULAR_CERTIFY) -> int:
    """Value in degree d of the Hilbert function of R/I_X."""
    if d < 0:
        return 0
    return linalg.rank(evaluation_matrix(cfg, d), strategy).rank


def stabilization_degree(N: int, n: int) -> int:
    d = 0
    while math.comb(d + N, N) < n:
        d += 1
    return d


def is_generic_position(cfg: PointConfig, strategy: str = linalg.MULTIMODULAR_CERTIFY) -> bool:
    # H is non-decreasing and bounded by n, so checking up to the first
    # degree where the expected value reaches n suffices
    for d in range(stabilization_degree(cfg.N, cfg.n) + 1):
        if hilbert_function(cfg, d, strategy) != min(math.comb(d + cfg.N, cfg.N), cfg.n):
            return False
    return True


@dataclass
class GeneratorSet:
    """Homogeneous generators of an ideal, complete in degrees <= ``complete_to``."""

    nvars: int
    complete_to: int
    by_degree: dict[int, list[list[Fraction]]]

    def counts(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.by_degree.items())}

    @classmethod
    def maximal_ideal(cls, nvars: int, complete_to: int = 10**9) -> "GeneratorSet":
        eye = [[Fraction(int(i == j)) for j in range(nvars)] for i in range(nvars)]
        return cls(nvars, complete_to, {1: eye})

    @classmethod
    def unit(cls, nvars: int, complete_to: int = 10**9) -> "GeneratorSet":
        return cls(nvars, complete_to, {0: [[Fraction(1)]]})


def _extend_basis(current: list[list[Fraction]], candidates: Sequence[Sequence[Fraction]],
                  length: int) -> list[list[Fraction]]:
    """Candidates (in order) that increase the span of ``current``."""
    picked: list[list[Fraction]] = []
    base = len(linalg.row_space_basis(current, length)) if current else 0
    for v in candidates:
        trial = current + picked + [list(v)]
        r = linalg.span_rank(trial, length)
        if r > base + len(picked):
            picked.append(list(v))
    return picked


def _variable_multiples(piece: Sequence[Sequence[Fraction]], degree: int, nvars: int) -> list[list[Fraction]]:
    out = []
    for i in range(nvars):
        e = tuple(int(k == i) for k in range(nvars))
        out.extend(times_monomial(v, degree, e) for v in piece)
    return out


def minimal_generators_up_to(cfg: PointConfig, d_max: int, mode: str = AFFINE) -> GeneratorSet:
    """New minimal generators of I_X in each degree up to ``d_max``.

    In degree d the generators complete a basis of R_1*(I_X)_{d-1} to one
    of (I_X)_d, chosen greedily from the canonical kernel basis.
    """
    nvars = cfg.N + 1
    gens: dict[int, list[list[Fraction]]] = {}
    prev: list[list[Fraction]] = []
    for d in range(d_max + 1):
        piece = graded_piece(cfg, 1, d, mode).forms if d >= 1 else []
        length = len(monomials(nvars, d))
        lifted = linalg.row_space_basis(_variable_multiples(prev, d - 1, nvars), length) if prev else []
        new = _extend_basis(lifted, piece, length)
        if new:
            gens[d] = new
        prev = piece
    return GeneratorSet(nvars, d_max, gens)


def _ideal_pieces(gens: GeneratorSet, d: int) -> list[list[list[Fraction]]]:
    nvars = gens.nvars
    pieces: list[list[list[Fraction]]] = []
    for k in range(d + 1):
        length = len(monomials(nvars, k))
        cand = _variable_multiples(pieces[k - 1], k - 1, nvars) if k and pieces[k - 1] else []
        cand += [list(v) for v in gens.by_degree.get(k, [])]
        pieces.append(linalg.row_space_basis(cand, length) if cand else [])
    return pieces


def _times_gens(gens: GeneratorSet, pieces: list[list[list[Fraction]]], d: int) -> list[list[list[Fraction]]]:
    # (A*B)_k = sum_j gens_j(A) * B_{k-j}, since R*B is contained in B
    nvars = gens.nvars
    out = []
    for k in range(d + 1):
        cand = []
        for j, gs in gens.by_degree.items():
            if j <= k and pieces[k - j]:
                for g in gs:
                    cand.extend(multiply(g, j, b, k - j, nvars) for b in pieces[k - j])
        out.append(linalg.row_space_basis(cand, len(monomials(nvars, k))) if cand else [])
    return out


def product_piece(factors: Sequence[tuple[GeneratorSet, int]], d: int) -> GradedBasis:
    """Basis of the degree-d part of A_1^{e_1} ... A_r^{e_r}.

    Each ``GeneratorSet`` must be complete up to degree d.
    """
    if not factors:
        raise linalg.InvalidArgument("no factors")
    nvars = factors[0][0].nvars
    for g, e in factors:
        if g.nvars != nvars:
            raise linalg.InvalidArgument("factors live in different rings")
        if e and g.complete_to < d:
            raise InsufficientGenerators(f"generators known only up to degree {g.complete_to} < {d}")
    pieces = [[[Fraction(int(i == j)) for j in range(dim_forms(nvars, k))]
               for i in range(dim_forms(nvars, k))] for k in range(d + 1)]
    for g, e in factors:
        for _ in range(e):
            pieces = _times_gens(g, pieces, d)
    return GradedBasis(d, nvars, pieces[d])


def contains_span(big: Sequence[Sequence[Fraction]], small: Sequence[Sequence[Fraction]], length: int) -> bool:
    """Whether span(small) is inside span(big), by rank comparison."""
    if not small:
        return True
    r_big = linalg.span_rank(list(big), length) if big else 0
    return linalg.span_rank(list(big) + list(small), length) == r_big

"""Waldschmidt-constant brackets, Chudnovsky slacks and related bounds.

Every alpha_m/m is an upper bound for the Waldschmidt constant (it is an
infimum); the Waldschmidt-Skoda and Esnault-Viehweg inequalities give lower
bounds.  Nothing here claims the value of the constant itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import interpolation, linalg
from .interpolation import AFFINE, AlphaTable, GeneratorSet
from .points import PointConfig, sample_config
from .polys import monomials


class BoundViolation(AssertionError):
    """A proven lower bound failed; this indicates a bug, not a counterexample."""


@dataclass(frozen=True)
class ChudnovskyVerdict:
    m: int
    alpha_m: int
    slack: Fraction
    holds: bool


def chudnovsky_target(alpha: int, N: int) -> Fraction:
    return Fraction(alpha + N - 1, N)


def verdict(m: int, alpha_m: int, alpha: int, N: int) -> ChudnovskyVerdict:
    slack = Fraction(alpha_m, m) - chudnovsky_target(alpha, N)
    return ChudnovskyVerdict(m, alpha_m, slack, slack >= 0)


@dataclass
class WaldschmidtReport:
    label: str
    N: int
    n: int
    alpha: int
    rows: list[tuple[int, int, Fraction]]
    skoda: Fraction
    ev: Fraction | None  # not a theorem on the projective line
    chudnovsky_target: Fraction
    verdicts: list[ChudnovskyVerdict]
    table: AlphaTable
    warnings: list[str] = field(default_factory=list)

    @property
    def upper_bound(self) -> Fraction:
        return min(r for _, _, r in self.rows)

    @property
    def lower_bound(self) -> Fraction:
        return self.skoda if self.ev is None else max(self.skoda, self.ev)

    @property
    def bracket(self) -> tuple[Fraction, Fraction]:
        return self.lower_bound, self.upper_bound

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "N": self.N,
            "n": self.n,
            "alpha": self.alpha,
            "rows": [{"m": m, "alpha_m": a, "ratio": str(r),
                      "certified": self.table.entries[m].certified} for m, a, r in self.rows],
            "upper_bound": str(self.upper_bound),
            "lower_bounds": {"skoda": str(self.skoda), "ev": None if self.ev is None else str(self.ev)},
            "bracket": [str(x) for x in self.bracket],
            "chudnovsky_target": str(self.chudnovsky_target),
            "verdicts": [verdict_dict(v) for v in self.verdicts],
        }


def verdict_dict(v: ChudnovskyVerdict) -> dict:
    return {"m": v.m, "alpha_m": v.alpha_m, "slack": str(v.slack), "holds": v.holds}


def check_lower_bounds(table: AlphaTable, reduced_points: bool = True) -> None:
    """Raise if any ratio falls below Waldschmidt-Skoda or (for points, N >= 2) Esnault-Viehweg.

    On P^1 alpha_m = n*m, so the Esnault-Viehweg inequality does not apply there.
    """
    alpha, N = table.alpha(1), table.N
    for m, a in table.values().items():
        r = Fraction(a, m)
        if r < Fraction(alpha, N):
            raise BoundViolation(f"{table.label}: alpha_{m}/{m} = {r} < alpha/N = {Fraction(alpha, N)}")
        if reduced_points and N >= 2 and r < Fraction(alpha + 1, N):
            raise BoundViolation(f"{table.label}: alpha_{m}/{m} = {r} < (alpha+1)/N = {Fraction(alpha + 1, N)}")


def waldschmidt_report(cfg: PointConfig, m_max: int, strategy: str = linalg.MULTIMODULAR_CERTIFY,
                       mode: str = AFFINE) -> WaldschmidtReport:
    if m_max < 1:
        raise linalg.InvalidArgument("m_max must be >= 1")
    table = interpolation.alpha_table(cfg, m_max, strategy, mode)
    alpha, N = table.alpha(1), cfg.N
    rows = [(m, a, Fraction(a, m)) for m, a in table.values().items()]
    warnings = [w for r in table.entries.values() for w in r.warnings]
    check_lower_bounds(table)
    return WaldschmidtReport(
        label=cfg.label, N=N, n=cfg.n, alpha=alpha, rows=rows,
        skoda=Fraction(alpha, N), ev=Fraction(alpha + 1, N) if N >= 2 else None,
        chudnovsky_target=chudnovsky_target(alpha, N),
        verdicts=[verdict(m, a, alpha, N) for m, a, _ in rows],
        table=table, warnings=sorted(set(warnings)),
    )


def chudnovsky_check(cfg: PointConfig, m_max: int, strategy: str = linalg.MULTIMODULAR_CERTIFY,
                     mode: str = AFFINE) -> list[ChudnovskyVerdict]:
    return waldschmidt_report(cfg, m_max, strategy, mode).verdicts


@dataclass(frozen=True)
class DeltaResult:
    delta: int | None
    t0: int | None
    s_max: int
    alphas: dict[int, int]

    @property
    def bound_reached(self) -> bool:
        return self.delta is None


def delta_t0(cfg: PointConfig, s_max: int, strategy: str = linalg.MULTIMODULAR_CERTIFY,
             mode: str = AFFINE) -> DeltaResult:
    """First s <= s_max with s*alpha > alpha_s, and t0 = (N-1)*s."""
    if s_max < 1:
        raise linalg.InvalidArgument("s_max must be >= 1")
    a1 = interpolation.alpha_symbolic(cfg, 1, strategy, mode)
    alphas = {1: a1.alpha}
    for s in range(2, s_max + 1):
        alphas[s] = interpolation.alpha_symbolic(cfg, s, strategy, mode, alpha1=a1.alpha).alpha
        if s * a1.alpha > alphas[s]:
            return DeltaResult(s, (cfg.N - 1) * s, s_max, alphas)
    return DeltaResult(None, None, s_max, alphas)


@dataclass(frozen=True)
class SeshadriBound:
    radicand: Fraction
    root_order: int
    decimal: str
    exact: Fraction | None

    def as_dict(self) -> dict:
        return {"radicand": str(self.radicand), "root_order": self.root_order,
                "decimal": self.decimal, "decimal_significant_digits": 12,
                "exact": None if self.exact is None else str(self.exact)}


def seshadri_from_alpha(alpha: int, n: int, N: int) -> SeshadriBound:
    if N < 2:
        raise linalg.InvalidArgument("the bound needs N >= 2")
    rad = Fraction(alpha + N - 1, n * N)
    with mpmath.workdps(40):
        root = mpmath.root(mpmath.mpf(rad.numerator) / rad.denominator, N - 1)
        dec = mpmath.nstr(root, 12, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    return SeshadriBound(rad, N - 1, dec, rad if N == 2 else None)


def seshadri_lower_bound(cfg: PointConfig, strategy: str = linalg.MULTIMODULAR_CERTIFY) -> SeshadriBound:
    """Lower bound ((alpha + N - 1)/(nN))^(1/(N-1)) for the multipoint Seshadri constant."""
    alpha = interpolation.alpha_symbolic(cfg, 1, strategy).alpha
    return seshadri_from_alpha(alpha, cfg.n, cfg.N)


@dataclass
class ContainmentDegree:
    degree: int
    lhs_dim: int
    rhs_dim: int
    holds: bool


def hh_points_check(cfg: PointConfig, m: int, d_max: int | None = None,
                    strategy: str = linalg.MULTIMODULAR_CERTIFY, mode: str = AFFINE) -> dict:
    """Degreewise test of I^(Nm) inside M^(m(N-1)) I^m for degrees up to d_max.

    Passing says nothing about degrees beyond d_max.
    """
    if m < 1:
        raise linalg.InvalidArgument("m must be >= 1")
    N = cfg.N
    nvars = N + 1
    a_lhs = interpolation.alpha_symbolic(cfg, N * m, strategy, mode).alpha
    if d_max is None:
        d_max = a_lhs + N + 1
    if d_max < a_lhs:
        raise linalg.InvalidArgument(f"d_max={d_max} below alpha(I^({N * m}))={a_lhs}")
    gens = interpolation.minimal_generators_up_to(cfg, d_max, mode)
    factors = [(GeneratorSet.maximal_ideal(nvars), m * (N - 1)), (gens, m)]
    per_degree = []
    for d in range(a_lhs, d_max + 1):
        lhs = interpolation.graded_piece(cfg, N * m, d, mode)
        rhs = interpolation.product_piece(factors, d)
        length = len(monomials(nvars, d))
        ok = interpolation.contains_span(rhs.forms, lhs.forms, length)
        per_degree.append(ContainmentDegree(d, lhs.dim, rhs.dim, ok))
    return {
        "kind": "degreewise",
        "statement": f"I^({N * m}) in M^{m * (N - 1)} * I^{m}",
        "alpha_lhs": a_lhs,
        "d_max": d_max,
        "note": "degrees below alpha_lhs hold trivially; degrees above d_max are not checked",
        "degrees": [vars(c) for c in per_degree],
        "holds": all(c.holds for c in per_degree),
    }


def semicontinuity_experiment(n: int, N: int, m: int, seeds: Sequence[int], height: int = 10,
                              extra: Sequence[PointConfig] = (),
                              strategy: str = linalg.MULTIMODULAR_CERTIFY, mode: str = AFFINE) -> dict:
    """alpha_m over sampled configurations (plus any ``extra`` ones).

    The maximum is a lower bound for the value at a generic configuration;
    samples below it are flagged special.
    """
    if not seeds and not extra:
        raise linalg.InvalidArgument("no samples")
    samples = []
    for s in seeds:
        cfg = sample_config(n, N, s, height)
        samples.append({"label": cfg.label, "seed": s,
                        "alpha_m": interpolation.alpha_symbolic(cfg, m, strategy, mode).alpha})
    for cfg in extra:
        if cfg.n != n or cfg.N != N:
            raise linalg.InvalidArgument("extra configuration has the wrong shape")
        samples.append({"label": cfg.label, "seed": None,
                        "alpha_m": interpolation.alpha_symbolic(cfg, m, strategy, mode).alpha})
    top = max(s["alpha_m"] for s in samples)
    for s in samples:
        s["special"] = s["alpha_m"] < top
    return {"n": n, "N": N, "m": m, "height": height, "samples": samples, "max": top,
            "special": [s["label"] for s in samples if s["special"]]}

"""Point configurations in projective space over the rationals."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .linalg import ExactMatrix
from .polys import monomials


class InvalidPoint(ValueError):
    pass


class CannotSample(ValueError):
    pass


class ImproperConfiguration(ValueError):
    pass


def _primitive(raw: Sequence) -> tuple[int, ...]:
    coords = [c if isinstance(c, Fraction) else Fraction(c) for c in raw]
    if not any(coords):
        raise InvalidPoint("all coordinates are zero")
    den = 1
    for c in coords:
        den = math.lcm(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in coords]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class ProjectivePoint:
    """Canonical integer representative: gcd 1, first nonzero coordinate positive."""

    coords: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Hyperplane:
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Sequence) -> "Hyperplane":
        return cls(_primitive(coeffs))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def contains(self, p: ProjectivePoint) -> bool:
        return sum(a * b for a, b in zip(self.coeffs, p.coords)) == 0


def normalize_point(raw: Sequence) -> ProjectivePoint:
    """Canonical representative of the projective class of ``raw``.

    >>> normalize_point([Fraction(2, 3), Fraction(-4, 3), 0])
    ProjectivePoint(coords=(1, -2, 0))
    """
    return ProjectivePoint(_primitive(raw))


@dataclass(frozen=True)
class PointConfig:
    N: int
    points: tuple[ProjectivePoint, ...]
    label: str = ""

    @classmethod
    def of(cls, rows: Sequence[Sequence], label: str = "", N: int | None = None) -> "PointConfig":
        pts = tuple(normalize_point(r) for r in rows)
        if N is None:
            N = pts[0].N if pts else 0
        return cls(N, pts, label)

    @property
    def n(self) -> int:
        return len(self.points)

    def subset(self, indices: Sequence[int], label: str | None = None) -> "PointConfig":
        return PointConfig(self.N, tuple(self.points[i] for i in indices),
                           self.label if label is None else label)

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class ValidationReport:
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_config(cfg: PointConfig) -> ValidationReport:
    """Collect every violation of the configuration invariants; never raises."""
    rep = ValidationReport()
    if cfg.N < 1:
        rep.violations.append({"kind": "dimension", "detail": f"ambient dimension {cfg.N} < 1"})
    if not cfg.points:
        rep.violations.append({"kind": "empty", "detail": "no points"})
    canon: list[tuple | None] = []
    for i, p in enumerate(cfg.points):
        coords = tuple(p.coords)
        if len(coords) != cfg.N + 1:
            rep.violations.append({"kind": "dimension", "index": i,
                                   "detail": f"{len(coords)} coordinates in P^{cfg.N}"})
        if not any(coords):
            rep.violations.append({"kind": "zero-point", "index": i})
            canon.append(None)
            continue
        canon.append(_primitive(coords))
    for i, j in itertools.combinations(range(len(canon)), 2):
        if canon[i] is not None and canon[i] == canon[j]:
            rep.violations.append({"kind": "duplicate", "indices": [i, j]})
    return rep


def count_projective_points(N: int, height: int) -> int:
    """Number of points of P^N with a representative in [-height, height]^(N+1).

    Counts primitive integer vectors by Moebius inversion over the common
    divisor, then identifies v with -v.
    """
    mu = _moebius(height)
    total = 0
    for d in range(1, height + 1):
        if mu[d]:
            total += mu[d] * ((2 * (height // d) + 1) ** (N + 1) - 1)
    return total // 2


def _moebius(n: int) -> list[int]:
    mu = [1] * (n + 1)
    is_comp = [False] * (n + 1)
    primes: list[int] = []
    for i in range(2, n + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > n:
                break
            is_comp[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def sample_config(n: int, N: int, seed: int, height: int = 10, label: str | None = None) -> PointConfig:
    """``n`` distinct points with integer coordinates uniform in [-height, height].

    A draw that is zero or repeats an earlier point is redrawn, so the
    output depends only on (n, N, seed, height).
    """
    if n < 1 or N < 1 or height < 1:
        raise ValueError("need n >= 1, N >= 1, height >= 1")
    if (2 * height + 1) ** (N + 1) - 1 < n or count_projective_points(N, height) < n:
        raise CannotSample(f"fewer than {n} points of height <= {height} in P^{N}")
    rng = random.Random(f"{n}:{N}:{seed}:{height}")
    seen: set[tuple[int, ...]] = set()
    pts = []
    while len(pts) < n:
        raw = [rng.randint(-height, height) for _ in range(N + 1)]
        if not any(raw):
            continue
        p = normalize_point(raw)
        if p.coords in seen:
            continue
        seen.add(p.coords)
        pts.append(p)
    if label is None:
        label = f"sample(n={n},N={N},seed={seed},height={height})"
    return PointConfig(N, tuple(pts), label)


def star_configuration(hyperplanes: Sequence[Hyperplane | Sequence], label: str = "star") -> PointConfig:
    """Intersection points of every N-subset of hyperplanes meeting properly."""
    hs = [h if isinstance(h, Hyperplane) else Hyperplane.of(h) for h in hyperplanes]
    if not hs:
        raise ImproperConfiguration("no hyperplanes")
    N = hs[0].N
    if any(h.N != N for h in hs):
        raise ImproperConfiguration("hyperplanes live in different projective spaces")
    if len(hs) < N:
        raise ImproperConfiguration(f"need at least {N} hyperplanes in P^{N}")
    pts = []
    for subset in itertools.combinations(range(len(hs)), N):
        M = ExactMatrix.from_rows([hs[i].coeffs for i in subset])
        ker = linalg.kernel_basis(M)
        if len(ker) != 1:
            raise ImproperConfiguration(f"hyperplanes {list(subset)} do not meet in a single point")
        p = normalize_point(ker[0])
        on = [i for i, h in enumerate(hs) if h.contains(p)]
        if len(on) > N:
            raise ImproperConfiguration(f"point {p} lies on hyperplanes {on}")
        pts.append(p)
    return PointConfig(N, tuple(pts), label)


def evaluation_rows(cfg: PointConfig, degree: int) -> list[list[int]]:
    """Values of the degree-``degree`` deglex monomials at each point."""
    mons = monomials(cfg.N + 1, degree)
    rows = []
    for p in cfg.points:
        row = []
        for a in mons:
            v = 1
            for c, e in zip(p.coords, a):
                if e:
                    v *= c ** e
            row.append(v)
        rows.append(row)
    return rows


def evaluation_matrix(cfg: PointConfig, degree: int) -> ExactMatrix:
    return ExactMatrix.from_rows(evaluation_rows(cfg, degree), len(monomials(cfg.N + 1, degree)))


def quadric_witness(cfg: PointConfig) -> list[Fraction] | None:
    """A nonzero quadratic form through every point, or None.

    Coefficients are over the deglex basis of degree-2 monomials.
    """
    ker = linalg.kernel_basis(evaluation_matrix(cfg, 2))
    return ker[0] if ker else None


def _stable_degree(N: int, t: int) -> int:
    d = 0
    while math.comb(d + N, N) < t:
        d += 1
    return d


def generic_subset(cfg: PointConfig, t: int, strategy: str = linalg.MULTIMODULAR_CERTIFY) -> PointConfig:
    """Greedy choice of ``t`` points maximizing evaluation ranks degree by degree.

    At each step the candidate whose addition gives the lexicographically
    largest tuple of ranks in degrees 1..D wins, lowest index on ties; D is
    the first degree with at least ``t`` monomials.
    """
    if t > cfg.n or t < 0:
        raise linalg.InvalidArgument(f"t={t} outside [0, {cfg.n}]")
    D = max(1, _stable_degree(cfg.N, t))
    rows = {d: evaluation_rows(cfg, d) for d in range(1, D + 1)}
    chosen: list[int] = []
    for _ in range(t):
        best, best_key = None, None
        for i in range(cfg.n):
            if i in chosen:
                continue
            sel = chosen + [i]
            key = tuple(linalg.rank(ExactMatrix.from_rows([rows[d][j] for j in sel]), strategy).rank
                        for d in range(1, D + 1))
            if best_key is None or key > best_key:
                best, best_key = i, key
        chosen.append(best)
    chosen.sort()
    return cfg.subset(chosen)

"""Monomial ideals: products, intersections, colons, localization at
monomial primes, associated primes and symbolic powers.

Ideals are stored by their minimal monomial generators, sorted in deglex
order (largest first).  The zero ideal has no generators; the unit ideal
is generated by the constant monomial.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Monomial = tuple[int, ...]


class VariableMismatch(ValueError):
    pass


class CounterexampleFailure(AssertionError):
    pass


def _deglex_key(e: Monomial):
    return (-sum(e), tuple(-x for x in e))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    uniq = sorted(set(gens), key=lambda e: (sum(e), e))
    if not uniq:
        return ()
    kept: list[Monomial] = []
    if len(uniq) < 64:
        for g in uniq:
            if not any(divides(k, g) for k in kept):
                kept.append(g)
    else:
        arr = np.array(uniq, dtype=np.int64)
        keep = np.zeros(len(uniq), dtype=bool)
        kept_idx: list[int] = []
        for i in range(len(uniq)):
            if kept_idx and (arr[kept_idx] <= arr[i]).all(axis=1).any():
                continue
            keep[i] = True
            kept_idx.append(i)
        kept = [uniq[i] for i in kept_idx]
    return tuple(sorted(kept, key=_deglex_key))


@dataclass(frozen=True)
class MonomialIdeal:
    variables: tuple[str, ...]
    generators: tuple[Monomial, ...]

    @classmethod
    def of(cls, variables: Sequence[str], gens: Iterable) -> "MonomialIdeal":
        variables = tuple(variables)
        exps = [g if isinstance(g, tuple) and all(isinstance(x, int) for x in g) else _as_exponent(g, variables)
                for g in gens]
        for e in exps:
            if len(e) != len(variables) or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e}")
        return cls(variables, _minimal(exps))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.generators)

    def __str__(self) -> str:
        return "(" + ", ".join(format_monomial(g, self.variables) for g in self.generators) + ")"


def _as_exponent(g, variables: Sequence[str]) -> Monomial:
    if isinstance(g, str):
        return parse_monomial(g, variables)
    return tuple(int(x) for x in g)


_FACTOR = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*$")


def parse_monomial(text: str, variables: Sequence[str]) -> Monomial:
    """Read ``"x^3*u"`` style monomials; ``"1"`` is the constant monomial."""
    exps = [0] * len(variables)
    text = text.strip()
    if text == "1":
        return tuple(exps)
    pos = {v: i for i, v in enumerate(variables)}
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m or m.group(1) not in pos:
            raise ValueError(f"cannot parse factor {factor!r} of {text!r}")
        exps[pos[m.group(1)]] += int(m.group(2) or 1)
    return tuple(exps)


def format_monomial(e: Monomial, variables: Sequence[str]) -> str:
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k]
    return "*".join(parts) if parts else "1"


def _same_ring(*ideals: MonomialIdeal) -> tuple[str, ...]:
    vs = ideals[0].variables
    for I in ideals[1:]:
        if I.variables != vs:
            raise VariableMismatch(f"{I.variables} != {vs}")
    return vs


def minimalize(gens: Iterable, variables: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal.of(variables, gens)


def unit_ideal(variables: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(tuple(variables), ((0,) * len(variables),))


def maximal_ideal(variables: Sequence[str]) -> MonomialIdeal:
    n = len(variables)
    return MonomialIdeal.of(variables, [tuple(int(i == j) for j in range(n)) for i in range(n)])


def multiply(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    vs = _same_ring(I, J)
    return MonomialIdeal(vs, _minimal(tuple(a + b for a, b in zip(g, h)) for g in I.generators for h in J.generators))


def power(I: MonomialIdeal, e: int) -> MonomialIdeal:
    if e < 0:
        raise ValueError("negative exponent")
    out = unit_ideal(I.variables)
    base = I
    # square-and-multiply keeps intermediate generator sets small
    while e:
        if e & 1:
            out = multiply(out, base)
        e >>= 1
        if e:
            base = multiply(base, base)
    return out


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    vs = _same_ring(I, J)
    return MonomialIdeal(vs, _minimal(tuple(max(a, b) for a, b in zip(g, h))
                                      for g in I.generators for h in J.generators))


def contains_monomial(I: MonomialIdeal, w: Monomial) -> bool:
    return any(divides(g, w) for g in I.generators)


def contains_ideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """Whether J is contained in I."""
    _same_ring(I, J)
    return all(contains_monomial(I, g) for g in J.generators)


def colon(I: MonomialIdeal, w: Monomial) -> MonomialIdeal:
    """I : w, generated by g / gcd(g, w)."""
    if len(w) != I.nvars:
        raise VariableMismatch("monomial length does not match the ring")
    return MonomialIdeal(I.variables, _minimal(tuple(max(a - b, 0) for a, b in zip(g, w)) for g in I.generators))


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J, the intersection of I : g over the generators g of J."""
    _same_ring(I, J)
    if J.is_zero:
        return unit_ideal(I.variables)
    out = None
    for g in J.generators:
        c = colon(I, g)
        out = c if out is None else intersect(out, c)
    return out


@dataclass(frozen=True)
class MonomialPrime:
    """Prime generated by a nonempty subset of the variables (by index)."""

    indices: frozenset[int]

    @classmethod
    def of(cls, indices: Iterable[int]) -> "MonomialPrime":
        ix = frozenset(indices)
        if not ix:
            raise ValueError("a monomial prime needs at least one variable")
        return cls(ix)

    def ideal(self, variables: Sequence[str]) -> MonomialIdeal:
        n = len(variables)
        return MonomialIdeal.of(variables, [tuple(int(i == j) for j in range(n)) for i in sorted(self.indices)])

    def names(self, variables: Sequence[str]) -> list[str]:
        return [variables[i] for i in sorted(self.indices)]

    def sort_key(self):
        return (len(self.indices), sorted(self.indices))


def localize_contract(I: MonomialIdeal, p: MonomialPrime) -> MonomialIdeal:
    """I R_p intersected back with R: variables outside p are set to 1."""
    keep = p.indices
    return MonomialIdeal(I.variables, _minimal(tuple(x if i in keep else 0 for i, x in enumerate(g))
                                               for g in I.generators))


def _prime_of(I: MonomialIdeal) -> MonomialPrime | None:
    idx = []
    for g in I.generators:
        if sum(g) != 1:
            return None
        idx.append(g.index(1))
    return MonomialPrime.of(idx) if idx else None


@dataclass(frozen=True)
class AssResult:
    primes: tuple[MonomialPrime, ...]
    complete: bool
    mode: str
    assumption: str
    witnesses: tuple[Monomial, ...] = ()


def ass_primes(I: MonomialIdeal, mode: str = "bounded-witness") -> AssResult:
    """Associated primes of R/I.

    ``maxideal-only`` decides exactly whether the ideal of all variables is
    associated (I : M differs from I).  ``bounded-witness`` scans every
    monomial w dividing x^a, a the componentwise maximum of the generator
    exponents, and keeps each I : w that is generated by variables; larger
    exponents do not change I : w, so the scan is exhaustive.
    """
    if I.is_zero or I.is_unit:
        raise ValueError("associated primes need a nonzero proper ideal")
    n = I.nvars
    if mode == "maxideal-only":
        M = maximal_ideal(I.variables)
        q = colon_ideal(I, M)
        if q != I:
            w = next(g for g in q.generators if not contains_monomial(I, g))
            return AssResult((MonomialPrime.of(range(n)),), False, mode, "only the maximal ideal is tested", (w,))
        return AssResult((), False, mode, "only the maximal ideal is tested")
    if mode != "bounded-witness":
        raise ValueError(f"unknown mode {mode!r}")
    top = [max(g[i] for g in I.generators) for i in range(n)]
    found: dict[MonomialPrime, Monomial] = {}
    gens = np.array(I.generators, dtype=np.int64)
    for w in itertools.product(*(range(a + 1) for a in top)):
        # w must lie outside I
        if (gens <= np.array(w)).all(axis=1).any():
            continue
        reduced = np.maximum(gens - np.array(w), 0)
        degs = reduced.sum(axis=1)
        # I : w is prime iff its minimal generators are all variables: every
        # quotient is divisible by some degree-one quotient
        lin = reduced[degs == 1]
        if lin.size == 0:
            continue
        var_idx = sorted(set(int(np.argmax(r)) for r in lin))
        mask = np.zeros(n, dtype=bool)
        mask[var_idx] = True
        if not (reduced[:, mask].sum(axis=1) > 0).all():
            continue
        p = MonomialPrime.of(var_idx)
        found.setdefault(p, tuple(int(x) for x in w))
    primes = tuple(sorted(found, key=MonomialPrime.sort_key))
    return AssResult(primes, True, mode,
                     "witnesses range over divisors of the lcm-exponent monomial x^a",
                     tuple(found[p] for p in primes))


def symbolic_power(I: MonomialIdeal, m: int, primes: Sequence[MonomialPrime] | None = None) -> MonomialIdeal:
    """Intersection over p in Ass(R/I) of I^m R_p contracted to R.

    ``primes`` overrides the associated primes.  Components for primes
    strictly contained in another listed prime contain the larger prime's
    component, so only the maximal primes are intersected.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if primes is None:
        primes = ass_primes(I).primes
    primes = list(primes)
    if not primes:
        raise ValueError("empty prime list")
    top = [p for p in primes if not any(p.indices < q.indices for q in primes)]
    Im = power(I, m)
    out = None
    for p in sorted(set(top), key=MonomialPrime.sort_key):
        c = localize_contract(Im, p)
        out = c if out is None else intersect(out, c)
    return out


def alpha_monomial(I: MonomialIdeal) -> int:
    if I.is_zero:
        raise ValueError("initial degree of the zero ideal is undefined")
    return min(sum(g) for g in I.generators)


def coordinate_points_ideal(N: int) -> MonomialIdeal:
    """Ideal of the N+1 coordinate points of P^N in variables x0..xN."""
    if N < 1:
        raise ValueError("N must be >= 1")
    vs = tuple(f"x{i}" for i in range(N + 1))
    out = None
    for i in range(N + 1):
        p = MonomialPrime.of(j for j in range(N + 1) if j != i).ideal(vs)
        out = p if out is None else intersect(out, p)
    return out


def coordinate_point_primes(N: int) -> list[MonomialPrime]:
    return [MonomialPrime.of(j for j in range(N + 1) if j != i) for i in range(N + 1)]


# Example fixture: J = J1 * J2 in k[x, t, u, v]
COUNTEREXAMPLE_VARIABLES = ("x", "t", "u", "v")
J1_GENERATORS = ("x^4", "x^3*u", "x*u^3", "u^4", "x^2*u^2*v")
J2_GENERATORS = ("t^3", "t*u*v", "u^2*v")
SOCLE_WITNESS = "x^2*t^2*u^3*v"


def counterexample_ideals() -> tuple[MonomialIdeal, MonomialIdeal, MonomialIdeal]:
    vs = COUNTEREXAMPLE_VARIABLES
    J1 = MonomialIdeal.of(vs, J1_GENERATORS)
    J2 = MonomialIdeal.of(vs, J2_GENERATORS)
    return J1, J2, multiply(J1, J2)


def _gens_str(I: MonomialIdeal) -> list[str]:
    return [format_monomial(g, I.variables) for g in I.generators]


def verify_counterexample(strict: bool = True) -> dict:
    """Check that the second symbolic power of J^(2) differs from J^(4).

    1. y = x^2 t^2 u^3 v is outside J and J : y is the maximal ideal.
    2. J^2 : M = J^2, so M is not associated to J^2.
    3. J^4 : M is larger than J^4; a witness z is the first generator of
       J^4 : M outside J^4.
    4. z lies in (J^(2))^(2), computed over the associated primes of J^2,
       but not in J^4 = J^(4).
    """
    vs = COUNTEREXAMPLE_VARIABLES
    J1, J2, J = counterexample_ideals()
    M = maximal_ideal(vs)
    J2p, J4p = power(J, 2), power(J, 4)
    checks = []

    y = parse_monomial(SOCLE_WITNESS, vs)
    Jy = colon(J, y)
    checks.append({
        "name": "socle",
        "witness": SOCLE_WITNESS,
        "witness_in_J": contains_monomial(J, y),
        "colon": str(Jy),
        "passed": not contains_monomial(J, y) and Jy == M,
    })

    q2 = colon_ideal(J2p, M)
    checks.append({
        "name": "max-ideal-not-associated-to-J^2",
        "colon_equals_J^2": q2 == J2p,
        "generators_J^2": len(J2p.generators),
        "passed": q2 == J2p,
    })

    q4 = colon_ideal(J4p, M)
    outside = [g for g in q4.generators if not contains_monomial(J4p, g)]
    z = outside[0] if outside else None
    checks.append({
        "name": "max-ideal-associated-to-J^4",
        "witness": format_monomial(z, vs) if z else None,
        "generators_J^4": len(J4p.generators),
        "passed": z is not None and all(contains_monomial(J4p, tuple(a + b for a, b in zip(z, x)))
                                        for x in M.generators),
    })

    ass2 = ass_primes(J2p, "bounded-witness")
    S = symbolic_power(J2p, 2, primes=ass2.primes)
    J4_sym = symbolic_power(J, 4)
    J2_sym = symbolic_power(J, 2)
    max_prime = MonomialPrime.of(range(len(vs)))
    checks.append({
        "name": "witness-in-(J^(2))^(2)-not-in-J^(4)",
        "witness": format_monomial(z, vs) if z else None,
        "ass_J^2": [p.names(vs) for p in ass2.primes],
        "ass_complete": ass2.complete,
        "ass_assumption": ass2.assumption,
        "J^(2)_equals_J^2": J2_sym == J2p,
        "J^(4)_equals_J^4": J4_sym == J4p,
        "max_ideal_in_ass_J^2": max_prime in ass2.primes,
        "in_symbolic_square": z is not None and contains_monomial(S, z),
        "in_J^4": z is not None and contains_monomial(J4p, z),
        "containment_J^(4)_in_(J^(2))^(2)": contains_ideal(S, J4_sym),
        "passed": (z is not None and contains_monomial(S, z) and not contains_monomial(J4p, z)
                   and J4_sym == J4p and J2_sym == J2p and max_prime not in ass2.primes),
    })
    report = {
        "ring": list(vs),
        "J1": _gens_str(J1),
        "J2": _gens_str(J2),
        "J": _gens_str(J),
        "alpha_J": alpha_monomial(J),
        "checks": checks,
        "conclusion": "(J^(2))^(2) != J^(4)" if all(c["passed"] for c in checks) else "verification failed",
        "passed": all(c["passed"] for c in checks),
    }
    if strict and not report["passed"]:
        failed = [c["name"] for c in checks if not c["passed"]]
        raise CounterexampleFailure(f"checks failed: {failed}")
    return report


def containment_search(I: MonomialIdeal, ms: Iterable[int], ts: Iterable[int],
                       primes: Sequence[MonomialPrime] | None = None) -> list[dict]:
    """Empirical table of whether I^(mt) equals / lies in (I^(m))^(t).

    The associated primes of each I^(m) are recomputed by witness scan.
    Nothing here identifies a threshold beyond the window examined.
    """
    if primes is None:
        primes = ass_primes(I).primes
    rows = []
    for m in ms:
        Im = symbolic_power(I, m, primes)
        pm = ass_primes(Im).primes
        for t in ts:
            lhs = symbolic_power(I, m * t, primes)
            rhs = symbolic_power(Im, t, pm)
            rows.append({"m": m, "t": t, "contained": contains_ideal(rhs, lhs), "equal": lhs == rhs})
    return rows

"""Monomial bases in deglex order and products of coefficient vectors."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

Exponent = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exponent, ...]:
    """Exponent vectors of the given degree, largest first in deglex.

    For three variables and degree 2 this is (2,0,0), (1,1,0), (1,0,1),
    (0,2,0), (0,1,1), (0,0,2).
    """
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials(nvars, degree))}


@lru_cache(maxsize=None)
def monomials_upto(nvars: int, degree: int) -> tuple[Exponent, ...]:
    """All exponents with total degree at most ``degree``, ascending degree."""
    out: list[Exponent] = []
    for d in range(degree + 1):
        out.extend(sorted(monomials(nvars, d), reverse=True))
    return tuple(out)


def dim_forms(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


def multiply(u: Sequence[Fraction], du: int, v: Sequence[Fraction], dv: int, nvars: int) -> list[Fraction]:
    """Product of two forms given as deglex coefficient vectors."""
    mu, mv = monomials(nvars, du), monomials(nvars, dv)
    idx = monomial_index(nvars, du + dv)
    out = [Fraction(0)] * len(idx)
    for a, ca in zip(mu, u):
        if not ca:
            continue
        for b, cb in zip(mv, v):
            if cb:
                out[idx[tuple(x + y for x, y in zip(a, b))]] += ca * cb
    return out


def times_monomial(u: Sequence[Fraction], du: int, mono: Exponent) -> list[Fraction]:
    nvars = len(mono)
    d = sum(mono)
    src = monomials(nvars, du)
    idx = monomial_index(nvars, du + d)
    out = [Fraction(0)] * len(idx)
    for a, ca in zip(src, u):
        if ca:
            out[idx[tuple(x + y for x, y in zip(a, mono))]] = ca
    return out


def evaluate(u: Sequence[Fraction], degree: int, point: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for a, c in zip(monomials(len(point), degree), u):
        if c:
            term = c
            for x, e in zip(point, a):
                if e:
                    term *= Fraction(x) ** e
            total += term
    return total


def format_form(u: Sequence[Fraction], degree: int, nvars: int, names: Sequence[str] | None = None) -> str:
    names = names or [f"x{i}" for i in range(nvars)]
    terms = []
    for a, c in zip(monomials(nvars, degree), u):
        if not c:
            continue
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, a) if e)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"

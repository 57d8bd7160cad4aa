"""Command-line front end.

Every command writes one report document::

    {"version": ..., "command": ..., "input": ..., "result": ..., "warnings": [...]}

Exact rationals are written as strings ("5/3").  Exit codes: 0 computed,
1 input error, 2 internal failure, 3 computed with uncertified ranks.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__, asymptotics, interpolation, linalg, monomial, points
from .points import Hyperplane, InvalidPoint, PointConfig, ProjectivePoint
from .polys import format_form

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_UNCERTIFIED = 0, 1, 2, 3

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field is not None:
            loc.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)
        self.line = line
        self.field = field


class ValidationError(ValueError):
    def __init__(self, violations: list[dict]):
        super().__init__(f"invalid configuration: {violations}")
        self.violations = violations


def _load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    if not text.strip():
        raise ParseError("empty document", line=1)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None


def parse_rational(value: Any, field: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}", field=field)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise ParseError(f"not a rational string: {value!r}", field=field)
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {value!r}", field=field) from None


def _parse_rows(doc: dict, key: str) -> tuple[int, list[list[Fraction]]]:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    N = doc.get("N")
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ParseError("N must be a positive integer", field="N")
    rows = doc.get(key)
    if not isinstance(rows, list) or not rows:
        raise ParseError(f"{key} must be a nonempty array", field=key)
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, list):
            raise ParseError("expected an array of coordinates", field=f"{key}[{i}]")
        out.append([parse_rational(v, f"{key}[{i}][{j}]") for j, v in enumerate(r)])
    return N, out


def config_from_document(doc: dict) -> PointConfig:
    N, rows = _parse_rows(doc, "points")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string", field="label")
    violations = []
    pts = []
    for i, r in enumerate(rows):
        if len(r) != N + 1:
            violations.append({"kind": "dimension", "index": i, "detail": f"{len(r)} coordinates in P^{N}"})
            continue
        try:
            pts.append(points.normalize_point(r))
        except InvalidPoint:
            violations.append({"kind": "zero-point", "index": i})
            pts.append(ProjectivePoint(tuple(0 for _ in r)))
    if violations:
        raise ValidationError(violations)
    cfg = PointConfig(N, tuple(pts), label)
    rep = points.validate_config(cfg)
    if not rep.ok:
        raise ValidationError(rep.violations)
    return cfg


def parse_points_file(path: str | Path) -> PointConfig:
    """Read a point file ``{"N": int, "points": [[str, ...], ...], "label": str}``."""
    return config_from_document(_load_json(path))


def config_to_document(cfg: PointConfig) -> dict:
    return {"N": cfg.N, "points": [[str(c) for c in p.coords] for p in cfg.points], "label": cfg.label}


def parse_hyperplanes_file(path: str | Path) -> list[Hyperplane]:
    doc = _load_json(path)
    key = "hyperplanes" if isinstance(doc, dict) and "hyperplanes" in doc else "points"
    N, rows = _parse_rows(doc, key)
    out = []
    for i, r in enumerate(rows):
        if len(r) != N + 1:
            raise ParseError(f"expected {N + 1} coefficients", field=f"{key}[{i}]")
        if not any(r):
            raise ParseError("zero hyperplane", field=f"{key}[{i}]")
        out.append(Hyperplane.of(r))
    return out


def parse_ideal_file(path: str | Path) -> monomial.MonomialIdeal:
    """Read ``{"variables": [str, ...], "generators": [[int, ...] | "x^2*y", ...]}``."""
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    vs = doc.get("variables")
    if not isinstance(vs, list) or not vs or not all(isinstance(v, str) for v in vs):
        raise ParseError("variables must be a nonempty array of names", field="variables")
    gens = doc.get("generators")
    if not isinstance(gens, list):
        raise ParseError("generators must be an array", field="generators")
    exps = []
    for i, g in enumerate(gens):
        try:
            if isinstance(g, str):
                exps.append(monomial.parse_monomial(g, vs))
            elif isinstance(g, list) and len(g) == len(vs) and all(
                    isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in g):
                exps.append(tuple(g))
            else:
                raise ValueError(f"bad generator {g!r}")
        except ValueError as e:
            raise ParseError(str(e), field=f"generators[{i}]") from None
    return monomial.MonomialIdeal.of(vs, exps)


def _form_strings(forms, degree, nvars):
    return [format_form(f, degree, nvars) for f in forms]


class _Run:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.warnings: list[str] = []
        self.uncertified = False
        self.failed = False

    def note(self, results) -> None:
        for r in results:
            self.warnings.extend(r.warnings)
            if not r.certified:
                self.uncertified = True

    def cfg(self) -> PointConfig:
        return parse_points_file(self.args.input)


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise ParseError(f"--{name.replace('_', '-')} is required")
    if isinstance(v, int) and v < 1 and name not in ("seed", "d_max"):
        raise ParseError(f"--{name.replace('_', '-')} must be positive")
    return v


def cmd_alpha(run: _Run) -> tuple[dict, list[dict] | None]:
    a = run.args
    cfg = run.cfg()
    if a.m is not None:
        ms = [_need(a, "m")]
    else:
        ms = list(range(1, _need(a, "m_max") + 1))
    table = interpolation.AlphaTable(cfg.label, cfg.N)
    a1 = interpolation.alpha_symbolic(cfg, 1, a.strategy, a.mode)
    table.entries[1] = a1
    for m in ms:
        if m != 1:
            table.entries[m] = interpolation.alpha_symbolic(cfg, m, a.strategy, a.mode, alpha1=a1.alpha)
    run.note(table.entries.values())
    entries = [{"m": m, "alpha_m": table.entries[m].alpha, "certified": table.entries[m].certified,
                "certificate": table.entries[m].certificate} for m in ms]
    rows = [{"m": e["m"], "alpha_m": e["alpha_m"], "certified": e["certified"]} for e in entries]
    return {"label": cfg.label, "N": cfg.N, "n": cfg.n, "entries": entries,
            "invariant_violations": table.violations()}, rows


def cmd_hilbert(run: _Run):
    a = run.args
    cfg = run.cfg()
    d_max = a.d_max if a.d_max is not None else interpolation.stabilization_degree(cfg.N, cfg.n) + 1
    values = [interpolation.hilbert_function(cfg, d, a.strategy) for d in range(d_max + 1)]
    rows = [{"d": d, "H": h, "expected_generic": min(math.comb(d + cfg.N, cfg.N), cfg.n)}
            for d, h in enumerate(values)]
    return {"label": cfg.label, "values": values,
            "generic_position": interpolation.is_generic_position(cfg, a.strategy)}, rows


def cmd_wald(run: _Run):
    a = run.args
    rep = asymptotics.waldschmidt_report(run.cfg(), _need(a, "m_max"), a.strategy, a.mode)
    run.note(rep.table.entries.values())
    d = rep.as_dict()
    return d, [{"m": r["m"], "alpha_m": r["alpha_m"], "ratio": r["ratio"]} for r in d["rows"]]


def cmd_chud(run: _Run):
    a = run.args
    rep = asymptotics.waldschmidt_report(run.cfg(), _need(a, "m_max"), a.strategy, a.mode)
    run.note(rep.table.entries.values())
    verdicts = [asymptotics.verdict_dict(v) for v in rep.verdicts]
    return {"alpha": rep.alpha, "target": str(rep.chudnovsky_target), "verdicts": verdicts,
            "slacks": [v["slack"] for v in verdicts]}, verdicts


def cmd_star(run: _Run):
    hs = parse_hyperplanes_file(run.args.input)
    try:
        cfg = points.star_configuration(hs)
    except points.ImproperConfiguration as e:
        raise ParseError(f"improper configuration: {e}") from None
    return config_to_document(cfg), None


def cmd_sample(run: _Run):
    a = run.args
    try:
        cfg = points.sample_config(_need(a, "n"), _need(a, "N"), a.seed or 0, a.height)
    except points.CannotSample as e:
        raise ParseError(str(e)) from None
    return config_to_document(cfg), None


def cmd_quadric(run: _Run):
    cfg = run.cfg()
    w = points.quadric_witness(cfg)
    return {"exists": w is not None,
            "witness": None if w is None else [str(c) for c in w],
            "witness_form": None if w is None else _form_strings([w], 2, cfg.N + 1)[0]}, None


def cmd_hh(run: _Run):
    a = run.args
    return asymptotics.hh_points_check(run.cfg(), a.m or 1, a.d_max, a.strategy, a.mode), None


def cmd_seshadri(run: _Run):
    cfg = run.cfg()
    a1 = interpolation.alpha_symbolic(cfg, 1, run.args.strategy)
    run.note([a1])
    b = asymptotics.seshadri_from_alpha(a1.alpha, cfg.n, cfg.N)
    return {"alpha": a1.alpha, "n": cfg.n, "N": cfg.N, **b.as_dict()}, None


def cmd_delta(run: _Run):
    a = run.args
    cfg = run.cfg()
    r = asymptotics.delta_t0(cfg, _need(a, "s_max"), a.strategy, a.mode)
    return {"delta": r.delta, "t0": r.t0, "s_max": r.s_max, "bound_reached": r.bound_reached,
            "alphas": {str(k): v for k, v in r.alphas.items()}}, None


def cmd_semicont(run: _Run):
    a = run.args
    seeds = [int(s) for s in a.seeds.split(",")] if a.seeds else [a.seed or 0]
    extra = [parse_points_file(p) for p in (a.extra or [])]
    res = asymptotics.semicontinuity_experiment(_need(a, "n"), _need(a, "N"), _need(a, "m"), seeds,
                                                a.height, extra, a.strategy, a.mode)
    return res, [{k: s[k] for k in ("label", "seed", "alpha_m", "special")} for s in res["samples"]]


def cmd_mono_verify(run: _Run):
    rep = monomial.verify_counterexample(strict=False)
    if not rep["passed"]:
        run.failed = True
    return rep, None


def cmd_mono(run: _Run):
    a = run.args
    I = parse_ideal_file(a.input)
    vs = I.variables
    res: dict = {"variables": list(vs), "generators": [monomial.format_monomial(g, vs) for g in I.generators]}
    if I.is_zero or I.is_unit:
        res["note"] = "zero or unit ideal"
        return res, None
    res["alpha"] = monomial.alpha_monomial(I)
    ass = monomial.ass_primes(I)
    res["ass"] = {"primes": [p.names(vs) for p in ass.primes], "complete": ass.complete,
                  "assumption": ass.assumption}
    res["max_ideal_associated"] = bool(monomial.ass_primes(I, "maxideal-only").primes)
    if a.m:
        S = monomial.symbolic_power(I, a.m, ass.primes)
        res["symbolic_power"] = {"m": a.m, "generators": [monomial.format_monomial(g, vs) for g in S.generators],
                                 "alpha": monomial.alpha_monomial(S),
                                 "equals_ordinary_power": S == monomial.power(I, a.m)}
    return res, None


COMMANDS = {
    "alpha": cmd_alpha, "hilbert": cmd_hilbert, "wald": cmd_wald, "chud": cmd_chud,
    "star": cmd_star, "sample": cmd_sample, "quadric": cmd_quadric, "hh": cmd_hh,
    "seshadri": cmd_seshadri, "delta": cmd_delta, "semicont": cmd_semicont,
    "mono-verify": cmd_mono_verify, "mono": cmd_mono,
}
_NEEDS_INPUT = {"alpha", "hilbert", "wald", "chud", "star", "quadric", "hh", "seshadri", "delta", "mono"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fatpoints", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name in _NEEDS_INPUT:
            s.add_argument("input")
        s.add_argument("--m", type=int)
        s.add_argument("--m-max", type=int)
        s.add_argument("--s-max", type=int)
        s.add_argument("--d-max", type=int)
        s.add_argument("--n", type=int)
        s.add_argument("--N", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--seeds")
        s.add_argument("--height", type=int, default=10)
        s.add_argument("--extra", action="append", help="extra point file (semicont)")
        s.add_argument("--strategy", default=linalg.MULTIMODULAR_CERTIFY, choices=linalg.STRATEGIES)
        s.add_argument("--mode", default=interpolation.AFFINE, choices=interpolation.MODES)
        s.add_argument("--format", default="json", choices=("json", "csv"))
        s.add_argument("--out")
    return p


_ECHO = ("input", "m", "m_max", "s_max", "d_max", "n", "N", "seed", "seeds", "height", "extra",
         "strategy", "mode", "format")


def _echo(args: argparse.Namespace) -> dict:
    out = {k: getattr(args, k) for k in _ECHO if getattr(args, k, None) is not None}
    if "input" in out:
        try:
            out["document"] = json.loads(Path(args.input).read_text())
        except (OSError, ValueError):
            out["document"] = None
    return out


def _to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def run(args: argparse.Namespace) -> tuple[int, dict]:
    """Execute one command; returns (exit code, report document)."""
    r = _Run(args)
    report: dict = {"version": __version__, "command": args.command, "input": _echo(args)}
    try:
        result, rows = COMMANDS[args.command](r)
        if args.format == "csv" and rows is None:
            raise ParseError(f"{args.command} produces a structured report; csv is not available")
        code = EXIT_INTERNAL if r.failed else EXIT_UNCERTIFIED if r.uncertified else EXIT_OK
        report["result"] = result
        report["rows"] = rows
    except ValidationError as e:
        code = EXIT_INPUT
        report["result"] = None
        report["error"] = {"kind": "validation", "message": str(e), "violations": e.violations}
    except (ParseError, OSError, linalg.InvalidArgument, InvalidPoint) as e:
        code = EXIT_INPUT
        report["result"] = None
        report["error"] = {"kind": "input", "message": str(e)}
    except Exception as e:  # noqa: BLE001 - any other failure is internal
        code = EXIT_INTERNAL
        report["result"] = None
        report["error"] = {"kind": "internal", "message": f"{type(e).__name__}: {e}"}
    report["warnings"] = sorted(set(r.warnings))
    return code, report


def render(report: dict, fmt: str) -> str:
    if fmt == "csv" and report.get("rows") is not None:
        return _to_csv(report["rows"])
    doc = {k: v for k, v in report.items() if k != "rows"}
    return json.dumps(doc, indent=2) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code, report = run(args)
    text = render(report, args.format if code in (EXIT_OK, EXIT_UNCERTIFIED) else "json")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

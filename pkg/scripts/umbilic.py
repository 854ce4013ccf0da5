#!/usr/bin/env python3
"""
CLI for Cartan invariant evaluation, umbilical-point scans and engine cross checks.

Subcommands: eval, eval-expr, scan, check, models, psh.
Exit codes: 0 success, 1 usage error, 2 domain or math error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

# Ensure project root is on sys.path when executed as a script
PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from cartan.errors import USAGE_EXIT_CODE, CartanError
from cartan.graph_engine import GraphHypersurface, cartan_invariant_graph
from cartan.implicit_engine import ImplicitHypersurface, cartan_locus_iw
from cartan.levi import psh_check
from cartan.models import CartanGraphResult, ImplicitResult
from cartan.settings import load_tolerances
from grauert.catalog import MODEL_IDS, get_model
from grauert.cross_check import DEFAULT_SAMPLES, cross_check
from grauert.persistence import records_to_dataframe, write_records, write_summary
from grauert.scanner import resolve_chart, scan_grid
from grauert.schemas import DEFAULT_ZERO_THRESHOLD, AxisRange, ScanConfig


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; usage errors exit with 1 here."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT_CODE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """Accept 0.5, -2, 0.5i, i, 1+2i, 1-i (j works too)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s.endswith("j") and (len(s) == 1 or s[-2] in "+-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot read '{text}' as a number") from None


def parse_point(text: str) -> List[complex]:
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def _real(values: Sequence[complex], what: str) -> List[float]:
    if any(abs(v.imag) > 0 for v in values):
        raise ValueError(f"{what} must be real, got {list(values)}")
    return [v.real for v in values]


def parse_assignments(items: Optional[Sequence[str]], what: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ValueError(f"{what} '{item}' must look like name=value")
        out[name.strip()] = value.strip()
    return out


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, complex]:
    return {name: parse_complex(value) for name, value in parse_assignments(items, "--param").items()}


def _real_params(items: Optional[Sequence[str]]) -> Dict[str, float]:
    params = parse_params(items)
    return dict(zip(params, _real(list(params.values()), "model parameters")))


def _print_result(result: CartanGraphResult | ImplicitResult) -> None:
    if isinstance(result, CartanGraphResult):
        value = result.j_star
        print("=== Graph Invariant ===")
        print(f"point: {result.point}")
        print(f"J: {value.real:.12g} {value.imag:+.12g}i")
        print(f"6J (bracket): {result.bracket.real:.12g} {result.bracket.imag:+.12g}i")
        print(f"|J|: {abs(value):.12g}")
        print(f"levi_factor: {result.levi_factor:.12g}")
        print(f"normalized |J|: {result.normalized_magnitude():.6g}")
    else:
        value = result.i_w
        print("=== Implicit Invariant ===")
        print(f"point: {result.point}")
        if result.projected:
            print("(point projected onto F = 0)")
        print(f"I_w: {value.real:.12g} {value.imag:+.12g}i")
        print(f"|I_w|: {abs(value):.12g}")
        print(f"|F_w|: {abs(result.f_w):.12g}")
        print(f"normalized |I_w|: {result.normalized_magnitude():.6g}")


def cmd_eval(args: argparse.Namespace) -> int:
    tol = load_tolerances()
    entry = get_model(args.model, **_real_params(args.param))
    if args.engine:
        chart, _ = resolve_chart(entry, args.chart, args.engine)
    else:
        chart = entry.chart(args.chart)
    point = parse_point(args.point)
    if chart.kind == "implicit" and len(point) == 2 and len(chart.coords) != 2:
        result = cartan_locus_iw(chart.surface, (point[0], point[1]), tol)
    else:
        coords = _real(point, "chart coordinates")
        if len(coords) != len(chart.coords):
            raise ValueError(f"chart '{chart.name}' expects {len(chart.coords)} coordinates ({', '.join(chart.coords)})")
        chart.check_domain(coords, tol.domain_margin)
        result = chart.evaluate(coords, tol)
    print(f"model: {entry.id}  chart: {chart.name}")
    _print_result(result)
    return 0


def cmd_eval_expr(args: argparse.Namespace) -> int:
    tol = load_tolerances()
    params = parse_params(args.param)
    point = parse_point(args.point)
    if args.graph is not None:
        surface = GraphHypersurface.from_text(args.graph, params)
        coords = _real(point, "graph point")
        if len(coords) != 3:
            raise ValueError("graph point must be x,y,u")
        result = cartan_invariant_graph(surface, tuple(coords), tol)
    else:
        surface = ImplicitHypersurface.from_text(args.implicit, params)
        if len(point) != 2:
            raise ValueError("implicit point must be z,w")
        result = cartan_locus_iw(surface, (point[0], point[1]), tol)
    _print_result(result)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    ranges = {name: AxisRange.parse(text) for name, text in parse_assignments(args.range, "--range").items()}
    fixed = {name: float(value) for name, value in parse_assignments(args.fix, "--fix").items()}
    cfg = ScanConfig(
        model=args.model,
        params=_real_params(args.param),
        chart=args.chart,
        ranges=ranges,
        fixed=fixed,
        engine=args.engine,
        zero_threshold=args.threshold,
        refine=args.refine,
        workers=args.workers,
    )
    records, summary = scan_grid(cfg)
    df = records_to_dataframe(records)
    if args.out:
        write_records(df, args.out)
    if args.summary:
        write_summary(summary, args.summary)

    print("=== Scan Summary ===")
    for key, value in summary.model_dump(exclude={"candidates", "engines"}).items():
        print(f"{key}: {value}")
    for engine, minimum in summary.engines.items():
        print(f"min |inv| [{engine}]: {minimum.min_abs:.6g} at {minimum.argmin} ({minimum.n_ok} ok)")
    print(f"candidates: {len(summary.candidates)}")
    for candidate in summary.candidates:
        refined = f" -> {candidate.refined_abs:.3g} at {candidate.refined_coords}" if candidate.refined_abs is not None else ""
        print(f"  [{candidate.engine}] {candidate.coords} |inv|={candidate.grid_abs:.3g}{refined}")

    print("\nPreview of results:")
    print(df.head().to_string(index=False))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    report = cross_check(
        args.model,
        samples=args.samples,
        seed=args.seed,
        chart=args.chart,
        zero_threshold=args.threshold,
        **_real_params(args.param),
    )
    print("=== Cross Check ===")
    for key, value in report.model_dump(exclude={"disagreements"}).items():
        print(f"{key}: {value}")
    for item in report.disagreements:
        print(f"  disagree at {item.sample}: graph {item.graph_abs:.3g} vs implicit {item.implicit_abs:.3g}")
    return 0


def cmd_models(args: argparse.Namespace) -> int:
    for model_id in MODEL_IDS:
        print(get_model(model_id).describe())
        print()
    return 0


def cmd_psh(args: argparse.Namespace) -> int:
    params = parse_params(args.param)
    point = parse_point(args.point)
    variables = None
    if args.variables == "real":
        variables = ("x", "y", "u", "v")
    elif args.variables == "complex":
        variables = ("z", "w", "zb", "wb")
    result = psh_check(args.expr, point, variables=variables, params=params)
    print("=== Levi Matrix ===")
    for row in result.levi_matrix:
        print("  " + "  ".join(f"{h.real:+.10g}{h.imag:+.10g}i" for h in row))
    print(f"eigenvalues: {result.eigenvalues[0]:.12g}, {result.eigenvalues[1]:.12g}")
    print(f"min_eigenvalue: {result.min_eigenvalue:.12g}")
    print(f"strictly plurisubharmonic: {result.is_strictly_psh}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="umbilic", description="Cartan CR curvature of real hypersurfaces in C^2")
    parser.add_argument("--verbose", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add_model_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--model", required=True, help=f"Model id ({', '.join(MODEL_IDS)})")
        p.add_argument("--param", action="append", help="Model parameter name=value (repeatable)")
        p.add_argument("--chart", help="Chart name (model default otherwise)")

    p_eval = sub.add_parser("eval", help="Evaluate the invariant of a catalog model at one point")
    add_model_args(p_eval)
    p_eval.add_argument("--point", required=True, help="Chart coordinates, or z,w for implicit charts")
    p_eval.add_argument("--engine", choices=["graph", "implicit"], help="Engine (picks a matching chart)")
    p_eval.set_defaults(handler=cmd_eval)

    p_expr = sub.add_parser("eval-expr", help="Evaluate the invariant of a user expression")
    source = p_expr.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="phi(x, y, u) of a graph v = phi")
    source.add_argument("--implicit", help="F(z, w, zb, wb) of an implicit hypersurface")
    p_expr.add_argument("--param", action="append", help="Parameter name=value (repeatable)")
    p_expr.add_argument("--point", required=True, help="x,y,u for --graph; z,w for --implicit")
    p_expr.set_defaults(handler=cmd_eval_expr)

    p_scan = sub.add_parser("scan", help="Scan a chart on a grid for umbilical points")
    add_model_args(p_scan)
    p_scan.add_argument("--range", action="append", required=True, help="Scanned coordinate var=lo:hi:n (repeatable)")
    p_scan.add_argument("--fix", action="append", help="Fixed coordinate var=value (default 0)")
    p_scan.add_argument("--engine", choices=["graph", "implicit", "both"], default="graph")
    p_scan.add_argument("--threshold", type=float, default=DEFAULT_ZERO_THRESHOLD, help="Zero threshold (normalized)")
    p_scan.add_argument("--refine", action="store_true", help="Refine candidates by coordinate descent")
    p_scan.add_argument("--workers", type=int, default=1, help="Parallel grid evaluations")
    p_scan.add_argument("--out", type=Path, help="Records file (CSV, or Parquet for .parquet/.pq)")
    p_scan.add_argument("--summary", type=Path, help="Summary JSON file")
    p_scan.set_defaults(handler=cmd_scan)

    p_check = sub.add_parser("check", help="Cross check graph and implicit engines")
    add_model_args(p_check)
    p_check.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_check.add_argument("--seed", type=int, default=0, help="Random seed for samples")
    p_check.add_argument("--threshold", type=float, help="Zero threshold (normalized)")
    p_check.set_defaults(handler=cmd_check)

    p_models = sub.add_parser("models", help="List the model catalog")
    p_models.set_defaults(handler=cmd_models)

    p_psh = sub.add_parser("psh", help="Levi matrix of a real function")
    p_psh.add_argument("--expr", required=True, help="r over x,y,u,v or z,w,zb,wb")
    p_psh.add_argument("--point", required=True, help="x,y,u,v or z,w")
    p_psh.add_argument("--param", action="append", help="Parameter name=value (repeatable)")
    p_psh.add_argument("--variables", choices=["real", "complex"], help="Force the variable convention")
    p_psh.set_defaults(handler=cmd_psh)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s:%(levelname)s:%(message)s",
    )
    try:
        return args.handler(args)
    except CartanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT_CODE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 certified (or plain success), 10 heuristic, 20 not certified;
2 parse error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .analytic_fn import Disk, Kind, Polar, make_grid, power_series
from .certify import (
    Certificate,
    Status,
    certify_linear_disk,
    certify_perturbation,
    check_nww,
    enclosing_disk_parameter,
    taylor_sum_criterion,
    zeta_criterion,
)
from .errors import DomainError, SpecParseError
from .funcspec import format_function, parse_complex_list, parse_function
from .kconstant import (
    DEFAULT_REFINE,
    DEFAULT_RINGS,
    DEFAULT_SPOKES,
    closed_form_estimate,
    estimate_K,
    trend_to_unit_disk,
)
from .oracle import local_univalence, pairwise_scan
from .plot import PlotSpec, render_svg
from .report import RunReport, serialize

EXIT_OK = 0
EXIT_HEURISTIC = 10
EXIT_NOT_CERTIFIED = 20
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

DEFAULT_RADIUS = 0.995
DISAGREEMENT_TOL = 1e-4
CRITICAL_TOL = 1e-12

_STATUS_EXIT = {
    Status.CERTIFIED: EXIT_OK,
    Status.HEURISTIC: EXIT_HEURISTIC,
    Status.NOT_CERTIFIED: EXIT_NOT_CERTIFIED,
}

log = logging.getLogger("univalent")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SpecParseError(message, 0)


def _worst(certs: Sequence[Certificate]) -> int:
    return max(_STATUS_EXIT[c.status] for c in certs)


class _Stopwatch:
    def __init__(self, report: RunReport):
        self.report = report

    def __call__(self, stage: str):
        watch = self

        class _Stage:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                watch.report.timings[stage] = round(1000 * (time.perf_counter() - self.t), 3)

        return _Stage()


def _disk(args) -> Disk:
    return Disk(args.radius)


def _resolution(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rings", type=int, default=DEFAULT_RINGS)
    p.add_argument("--spokes", type=int, default=DEFAULT_SPOKES)
    p.add_argument("--refine", type=int, default=DEFAULT_REFINE)


def _oracle_resolution(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle-rings", type=int, default=48)
    p.add_argument("--oracle-spokes", type=int, default=48)


def cmd_k(args) -> tuple[RunReport, int]:
    f = parse_function(args.fn)
    disk = _disk(args)
    report = RunReport("k", {"fn": args.fn, "radius": disk.radius, "rings": args.rings,
                             "spokes": args.spokes, "refine": args.refine})
    clock = _Stopwatch(report)
    with clock("estimate"):
        est = estimate_K(f, disk, args.rings, args.spokes, args.refine)
    report.add(est, "estimate")
    exact = closed_form_estimate(f, disk)
    if exact is not None:
        report.add(exact, "closed_form")
        if abs(exact.value - est.value) > DISAGREEMENT_TOL:
            report.warnings.append(
                f"sampled K {est.value!r} differs from closed form {exact.value!r} by more than 1e-4"
            )
        if f.kind is Kind.HALF_PLANE:
            radii = [0.9, 0.99, 0.999, 1.0]
            report.add({
                "type": "k_estimate_trend", "label": "closed_form_trend",
                "provenance": "closed_form",
                "radii": radii, "values": [v for _, v in trend_to_unit_disk(f, radii)],
            })
    if args.csv is not None:
        _write_sweep(args.csv, f, args.sweep or [disk.radius], args)
        report.inputs["csv"] = str(args.csv)
    return report, EXIT_OK


def _write_sweep(path: Path, f, radii: Sequence[float], args) -> None:
    """CSV of ``K`` over a list of radii: sampled estimate next to the closed form."""
    rows = []
    for r in radii:
        d = Disk(r)
        est = estimate_K(f, d, args.rings, args.spokes, args.refine)
        exact = closed_form_estimate(f, d)
        rows.append([repr(r), repr(est.value), "" if exact is None else repr(exact.value)])
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["radius", "k_sampled", "k_closed_form"])
            w.writerows(rows)
    except OSError as exc:
        raise IOError(str(exc)) from exc


def _radii(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}") from exc


def cmd_certify(args) -> tuple[RunReport, int]:
    f = parse_function(args.fn)
    g = parse_function(args.ref)
    disk = _disk(args)
    report = RunReport("certify", {"fn": args.fn, "ref": args.ref, "radius": disk.radius,
                                   "k": args.k})
    clock = _Stopwatch(report)
    with clock("certificate"):
        cert = certify_perturbation(f, g, disk, args.k, rings=args.rings, spokes=args.spokes,
                                    refine_iters=args.refine)
    report.add(cert, "perturbation")
    with clock("oracle"):
        scan = pairwise_scan(f, disk, args.oracle_rings, args.oracle_spokes)
    report.add(scan, "oracle")
    with clock("local_univalence"):
        dmin, where = local_univalence(f, disk)
    report.add({"type": "local_univalence", "label": "min_abs_derivative",
                           "provenance": "sampled", "min_abs_deriv": dmin, "witness": where})
    if scan.found and cert.status is not Status.NOT_CERTIFIED:
        report.warnings.append("oracle found a collision although the criterion passed; "
                               "the supplied K or the univalence of the reference is wrong")
    return report, _STATUS_EXIT[cert.status]


def cmd_nww(args) -> tuple[RunReport, int]:
    f = parse_function(args.fn)
    disk = _disk(args)
    grid = make_grid(disk, Polar(args.grid_rings, args.grid_spokes))
    report = RunReport("nww", {"fn": args.fn, "radius": disk.radius,
                               "grid_rings": args.grid_rings, "grid_spokes": args.grid_spokes,
                               "boundary_samples": args.boundary_samples})
    clock = _Stopwatch(report)
    with clock("nww"):
        cert = check_nww(f, disk, grid, args.boundary_samples)
    report.add(cert, "nww")
    certs = [cert]
    if cert.margin > 0:
        with clock("enclosing_disk"):
            c = enclosing_disk_parameter(f, disk, grid, args.boundary_samples)
            lin = certify_linear_disk(f, disk, c, args.boundary_samples)
        report.add({"type": "enclosing_disk", "label": "enclosing_disk",
                               "provenance": "sampled", "c": c})
        report.add(lin, "linear_disk")
    return report, _worst(certs)


def _coefficients(text: str) -> list[complex]:
    """Inline list, ``@path`` to a file of literals, or ``halfplane:N``."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            body = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IOError(str(exc)) from exc
        return parse_complex_list(body.replace("\n", ",").strip(","))
    if text.startswith("halfplane:"):
        n = text.split(":", 1)[1]
        if not n.isdigit():
            raise SpecParseError("halfplane:N needs an integer N", len("halfplane:"), text)
        return [0j] + [1 + 0j] * int(n)
    return parse_complex_list(text)


def cmd_taylor(args) -> tuple[RunReport, int]:
    a = _coefficients(args.a)
    b = _coefficients(args.b)
    report = RunReport("taylor", {"a": args.a, "b": args.b, "k": args.k, "p": args.p})
    clock = _Stopwatch(report)
    with clock("taylor"):
        certs = [taylor_sum_criterion(a, b, args.k)]
        if args.p is not None:
            certs.append(zeta_criterion(a, b, args.k, args.p))
    for c in certs:
        report.add(c, c.criterion.value)
    # evidence about f itself: missing coefficients are zero, so f is this polynomial
    f = power_series(a)
    if not f.is_constant():
        disk = Disk(DEFAULT_RADIUS)
        with clock("oracle"):
            scan = pairwise_scan(f, disk, args.oracle_rings, args.oracle_spokes)
            dmin, where = local_univalence(f, disk)
        report.add(scan, "oracle")
        report.add({"type": "local_univalence", "label": "min_abs_derivative",
                    "provenance": "sampled", "min_abs_deriv": dmin, "witness": where})
        if (scan.found or dmin <= CRITICAL_TOL) and any(
                c.status is Status.CERTIFIED for c in certs):
            report.warnings.append(
                f"criterion passed but f is not univalent on |z| <= {DEFAULT_RADIUS}; "
                "the supplied K exceeds the true K of the reference")
    return report, _worst(certs)


def cmd_plot(args) -> tuple[RunReport, int]:
    f = parse_function(args.fn)
    disk = _disk(args)
    spec = PlotSpec(args.rings, args.spokes, disk, args.samples, args.width, args.height)
    report = RunReport("plot", {"fn": args.fn, "radius": disk.radius, "rings": args.rings,
                                "spokes": args.spokes, "samples": args.samples,
                                "width": args.width, "height": args.height,
                                "output": str(args.output)})
    clock = _Stopwatch(report)
    with clock("render"):
        svg = render_svg(f, spec, title=format_function(f))
    try:
        Path(args.output).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise IOError(str(exc)) from exc
    with clock("oracle"):
        scan = pairwise_scan(f, disk, args.oracle_rings, args.oracle_spokes)
    report.add(scan, "oracle")
    return report, EXIT_OK


def cmd_demo(args) -> tuple[RunReport, int]:
    from .demo import run_demo

    report = RunReport("demo", {"inject_a": args.inject_a})
    clock = _Stopwatch(report)
    with clock("demo"):
        rows = run_demo(args.inject_a)
    width = max(len(r[0]) for r in rows)
    for name, ok, detail in rows:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}", file=sys.stderr)
        report.add({"type": "demo_row", "label": name, "provenance": "sampled",
                               "criterion": name, "passed": ok, "detail": detail})
    return report, EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_NOT_CERTIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="univalent", description=__doc__.splitlines()[0])
    parser.add_argument("--output-json", type=Path, default=None,
                        help="write the JSON report here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("k", help="estimate K(f, disk)")
    p.add_argument("--fn", required=True)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    _resolution(p)
    p.add_argument("--csv", type=Path, default=None, help="write a radius sweep as CSV")
    p.add_argument("--sweep", type=_radii, default=None, help="comma-separated radii for --csv")
    p.set_defaults(handler=cmd_k)

    p = sub.add_parser("certify", help="perturbation criterion against a reference map")
    p.add_argument("--fn", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--k", type=float, default=None, help="asserted K(ref, disk)")
    _resolution(p)
    _oracle_resolution(p)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("nww", help="Noshiro-Warschawski-Wolff check and enclosing disk")
    p.add_argument("--fn", required=True)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--grid-rings", type=int, default=16)
    p.add_argument("--grid-spokes", type=int, default=64)
    p.add_argument("--boundary-samples", type=int, default=256)
    p.set_defaults(handler=cmd_nww)

    p = sub.add_parser("taylor", help="coefficient criteria")
    p.add_argument("--a", required=True, help="coefficients of f (list, @file, halfplane:N)")
    p.add_argument("--b", required=True, help="coefficients of the reference g")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--p", type=float, default=None)
    _oracle_resolution(p)
    p.set_defaults(handler=cmd_taylor)

    p = sub.add_parser("plot", help="SVG of a polar grid and its image")
    p.add_argument("--fn", required=True)
    p.add_argument("--radius", type=float, default=0.9)
    p.add_argument("--rings", type=int, default=8)
    p.add_argument("--spokes", type=int, default=16)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--width", type=int, default=960)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--output", type=Path, required=True)
    _oracle_resolution(p)
    p.set_defaults(handler=cmd_plot)

    p = sub.add_parser("demo", help="reproduce the worked examples")
    p.add_argument("--inject-a", type=float, default=None,
                   help="extra sharpness row for z + a z^2")
    p.set_defaults(handler=cmd_demo)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report, code = args.handler(args)
        text = serialize(report)
        if args.output_json is not None:
            args.output_json.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``morphokit <command> ...``.

Exit status is 0 on success, 1 on computation or I/O errors and 2 on usage
errors; failures also print a one-line JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import MorphokitError
from .geometry import CentroidSpec, SizeSpec, size, standardize
from .inference import (
    EtaMethod,
    Method,
    QuadratureSpec,
    TestOptions,
    parse_model,
    run_test,
)
from .io import ReportDocument, file_digest, load_landmarks
from .superimposition import GpaOptions, gpa, pca_scores, superimpose

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _error_json(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def _centroid_arg(text: str) -> CentroidSpec:
    try:
        return CentroidSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _size_arg(text: str) -> SizeSpec:
    try:
        return SizeSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair_arg(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError("--pair expects two ids separated by a comma")
    return parts[0], parts[1]


def _eta_arg(text: str):
    if text in ("sd", "mad"):
        return EtaMethod(text)
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--eta must be a positive number, 'sd' or 'mad'") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("--eta must be positive")
    return value


def _methods_arg(text: str) -> tuple[Method, ...]:
    try:
        methods = Method.parse_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown method in {text!r}") from None
    if not methods:
        raise argparse.ArgumentTypeError("no methods given")
    return methods


def _add_standardization(p: argparse.ArgumentParser, consensus: bool = False) -> None:
    p.add_argument("--center", type=_centroid_arg, default=CentroidSpec.mean(), help="mean | median | trim:ALPHA")
    p.add_argument("--size", type=_size_arg, default=SizeSpec.CENTROID_MEAN, help="cs | ms")
    if consensus:
        p.add_argument("--consensus", type=_centroid_arg, default=CentroidSpec.mean(), help="mean | median | trim:ALPHA")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="morphokit", description="Classical and robust Procrustes morphometrics")
    parser.add_argument("--version", action="version", version=f"morphokit {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("size", help="print the size of every configuration")
    p.add_argument("file")
    p.add_argument("--size", type=_size_arg, default=SizeSpec.CENTROID_MEAN, help="cs | ms")

    p = sub.add_parser("superimpose", help="rotate one standardized configuration onto another")
    p.add_argument("file")
    p.add_argument("--pair", type=_pair_arg, required=True, metavar="A,B")
    _add_standardization(p)
    p.add_argument("--proper-only", action="store_true")
    p.add_argument("--out", help="also write the JSON report here")

    p = sub.add_parser("gpa", help="generalized Procrustes analysis")
    p.add_argument("file")
    _add_standardization(p, consensus=True)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--proper-only", action="store_true")
    p.add_argument("--pca", type=int, default=None, metavar="Q")
    p.add_argument("--svg", help="write a PCA score plot (SVG)")
    p.add_argument("--figure", help="write a matplotlib score figure (png/pdf/svg)")
    p.add_argument("--out", help="also write the JSON report here")

    p = sub.add_parser("test", help="test for no systematic difference between two configurations")
    p.add_argument("file")
    p.add_argument("--pair", type=_pair_arg, required=True, metavar="A,B")
    p.add_argument("--model", choices=("normal", "scn", "lcn"), default="normal")
    p.add_argument("--eps", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--eta", type=_eta_arg, default=EtaMethod.CLASSICAL_SD, help="number | sd | mad")
    p.add_argument("--method", type=_methods_arg, default=(Method.CHISQ, Method.VOM, Method.VOMSAD))
    p.add_argument("--mc-samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--df", type=int, default=None, help="chi-square df of the KS diagnostic (default p)")
    p.add_argument("--no-diagnostics", action="store_true")
    _add_standardization(p)
    p.add_argument("--proper-only", action="store_true")
    p.add_argument("--out", help="also write the JSON report here")

    p = sub.add_parser("tables", help="reproduce the contaminated-normal p-value tables as CSV")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--mc-samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.add_argument("--figure", help="write a matplotlib comparison figure")

    p = sub.add_parser("plot", help="draw configurations as overlaid polygons (SVG)")
    p.add_argument("file")
    p.add_argument("--svg", required=True)
    p.add_argument("--ids", help="comma-separated subset of configuration ids")
    p.add_argument("--standardize", action="store_true", help="scale and center before drawing")
    p.add_argument("--align", action="store_true", help="draw the GPA-aligned configurations")
    _add_standardization(p)
    return parser


def _emit(doc: ReportDocument, out: str | None) -> None:
    text = doc.to_json()
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_size(args) -> None:
    lf = load_landmarks(args.file)
    sys.stdout.write(f"config,{args.size.value}\n")
    for c in lf.configurations:
        sys.stdout.write(f"{c.id},{size(c, args.size):.10g}\n")


def _std_pair(args):
    lf = load_landmarks(args.file)
    a, b = (lf.get(i) for i in args.pair)
    return lf, standardize(a, args.center, args.size), standardize(b, args.center, args.size)


def _std_options(args) -> dict:
    return {"center": str(args.center), "size": args.size.value}


def _cmd_superimpose(args) -> None:
    lf, X1, X2 = _std_pair(args)
    res = superimpose(X1, X2, proper_only=args.proper_only)
    results = {
        "pair": list(args.pair),
        "rotation": res.rotation,
        "residual_distance_sq": res.residual_distance_sq,
        "unrotated_residual_distance_sq": float(((X2.coords - X1.coords) ** 2).sum()),
        "full_procrustes_distance": res.full_procrustes_distance,
        "singular_values": res.singular_values,
        "rotated_source": res.rotated_source.coords,
        "target": X2.coords,
    }
    opts = {**_std_options(args), "proper_only": args.proper_only}
    _emit(ReportDocument("superimpose", opts, results, {args.file: file_digest(args.file)}), args.out)


def _cmd_gpa(args) -> None:
    lf = load_landmarks(args.file)
    opts = GpaOptions(args.center, args.size, args.consensus, args.max_iter, args.tol, args.proper_only)
    res = gpa(lf.configurations, opts)
    results = {
        "ids": lf.ids,
        "iterations": res.iterations,
        "converged": res.converged,
        "mean_shape": res.mean_shape.coords,
        "mean_shape_norm": res.mean_shape_norm,
        "mean_shape_vector": res.mean_shape_vector,
        "aligned": {c.id: c.coords for c in res.aligned},
        "tangent": res.tangent,
    }
    want_plot = args.svg or args.figure
    q = args.pca if args.pca is not None else (min(2, len(lf.configurations) - 1) if want_plot else None)
    if q is not None:
        pca = pca_scores(res.tangent, q)
        results["pca"] = {
            "scores": pca.scores,
            "loadings": pca.loadings,
            "explained_variance": pca.explained_variance,
        }
        if args.svg:
            from .svg import emit_svg, scores_svg

            emit_svg(scores_svg(pca.scores, lf.ids), args.svg)
        if args.figure:
            from .plotting import scores_figure

            scores_figure(pca.scores, lf.ids, args.figure, pca.explained_variance)
    options = {
        **_std_options(args),
        "consensus": str(args.consensus),
        "max_iter": args.max_iter,
        "tol": args.tol,
        "proper_only": args.proper_only,
        "pca": q,
    }
    _emit(ReportDocument("gpa", options, results, {args.file: file_digest(args.file)}), args.out)


def _cmd_test(args) -> None:
    try:
        model = parse_model(args.model, args.eps, args.nu, args.theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.mc_samples < 1000:
        raise UsageError("--mc-samples must be at least 1000")
    lf, X1, X2 = _std_pair(args)
    opts = TestOptions(
        eta=args.eta,
        methods=args.method,
        quad=QuadratureSpec(),
        mc_samples=args.mc_samples,
        seed=args.seed,
        diagnostics=not args.no_diagnostics,
        diagnostic_df=args.df,
        proper_only=args.proper_only,
    )
    report = run_test(X1, X2, model, opts)
    options = {
        **_std_options(args),
        "pair": list(args.pair),
        "model": model.to_dict(),
        "eta": args.eta.value if isinstance(args.eta, EtaMethod) else args.eta,
        "methods": [m.value for m in args.method],
        "mc_samples": args.mc_samples,
        "seed": args.seed,
        "quadrature_nodes": opts.quad.nodes,
        "proper_only": args.proper_only,
    }
    _emit(ReportDocument("test", options, report.to_dict(), {args.file: file_digest(args.file)}), args.out)


def _cmd_tables(args) -> None:
    from .tables import reproduce, to_csv

    if args.mc_samples < 1000:
        raise UsageError("--mc-samples must be at least 1000")
    rows = reproduce(args.which, args.mc_samples, args.seed)
    text = to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.figure:
        from .plotting import table_figure

        table_figure(rows, args.figure, title=f"Table {args.which}")


def _cmd_plot(args) -> None:
    from .svg import emit_svg, polygons_svg

    lf = load_landmarks(args.file)
    configs = lf.configurations
    if args.ids:
        configs = [lf.get(i.strip()) for i in args.ids.split(",")]
    if args.align:
        configs = gpa(configs, GpaOptions(args.center, args.size)).aligned
    elif args.standardize:
        configs = [standardize(c, args.center, args.size) for c in configs]
    emit_svg(polygons_svg(configs), args.svg)


COMMANDS = {
    "size": _cmd_size,
    "superimpose": _cmd_superimpose,
    "gpa": _cmd_gpa,
    "test": _cmd_test,
    "tables": _cmd_tables,
    "plot": _cmd_plot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as exc:
        _error_json("usage", str(exc))
        return EXIT_USAGE
    except KeyError as exc:
        _error_json("KeyError", str(exc.args[0]) if exc.args else "missing key")
        return EXIT_COMPUTE
    except (MorphokitError, OSError, ValueError) as exc:
        _error_json(type(exc).__name__, str(exc))
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

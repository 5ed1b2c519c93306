"""Command-line front end.

    whittaker-zeta gamma --kind gammaR --s 2
    whittaker-zeta lfactor --rep rep.json --rep-prime rep2.json --s 1 1.5
    whittaker-zeta whittaker --spec spec.json --y1-range 0.05 3 10 --csv
    whittaker-zeta zeta-verify --suite zeta-desk --threads 4
    whittaker-zeta identity-verify --suite identities

Results go to standard output (or ``--output``) as JSON or CSV; logs go to
standard error. Every written file gets a ``<name>.manifest.json`` sibling
and JSON output embeds the same manifest. Exit status: 0 all pass,
1 verification failure, 2 usage error, 3 numerical non-convergence.
"""

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd

from whittaker_zeta import __version__
from whittaker_zeta.config import settings
from whittaker_zeta.errors import (
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    SuiteFormatError,
    WhittakerZetaError,
)
from whittaker_zeta.gammakernel import bessel_k, gamma, gamma_c, gamma_r
from whittaker_zeta.langlands import rankin_l, rankin_l_explicit, rep_from_dict
from whittaker_zeta.logger import logger, run_context
from whittaker_zeta.models import (
    RunManifest,
    WhittakerSpec,
    ZetaConfig,
    as_complex,
    complex_to_json,
    relative_error,
)
from whittaker_zeta.whittaker import whittaker_grid
from whittaker_zeta.zeta.suite import (
    load_suite,
    ordered_map,
    reports_to_csv,
    verify_identities,
    verify_zeta,
)

GAMMA_KINDS = ("gamma", "gammaR", "gammaC", "besselK")
BESSEL_METHODS = ("integral", "series", "mellin_barnes", "exp_mellin_barnes")
WHITTAKER_COLUMNS = ["y1", "y2", "re", "im"]
NOT_CONVERGED_CODES = {
    "quadrature_not_converged",
    "truncation_not_converged",
    "convergence_range",
}
OVERRIDABLE = ("whittaker_tol", "contour_margin", "zeta_contour_margin", "zeta_nodes")
SETTINGS_SNAPSHOT = (
    "whittaker_tol",
    "contour_tol_2d",
    "contour_step",
    "contour_half_height",
    "contour_margin",
    "contour_max_doublings",
    "contour_far_shift",
    "series_max_terms",
    "sol_max_order",
    "sol_rel_tail_tol",
    "zeta_u_min",
    "zeta_u_max",
    "zeta_nodes",
    "zeta_edge_tol",
    "zeta_max_widenings",
    "zeta_contour_margin",
)


class UsageError(WhittakerZetaError):
    """Command-line arguments that parse but make no sense together."""

    code = "usage"
    exit_status = EXIT_USAGE


# Output


def _dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def build_manifest(command: str, inputs: dict[str, Any]) -> RunManifest:
    """Manifest for a run; identical inputs and settings give identical manifests."""
    canonical = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str)
    return RunManifest(
        command=command,
        inputs_digest=hashlib.sha256(canonical.encode("utf-8")).hexdigest(),
        tool_version=__version__,
        config={name: getattr(settings, name) for name in SETTINGS_SNAPSHOT},
    )


def manifest_path(output: Path) -> Path:
    """report.json -> report.manifest.json"""
    return output.with_name(f"{output.stem}.manifest.json")


def emit(text: str, manifest: RunManifest, output: Optional[str]) -> None:
    """Write text to output (with its manifest sibling) or to standard output."""
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    sibling = _dumps(manifest.model_dump(mode="json"))
    manifest_path(path).write_text(sibling, encoding="utf-8")
    logger.info(f"wrote {path} and {manifest_path(path)}")


def emit_json(
    payload: dict[str, Any], manifest: RunManifest, output: Optional[str]
) -> None:
    payload = dict(payload, manifest=manifest.model_dump(mode="json"))
    emit(_dumps(payload), manifest, output)


def emit_error(exc: Exception, command: str) -> int:
    """Machine-readable error JSON on standard output; returns the exit status."""
    if isinstance(exc, WhittakerZetaError):
        body, status = exc.to_dict(), exc.exit_status
    else:
        body, status = {"error": "usage", "message": str(exc)}, EXIT_USAGE
    logger.error(f"{command}: {body['error']}: {body['message']}")
    sys.stdout.write(_dumps(dict(body, command=command)))
    return status


def _status_of(reports: Sequence[Any]) -> int:
    if any(r.status == "error" and r.error in NOT_CONVERGED_CODES for r in reports):
        return EXIT_NOT_CONVERGED
    if any(r.status != "pass" for r in reports):
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


# Inputs


def read_json_arg(value: str) -> Any:
    """Inline JSON (starting with '{' or '[') or the path of a JSON file."""
    text = value if value.lstrip().startswith(("{", "[")) else None
    if text is None:
        path = Path(value)
        if not path.is_file():
            raise SuiteFormatError(f"file not found: {value}")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SuiteFormatError(f"invalid JSON in {value[:40]!r}: {exc}") from exc


def parse_complex(value: str) -> complex:
    try:
        return as_complex(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {value!r}") from exc


def y_grid(args: argparse.Namespace, axis: str) -> np.ndarray:
    values = getattr(args, axis)
    grid_range = getattr(args, f"{axis}_range")
    if values and grid_range:
        raise UsageError(f"give either --{axis} or --{axis}-range, not both")
    if grid_range:
        low, high = float(grid_range[0]), float(grid_range[1])
        nodes = int(grid_range[2])
        if not 0 < low < high or nodes < 1:
            raise UsageError(f"--{axis}-range needs 0 < low < high and nodes >= 1")
        return np.geomspace(low, high, nodes)
    if values:
        return np.asarray(values, dtype=float)
    if axis == "y2":
        return np.ones(1)
    raise UsageError("--y1 or --y1-range is required")


def _apply_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Apply the global flags to settings; returns the previous values."""
    previous = {name: getattr(settings, name) for name in OVERRIDABLE}
    if args.tol is not None:
        settings.whittaker_tol = args.tol
    if args.contour_real is not None:
        settings.contour_margin = args.contour_real
        settings.zeta_contour_margin = args.contour_real
    if args.grid_nodes is not None:
        settings.zeta_nodes = args.grid_nodes
    return previous


def _inputs(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"func", "output", "threads", "fmt"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# Subcommands


def cmd_gamma(args: argparse.Namespace) -> int:
    """Gamma, Gamma_R, Gamma_C at s, or K_r(z) by one of the four routes."""
    if args.kind == "besselK":
        if args.r is None or args.z is None:
            raise UsageError("besselK needs --r and --z")
        value = bessel_k(args.r, args.z, args.method)
    else:
        if args.s is None:
            raise UsageError(f"{args.kind} needs --s")
        func = {"gamma": gamma, "gammaR": gamma_r, "gammaC": gamma_c}[args.kind]
        value = func(args.s)
    manifest = build_manifest("gamma", _inputs(args))
    if args.fmt == "csv":
        frame = pd.DataFrame([{"kind": args.kind, "re": value.real, "im": value.imag}])
        emit(_csv(frame), manifest, args.output)
    else:
        payload = {"kind": args.kind, "value": complex_to_json(value)}
        emit_json(payload, manifest, args.output)
    return EXIT_OK


def _lfactor_row(rep: Any, rep_p: Any, s: complex, tol: float) -> dict[str, Any]:
    row: dict[str, Any] = {"s": complex_to_json(s)}
    try:
        value = rankin_l(rep, rep_p, s)
        check = rankin_l_explicit(rep, rep_p, s)
        rel = relative_error(value, check)
        row.update(
            L=complex_to_json(value),
            rel_error=rel,
            status="pass" if rel <= tol else "fail",
        )
    except WhittakerZetaError as exc:
        logger.error(f"L-factor at s={s}: {exc}")
        row.update(status="error", **exc.to_dict())
    return row


def cmd_lfactor(args: argparse.Namespace) -> int:
    """Table of L(s, Pi x Pi') over s, cross-checked against the block formula."""
    rep = rep_from_dict(read_json_arg(args.rep))
    rep_p = rep_from_dict(read_json_arg(args.rep_prime))
    tol = settings.whittaker_tol
    rows = ordered_map(
        lambda s: _lfactor_row(rep, rep_p, s, tol), list(args.s), args.threads
    )
    manifest = build_manifest("lfactor", _inputs(args))
    if args.fmt == "csv":
        frame = pd.DataFrame(
            [
                {
                    "s_re": r["s"]["re"],
                    "s_im": r["s"]["im"],
                    "L_re": r["L"]["re"] if "L" in r else np.nan,
                    "L_im": r["L"]["im"] if "L" in r else np.nan,
                    "rel_error": r.get("rel_error", np.nan),
                    "status": r["status"],
                }
                for r in rows
            ]
        )
        emit(_csv(frame), manifest, args.output)
    else:
        emit_json({"rows": rows}, manifest, args.output)
    if any(r["status"] == "fail" for r in rows):
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_whittaker(args: argparse.Namespace) -> int:
    """Grid of radial Whittaker values as CSV (y1, y2, re, im) or JSON rows."""
    spec = WhittakerSpec.model_validate(read_json_arg(args.spec))
    y1, y2 = y_grid(args, "y1"), y_grid(args, "y2")
    values = whittaker_grid(spec, y1, y2, args.contour_real)
    yy1, yy2 = np.meshgrid(y1, y2, indexing="ij")
    frame = pd.DataFrame(
        {
            "y1": yy1.ravel(),
            "y2": yy2.ravel(),
            "re": values.real.ravel(),
            "im": values.imag.ravel(),
        },
        columns=WHITTAKER_COLUMNS,
    )
    manifest = build_manifest("whittaker", _inputs(args))
    if args.fmt == "json":
        payload = {
            "spec": spec.model_dump(mode="json"),
            "rows": frame.to_dict("records"),
        }
        emit_json(payload, manifest, args.output)
    else:
        emit(_csv(frame), manifest, args.output)
    return EXIT_OK


def _entries_with_tol(suite: Any, tol: Optional[float]) -> list[Any]:
    if tol is None:
        return list(suite.entries)
    return [entry.model_copy(update={"tol": tol}) for entry in suite.entries]


def cmd_zeta_verify(args: argparse.Namespace) -> int:
    """Run the zeta entries of a suite; exit 0 iff every report passes."""
    suite = load_suite(args.suite)
    config = ZetaConfig(
        u_min=settings.zeta_u_min,
        u_max=settings.zeta_u_max,
        nodes=settings.zeta_nodes,
        s_samples=tuple(args.s or ()),
        edge_tol=settings.zeta_edge_tol,
        max_widenings=settings.zeta_max_widenings,
        **({} if args.tol is None else {"tol": args.tol}),
    )
    entries = _entries_with_tol(suite, args.tol)
    reports = verify_zeta(entries, config, threads=args.threads)
    manifest = build_manifest("zeta-verify", _inputs(args))
    if args.fmt == "csv":
        emit(reports_to_csv(reports), manifest, args.output)
    else:
        payload = {
            "suite": suite.name,
            "passed": all(r.status == "pass" for r in reports),
            "reports": [r.model_dump(mode="json") for r in reports],
        }
        emit_json(payload, manifest, args.output)
    return _status_of(reports)


def cmd_identity_verify(args: argparse.Namespace) -> int:
    """Run the identity entries of a suite; exit 0 iff every draw passes."""
    suite = load_suite(args.suite)
    reports = verify_identities(
        _entries_with_tol(suite, args.tol), args.tol, threads=args.threads
    )
    manifest = build_manifest("identity-verify", _inputs(args))
    if args.fmt == "csv":
        frame = pd.DataFrame(
            [
                {
                    "identity": r.identity,
                    "field": r.field,
                    "rel_error": np.nan if r.rel_error is None else r.rel_error,
                    "nodes": r.nodes_used,
                    "status": r.status,
                }
                for r in reports
            ]
        )
        emit(_csv(frame), manifest, args.output)
    else:
        payload = {
            "suite": suite.name,
            "passed": all(r.status == "pass" for r in reports),
            "reports": [r.model_dump(mode="json") for r in reports],
        }
        emit_json(payload, manifest, args.output)
    return _status_of(reports)


# Parser


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json", dest="fmt", action="store_const", const="json", help="JSON output"
    )
    fmt.add_argument(
        "--csv", dest="fmt", action="store_const", const="csv", help="CSV output"
    )
    common.add_argument(
        "--tol", type=float, default=None, help="Pass threshold (default WHITTAKER_TOL)"
    )
    common.add_argument(
        "--contour-real",
        type=float,
        default=None,
        help="Offset of Mellin-Barnes lines to the right of the pole bound",
    )
    common.add_argument(
        "--grid-nodes", type=int, default=None, help="Radial quadrature nodes per axis"
    )
    common.add_argument("--threads", type=int, default=1, help="Worker threads")
    common.add_argument(
        "--output", default=None, help="Output file (a manifest is written next to it)"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="whittaker-zeta",
        description=(
            "Archimedean Whittaker functions, Rankin-Selberg L-factors "
            "and zeta integrals"
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "gamma", parents=[common], help="Gamma factors and K-Bessel values"
    )
    p.add_argument("--kind", choices=GAMMA_KINDS, required=True)
    p.add_argument("--s", type=parse_complex, default=None, help="Argument of Gamma")
    p.add_argument("--r", type=parse_complex, default=None, help="Bessel order")
    p.add_argument("--z", type=float, default=None, help="Bessel argument (> 0)")
    p.add_argument("--method", choices=BESSEL_METHODS, default="integral")
    p.set_defaults(func=cmd_gamma, fmt_default="json")

    p = sub.add_parser(
        "lfactor", parents=[common], help="Local Rankin-Selberg L-factors"
    )
    p.add_argument("--rep", required=True, help="Representation JSON (file or inline)")
    p.add_argument("--rep-prime", required=True, help="Second representation JSON")
    p.add_argument("--s", type=parse_complex, nargs="+", required=True)
    p.set_defaults(func=cmd_lfactor, fmt_default="json")

    p = sub.add_parser(
        "whittaker", parents=[common], help="Radial Whittaker values on a grid"
    )
    p.add_argument("--spec", required=True, help="WhittakerSpec JSON (file or inline)")
    p.add_argument("--y1", type=float, nargs="+", default=None)
    p.add_argument("--y2", type=float, nargs="+", default=None)
    p.add_argument("--y1-range", nargs=3, metavar=("LOW", "HIGH", "N"), default=None)
    p.add_argument("--y2-range", nargs=3, metavar=("LOW", "HIGH", "N"), default=None)
    p.set_defaults(func=cmd_whittaker, fmt_default="csv")

    p = sub.add_parser(
        "zeta-verify", parents=[common], help="Zeta integrals against L-factors"
    )
    p.add_argument(
        "--suite", default="zeta-desk", help="Bundled suite name or suite file"
    )
    p.add_argument(
        "--s", type=parse_complex, nargs="+", default=None, help="Default s-samples"
    )
    p.set_defaults(func=cmd_zeta_verify, fmt_default="json")

    p = sub.add_parser(
        "identity-verify", parents=[common], help="Gamma-integral identities"
    )
    p.add_argument(
        "--suite", default="identities", help="Bundled suite name or suite file"
    )
    p.set_defaults(func=cmd_identity_verify, fmt_default="json")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.fmt is None:
        args.fmt = args.fmt_default
    del args.fmt_default
    command = args.command
    try:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        previous = _apply_overrides(args)
    except WhittakerZetaError as exc:
        return emit_error(exc, command)
    try:
        with run_context(command):
            return int(args.func(args))
    except (WhittakerZetaError, ValueError) as exc:
        return emit_error(exc, command)
    finally:
        for name, value in previous.items():
            setattr(settings, name, value)


if __name__ == "__main__":
    sys.exit(main())

"""Verification suites: zeta integrals against L-factors, Gamma-integral identities.

Suite files are JSON documents validated by ``Suite``. Zeta entries name a
pairing tag (R21, C21, R22, C22, R32, C32) and carry representation
parameters; identity entries name an identity id and either explicit
``values`` or a ``draws``/``seed`` pair for random admissible parameters.
Every (entry, s) pair produces one report; failures are recorded on the
report and never abort the suite.
"""

import contextvars
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, TypeVar

import numpy as np
import pandas as pd
from pydantic import ValidationError

from whittaker_zeta.config import settings
from whittaker_zeta.contour import sample_identity_params, verify_identity
from whittaker_zeta.errors import FieldMismatch, SuiteFormatError, WhittakerZetaError
from whittaker_zeta.langlands import rep_from_dict
from whittaker_zeta.logger import logger
from whittaker_zeta.models import (
    ComplexRep,
    IdentityReport,
    Suite,
    SuiteEntry,
    ZetaConfig,
    ZetaReport,
    as_complex,
    relative_error,
)
from whittaker_zeta.zeta.gl2_gl1 import expected_gl2_gl1, zeta_gl2_gl1
from whittaker_zeta.zeta.gl2_gl2 import expected_gl2_gl2, zeta_gl2_gl2
from whittaker_zeta.zeta.gl3_gl2 import expected_gl3_gl2, zeta_gl3_gl2
from whittaker_zeta.zeta.radial import ZetaEvaluation

PAIRINGS = ("R21", "C21", "R22", "C22", "R32", "C32")
BUNDLED_SUITES = ("identities", "zeta-desk")
CSV_COLUMNS = [
    "pairing",
    "params_digest",
    "s",
    "abs_z",
    "arg_z",
    "abs_expected",
    "rel_error",
    "nodes",
    "status",
]

T = TypeVar("T")
R = TypeVar("R")


def load_suite(source: str) -> Suite:
    """Load a bundled suite by name or a suite file by path."""
    if source in BUNDLED_SUITES:
        bundled = resources.files("whittaker_zeta").joinpath("suites", f"{source}.json")
        text = bundled.read_text(encoding="utf-8")
    else:
        path = Path(source)
        if not path.is_file():
            raise SuiteFormatError(f"suite file not found: {source}")
        text = path.read_text(encoding="utf-8")
    try:
        return Suite.model_validate_json(text)
    except ValidationError as exc:
        raise SuiteFormatError(
            f"invalid suite {source}: {exc.error_count()} errors"
        ) from exc


def params_digest(entry: SuiteEntry) -> str:
    """Short SHA-256 of the canonical (name, field, params) of an entry."""
    canonical = json.dumps(
        {"name": entry.name, "field": entry.field, "params": entry.params},
        sort_keys=True,
        separators=(",", ":"),
        default=str,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def ordered_map(
    func: Callable[[T], R], items: Sequence[T], threads: int = 1
) -> list[R]:
    """map() over items, in a thread pool when threads > 1; results keep input order.

    Each worker task runs in a copy of the caller's context, so the
    ``run_context`` command tag reaches log lines written by the pool.
    """
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(contextvars.copy_context().run, func, item) for item in items
        ]
        return [future.result() for future in futures]


# Zeta entries


def _error_code(exc: Exception) -> str:
    if isinstance(exc, WhittakerZetaError):
        return exc.code
    return SuiteFormatError.code


def _field_of(rep: Any) -> str:
    return "C" if isinstance(rep, ComplexRep) else "R"


def _rep(params: dict[str, Any], key: str, field: str) -> Any:
    if key not in params:
        raise SuiteFormatError(f"missing parameter '{key}'")
    rep = rep_from_dict(params[key])
    if _field_of(rep) != field:
        raise FieldMismatch(f"'{key}' is not a representation over {field}")
    return rep


def _optional_int(params: dict[str, Any], key: str) -> Optional[int]:
    return None if params.get(key) is None else int(params[key])


def evaluate_pairing(
    entry: SuiteEntry, s: complex, config: Optional[ZetaConfig] = None
) -> tuple[ZetaEvaluation, complex, complex]:
    """(Z, constant, L) of one zeta entry at s."""
    name = entry.name
    if name not in PAIRINGS:
        raise SuiteFormatError(f"unknown pairing '{name}', expected one of {PAIRINGS}")
    field, kind = name[0], name[1:]
    params = entry.params
    epsilon = int(params.get("epsilon", 1))
    if epsilon not in (1, -1):
        raise SuiteFormatError(f"epsilon must be 1 or -1, got {epsilon}")
    rep = _rep(params, "rep", field)
    if kind == "21":
        nu_p = as_complex(params.get("nu_prime", 0))
        index_p = int(params.get("index_prime", 0))
        z = zeta_gl2_gl1(rep, nu_p, index_p, s, epsilon=epsilon, config=config)
        constant, L = expected_gl2_gl1(rep, nu_p, index_p, s, epsilon=epsilon)
        return z, constant, L
    rep_p = _rep(params, "rep_prime", field)
    if kind == "22":
        z = zeta_gl2_gl2(rep, rep_p, s, epsilon=epsilon, config=config)
        constant, L = expected_gl2_gl2(rep, rep_p, s)
        return z, constant, L
    ktype = params.get("ktype")
    ktype = None if ktype is None else (int(ktype[0]), int(ktype[1]))
    q, q_p = _optional_int(params, "q"), _optional_int(params, "q_prime")
    z = zeta_gl3_gl2(
        rep, rep_p, s, epsilon=epsilon, ktype=ktype, q=q, q_p=q_p, config=config
    )
    constant, L = expected_gl3_gl2(rep, rep_p, s, ktype=ktype, q=q, q_p=q_p)
    return z, constant, L


def _zeta_task(task: tuple[SuiteEntry, complex, float, ZetaConfig]) -> ZetaReport:
    entry, s, tol, config = task
    digest = params_digest(entry)
    try:
        z, constant, L = evaluate_pairing(entry, s, config)
        expected = constant * L
        z_value = complex(z.value)
        rel = relative_error(z_value, expected)
        status = "pass" if rel <= tol else "fail"
        logger.info(f"{entry.name} [{digest}] s={s}: rel_error={rel:.3e} ({status})")
        return ZetaReport(
            pairing=entry.name,
            params_digest=digest,
            s=s,
            z_value=z_value,
            expected=expected,
            constant_used=constant,
            rel_error=rel,
            tol=tol,
            status=status,
            diagnostics=z.diagnostics(),
        )
    except (WhittakerZetaError, ValidationError, ValueError) as exc:
        code = _error_code(exc)
        logger.error(f"{entry.name} [{digest}] s={s}: {code}: {exc}")
        return ZetaReport(
            pairing=entry.name,
            params_digest=digest,
            s=s,
            tol=tol,
            status="error",
            error=code,
            message=str(exc),
        )


def verify_zeta(
    entries: Sequence[SuiteEntry],
    config: Optional[ZetaConfig] = None,
    *,
    threads: int = 1,
) -> list[ZetaReport]:
    """One ZetaReport per (zeta entry, s), in input order."""
    config = config or ZetaConfig()
    tasks = []
    for entry in entries:
        if entry.kind != "zeta":
            continue
        samples = entry.s or config.s_samples
        tol = entry.tol if entry.tol is not None else config.tol
        tasks.extend((entry, complex(s), tol, config) for s in samples)
    logger.info(f"verifying {len(tasks)} zeta samples on {max(threads, 1)} thread(s)")
    return ordered_map(_zeta_task, tasks, threads)


# Identity entries


def identity_params(entry: SuiteEntry) -> list[list[complex]]:
    """Explicit parameter lists of an identity entry, or its seeded random draws."""
    params = entry.params
    if entry.field is None:
        raise SuiteFormatError(f"identity entry '{entry.name}' needs a field")
    if "values" in params:
        return [[as_complex(v) for v in params["values"]]]
    draws = int(params.get("draws", 1))
    rng = np.random.default_rng(int(params.get("seed", 0)))
    return [sample_identity_params(entry.name, entry.field, rng) for _ in range(draws)]


def _identity_task(task: tuple[SuiteEntry, list[complex], float]) -> IdentityReport:
    entry, values, tol = task
    try:
        report = verify_identity(entry.name, entry.field or "", values)
        assert report.rel_error is not None
        status = "pass" if report.rel_error <= tol else "fail"
        return report.model_copy(update={"tol": tol, "status": status})
    except (WhittakerZetaError, ValueError) as exc:
        code = _error_code(exc)
        logger.error(f"identity {entry.name}/{entry.field}: {code}: {exc}")
        return IdentityReport(
            identity=entry.name,
            field=entry.field,
            params=tuple(values),
            tol=tol,
            status="error",
            error=code,
            message=str(exc),
        )


def verify_identities(
    entries: Sequence[SuiteEntry], tol: Optional[float] = None, *, threads: int = 1
) -> list[IdentityReport]:
    """One IdentityReport per (identity entry, parameter draw), in input order."""
    default_tol = settings.whittaker_tol if tol is None else tol
    tasks: list[tuple[SuiteEntry, list[complex], float]] = []
    for entry in entries:
        if entry.kind != "identity":
            continue
        entry_tol = entry.tol if entry.tol is not None else default_tol
        try:
            draws = identity_params(entry)
        except (WhittakerZetaError, ValueError) as exc:
            logger.error(f"identity {entry.name}: {exc}")
            draws = [[]]
        tasks.extend((entry, values, entry_tol) for values in draws)
    logger.info(f"verifying {len(tasks)} identity draws on {max(threads, 1)} thread(s)")
    return ordered_map(_identity_task, tasks, threads)


# Export


def reports_frame(reports: Sequence[ZetaReport]) -> pd.DataFrame:
    """Tabular view of zeta reports with the CSV_COLUMNS layout."""
    rows = []
    for r in reports:
        z = None if r.z_value is None else complex(r.z_value)
        expected = None if r.expected is None else complex(r.expected)
        s = complex(r.s)
        rows.append(
            {
                "pairing": r.pairing,
                "params_digest": r.params_digest,
                "s": f"{s.real:.17g}{s.imag:+.17g}j",
                "abs_z": np.nan if z is None else abs(z),
                "arg_z": np.nan if z is None else float(np.angle(z)),
                "abs_expected": np.nan if expected is None else abs(expected),
                "rel_error": np.nan if r.rel_error is None else r.rel_error,
                "nodes": int(r.diagnostics.get("nodes", 0)),
                "status": r.status,
            }
        )
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def reports_to_csv(reports: Sequence[ZetaReport], path: Optional[Path] = None) -> str:
    """CSV text of the reports (17 significant digits); written to path when given."""
    text = reports_frame(reports).to_csv(
        index=False, float_format="%.17g", lineterminator="\n"
    )
    if path is not None:
        path.write_text(text, encoding="utf-8")
    return text


def all_passed(reports: Sequence[Any]) -> bool:
    return all(r.status == "pass" for r in reports)

"""Weil group parameters and local (Rankin-Selberg) L-factors.

Over R the irreducible summands are the characters phi^delta_nu and the
two-dimensional phi_(nu,kappa), kappa >= 1; over C every summand is a
character chi_(nu,d). Parameters are always stored fully decomposed and
canonically ordered.
"""

import json
from typing import Any, Iterable, Union

from pydantic import TypeAdapter

from whittaker_zeta.errors import FieldMismatch
from whittaker_zeta.gammakernel import gamma_c, gamma_r
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    RealGL3GPS,
    RealGL3PS,
    RepParam,
    WeilParam,
    WeilSummand,
)

AnyRep = Union[RealGL2PS, RealGL2DS, RealGL3PS, RealGL3GPS, ComplexRep]
RepOrWeil = Union[AnyRep, WeilParam]

_REP_ADAPTER: TypeAdapter[Any] = TypeAdapter(RepParam)


def _canonical(field: str, summands: Iterable[WeilSummand]) -> WeilParam:
    expanded: list[WeilSummand] = []
    for summand in summands:
        if field == "R" and summand.kind == "twodim" and summand.index == 0:
            # phi_(nu,0) = phi^0_nu + phi^1_nu
            expanded.append(WeilSummand(kind="char", nu=summand.nu, index=0))
            expanded.append(WeilSummand(kind="char", nu=summand.nu, index=1))
        else:
            expanded.append(summand)
    ordered = tuple(sorted(expanded, key=WeilSummand.sort_key))
    return WeilParam(field=field, summands=ordered)


def character(field: str, nu: complex, index: int) -> WeilParam:
    """Parameter of a character of GL(1): chi_(nu,delta) over R, chi_(nu,d) over C."""
    return _canonical(field, [WeilSummand(kind="char", nu=nu, index=index)])


def weil_param(rep: AnyRep) -> WeilParam:
    """Langlands parameter.

    chi_(nu,delta) maps to phi^delta_nu and D_(nu,kappa) to phi_(nu,kappa-1).
    """
    if isinstance(rep, RealGL2PS):
        summands = [
            WeilSummand(kind="char", nu=rep.nu1, index=rep.delta1),
            WeilSummand(kind="char", nu=rep.nu2, index=rep.delta2),
        ]
        return _canonical("R", summands)
    if isinstance(rep, RealGL2DS):
        block = WeilSummand(kind="twodim", nu=rep.nu, index=rep.kappa - 1)
        return _canonical("R", [block])
    if isinstance(rep, RealGL3PS):
        summands = [
            WeilSummand(kind="char", nu=nu, index=delta)
            for nu, delta in zip(rep.nu, rep.delta)
        ]
        return _canonical("R", summands)
    if isinstance(rep, RealGL3GPS):
        summands = [
            WeilSummand(kind="twodim", nu=rep.nu1, index=rep.kappa1 - 1),
            WeilSummand(kind="char", nu=rep.nu2, index=rep.delta2),
        ]
        return _canonical("R", summands)
    return _canonical(
        "C", [WeilSummand(kind="char", nu=c.nu, index=c.d) for c in rep.summands]
    )


def _as_weil(x: RepOrWeil) -> WeilParam:
    return x if isinstance(x, WeilParam) else weil_param(x)


def _tensor_pair(a: WeilSummand, b: WeilSummand, field: str) -> list[WeilSummand]:
    nu = complex(a.nu) + complex(b.nu)
    if field == "C":
        return [WeilSummand(kind="char", nu=nu, index=a.index + b.index)]
    if a.kind == "char" and b.kind == "char":
        return [WeilSummand(kind="char", nu=nu, index=abs(a.index - b.index))]
    if a.kind == "twodim" and b.kind == "twodim":
        return [
            WeilSummand(kind="twodim", nu=nu, index=a.index + b.index),
            WeilSummand(kind="twodim", nu=nu, index=abs(a.index - b.index)),
        ]
    kappa = a.index if a.kind == "twodim" else b.index
    return [WeilSummand(kind="twodim", nu=nu, index=kappa)]


def tensor(p: WeilParam, q: WeilParam) -> WeilParam:
    """Tensor product, decomposed into irreducible summands."""
    if p.field != q.field:
        raise FieldMismatch(
            f"cannot tensor a parameter over {p.field} with one over {q.field}"
        )
    pieces: list[WeilSummand] = []
    for a in p.summands:
        for b in q.summands:
            pieces.extend(_tensor_pair(a, b, p.field))
    return _canonical(p.field, pieces)


def summand_l_factor(summand: WeilSummand, field: str, s: complex) -> complex:
    """L(s, phi) for one irreducible summand."""
    nu = complex(summand.nu)
    if field == "C":
        return gamma_c(s + nu + abs(summand.index) / 2)
    if summand.kind == "char":
        return gamma_r(s + nu + summand.index)
    return gamma_c(s + nu + summand.index / 2)


def l_factor(p: WeilParam, s: complex) -> complex:
    """Product of the summand L-factors."""
    s = complex(s)
    value = complex(1.0)
    for summand in p.summands:
        value *= summand_l_factor(summand, p.field, s)
    return value


def rankin_l(a: RepOrWeil, b: RepOrWeil, s: complex) -> complex:
    """L(s, Pi x Pi') = L(s, phi[Pi] (x) phi[Pi'])."""
    return l_factor(tensor(_as_weil(a), _as_weil(b)), s)


# ("char", nu, delta) and ("ds", nu, kappa), read from the representation fields.
RealBlock = tuple[str, complex, int]


def _real_blocks(rep: AnyRep) -> list[RealBlock]:
    if isinstance(rep, RealGL2PS):
        return [
            ("char", complex(rep.nu1), rep.delta1),
            ("char", complex(rep.nu2), rep.delta2),
        ]
    if isinstance(rep, RealGL2DS):
        return [("ds", complex(rep.nu), rep.kappa)]
    if isinstance(rep, RealGL3PS):
        return [("char", complex(nu), delta) for nu, delta in zip(rep.nu, rep.delta)]
    if isinstance(rep, RealGL3GPS):
        return [
            ("ds", complex(rep.nu1), rep.kappa1),
            ("char", complex(rep.nu2), rep.delta2),
        ]
    raise FieldMismatch("cannot pair a representation over R with one over C")


def _real_block_pair(x: RealBlock, y: RealBlock, s: complex) -> complex:
    w = s + x[1] + y[1]
    if x[0] == "char" and y[0] == "char":
        return gamma_r(w + abs(x[2] - y[2]))
    if x[0] == "ds" and y[0] == "ds":
        k, k_p = x[2], y[2]
        return gamma_c(w + (k + k_p - 2) / 2) * gamma_c(w + abs(k - k_p) / 2)
    kappa = x[2] if x[0] == "ds" else y[2]
    return gamma_c(w + (kappa - 1) / 2)


def rankin_l_explicit(a: AnyRep, b: AnyRep, s: complex) -> complex:
    """The same L-factor from the explicit per-block Gamma products.

    Over R: Gamma_R(s+nu+nu'+|delta-delta'|) for two characters,
    Gamma_C(s+nu+nu'+(kappa-1)/2) for D_(nu,kappa) against a character and
    Gamma_C(s+nu+nu'+(kappa+kappa'-2)/2) Gamma_C(s+nu+nu'+|kappa-kappa'|/2)
    for two discrete series. Over C: Gamma_C(s+nu_i+nu_j'+|d_i+d_j'|/2).
    Works from the representation fields alone, never from ``weil_param``.
    """
    s = complex(s)
    value = complex(1.0)
    complex_pair = isinstance(a, ComplexRep), isinstance(b, ComplexRep)
    if complex_pair == (True, True):
        assert isinstance(a, ComplexRep) and isinstance(b, ComplexRep)
        for x in a.summands:
            for y in b.summands:
                w = s + complex(x.nu) + complex(y.nu)
                value *= gamma_c(w + abs(x.d + y.d) / 2)
        return value
    if complex_pair != (False, False):
        raise FieldMismatch("cannot pair a representation over R with one over C")
    for x in _real_blocks(a):
        for y in _real_blocks(b):
            value *= _real_block_pair(x, y, s)
    return value


# JSON


def weil_to_json(p: WeilParam) -> str:
    """Serialise as {"field": "R"|"C", "summands": [...]}."""
    return json.dumps(p.model_dump(mode="json"), sort_keys=True)


def weil_from_json(text: str) -> WeilParam:
    """Parse and canonicalise a serialised Weil parameter."""
    raw = WeilParam.model_validate_json(text)
    return _canonical(raw.field, raw.summands)


def rep_from_dict(data: dict[str, Any]) -> AnyRep:
    """Validate a representation parameter tagged by ``kind``."""
    return _REP_ADAPTER.validate_python(data)


def rep_to_dict(rep: AnyRep) -> dict[str, Any]:
    return rep.model_dump(mode="json")

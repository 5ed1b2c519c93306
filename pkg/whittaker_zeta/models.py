"""Data models for Whittaker Zeta."""

import math
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, BeforeValidator, Field, PlainSerializer, model_validator


def as_complex(value: Any) -> complex:
    """Coerce numbers, ``{"re", "im"}`` objects and ``[re, im]`` pairs."""
    if isinstance(value, complex):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a number")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown or "re" not in value:
            raise ValueError(
                f"complex object needs 're' and optional 'im', got {value}"
            )
        return complex(float(value["re"]), float(value.get("im", 0.0)))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    try:
        return complex(value)
    except TypeError as exc:
        raise ValueError(f"cannot interpret {value!r} as a complex number") from exc


def complex_to_json(value: complex) -> dict[str, float]:
    """Serialise a complex number as ``{"re": x, "im": y}``."""
    value = complex(value)
    return {"re": value.real, "im": value.imag}


ComplexNumber = Annotated[
    Any,
    BeforeValidator(as_complex),
    PlainSerializer(complex_to_json, return_type=dict),
]

FieldTag = Literal["R", "C"]


class GammaConfig(BaseModel):
    """Log-Gamma backend configuration."""

    series_terms: int = Field(14, ge=8, description="Number of Lanczos coefficients")
    reflection_threshold: float = Field(
        0.5, le=0.5, description="Re(z) below which the reflection formula is used"
    )

    class Config:
        frozen = True


class BesselMethod(BaseModel):
    """Route used to evaluate K_r(z)."""

    tag: Literal["integral", "mellin_barnes", "series", "exp_mellin_barnes"] = Field(
        "integral", description="Evaluation route"
    )

    class Config:
        frozen = True


class VerticalContour(BaseModel):
    """Vertical line Re(t) = real_part truncated at |Im(t)| <= half_height."""

    real_part: float = Field(..., description="Abscissa of the line")
    half_height: float = Field(8.0, gt=0, description="Truncation height")
    step: float = Field(0.1, gt=0, le=0.25, description="Trapezoid step along the line")

    class Config:
        frozen = True


class Contour2D(BaseModel):
    """Product of two vertical lines."""

    c1: VerticalContour = Field(..., description="Contour for the first variable")
    c2: VerticalContour = Field(..., description="Contour for the second variable")

    class Config:
        frozen = True


class IdentityReport(BaseModel):
    """Outcome of one numerical identity check."""

    identity: str = Field("", description="Identity id")
    field: Optional[FieldTag] = Field(None, description="Base field R or C")
    params: tuple[ComplexNumber, ...] = Field((), description="Parameters used")
    lhs: Optional[ComplexNumber] = Field(None, description="Numerical side")
    rhs: Optional[ComplexNumber] = Field(None, description="Closed-form side")
    rel_error: Optional[float] = Field(
        None, description="|lhs-rhs| / max(|lhs|, |rhs|, 1e-300)"
    )
    nodes_used: int = Field(0, description="Quadrature nodes evaluated")
    tol: Optional[float] = Field(None, description="Threshold applied in suites")
    status: Literal["pass", "fail", "error"] = Field("pass", description="Outcome")
    error: Optional[str] = Field(None, description="Error tag when status is error")
    message: Optional[str] = Field(None, description="Error message")

    @classmethod
    def compare(
        cls, lhs: complex, rhs: complex, nodes_used: int = 0, **extra: Any
    ) -> "IdentityReport":
        """Build a report, computing the relative error."""
        return cls(
            lhs=lhs,
            rhs=rhs,
            rel_error=relative_error(lhs, rhs),
            nodes_used=nodes_used,
            **extra,
        )


def relative_error(lhs: complex, rhs: complex) -> float:
    """Symmetric relative error used by every report."""
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))


class SolParams(BaseModel):
    """Parameter triple r of the holonomic system Sol(r)."""

    r: tuple[ComplexNumber, ComplexNumber, ComplexNumber] = Field(
        ..., description="(r1, r2, r3)"
    )

    class Config:
        frozen = True


class SeriesTruncation(BaseModel):
    """Truncation policy of the double power series."""

    max_order: int = Field(80, gt=0, le=400, description="Cap on m1 and m2")
    rel_tail_tol: float = Field(1e-14, gt=0, description="Relative size of last shell")

    class Config:
        frozen = True


class PdeResidual(BaseModel):
    """Residuals of the two Sol(r) equations at a point."""

    pde2: ComplexNumber = Field(..., description="Second-order equation residual")
    pde3: ComplexNumber = Field(..., description="Residual of the third-order equation")
    scale2: float = Field(..., description="Sum of term magnitudes of the first")
    scale3: float = Field(..., description="Sum of term magnitudes of the second")

    @property
    def relative2(self) -> float:
        return float(abs(self.pde2) / max(self.scale2, 1e-300))

    @property
    def relative3(self) -> float:
        return float(abs(self.pde3) / max(self.scale3, 1e-300))


# Representation parameters


class RealGL2PS(BaseModel):
    """Principal series chi_(nu1,delta1) x chi_(nu2,delta2) of GL(2,R)."""

    kind: Literal["gl2r_ps"] = "gl2r_ps"
    nu1: ComplexNumber = Field(..., description="nu_1")
    delta1: Literal[0, 1] = Field(..., description="delta_1")
    nu2: ComplexNumber = Field(..., description="nu_2")
    delta2: Literal[0, 1] = Field(..., description="delta_2")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check(self) -> "RealGL2PS":
        if self.delta1 < self.delta2:
            raise ValueError("principal series requires delta1 >= delta2")
        x = complex(self.nu1 - self.nu2) + self.delta1 - self.delta2 + 1
        if abs(x.imag) < 1e-12 and x.real <= 1e-12 and _near_even(x.real):
            raise ValueError(
                "reducible principal series: nu1-nu2+delta1-delta2+1 in 2Z<=0"
            )
        return self


class RealGL2DS(BaseModel):
    """Discrete series D_(nu,kappa) of GL(2,R)."""

    kind: Literal["gl2r_ds"] = "gl2r_ds"
    nu: ComplexNumber = Field(..., description="nu")
    kappa: int = Field(..., ge=2, description="Blattner parameter kappa")

    class Config:
        frozen = True


class RealGL3PS(BaseModel):
    """Principal series of GL(3,R) induced from three characters."""

    kind: Literal["gl3r_ps"] = "gl3r_ps"
    nu: tuple[ComplexNumber, ComplexNumber, ComplexNumber] = Field(
        ..., description="nu"
    )
    delta: tuple[Literal[0, 1], Literal[0, 1], Literal[0, 1]] = Field(
        ..., description="delta, non-increasing"
    )

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check(self) -> "RealGL3PS":
        if not self.delta[0] >= self.delta[1] >= self.delta[2]:
            raise ValueError("delta must be non-increasing")
        return self


class RealGL3GPS(BaseModel):
    """Generalized principal series D_(nu1,kappa1) x chi_(nu2,delta2) of GL(3,R)."""

    kind: Literal["gl3r_gps"] = "gl3r_gps"
    nu1: ComplexNumber = Field(..., description="nu of the discrete series block")
    kappa1: int = Field(..., ge=2, description="kappa of the discrete series block")
    nu2: ComplexNumber = Field(..., description="nu of the character")
    delta2: Literal[0, 1] = Field(..., description="delta of the character")

    class Config:
        frozen = True


class ComplexChar(BaseModel):
    """Character chi_(nu,d) of C^x."""

    nu: ComplexNumber = Field(..., description="nu")
    d: int = Field(..., description="d")

    class Config:
        frozen = True


class ComplexRep(BaseModel):
    """Principal series of GL(n,C), n = 1, 2, 3."""

    kind: Literal["complex"] = "complex"
    summands: tuple[ComplexChar, ...] = Field(..., description="chi_(nu_i,d_i)")

    class Config:
        frozen = True

    @property
    def n(self) -> int:
        return len(self.summands)

    @property
    def nu(self) -> tuple[complex, ...]:
        return tuple(complex(c.nu) for c in self.summands)

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(c.d for c in self.summands)

    @model_validator(mode="after")
    def _check(self) -> "ComplexRep":
        if not 1 <= len(self.summands) <= 3:
            raise ValueError("complex representations have 1 to 3 summands")
        d = [c.d for c in self.summands]
        if any(a < b for a, b in zip(d, d[1:])):
            raise ValueError("d must be non-increasing")
        if len(d) == 2:
            x = 2 * complex(self.summands[0].nu - self.summands[1].nu) + d[0] - d[1] + 2
            if abs(x.imag) < 1e-12 and x.real <= 1e-12 and _near_even(x.real):
                raise ValueError("reducible principal series of GL(2,C)")
        return self


RepParam = Annotated[
    Union[RealGL2PS, RealGL2DS, RealGL3PS, RealGL3GPS, ComplexRep],
    Field(discriminator="kind"),
]


def _near_even(x: float) -> bool:
    return abs(x / 2 - round(x / 2)) < 1e-12


class WeilSummand(BaseModel):
    """Irreducible summand of a Weil group parameter.

    Over R a ``char`` carries delta in ``index`` and a ``twodim`` carries
    kappa; over C every summand is a ``char`` with ``index`` = d.
    """

    kind: Literal["char", "twodim"] = Field(..., description="Summand type")
    nu: ComplexNumber = Field(..., description="nu")
    index: int = Field(..., description="delta, kappa or d")

    class Config:
        frozen = True

    def sort_key(self) -> tuple[int, int, float, float]:
        nu = complex(self.nu)
        return (0 if self.kind == "char" else 1, self.index, nu.real, nu.imag)


class WeilParam(BaseModel):
    """Multiset of Weil group summands over R or C."""

    field: FieldTag = Field(..., description="Base field")
    summands: tuple[WeilSummand, ...] = Field(
        ..., description="Summands, canonically ordered"
    )

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check(self) -> "WeilParam":
        for summand in self.summands:
            if self.field == "C" and summand.kind != "char":
                raise ValueError("over C every summand is a character")
            real_char = self.field == "R" and summand.kind == "char"
            if real_char and summand.index not in (0, 1):
                raise ValueError("real characters carry delta in {0, 1}")
            if self.field == "R" and summand.kind == "twodim" and summand.index < 1:
                raise ValueError("two-dimensional summands need kappa >= 1")
        return self

    @property
    def dim(self) -> int:
        return sum(2 if s.kind == "twodim" else 1 for s in self.summands)


class TorusPoint(BaseModel):
    """Radial coordinates (y1, y2) of a diagonal torus element."""

    y1: float = Field(..., gt=0, description="First radial coordinate")
    y2: float = Field(1.0, gt=0, description="Second radial coordinate")

    class Config:
        frozen = True


class WhittakerSpec(BaseModel):
    """Selects one radial Whittaker function.

    ``ktype`` is lambda for GL(2) and for the K2-restricted GL(3) families;
    ``index`` is q, or the triple l in S_mu for the full GL(3,R) family, or
    the six-tuple l for the GL(3,C) core formula. ``shift`` is the integer
    l of the GL(2,C) family.
    """

    rep: RepParam
    epsilon: Literal[1, -1] = Field(1, description="Sign of the additive character")
    ktype: Optional[tuple[int, int]] = Field(None, description="K-type label lambda")
    index: Union[int, tuple[int, ...]] = Field(0, description="Vector index q or l")
    shift: int = Field(0, ge=0, description="GL(2,C) K-type shift l")
    method: Literal["auto", "closed", "mb", "series"] = Field(
        "auto", description="Evaluation route"
    )

    class Config:
        frozen = True


class ZetaConfig(BaseModel):
    """Radial quadrature settings for the zeta integrals."""

    u_min: float = Field(-6.0, description="Lower end of u = log y")
    u_max: float = Field(4.0, description="Upper end of u = log y")
    nodes: int = Field(240, ge=16, description="Nodes per radial axis")
    s_samples: tuple[ComplexNumber, ...] = Field((), description="Values of s")
    tol: float = Field(1e-8, gt=0, description="Pass threshold on rel_error")
    edge_tol: float = Field(1e-10, gt=0, description="Endpoint-to-peak ratio bound")
    max_widenings: int = Field(3, ge=0, description="Automatic range widenings")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check(self) -> "ZetaConfig":
        if not self.u_min < self.u_max:
            raise ValueError("u_min must be below u_max")
        return self


class ZetaReport(BaseModel):
    """One zeta-versus-L comparison."""

    pairing: str = Field(..., description="Pairing tag, e.g. R21 or C32")
    params_digest: str = Field("", description="Digest of the entry parameters")
    s: ComplexNumber = Field(..., description="Sample point")
    z_value: Optional[ComplexNumber] = Field(
        None, description="Numerical zeta integral"
    )
    expected: Optional[ComplexNumber] = Field(None, description="constant * L(s)")
    constant_used: Optional[ComplexNumber] = Field(None, description="Constant factor")
    rel_error: Optional[float] = Field(None, description="Relative error")
    tol: float = Field(1e-8, description="Threshold applied")
    status: Literal["pass", "fail", "error"] = Field("pass", description="Outcome")
    error: Optional[str] = Field(None, description="Error tag when status is error")
    message: Optional[str] = Field(None, description="Error message")
    diagnostics: dict[str, Any] = Field(default_factory=dict, description="Grid info")


class SuiteEntry(BaseModel):
    """One entry of a verification suite."""

    kind: Literal["identity", "zeta"] = Field(..., description="Entry type")
    name: str = Field(..., description="Identity id or pairing tag")
    field: Optional[FieldTag] = Field(None, description="Field for identities")
    params: dict[str, Any] = Field(default_factory=dict, description="Parameters")
    s: tuple[ComplexNumber, ...] = Field((), description="Zeta sample points")
    tol: Optional[float] = Field(None, description="Per-entry tolerance")

    class Config:
        extra = "forbid"


class Suite(BaseModel):
    """Versioned verification suite file."""

    schema_version: Literal[1] = Field(1, alias="schema", description="Schema version")
    name: str = Field("", description="Suite name")
    entries: list[SuiteEntry] = Field(default_factory=list, description="Entries")

    class Config:
        extra = "forbid"
        populate_by_name = True


class RunManifest(BaseModel):
    """Provenance record written next to every output."""

    command: str = Field(..., description="Subcommand")
    inputs_digest: str = Field(..., description="SHA-256 of the canonical inputs")
    tool_version: str = Field(..., description="Package version")
    config: dict[str, Any] = Field(
        default_factory=dict, description="Settings snapshot"
    )


def is_integer(x: complex, tol: float = 0.0) -> bool:
    """True when x is within tol of an integer on the real axis."""
    x = complex(x)
    return abs(x.imag) <= tol and abs(x.real - math.floor(x.real + 0.5)) <= tol

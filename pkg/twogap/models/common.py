"""Shared Pydantic models."""
from __future__ import annotations

import math
from typing import Annotated, Any, Dict, List, Literal, Optional

import mpmath
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator

from twogap.utils.errors import InvalidInputError


def _as_mpf(value: Any) -> Any:
    if hasattr(value, "_mpf_"):
        return value
    return mpmath.mpf(value)


ExtendedReal = Annotated[Any, BeforeValidator(_as_mpf)]


class TwoIntervalDomain(BaseModel):
    """The set [-A,-1] U [1,B]; B = 1 is the degenerate singleton case."""

    model_config = ConfigDict(frozen=True)

    A: float = Field(..., gt=1.0)
    B: float = Field(..., ge=1.0)

    @property
    def degenerate(self) -> bool:
        return self.B == 1.0

    def require_regular(self) -> "TwoIntervalDomain":
        if self.degenerate:
            raise InvalidInputError(f"B must exceed 1 for this operation (got B={self.B})")
        return self


class SingularInterval(BaseModel):
    """Interval with Jacobi endpoint weights (x-lower)^left * (upper-x)^right."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    left_exponent: float = Field(0.0, gt=-1.0, le=0.0)
    right_exponent: float = Field(0.0, gt=-1.0, le=0.0)

    @model_validator(mode="after")
    def _ordered(self) -> "SingularInterval":
        if not self.lower < self.upper:
            raise InvalidInputError(f"empty interval [{self.lower}, {self.upper}]")
        if math.isinf(self.lower):
            raise InvalidInputError("lower limit must be finite")
        return self

    @property
    def compactified(self) -> bool:
        return math.isinf(self.upper)


class GreenCharacteristics(BaseModel):
    """Conformal characteristics of the complement of [-A,-1] U [1,B]."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c_crit: float
    eta: float
    eta1: float
    eta2: Optional[float] = None
    alpha: float
    omega_c: float
    p: float
    rho: float
    c0_abs: float

    @property
    def domain(self) -> TwoIntervalDomain:
        return TwoIntervalDomain(A=self.a, B=self.b)

    @property
    def nome(self) -> float:
        """Theta nome h = exp(i*pi*tau) with tau = i*p."""
        return math.exp(-math.pi * self.p)

    @property
    def complete(self) -> bool:
        return self.eta2 is not None

    @property
    def constant_c(self) -> float:
        """Leading constant 2 (pi*eta1)^(-1/2) exp(-eta2)."""
        if self.eta2 is None:
            raise InvalidInputError("eta2 is not filled in")
        return 2.0 / math.sqrt(math.pi * self.eta1) * math.exp(-self.eta2)


class RectanglePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: float
    v: float


class RingPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    modulus: float = Field(..., ge=0.0)
    argument: float = 0.0

    @property
    def value(self) -> complex:
        return complex(
            self.modulus * math.cos(self.argument),
            self.modulus * math.sin(self.argument),
        )


class ThetaParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    h: float = Field(..., gt=0.0, lt=1.0)
    tol: float = Field(1e-14, gt=0.0)


class PredictionRecord(BaseModel):
    """Asymptotic prediction of L_n for one n."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    variant: Literal["theorem", "refined"] = "theorem"
    phase: float
    D_n: float
    G_DC: float
    a_n: float
    theta_ratio: float
    theta_ratio_raw: float
    L_theorem: float
    L_refined: Optional[float] = None


class PrecisionContext(BaseModel):
    """Decimal digits for the extended-precision arithmetic."""

    model_config = ConfigDict(frozen=True)

    digits: int = Field(..., ge=30)

    def context(self) -> mpmath.MPContext:
        ctx = mpmath.MPContext()
        ctx.dps = self.digits
        return ctx


class ChebPoly(BaseModel):
    """Polynomial in the Chebyshev basis of the reference interval [lower, upper]."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: float
    upper: float
    coefficients: List[ExtendedReal]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


class AlternationPoint(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: ExtendedReal
    sign: int
    endpoint: bool = False

    @field_validator("sign")
    @classmethod
    def _unit_sign(cls, value: int) -> int:
        if value not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        return value


class CertificateReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    passed: bool
    tol: float
    m: int
    K: int
    N: int
    max_error: ExtendedReal
    margin: float
    alternation: List[AlternationPoint]
    failed_check: Optional[str] = None


class BestApproxResult(BaseModel):
    """Output of the Remez oracle for one (domain, n)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: float
    b: float
    n: int
    digits: int
    poly: ChebPoly
    L: ExtendedReal
    bracket_lower: ExtendedReal
    bracket_upper: ExtendedReal
    alternation: List[AlternationPoint]
    m: int
    K: int
    N: int
    case_label: Optional[Literal["a", "b", "c"]] = None
    n1: int
    n2: int
    iterations: int

    @property
    def domain(self) -> TwoIntervalDomain:
        return TwoIntervalDomain(A=self.a, B=self.b)

    def to_payload(self) -> Dict[str, Any]:
        """JSON-ready dict; extended values become decimal strings with ``digits`` digits."""

        def render(value: Any) -> str:
            return mpmath.nstr(value, self.digits)

        payload = self.model_dump(exclude={"L", "bracket_lower", "bracket_upper", "poly", "alternation"})
        payload.update(
            L=render(self.L),
            bracket_lower=render(self.bracket_lower),
            bracket_upper=render(self.bracket_upper),
            poly={
                "lower": self.poly.lower,
                "upper": self.poly.upper,
                "coefficients": [render(c) for c in self.poly.coefficients],
            },
            alternation=[
                {"x": render(point.x), "sign": point.sign, "endpoint": point.endpoint} for point in self.alternation
            ],
        )
        return payload

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "BestApproxResult":
        """Rebuild a result from its JSON payload at its own precision."""

        ctx = PrecisionContext(digits=int(payload["digits"])).context()
        data = dict(payload)
        for key in ("L", "bracket_lower", "bracket_upper"):
            data[key] = ctx.mpf(data[key])
        poly = dict(data["poly"])
        poly["coefficients"] = [ctx.mpf(c) for c in poly["coefficients"]]
        data["poly"] = poly
        data["alternation"] = [
            {**point, "x": ctx.mpf(point["x"])} for point in data["alternation"]
        ]
        return cls.model_validate(data)


class RunConfig(BaseModel):
    """One CLI invocation."""

    model_config = ConfigDict(frozen=True)

    command: Literal["chars", "predict", "remez", "compare", "symmetric", "degenerate"]
    a: float = Field(..., gt=1.0)
    b: float = Field(2.0, ge=1.0)
    n_lo: int = Field(1, ge=0)
    n_hi: int = Field(1, ge=0)
    m: int = Field(0, ge=0)
    digits: Optional[int] = Field(None, ge=30)
    tol: Optional[float] = Field(None, gt=0.0)
    format: Optional[Literal["json", "csv"]] = None
    out: Optional[str] = None

    @model_validator(mode="after")
    def _nonempty_range(self) -> "RunConfig":
        if self.n_hi < self.n_lo:
            raise InvalidInputError(f"empty n-range {self.n_lo}..{self.n_hi}")
        return self

    @property
    def n_values(self) -> List[int]:
        return list(range(self.n_lo, self.n_hi + 1))

    @property
    def is_sweep(self) -> bool:
        return self.command == "compare" or self.n_hi > self.n_lo


class CompareRow(BaseModel):
    """One row of the prediction-versus-oracle sweep."""

    model_config = ConfigDict(frozen=True)

    n: int
    phase: Optional[float] = None
    D_n: Optional[float] = None
    G_DC: Optional[float] = None
    a_n: Optional[float] = None
    L_theorem: Optional[float] = None
    L_refined: Optional[float] = None
    L_remez: Optional[str] = None
    ratio_theorem: Optional[float] = None
    ratio_refined: Optional[float] = None
    n1: Optional[int] = None
    n2: Optional[int] = None
    case: Optional[str] = None
    normalized_remez: Optional[float] = None
    normalized_theorem: Optional[float] = None
    error: Optional[str] = None

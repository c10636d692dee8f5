"""HTTP service exposing the core operations over spec documents.

Every endpoint takes the document inline, computes with exact arithmetic and
returns JSON payloads whose rationals are strings.  Domain errors in the
input map to 400 responses carrying the error type and document path;
verification failures are ordinary 200 responses with failing check records.
"""

from __future__ import annotations

from typing import Optional, Union

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .errors import SpecError, WeilliftError
from .lifts import a_lift, complete_lift, epsilon_lift, vertical_lift
from .poisson import JacobiFailure, LogDensity, jacobi_check, modular_field
from .poly import Polynomial
from .prolong import check_scheffers, prolong_scalar
from .report import build_report, report_payload
from .specfile import (
    parse_document,
    parse_rational,
    render_afunction,
    render_polynomial,
    render_rational,
    render_tensor,
)
from .tensors import MultiVectorField, schouten


class SpecPayload(BaseModel):
    """The input document, embedded verbatim in each request."""

    spec: dict


class ProlongRequest(SpecPayload):
    function: str


class LiftRequest(SpecPayload):
    target: str
    lift: Union[str, dict] = Field(
        description='"complete", "vertical", {"a": k} or {"epsilon": [rationals]}'
    )


class BracketRequest(SpecPayload):
    u: str
    v: str


class ModularRequest(SpecPayload):
    bivector: str
    density: Optional[str] = Field(
        default=None, description="named function used as log-density; falls back "
        "to the document density, then to zero")


class VerifyRequest(SpecPayload):
    seed: Optional[int] = None
    cases: Optional[int] = None
    checks: Optional[list[str]] = None


class AlgebraInfo(BaseModel):
    dim_total: int
    nil_dim: int
    height: int
    power_dims: list[int]
    p: list[str]
    q_lower: list[list[str]]
    q_upper: list[list[str]]
    dual_basis: list[list[str]]


class ProlongResponse(BaseModel):
    function: str
    prolonged: dict
    scheffers_ok: bool


class LiftResponse(BaseModel):
    target: str
    lift: Union[str, dict]
    base_dim: int
    algebra_dim: int
    field: dict


class BracketResponse(BaseModel):
    u: str
    v: str
    bracket: dict


class ModularResponse(BaseModel):
    status: str
    bivector: str
    modular: Optional[dict] = None
    witness: Optional[dict] = None


def _error_response(exc: SpecError | WeilliftError, status: int = 400) -> JSONResponse:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, SpecError) and exc.path:
        payload["error"]["path"] = exc.path
    where = getattr(exc, "where", None)
    if where is not None:
        payload["error"]["where"] = list(where)
    return JSONResponse(status_code=status, content=payload)


def create_app() -> FastAPI:
    app = FastAPI(title="weillift", version=__version__,
                  description="Exact lifts of tensor and Poisson structures to "
                              "bundle patches over finite-dimensional algebras")

    @app.exception_handler(WeilliftError)
    async def _domain_error(_request, exc: WeilliftError):
        return _error_response(exc)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/algebra/validate", response_model=AlgebraInfo)
    def algebra_validate(payload: SpecPayload):
        doc = parse_document(payload.spec)
        frob = doc.frobenius
        return AlgebraInfo(
            dim_total=doc.algebra.dim_total,
            nil_dim=doc.algebra.nil_dim,
            height=doc.algebra.height,
            power_dims=list(doc.algebra.power_dims),
            p=[render_rational(v) for v in frob.p],
            q_lower=[[render_rational(v) for v in row] for row in frob.q_lower],
            q_upper=[[render_rational(v) for v in row] for row in frob.q_upper],
            dual_basis=[[render_rational(v) for v in row] for row in frob.dual_basis],
        )

    @app.post("/prolong", response_model=ProlongResponse)
    def prolong(payload: ProlongRequest):
        doc = parse_document(payload.spec)
        poly = doc.function(payload.function)
        lifted = prolong_scalar(poly, doc.algebra)
        ok, _ = check_scheffers(lifted)
        return ProlongResponse(function=payload.function,
                               prolonged=render_afunction(lifted),
                               scheffers_ok=ok)

    @app.post("/lift", response_model=LiftResponse)
    def lift(payload: LiftRequest):
        doc = parse_document(payload.spec)
        tensor = doc.tensor(payload.target)
        frob = doc.frobenius
        selector = payload.lift
        if selector == "complete":
            lifted = complete_lift(frob, tensor)
        elif selector == "vertical":
            lifted = vertical_lift(frob, tensor)
        elif isinstance(selector, dict) and "a" in selector:
            lifted = a_lift(frob, tensor, int(selector["a"]))
        elif isinstance(selector, dict) and "epsilon" in selector:
            coords = [parse_rational(v, f"lift.epsilon[{i}]")
                      for i, v in enumerate(selector["epsilon"])]
            lifted = epsilon_lift(frob, tensor, doc.algebra.element(coords))
        else:
            raise SpecError(f"unknown lift selector {selector!r}", path="lift")
        return LiftResponse(
            target=payload.target,
            lift=selector,
            base_dim=lifted.base_dim,
            algebra_dim=frob.dim_total,
            field=render_tensor(lifted.field),
        )

    @app.post("/bracket", response_model=BracketResponse)
    def bracket(payload: BracketRequest):
        doc = parse_document(payload.spec)
        u = doc.tensor(payload.u)
        v = doc.tensor(payload.v)
        if not isinstance(u, MultiVectorField) or not isinstance(v, MultiVectorField):
            raise SpecError("bracket operands must be multivector fields", path="bracket")
        return BracketResponse(u=payload.u, v=payload.v,
                               bracket=render_tensor(schouten(u, v)))

    @app.post("/modular", response_model=ModularResponse)
    def modular(payload: ModularRequest):
        doc = parse_document(payload.spec)
        w = doc.tensor(payload.bivector)
        if not isinstance(w, MultiVectorField) or w.degree != 2:
            raise SpecError(f"'{payload.bivector}' is not a bivector field",
                            path=f"tensors.{payload.bivector}")
        result = jacobi_check(w)
        if isinstance(result, JacobiFailure):
            return ModularResponse(
                status="jacobi_failed",
                bivector=payload.bivector,
                witness={
                    "triple": list(result.bracket_triple),
                    "component": render_polynomial(result.bracket_component),
                },
            )
        if payload.density is not None:
            density = LogDensity(doc.function(payload.density))
        elif doc.density is not None:
            density = doc.density
        else:
            density = LogDensity(Polynomial.zero(doc.dim))
        field = modular_field(result, density)
        return ModularResponse(status="ok", bivector=payload.bivector,
                               modular=render_tensor(field))

    @app.post("/verify")
    def verify(payload: VerifyRequest) -> dict:
        doc = parse_document(payload.spec)
        report = build_report(doc, payload.seed, payload.cases, payload.checks)
        return report_payload(report)

    return app


app = create_app()

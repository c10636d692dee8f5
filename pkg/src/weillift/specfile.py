"""Input documents: parsing, validation and serialization of core objects.

A document is JSON with exact rationals written as strings ("3/4") or ints.
All indices are 0-based.  Polynomials are term lists ``{"c": rational,
"e": [exponents]}``.  See the README for a complete schema walkthrough.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .algebra import FrobeniusStructure, WeilAlgebra, attach_frobenius, build_from_constants, build_plural
from .errors import BadRational, ParseError, UnknownReference, WeilliftError
from .poisson import LogDensity
from .poly import Polynomial
from .prolong import AFunction, ChartMap
from .tensors import DifferentialForm, MixedTensorField, MultiVectorField

FieldLike = Union[DifferentialForm, MultiVectorField, MixedTensorField]


@dataclass
class SpecDocument:
    algebra: WeilAlgebra
    frobenius: FrobeniusStructure
    dim: int
    functions: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    charts: dict = field(default_factory=dict)
    density: Optional[LogDensity] = None
    suite_seed: int = 42
    suite_cases: int = 20

    def function(self, name: str) -> Polynomial:
        if name not in self.functions:
            raise UnknownReference(f"unknown function '{name}'", path=f"functions.{name}")
        return self.functions[name]

    def tensor(self, name: str) -> FieldLike:
        if name not in self.tensors:
            raise UnknownReference(f"unknown tensor '{name}'", path=f"tensors.{name}")
        return self.tensors[name]

    def chart(self, name: str) -> ChartMap:
        if name not in self.charts:
            raise UnknownReference(f"unknown chart '{name}'", path=f"charts.{name}")
        return self.charts[name]


def parse_rational(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise BadRational(f"not a rational: {value!r}", path=path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise BadRational(f"not a rational: {value!r} ({exc})", path=path) from None
    raise BadRational(f"not a rational: {value!r}", path=path)


def render_rational(value: Fraction) -> str:
    return str(value)


def parse_polynomial(terms, num_vars: int, path: str) -> Polynomial:
    if not isinstance(terms, list):
        raise ParseError("polynomial must be a list of terms", path=path)
    acc = {}
    for idx, term in enumerate(terms):
        tpath = f"{path}[{idx}]"
        if not isinstance(term, dict) or "c" not in term or "e" not in term:
            raise ParseError('term must be {"c": rational, "e": [ints]}', path=tpath)
        coeff = parse_rational(term["c"], f"{tpath}.c")
        expo = term["e"]
        if not isinstance(expo, list) or len(expo) != num_vars:
            raise ParseError(f"exponent vector must have {num_vars} entries", path=f"{tpath}.e")
        if any(not isinstance(e, int) or e < 0 for e in expo):
            raise ParseError("exponents must be non-negative integers", path=f"{tpath}.e")
        key = tuple(expo)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return Polynomial(num_vars, acc)


def render_polynomial(poly: Polynomial) -> list:
    return [
        {"c": render_rational(c), "e": list(e)}
        for e, c in poly.sorted_terms()
    ]


def parse_tensor(record, path: str) -> FieldLike:
    if not isinstance(record, dict):
        raise ParseError("tensor record must be an object", path=path)
    try:
        dim = int(record["dim"])
        cov, contra = (int(v) for v in record["type"])
    except (KeyError, TypeError, ValueError):
        raise ParseError('tensor record needs "dim" and "type": [k, l]', path=path) from None
    antisym = bool(record.get("antisymmetric", False))
    raw = record.get("components", [])
    if not isinstance(raw, list):
        raise ParseError("components must be a list", path=path)

    if antisym:
        if cov and contra:
            raise ParseError("antisymmetric records must be purely covariant or contravariant",
                             path=path)
        degree = cov or contra
        slot = "lower" if cov else "upper"
        comps = {}
        for idx, entry in enumerate(raw):
            epath = f"{path}.components[{idx}]"
            key = entry.get(slot)
            if key is None and degree == 0:
                key = []
            if not isinstance(key, list) or len(key) != degree:
                raise ParseError(f'"{slot}" must list {degree} indices', path=epath)
            poly = parse_polynomial(entry.get("poly", []), dim, f"{epath}.poly")
            comps[tuple(key)] = comps.get(tuple(key), Polynomial.zero(dim)) + poly
        try:
            cls = DifferentialForm if cov else MultiVectorField
            return cls(dim, degree, comps)
        except WeilliftError as exc:
            raise ParseError(str(exc), path=path) from None

    comps = {}
    for idx, entry in enumerate(raw):
        epath = f"{path}.components[{idx}]"
        lower = entry.get("lower", [])
        upper = entry.get("upper", [])
        if not isinstance(lower, list) or len(lower) != cov:
            raise ParseError(f'"lower" must list {cov} indices', path=epath)
        if not isinstance(upper, list) or len(upper) != contra:
            raise ParseError(f'"upper" must list {contra} indices', path=epath)
        poly = parse_polynomial(entry.get("poly", []), dim, f"{epath}.poly")
        key = (tuple(lower), tuple(upper))
        comps[key] = comps.get(key, Polynomial.zero(dim)) + poly
    try:
        return MixedTensorField(dim, cov, contra, comps)
    except WeilliftError as exc:
        raise ParseError(str(exc), path=path) from None


def render_tensor(t: FieldLike) -> dict:
    if isinstance(t, DifferentialForm):
        return {
            "dim": t.patch_dim,
            "type": [t.degree, 0],
            "antisymmetric": True,
            "components": [
                {"lower": list(k), "poly": render_polynomial(p)} for k, p in t.sorted_items()
            ],
        }
    if isinstance(t, MultiVectorField):
        return {
            "dim": t.patch_dim,
            "type": [0, t.degree],
            "antisymmetric": True,
            "components": [
                {"upper": list(k), "poly": render_polynomial(p)} for k, p in t.sorted_items()
            ],
        }
    return {
        "dim": t.patch_dim,
        "type": [t.cov, t.contra],
        "antisymmetric": False,
        "components": [
            {"lower": list(lo), "upper": list(up), "poly": render_polynomial(p)}
            for (lo, up), p in t.sorted_items()
        ],
    }


def render_afunction(func: AFunction) -> dict:
    return {
        "base_dim": func.base_dim,
        "algebra_dim": func.algebra.dim_total,
        "components": [render_polynomial(c) for c in func.components],
    }


def parse_algebra(record, path: str) -> WeilAlgebra:
    if not isinstance(record, dict):
        raise ParseError("algebra record must be an object", path=path)
    if "plural" in record:
        n = record["plural"]
        if not isinstance(n, int) or n < 0:
            raise ParseError('"plural" must be a non-negative integer', path=path)
        return build_plural(n)
    if "dim" not in record or "gamma" not in record:
        raise ParseError('algebra record needs "plural" or "dim" + "gamma"', path=path)
    dim = record["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError('"dim" must be a positive integer', path=path)
    gamma = record["gamma"]
    try:
        cube = [
            [
                [parse_rational(gamma[a][b][c], f"{path}.gamma[{a}][{b}][{c}]")
                 for c in range(dim)]
                for b in range(dim)
            ]
            for a in range(dim)
        ]
    except (IndexError, TypeError, KeyError):
        raise ParseError(f'"gamma" must be a {dim}^3 nested array', path=f"{path}.gamma") from None
    return build_from_constants(dim, cube)


def parse_chart(record, dim: int, path: str) -> ChartMap:
    if not isinstance(record, dict) or "components" not in record:
        raise ParseError('chart record needs "components" (and usually "inverse")', path=path)
    comps = [
        parse_polynomial(entry, dim, f"{path}.components[{i}]")
        for i, entry in enumerate(record["components"])
    ]
    inverse = None
    if record.get("inverse") is not None:
        inverse = [
            parse_polynomial(entry, dim, f"{path}.inverse[{i}]")
            for i, entry in enumerate(record["inverse"])
        ]
    try:
        return ChartMap(dim, len(comps), comps, inverse)
    except WeilliftError as exc:
        raise ParseError(str(exc), path=path) from None


def parse_document(data) -> SpecDocument:
    if not isinstance(data, dict):
        raise ParseError("document root must be an object", path="$")
    if "algebra" not in data:
        raise ParseError('document needs an "algebra" record', path="$")
    algebra = parse_algebra(data["algebra"], "algebra")

    frob_record = data.get("frobenius", {})
    if not isinstance(frob_record, dict) or "p" not in frob_record:
        raise ParseError('document needs "frobenius": {"p": [rationals]}', path="frobenius")
    p = [parse_rational(v, f"frobenius.p[{i}]") for i, v in enumerate(frob_record["p"])]
    frobenius = attach_frobenius(algebra, p)

    dim = data.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError('document needs a positive manifold "dim"', path="dim")

    functions = {}
    for name, terms in (data.get("functions") or {}).items():
        functions[name] = parse_polynomial(terms, dim, f"functions.{name}")

    tensors = {}
    for name, record in (data.get("tensors") or {}).items():
        t = parse_tensor(record, f"tensors.{name}")
        if t.patch_dim != dim:
            raise ParseError(f"tensor '{name}' has dim {t.patch_dim}, document dim is {dim}",
                             path=f"tensors.{name}")
        tensors[name] = t

    charts = {}
    for name, record in (data.get("charts") or {}).items():
        charts[name] = parse_chart(record, dim, f"charts.{name}")

    density = None
    if data.get("density") is not None:
        record = data["density"]
        if not isinstance(record, dict) or "log_density" not in record:
            raise ParseError('density record is {"log_density": [terms]}', path="density")
        density = LogDensity(parse_polynomial(record["log_density"], dim, "density.log_density"))

    suite = data.get("suite") or {}
    seed = suite.get("seed", 42)
    cases = suite.get("cases", 20)
    if not isinstance(seed, int) or not isinstance(cases, int) or cases < 1:
        raise ParseError('"suite" takes integer "seed" and positive "cases"', path="suite")

    return SpecDocument(
        algebra=algebra,
        frobenius=frobenius,
        dim=dim,
        functions=functions,
        tensors=tensors,
        charts=charts,
        density=density,
        suite_seed=seed,
        suite_cases=cases,
    )


def parse_spec(source) -> SpecDocument:
    """Parse a document from a path, a JSON string, or a dict."""
    if isinstance(source, dict):
        return parse_document(source)
    text = source
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and not source.lstrip().startswith("{"):
        try:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ParseError(f"cannot read spec file: {exc}", path=str(source)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", path="$") from None
    return parse_document(data)

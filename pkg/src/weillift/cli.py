"""Command-line client for the weillift service.

Every subcommand builds an HTTP request.  By default the request is routed
to an in-process instance of the service, so the CLI works standalone; pass
``--server`` to talk to a running instance instead.

Exit codes: 0 success / all checks passed, 1 verification failure,
2 input or transport error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from . import __version__


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    try:
        with _client(server) as client:
            response = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"transport error: {exc}", err=True)
        sys.exit(2)
    try:
        body = response.json()
    except ValueError:
        click.echo(f"malformed response (status {response.status_code})", err=True)
        sys.exit(2)
    return response.status_code, body


def _load_spec(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"cannot read spec file: {exc}", err=True)
        sys.exit(2)


def _emit(payload: dict, fmt: str, human_lines=None):
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")))
    else:
        for line in (human_lines or [json.dumps(payload, sort_keys=True, indent=2)]):
            click.echo(line)


def _bail_on_error(status: int, body: dict):
    if status >= 400:
        error = body.get("error", body)
        click.echo(f"input error: {json.dumps(error, sort_keys=True)}", err=True)
        sys.exit(2)


def _poly_text(terms: list) -> str:
    if not terms:
        return "0"
    chunks = []
    for term in terms:
        factors = [f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                   for i, e in enumerate(term["e"]) if e]
        body = "*".join(factors)
        chunks.append(f"{term['c']}*{body}" if body else str(term["c"]))
    return " + ".join(chunks)


def _tensor_lines(record: dict) -> list[str]:
    kind = "antisymmetric" if record.get("antisymmetric") else "mixed"
    lines = [f"dim {record['dim']}  type {record['type']}  ({kind})"]
    for comp in record.get("components", []):
        key_bits = []
        if comp.get("lower"):
            key_bits.append("lower " + ",".join(str(v) for v in comp["lower"]))
        if comp.get("upper"):
            key_bits.append("upper " + ",".join(str(v) for v in comp["upper"]))
        key = "; ".join(key_bits) if key_bits else "scalar"
        lines.append(f"  [{key}]  {_poly_text(comp['poly'])}")
    if not record.get("components"):
        lines.append("  (zero)")
    return lines


@click.group()
@click.version_option(version=__version__, prog_name="weillift")
def main():
    """Exact lifts of tensor and Poisson structures to bundle patches."""


_spec_opt = click.option("--spec", "spec_path", required=True,
                         type=click.Path(exists=True, dir_okay=False),
                         help="spec document (JSON)")
_server_opt = click.option("--server", default=None,
                           help="base URL of a running service; in-process by default")
_format_opt = click.option("--format", "fmt", default="human",
                           type=click.Choice(["human", "json"]))


@main.command()
@_spec_opt
@_server_opt
@_format_opt
def validate(spec_path, server, fmt):
    """Validate the algebra and Frobenius covector; print derived data."""
    status, body = _post(server, "/algebra/validate", {"spec": _load_spec(spec_path)})
    _bail_on_error(status, body)
    lines = [
        f"algebra dim {body['dim_total']} (nilpotent part {body['nil_dim']}), "
        f"height {body['height']}, power dims {body['power_dims']}",
        f"p = {body['p']}",
        "q = " + json.dumps(body["q_lower"]),
        "q^-1 = " + json.dumps(body["q_upper"]),
    ]
    _emit(body, fmt, lines)


@main.command()
@_spec_opt
@click.option("--function", required=True, help="name in the document's functions table")
@_server_opt
@_format_opt
def prolong(spec_path, function, server, fmt):
    """Prolong a named polynomial to an algebra-valued function."""
    status, body = _post(server, "/prolong",
                         {"spec": _load_spec(spec_path), "function": function})
    _bail_on_error(status, body)
    lines = [f"prolongation of '{function}' "
             f"(smoothness check: {'ok' if body['scheffers_ok'] else 'FAILED'})"]
    for slot, comp in enumerate(body["prolonged"]["components"]):
        lines.append(f"  slot {slot}: {_poly_text(comp)}")
    _emit(body, fmt, lines)


@main.command()
@_spec_opt
@click.option("--target", required=True, help="name in the document's tensors table")
@click.option("--lift", "lift_selector", default="complete",
              help='"complete", "vertical", "a:K", or "epsilon:c0,c1,..."')
@_server_opt
@_format_opt
def lift(spec_path, target, lift_selector, server, fmt):
    """Lift a named tensor field to the bundle patch."""
    selector: object = lift_selector
    if lift_selector.startswith("a:"):
        selector = {"a": int(lift_selector[2:])}
    elif lift_selector.startswith("epsilon:"):
        selector = {"epsilon": lift_selector[len("epsilon:"):].split(",")}
    status, body = _post(server, "/lift", {"spec": _load_spec(spec_path),
                                           "target": target, "lift": selector})
    _bail_on_error(status, body)
    lines = [f"lift of '{target}' by {json.dumps(body['lift'])} "
             f"(base dim {body['base_dim']}, algebra dim {body['algebra_dim']})"]
    lines += _tensor_lines(body["field"])
    _emit(body, fmt, lines)


@main.command()
@_spec_opt
@click.option("--u", "u_name", required=True)
@click.option("--v", "v_name", required=True)
@_server_opt
@_format_opt
def bracket(spec_path, u_name, v_name, server, fmt):
    """Bracket two named multivector fields."""
    status, body = _post(server, "/bracket", {"spec": _load_spec(spec_path),
                                              "u": u_name, "v": v_name})
    _bail_on_error(status, body)
    lines = [f"[{u_name}, {v_name}]:"] + _tensor_lines(body["bracket"])
    _emit(body, fmt, lines)


@main.command()
@_spec_opt
@click.option("--bivector", required=True, help="name of a bivector field in the document")
@click.option("--density", default=None, help="named function used as log-density")
@_server_opt
@_format_opt
def modular(spec_path, bivector, density, server, fmt):
    """Modular vector field of a named Poisson bivector."""
    payload = {"spec": _load_spec(spec_path), "bivector": bivector}
    if density:
        payload["density"] = density
    status, body = _post(server, "/modular", payload)
    _bail_on_error(status, body)
    if body["status"] != "ok":
        _emit(body, fmt, [f"'{bivector}' fails the Jacobi identity at triple "
                          f"{body['witness']['triple']}: "
                          f"{_poly_text(body['witness']['component'])}"])
        sys.exit(1)
    lines = [f"modular vector field of '{bivector}':"] + _tensor_lines(body["modular"])
    _emit(body, fmt, lines)


@main.command()
@_spec_opt
@click.option("--seed", type=int, default=None, help="suite seed (document default: 42)")
@click.option("--cases", type=int, default=None, help="cases per check (document default: 20)")
@click.option("--check", "checks", multiple=True, help="run only the named checks")
@_server_opt
@_format_opt
def verify(spec_path, seed, cases, checks, server, fmt):
    """Run the full verification suite and report per-law results."""
    payload: dict = {"spec": _load_spec(spec_path)}
    if seed is not None:
        payload["seed"] = seed
    if cases is not None:
        payload["cases"] = cases
    if checks:
        payload["checks"] = list(checks)
    status, body = _post(server, "/verify", payload)
    _bail_on_error(status, body)
    lines = [
        f"weillift verification report (tool {body['version']}, schema {body['schema']})",
        f"seed {body['seed']}   cases/check {body['cases']}",
        "calibration: " + "  ".join(f"{k}={v}" for k, v in sorted(body["calibration"].items())),
        "",
    ]
    width = max((len(c["name"]) for c in body["checks"]), default=10)
    for c in body["checks"]:
        mark = "PASS" if c["status"] == "pass" else "FAIL"
        lines.append(f"{mark}  {c['name'].ljust(width)}  cases={c['cases']:<5} {c['law']}")
        if c.get("counterexample"):
            lines.append("      counterexample: "
                         + json.dumps(c["counterexample"], sort_keys=True))
        if c.get("details"):
            lines.append("      recorded: "
                         + ", ".join(f"{k}={v}" for k, v in sorted(c["details"].items())))
    lines.append("")
    lines.append(f"summary: {body['summary']['pass']} passed, "
                 f"{body['summary']['fail']} failed, {body['summary']['total']} total")
    _emit(body, fmt, lines)
    sys.exit(0 if body["summary"]["fail"] == 0 else 1)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the verification service."""
    import uvicorn

    uvicorn.run("weillift.service:app", host=host, port=port)


if __name__ == "__main__":
    main()

"""Command-line front end.

Thin client: every subcommand sends requests to the HTTP service (an
in-process instance by default, a remote one with --url) and prints the
JSON records it gets back, one per line.  Heights, ranks, and verify
reports stream entry by entry so a bad line never aborts the run.

Exit codes: 0 = all pass/skip, 2 = unconditional FAIL, 3 = input error.
Output on stdout is deterministic for fixed (corpus, flags); timings go
to stderr.
"""

from __future__ import annotations

import json
import sys
import time

import click

from .corpus import iter_corpus
from .errors import InputError
from .pipeline import SCHEMA, summarize

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_INPUT = 3


class ServiceClient:
    """POSTs to a remote service, or to an in-process app when url is None."""

    def __init__(self, url: str | None):
        if url is not None:
            import httpx

            self._client = httpx.Client(base_url=url, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from starlette.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app(), base_url="http://relheight")

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        resp = self._client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            body = {"detail": resp.text}
        return resp.status_code, body


def _emit(obj: dict) -> None:
    click.echo(json.dumps(obj, ensure_ascii=False))


def _error_record(message: str) -> dict:
    return {"schema": SCHEMA, "type": "error", "error": message}


def _parse_base(text: str | None) -> list[int] | None:
    """--base accepts inline ascending coefficients "c0,c1,..." or a file
    containing a JSON integer list."""
    if text is None:
        return None
    try:
        if "," in text or text.lstrip("-").isdigit():
            coeffs = [int(t) for t in text.split(",")]
        else:
            with open(text, "r", encoding="utf-8") as fh:
                coeffs = json.load(fh)
            if not (
                isinstance(coeffs, list)
                and coeffs
                and all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs)
            ):
                raise InputError("base file must contain a JSON integer list")
    except (ValueError, OSError) as exc:
        raise InputError(f"bad --base value: {exc}") from exc
    if not coeffs or coeffs[-1] == 0:
        raise InputError("base polynomial needs a nonzero leading coefficient")
    return coeffs


def _entry_payload(entry, base_override: list[int] | None) -> dict:
    payload: dict = {"name": entry.name, "coeffs": list(entry.coeffs)}
    base = list(entry.base) if entry.base is not None else base_override
    if base is not None:
        payload["base"] = base
    if entry.galois_tower is not None:
        payload["galois_tower"] = entry.galois_tower
    return payload


def _stream(corpus_file, client: ServiceClient, per_entry) -> int:
    """Run per_entry for each well-formed line; emit errors in-band.

    Returns the exit code: 3 if any line failed to parse or any request
    was rejected, else 0.
    """
    had_input_error = False
    for _lineno, entry, error in iter_corpus(corpus_file):
        if error is not None:
            had_input_error = True
            _emit(_error_record(error))
            continue
        status, body = per_entry(entry)
        if status != 200:
            had_input_error = True
            _emit(_error_record(f"{entry.name}: {body.get('detail', body)}"))
            continue
        _emit(body["record"] if "record" in body else body)
    return EXIT_INPUT if had_input_error else EXIT_OK


@click.group()
@click.option("--url", default=None, help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx: click.Context, url: str | None) -> None:
    """Heights, multiplicative ranks, and explicit height lower bounds."""
    ctx.obj = ServiceClient(url)


@main.command()
@click.argument("corpus_file", type=click.File("r", encoding="utf-8"))
@click.option("--precision", default=128, show_default=True, help="Working precision in bits.")
@click.pass_obj
def height(client: ServiceClient, corpus_file, precision: int) -> None:
    """Mahler measure and Weil height for each corpus entry."""

    def per_entry(entry):
        return client.post(
            "/height",
            {"entry": _entry_payload(entry, None), "precision": precision},
        )

    sys.exit(_stream(corpus_file, client, per_entry))


@main.command()
@click.argument("corpus_file", type=click.File("r", encoding="utf-8"))
@click.option("--base", default=None, help="Base field coefficients 'c0,c1,...' or a JSON file.")
@click.option("--bound", default=6, show_default=True, help="Exponent bound for relation search.")
@click.option("--precision", default=128, show_default=True, help="Working precision in bits.")
@click.pass_obj
def rank(client: ServiceClient, corpus_file, base, bound: int, precision: int) -> None:
    """Relative degree and multiplicative rank of the conjugates over K."""
    try:
        base_coeffs = _parse_base(base)
    except InputError as exc:
        _emit(_error_record(str(exc)))
        sys.exit(EXIT_INPUT)

    def per_entry(entry):
        return client.post(
            "/rank",
            {
                "entry": _entry_payload(entry, base_coeffs),
                "exponent_bound": bound,
                "precision": precision,
            },
        )

    sys.exit(_stream(corpus_file, client, per_entry))


@main.command()
@click.option("--theorem", required=True, type=click.Choice(["1", "2", "voutier", "corollary"]))
@click.option("--eps", default="1/2", show_default=True, help="Rational epsilon, e.g. 1/2.")
@click.option("--r", "r_value", default=None, type=int, help="Override r (default: smallest integer > 1/eps).")
@click.option("--cad", default=1.0, show_default=True, help="Placeholder discriminant-aware constant c_AD.")
@click.option("--precision", default=128, show_default=True)
@click.option("--d", type=int, default=None, help="Degree of alpha over Q.")
@click.option("--delta", type=int, default=None, help="Relative degree [K(alpha):K].")
@click.option("--tau", type=int, default=None, help="Degree [K:Q].")
@click.option("--rho", type=int, default=None, help="Multiplicative rank of the conjugates.")
@click.option("--e", "e_value", type=int, default=None, help="Torsion order of K(alpha).")
@click.option("--f", "f_value", type=int, default=None, help="Torsion order of K.")
@click.option("--eta", type=int, default=None, help="Relative degree in the rank-r bound.")
@click.option("--d-alpha-e", type=int, default=None, help="Degree of alpha^e over Q.")
@click.option("--disc-abs", type=int, default=None, help="|disc| of the base field data.")
@click.option("--galois-tower/--no-galois-tower", default=True, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output instead of a table.")
@click.pass_obj
def bound(
    client: ServiceClient,
    theorem: str,
    eps: str,
    r_value,
    cad: float,
    precision: int,
    d,
    delta,
    tau,
    rho,
    e_value,
    f_value,
    eta,
    d_alpha_e,
    disc_abs,
    galois_tower: bool,
    as_json: bool,
) -> None:
    """Evaluate one theorem's lower-bound constants for given parameters."""
    params: dict = {}
    for key, value in [
        ("d", d),
        ("delta", delta),
        ("tau", tau),
        ("rho", rho),
        ("e", e_value),
        ("f", f_value),
        ("eta", eta),
        ("d_alpha_e", d_alpha_e),
        ("disc_abs", disc_abs),
    ]:
        if value is not None:
            params[key] = value
    if not galois_tower:
        params["galois_tower"] = False
    payload = {
        "theorem": theorem,
        "params": params,
        "options": {"eps": eps, "cad": cad, "precision": precision},
    }
    if r_value is not None:
        payload["r"] = r_value
    status, body = client.post("/bound", payload)
    if status != 200:
        _emit(_error_record(str(body.get("detail", body))))
        sys.exit(EXIT_INPUT)
    for report in body["reports"]:
        if as_json:
            _emit({"schema": SCHEMA, "type": "bound", **report})
        else:
            flag = " (conditional)" if report["conditional"] else ""
            click.echo(
                f"{report['bound_id']:<24} {report['case']:<40} "
                f"value={report['value']} logmag={report['logmag']}{flag}"
            )
    sys.exit(EXIT_OK)


@main.command()
@click.argument("corpus_file", type=click.File("r", encoding="utf-8"))
@click.option("--base", default=None, help="Base field coefficients 'c0,c1,...' or a JSON file.")
@click.option("--eps", default="1/2", show_default=True, help="Rational epsilon, e.g. 1/2.")
@click.option("--cad", default=1.0, show_default=True, help="Placeholder discriminant-aware constant c_AD.")
@click.option("--precision", default=128, show_default=True)
@click.option("--bound", "exponent_bound", default=5, show_default=True, help="Exponent bound for relation search.")
@click.option("--strict-unconditional", is_flag=True, help="Ignore conditional bounds in verdicts.")
@click.pass_obj
def verify(
    client: ServiceClient,
    corpus_file,
    base,
    eps: str,
    cad: float,
    precision: int,
    exponent_bound: int,
    strict_unconditional: bool,
) -> None:
    """Check that each entry's height dominates every applicable bound."""
    try:
        base_coeffs = _parse_base(base)
    except InputError as exc:
        _emit(_error_record(str(exc)))
        sys.exit(EXIT_INPUT)
    records: list[dict] = []
    had_input_error = False
    for _lineno, entry, error in iter_corpus(corpus_file):
        if error is not None:
            had_input_error = True
            _emit(_error_record(error))
            continue
        started = time.monotonic()
        status, body = client.post(
            "/verify",
            {
                "entries": [_entry_payload(entry, base_coeffs)],
                "options": {"eps": eps, "cad": cad, "precision": precision},
                "strict_unconditional": strict_unconditional,
                "exponent_bound": exponent_bound,
            },
        )
        elapsed = time.monotonic() - started
        if status != 200:
            had_input_error = True
            _emit(_error_record(f"{entry.name}: {body.get('detail', body)}"))
            continue
        record = body["records"][0]
        records.append(record)
        _emit(record)
        click.echo(f"{entry.name}: {record['verdict']} in {elapsed:.2f}s", err=True)
    summary = summarize(records)
    _emit(summary)
    if summary["exit_code"] == EXIT_FAIL:
        sys.exit(EXIT_FAIL)
    sys.exit(EXIT_INPUT if had_input_error else EXIT_OK)


if __name__ == "__main__":
    main()

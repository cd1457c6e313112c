"""FastAPI application exposing height, rank, bound, and verify endpoints.

Thin HTTP wrapper over relheight.pipeline: every endpoint converts its
request into the pipeline's plain-dict records and returns them
unchanged, so HTTP responses and CLI output carry identical payloads.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import pipeline
from ..errors import DomainError, HypothesisViolation, InputError, RelHeightError
from .schemas import (
    BoundRequest,
    BoundResponse,
    HeightRequest,
    RankRequest,
    RecordResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="relheight",
        description=(
            "Weil heights, Mahler measures, multiplicative ranks, and "
            "explicit height lower bounds for algebraic numbers over "
            "number fields."
        ),
        version="1.0.0",
    )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "schema": pipeline.SCHEMA}

    @app.post("/height", response_model=RecordResponse)
    def height(req: HeightRequest) -> RecordResponse:
        entry = _entry(req.entry)
        # height_record reports per-entry computation failures in-band.
        return RecordResponse(record=pipeline.height_record(entry, req.precision))

    @app.post("/rank", response_model=RecordResponse)
    def rank(req: RankRequest) -> RecordResponse:
        entry = _entry(req.entry)
        return RecordResponse(
            record=pipeline.rank_record(entry, req.exponent_bound, req.precision)
        )

    @app.post("/bound", response_model=BoundResponse)
    def bound(req: BoundRequest) -> BoundResponse:
        cfg = _config(req.options)
        params = dict(req.params)
        if req.r is not None:
            params["r"] = req.r
        try:
            reports = pipeline.evaluate_bound_request(req.theorem, params, cfg)
        except KeyError as exc:
            raise HTTPException(422, f"missing parameter: {exc.args[0]}") from exc
        except (InputError, DomainError, HypothesisViolation) as exc:
            raise HTTPException(422, str(exc)) from exc
        except RelHeightError as exc:
            raise HTTPException(500, str(exc)) from exc
        return BoundResponse(schema_id=pipeline.SCHEMA, reports=reports)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        cfg = _config(req.options)
        records = [
            pipeline.verify_entry(
                _entry(e), cfg, req.strict_unconditional, req.exponent_bound
            )
            for e in req.entries
        ]
        return VerifyResponse(records=records, summary=pipeline.summarize(records))

    return app


def _entry(model):
    try:
        return model.to_entry()
    except InputError as exc:
        raise HTTPException(422, str(exc)) from exc


def _config(options):
    try:
        return options.to_config()
    except (ValueError, InputError) as exc:
        raise HTTPException(422, str(exc)) from exc


app = create_app()

"""HTTP inference service: vocabulary listing, diagnosis, health, static UI.

The model is loaded once and treated as immutable shared state; every request
is stateless. Unknown symptom tokens are reported back, never fatal, since
API clients are not bound to the UI's checkbox list.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .booster import Ensemble
from .ingest import normalize_token


def _error(status_code: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"error": {"code": code, "message": message}}, status_code=status_code)


def _no_model() -> JSONResponse:
    return _error(503, "model_unavailable", "no model is loaded")


def diagnose_payload(model: Ensemble, model_id: str, raw_symptoms: list[str]) -> dict:
    """Normalize, vectorize, classify; shared by the endpoint and the CLI."""
    tokens = {normalize_token(s) for s in raw_symptoms}
    tokens.discard("")
    features = np.zeros(len(model.vocabulary), dtype=np.float64)
    unknown = []
    for token in tokens:
        idx = model.vocabulary.index_of(token)
        if idx is None:
            unknown.append(token)
        else:
            features[idx] = 1.0
    label, probability = model.classify(features)
    return {
        "diagnosis": "positive" if label == 1 else "negative",
        "probability": probability,
        "unknown_symptoms": sorted(unknown),
        "model_id": model_id,
    }


def create_app(
    model: Optional[Ensemble],
    model_id: Optional[str] = None,
    assets_dir: Optional[str | Path] = None,
) -> FastAPI:
    """Build the service app around an already-loaded (or absent) model."""
    app = FastAPI(title="mpoxtriage", docs_url=None, redoc_url=None, openapi_url=None)

    @app.get("/healthz")
    def healthz():
        if model is None:
            return _no_model()
        try:
            model.classify(np.zeros(len(model.vocabulary), dtype=np.float64))
        except Exception:
            return _error(503, "self_check_failed", "model failed a probe prediction")
        return JSONResponse({"status": "ok", "model_id": model_id})

    @app.get("/api/symptoms")
    def symptoms():
        if model is None:
            return _no_model()
        return JSONResponse({"symptoms": list(model.vocabulary.tokens), "model_id": model_id})

    @app.post("/api/diagnose")
    async def diagnose(request: Request):
        if model is None:
            return _no_model()
        try:
            body = await request.json()
        except Exception:
            return _error(400, "malformed_json", "request body is not valid JSON")
        if not isinstance(body, dict) or "symptoms" not in body:
            return _error(400, "invalid_request", 'request body must be an object with a "symptoms" array')
        raw = body["symptoms"]
        if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
            return _error(400, "invalid_request", '"symptoms" must be an array of strings')
        return JSONResponse(diagnose_payload(model, model_id, raw))

    if assets_dir is not None:
        app.mount("/", StaticFiles(directory=str(assets_dir), html=True), name="ui")

    return app

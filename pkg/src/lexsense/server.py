"""HTTP JSON service for analysis and disambiguation.

All models are built once at startup from a config file; request handling is
stateless over that shared immutable state.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .annotation import AnnotationError, Resources, ServiceConfig, annotate_text, build_resources

_ERROR_STATUS = {
    "unknown_method": 400,
    "unknown_inventory": 400,
    "embeddings_not_loaded": 400,
    "text_too_large": 413,
}


class DisambiguateRequest(BaseModel):
    text: str
    method: str = "sparse"
    inventory: str | None = None


def create_app(resources: Resources, webui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="lexsense")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.resources = resources
    app.state.ready = True

    @app.exception_handler(AnnotationError)
    async def annotation_error(request: Request, exc: AnnotationError):
        return JSONResponse(
            status_code=_ERROR_STATUS.get(exc.code, 400),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.get("/api/health")
    async def health():
        if not app.state.ready:
            return JSONResponse(status_code=503, content={"status": "initializing"})
        return {
            "status": "ok",
            "inventories": len(resources.models),
            "embeddings_loaded": resources.embeddings_loaded,
        }

    @app.get("/api/inventories")
    async def inventories():
        return resources.inventory_summaries()

    @app.post("/api/disambiguate")
    async def disambiguate(request: Request):
        raw = await request.body()
        try:
            payload = json.loads(raw.decode("utf-8"))
            body = DisambiguateRequest(**payload)
        except (UnicodeDecodeError, ValueError, TypeError) as exc:
            return JSONResponse(
                status_code=422,
                content={"error": {"code": "invalid_request", "message": str(exc)}},
            )
        return annotate_text(resources, body.text, body.method, body.inventory)

    if webui_dir is not None and webui_dir.is_dir():
        app.mount("/", StaticFiles(directory=webui_dir, html=True), name="webui")
    return app


def create_app_from_config(path: str | Path) -> FastAPI:
    config = ServiceConfig.load(path)
    resources = build_resources(config)
    return create_app(resources, webui_dir=config.webui_dir)

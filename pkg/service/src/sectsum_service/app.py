"""FastAPI application exposing /embed, /loglik, /generate, and /healthz.

Request and response bodies follow the pipeline gateway wire protocol:

    POST /embed    {"sentences": [str]}  -> {"dim": int, "vectors": [[float]]}
    POST /loglik   {"texts": [str]}      -> {"scores": [float]}
    POST /generate {"language", "article_title", "section_title",
                    "sentences", "max_output_tokens"} -> {"text": str}

Empty strings are rejected with 422; batches beyond the configured limit
with 413. Model loading happens at app creation, so a bad checkpoint
aborts startup.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from sectsum_service import __version__
from sectsum_service.config import ServiceConfig, load_config
from sectsum_service.engine import EncoderEngine, GeneratorEngine, format_generation_input


class EmbedRequest(BaseModel):
    sentences: list[str]


class LoglikRequest(BaseModel):
    texts: list[str]


class GenerateRequest(BaseModel):
    language: str
    article_title: str
    section_title: str
    sentences: list[str]
    max_output_tokens: int = Field(default=512, ge=1)


def _check_texts(items: list[str], what: str, max_batch: int) -> None:
    if len(items) > max_batch:
        raise HTTPException(status_code=413, detail=f"batch of {len(items)} exceeds limit {max_batch}")
    for i, item in enumerate(items):
        if not item:
            raise HTTPException(status_code=422, detail=f"{what} {i} is empty")


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or load_config()
    encoder = EncoderEngine(config.encoder_checkpoint, config.device, config.max_input_length)
    generator = GeneratorEngine(config.generator_checkpoint, config.device, config.max_input_length)

    app = FastAPI(title="sectsum model service", version=__version__)
    app.state.config = config

    @app.get("/healthz")
    def healthz() -> dict:
        return {
            "status": "ok",
            "encoder_checkpoint": encoder.checkpoint_id,
            "generator_checkpoint": generator.checkpoint_id,
            "max_input_length": config.max_input_length,
        }

    @app.post("/embed")
    def embed(request: EmbedRequest) -> dict:
        _check_texts(request.sentences, "sentence", config.max_batch)
        return {"dim": encoder.dim, "vectors": encoder.embed(request.sentences)}

    @app.post("/loglik")
    def loglik(request: LoglikRequest) -> dict:
        _check_texts(request.texts, "text", config.max_batch)
        return {"scores": encoder.pseudo_log_likelihood(request.texts)}

    @app.post("/generate")
    def generate(request: GenerateRequest) -> dict:
        if not request.sentences:
            raise HTTPException(status_code=422, detail="sentences must be non-empty")
        _check_texts(request.sentences, "sentence", config.max_batch)
        formatted = format_generation_input(
            request.language, request.article_title, request.section_title, request.sentences
        )
        return {"text": generator.generate(formatted, request.max_output_tokens)}

    return app

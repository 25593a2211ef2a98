"""Boundary to the abstractive generation stage.

``format_input`` fixes the flat serialization handed to a generator:
``<lang> | <article_title> | <section_title> | <s1> <s2> ...`` with fields
in exactly that order.  Pipes inside fields are escaped ("|" -> "\\|",
backslashes doubled) so the serialization stays invertible.  Backends:
an HTTP client for a remote generator, and a deterministic stub that
returns the first 200 whitespace tokens of the joined ranked sentences
(an extract-truncate baseline), so the whole pipeline runs offline.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from sectsum.corpus import LANGUAGES
from sectsum.wire import ProtocolError, post_json

DEFAULT_MAX_OUTPUT_TOKENS = 512
STUB_MAX_TOKENS = 200


@dataclass(frozen=True)
class GenerationRequest:
    language: str
    article_title: str
    section_title: str
    ranked_sentences: tuple[str, ...]
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranked_sentences", tuple(self.ranked_sentences))
        if self.language not in LANGUAGES:
            raise ValueError(f"unsupported language {self.language!r}")
        if not self.ranked_sentences:
            raise ValueError("ranked_sentences must be non-empty")
        if self.max_output_tokens < 1:
            raise ValueError(f"max_output_tokens must be >= 1, got {self.max_output_tokens}")


@dataclass(frozen=True)
class GenerationResult:
    text: str
    backend: str


def escape_field(value: str) -> str:
    return value.replace("\\", "\\\\").replace("|", "\\|")


def unescape_field(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        if value[i] == "\\" and i + 1 < len(value) and value[i + 1] in ("\\", "|"):
            out.append(value[i + 1])
            i += 2
        else:
            out.append(value[i])
            i += 1
    return "".join(out)


def format_input(request: GenerationRequest) -> str:
    """Serialize a request to the canonical pipe-delimited generator input."""
    sentences = " ".join(escape_field(s) for s in request.ranked_sentences)
    return (
        f"{escape_field(request.language)} | {escape_field(request.article_title)}"
        f" | {escape_field(request.section_title)} | {sentences}"
    )


class StubGenerator:
    """Deterministic extract-truncate baseline; no model service required."""

    label = "stub"

    def generate(self, request: GenerationRequest) -> GenerationResult:
        tokens = " ".join(request.ranked_sentences).split()
        return GenerationResult(text=" ".join(tokens[:STUB_MAX_TOKENS]), backend=self.label)


@dataclass
class HttpGenerator:
    """Client for the /generate endpoint of a model service."""

    base_url: str
    timeout: float = 120.0
    retries: int = 2
    label: str = "remote"

    @classmethod
    def from_env(cls, url: str | None = None) -> "HttpGenerator":
        """Build a client from MODEL_SERVICE_URL/_TIMEOUT/_RETRIES env vars."""
        base = url or os.environ.get("MODEL_SERVICE_URL")
        if not base:
            raise ValueError("no service URL given and MODEL_SERVICE_URL is unset")
        return cls(
            base_url=base,
            timeout=float(os.environ.get("MODEL_SERVICE_TIMEOUT", cls.timeout)),
            retries=int(os.environ.get("MODEL_SERVICE_RETRIES", cls.retries)),
        )

    def generate(self, request: GenerationRequest) -> GenerationResult:
        body = post_json(
            f"{self.base_url.rstrip('/')}/generate",
            {
                "language": request.language,
                "article_title": request.article_title,
                "section_title": request.section_title,
                "sentences": list(request.ranked_sentences),
                "max_output_tokens": request.max_output_tokens,
            },
            timeout=self.timeout,
            retries=self.retries,
        )
        if "text" not in body or not isinstance(body["text"], str):
            raise ProtocolError("generate response missing 'text'")
        return GenerationResult(text=body["text"], backend=self.label)


def generate(request: GenerationRequest, backend) -> GenerationResult:
    """Run one generation request and reject empty outputs."""
    result = backend.generate(request)
    if not result.text:
        raise ProtocolError(f"backend {result.backend!r} produced an empty generation")
    return result

"""Shared fixtures: test doubles for backends and a local fixture HTTP server."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from sectsum.encoders import EmbeddingBatch, LikelihoodScore


class PresetEmbedder:
    """Maps sentence text to a preset unit vector; errors on unknown text."""

    def __init__(self, mapping: dict[str, np.ndarray]):
        self.mapping = {k: np.asarray(v, dtype=np.float64) for k, v in mapping.items()}
        dims = {v.shape[0] for v in self.mapping.values()}
        assert len(dims) == 1
        self.dim = dims.pop()

    def embed(self, sentences) -> EmbeddingBatch:
        rows = np.stack([self.mapping[s] for s in sentences])
        return EmbeddingBatch(vectors=rows, dim=self.dim)


class PresetScorer:
    """Returns preset likelihoods for texts; records every scored text."""

    def __init__(self, scores_by_text: dict[str, float] | None = None, default: float | None = None):
        self.scores_by_text = scores_by_text or {}
        self.default = default
        self.seen: list[str] = []

    def score_likelihood(self, texts) -> list[LikelihoodScore]:
        self.seen.extend(texts)
        out = []
        for text in texts:
            if text in self.scores_by_text:
                out.append(LikelihoodScore(value=self.scores_by_text[text]))
            elif self.default is not None:
                out.append(LikelihoodScore(value=self.default))
            else:
                raise KeyError(f"no preset score for {text!r}")
        return out


def unit_rows(count: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    rows = rng.normal(size=(count, dim))
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


@pytest.fixture()
def mini_corpus_path() -> Path:
    with resources.as_file(resources.files("sectsum").joinpath("data", "mini_corpus.jsonl")) as path:
        yield path


class _FixtureHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):  # keep test output quiet
        pass

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length", "0"))
        return json.loads(self.rfile.read(length).decode("utf-8"))

    def _send(self, status: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self):
        state = self.server.state  # type: ignore[attr-defined]
        state["requests"] += 1
        if state["fail_first"] > 0:
            state["fail_first"] -= 1
            self._send(500, {"error": "induced failure"})
            return
        body = self._read_body()
        if self.path == "/embed":
            dim = state["dims"].pop(0) if state["dims"] else 4
            vectors = []
            for sentence in body["sentences"]:
                raw = [float(len(sentence) % 7 + 1), 1.0, 0.5, 0.25, 2.0, 0.125][:dim]
                norm = sum(x * x for x in raw) ** 0.5
                vectors.append([x / norm for x in raw])
            self._send(200, {"dim": dim, "vectors": vectors})
        elif self.path == "/loglik":
            self._send(200, {"scores": [-float(len(t)) for t in body["texts"]]})
        elif self.path == "/generate":
            if state.get("empty_generation"):
                self._send(200, {"text": ""})
                return
            sentences = " ".join(s.replace("\\", "\\\\").replace("|", "\\|") for s in body["sentences"])
            text = (
                f"{body['language']} | {body['article_title']}"
                f" | {body['section_title']} | {sentences}"
            )
            self._send(200, {"text": text})
        else:
            self._send(404, {"error": "unknown path"})


@pytest.fixture()
def fixture_server():
    """Local HTTP server speaking the model-service wire protocol."""
    server = ThreadingHTTPServer(("127.0.0.1", 0), _FixtureHandler)
    server.state = {"requests": 0, "fail_first": 0, "dims": [], "empty_generation": False}
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield server
    finally:
        server.shutdown()
        thread.join(timeout=5)


@pytest.fixture()
def fixture_server_url(fixture_server) -> str:
    host, port = fixture_server.server_address
    return f"http://{host}:{port}"

"""Uniform boundary for sentence embeddings and language-model likelihoods.

Two interchangeable backends: an HTTP client speaking the model-service
wire protocol, and a deterministic offline stub.  The stub expands a 64-bit
FNV-1a hash of the sentence's UTF-8 bytes through a splitmix64 sequence
into 64 reals in [-1, 1) and L2-normalizes; its likelihood is
``-(hash mod 1000)/1000 - 0.001 * byte_length``.  Both quantities depend
only on the input bytes, so stub outputs are identical across platforms.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from sectsum.wire import ProtocolError, post_json

_MASK64 = (1 << 64) - 1

STUB_DIM = 64
DEFAULT_BATCH_SIZE = 32
DEFAULT_TIMEOUT = 30.0
DEFAULT_RETRIES = 2
DEFAULT_MAX_IN_FLIGHT = 4


@dataclass
class EmbeddingBatch:
    """Order-preserving batch of L2-normalized sentence vectors."""

    vectors: np.ndarray  # shape (n, dim), float64
    dim: int

    def __post_init__(self) -> None:
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.size == 0:
            self.vectors = self.vectors.reshape(0, self.dim)
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dim:
            raise ProtocolError(
                f"embedding batch shape {self.vectors.shape} does not match declared dim {self.dim}"
            )
        if not np.isfinite(self.vectors).all():
            raise ProtocolError("embedding batch contains non-finite values")
        if len(self.vectors):
            norms = np.linalg.norm(self.vectors, axis=1)
            worst = float(np.max(np.abs(norms - 1.0)))
            if worst > 1e-6:
                raise ProtocolError(f"embedding vectors not unit-norm (max deviation {worst:.3e})")

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class LikelihoodScore:
    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ProtocolError(f"likelihood score is not finite: {self.value!r}")


class EncoderBackend(Protocol):
    def embed(self, sentences: Sequence[str]) -> EmbeddingBatch: ...

    def score_likelihood(self, texts: Sequence[str]) -> list[LikelihoodScore]: ...


def fnv1a64(data: bytes) -> int:
    value = 0xCBF29CE484222325
    for byte in data:
        value ^= byte
        value = (value * 0x100000001B3) & _MASK64
    return value


def _splitmix64_stream(state: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out.append(z ^ (z >> 31))
    return out


def _validate_texts(texts: Sequence[str]) -> None:
    for i, text in enumerate(texts):
        if not isinstance(text, str) or not text:
            raise ValueError(f"text {i} is empty or not a string")


class StubEncoder:
    """Bit-exact deterministic encoder for offline runs and tests."""

    dim = STUB_DIM

    def embed(self, sentences: Sequence[str]) -> EmbeddingBatch:
        _validate_texts(sentences)
        rows = []
        for sentence in sentences:
            seed = fnv1a64(sentence.encode("utf-8"))
            raw = [u * 2.0**-63 - 1.0 for u in _splitmix64_stream(seed, self.dim)]
            norm = math.sqrt(math.fsum(x * x for x in raw))
            if norm == 0.0:
                raise ProtocolError("stub produced a zero vector")
            rows.append([x / norm for x in raw])
        return EmbeddingBatch(vectors=np.array(rows, dtype=np.float64).reshape(len(rows), self.dim), dim=self.dim)

    def score_likelihood(self, texts: Sequence[str]) -> list[LikelihoodScore]:
        _validate_texts(texts)
        scores = []
        for text in texts:
            data = text.encode("utf-8")
            value = -(fnv1a64(data) % 1000) / 1000.0 - 0.001 * len(data)
            scores.append(LikelihoodScore(value=value))
        return scores


@dataclass
class HttpEncoder:
    """Client for the /embed and /loglik endpoints of a model service.

    Requests are issued in batches (``batch_size``), at most
    ``max_in_flight`` concurrently; responses are matched back to inputs by
    batch position, so outputs are order-preserving for every batch size.
    """

    base_url: str
    timeout: float = DEFAULT_TIMEOUT
    retries: int = DEFAULT_RETRIES
    batch_size: int = DEFAULT_BATCH_SIZE
    max_in_flight: int = DEFAULT_MAX_IN_FLIGHT

    @classmethod
    def from_env(cls, url: str | None = None) -> "HttpEncoder":
        """Build a client from MODEL_SERVICE_* environment variables.

        Recognized: MODEL_SERVICE_URL, MODEL_SERVICE_TIMEOUT,
        MODEL_SERVICE_RETRIES, MODEL_SERVICE_BATCH_SIZE,
        MODEL_SERVICE_MAX_IN_FLIGHT.  An explicit ``url`` wins over the
        environment.
        """
        base = url or os.environ.get("MODEL_SERVICE_URL")
        if not base:
            raise ValueError("no service URL given and MODEL_SERVICE_URL is unset")
        return cls(
            base_url=base,
            timeout=float(os.environ.get("MODEL_SERVICE_TIMEOUT", DEFAULT_TIMEOUT)),
            retries=int(os.environ.get("MODEL_SERVICE_RETRIES", DEFAULT_RETRIES)),
            batch_size=int(os.environ.get("MODEL_SERVICE_BATCH_SIZE", DEFAULT_BATCH_SIZE)),
            max_in_flight=int(os.environ.get("MODEL_SERVICE_MAX_IN_FLIGHT", DEFAULT_MAX_IN_FLIGHT)),
        )

    def _batches(self, items: Sequence[str]) -> list[list[str]]:
        return [list(items[i : i + self.batch_size]) for i in range(0, len(items), self.batch_size)]

    def _run_batches(self, batches: list[list[str]], worker) -> list:
        if len(batches) <= 1 or self.max_in_flight <= 1:
            return [worker(batch) for batch in batches]
        with ThreadPoolExecutor(max_workers=min(self.max_in_flight, len(batches))) as pool:
            return list(pool.map(worker, batches))

    def embed(self, sentences: Sequence[str]) -> EmbeddingBatch:
        _validate_texts(sentences)
        if not sentences:
            return EmbeddingBatch(vectors=np.zeros((0, 1)), dim=1)

        def worker(batch: list[str]) -> tuple[int, list[list[float]]]:
            body = post_json(
                f"{self.base_url.rstrip('/')}/embed",
                {"sentences": batch},
                timeout=self.timeout,
                retries=self.retries,
            )
            if "dim" not in body or "vectors" not in body:
                raise ProtocolError("embed response missing 'dim' or 'vectors'")
            if len(body["vectors"]) != len(batch):
                raise ProtocolError(
                    f"embed response has {len(body['vectors'])} vectors for {len(batch)} sentences"
                )
            return int(body["dim"]), body["vectors"]

        results = self._run_batches(self._batches(sentences), worker)
        dims = {dim for dim, _ in results}
        if len(dims) != 1:
            raise ProtocolError(f"inconsistent embedding dims across batches: {sorted(dims)}")
        vectors = [row for _, rows in results for row in rows]
        dim = dims.pop()
        for row in vectors:
            if len(row) != dim:
                raise ProtocolError(f"vector of length {len(row)} in a batch of declared dim {dim}")
        return EmbeddingBatch(vectors=np.array(vectors, dtype=np.float64).reshape(len(vectors), dim), dim=dim)

    def score_likelihood(self, texts: Sequence[str]) -> list[LikelihoodScore]:
        _validate_texts(texts)
        if not texts:
            return []

        def worker(batch: list[str]) -> list[float]:
            body = post_json(
                f"{self.base_url.rstrip('/')}/loglik",
                {"texts": batch},
                timeout=self.timeout,
                retries=self.retries,
            )
            if "scores" not in body or len(body["scores"]) != len(batch):
                raise ProtocolError("loglik response missing or mismatched 'scores'")
            return body["scores"]

        results = self._run_batches(self._batches(texts), worker)
        return [LikelihoodScore(value=float(v)) for batch in results for v in batch]

"""Shared HTTP plumbing for the embedding/likelihood and generation clients."""

from __future__ import annotations

import json

import requests


class GatewayError(RuntimeError):
    """Base class for backend-boundary failures."""


class TransportError(GatewayError):
    """The backend could not be reached (after the configured retries)."""


class ProtocolError(GatewayError):
    """The backend answered, but the payload violates the wire contract."""


def post_json(url: str, payload: dict, *, timeout: float, retries: int) -> dict:
    """POST a JSON body and return the decoded JSON response.

    Connection problems and 5xx responses are retried up to ``retries``
    additional times; 4xx responses and malformed bodies raise
    ``ProtocolError`` immediately.
    """
    attempts = retries + 1
    last_error: Exception | None = None
    for _ in range(attempts):
        try:
            response = requests.post(url, json=payload, timeout=timeout)
        except requests.RequestException as exc:
            last_error = exc
            continue
        if 400 <= response.status_code < 500:
            raise ProtocolError(f"{url} answered {response.status_code}: {response.text[:200]}")
        if response.status_code >= 500:
            last_error = RuntimeError(f"{url} answered {response.status_code}")
            continue
        try:
            body = response.json()
        except (json.JSONDecodeError, ValueError) as exc:
            raise ProtocolError(f"{url} returned a non-JSON body") from exc
        if not isinstance(body, dict):
            raise ProtocolError(f"{url} returned {type(body).__name__}, expected an object")
        return body
    raise TransportError(f"{url} unreachable after {attempts} attempts: {last_error}")

"""Byte-level tokenization shared by every model in the service.

Token ids 0..255 are raw UTF-8 bytes; 256..259 are PAD, MASK, BOS, EOS.
"""

from __future__ import annotations

PAD = 256
MASK = 257
BOS = 258
EOS = 259
VOCAB_SIZE = 260

MAX_INPUT_LENGTH = 512


def encode(text: str, max_len: int = MAX_INPUT_LENGTH) -> list[int]:
    return list(text.encode("utf-8")[:max_len])


def decode(ids: list[int]) -> str:
    return bytes(i for i in ids if i < 256).decode("utf-8", errors="replace")

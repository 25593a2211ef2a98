"""Checkpoint resolution, saving, and loading.

Checkpoint ids are either builtin names ("builtin-mlm", "builtin-seq2seq",
resolved inside the package) or filesystem paths to a saved checkpoint.
All resolution happens at startup; a missing or unloadable checkpoint
aborts service creation.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import torch
from torch import nn

from sectsum_service.models import build_model

BUILTIN = {
    "builtin-mlm": ("mlm", "mlm.pt"),
    "builtin-seq2seq": ("seq2seq", "seq2seq.pt"),
}


class CheckpointError(RuntimeError):
    pass


def builtin_dir() -> Path:
    return Path(str(resources.files("sectsum_service").joinpath("builtin")))


def save_checkpoint(model: nn.Module, kind: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save({"kind": kind, "state": model.state_dict()}, path)
    return path


def resolve_checkpoint(checkpoint_id: str) -> tuple[str | None, Path]:
    """Map a checkpoint id to (expected kind or None, file path)."""
    if checkpoint_id in BUILTIN:
        kind, filename = BUILTIN[checkpoint_id]
        return kind, builtin_dir() / filename
    return None, Path(checkpoint_id)


def load_checkpoint(checkpoint_id: str, device: str = "cpu") -> tuple[str, nn.Module]:
    expected_kind, path = resolve_checkpoint(checkpoint_id)
    if not path.exists():
        raise CheckpointError(f"checkpoint {checkpoint_id!r} not found at {path}")
    try:
        payload = torch.load(path, map_location=device, weights_only=True)
    except Exception as exc:
        raise CheckpointError(f"cannot load checkpoint {checkpoint_id!r}: {exc}") from exc
    kind = payload.get("kind")
    if expected_kind is not None and kind != expected_kind:
        raise CheckpointError(f"checkpoint {checkpoint_id!r} has kind {kind!r}, expected {expected_kind!r}")
    model = build_model(kind)
    model.load_state_dict(payload["state"])
    model.to(device)
    model.eval()
    return kind, model

"""Desk-scale fine-tuning for the generator checkpoint.

Records are {"input": formatted request string, "target": section text}
pairs. Defaults follow the pipeline's training recipe: 20 epochs, batch
size 4, AdamW at 1e-5. Per-epoch mean losses are logged and returned so
callers can assert on training progress. Runs are deterministic for a
fixed seed (records are consumed in input order, dropout is 0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import torch
from torch import nn

from sectsum_service.checkpoints import load_checkpoint, save_checkpoint
from sectsum_service.tokenizer import BOS, EOS, MAX_INPUT_LENGTH, PAD, encode

logger = logging.getLogger(__name__)


@dataclass
class FinetuneConfig:
    output_path: Path
    base_checkpoint: str = "builtin-seq2seq"
    epochs: int = 20
    batch_size: int = 4
    learning_rate: float = 1e-5
    seed: int = 0
    device: str = "cpu"
    max_input_length: int = MAX_INPUT_LENGTH
    max_output_length: int = MAX_INPUT_LENGTH

    def validate(self) -> None:
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")


def _validate_records(records: list[dict]) -> None:
    if not records:
        raise ValueError("finetune requires at least one training record")
    for index, record in enumerate(records):
        for key in ("input", "target"):
            value = record.get(key)
            if not isinstance(value, str) or not value:
                raise ValueError(f"record {index}: field {key!r} must be a non-empty string")


def _pad_rows(rows: list[list[int]], device: str) -> torch.Tensor:
    width = max(len(row) for row in rows)
    out = torch.full((len(rows), width), PAD, dtype=torch.long, device=device)
    for i, row in enumerate(rows):
        out[i, : len(row)] = torch.tensor(row, dtype=torch.long, device=device)
    return out


def finetune(records: list[dict], config: FinetuneConfig) -> tuple[Path, list[float]]:
    """Fine-tune the generator; returns (checkpoint path, per-epoch losses)."""
    config.validate()
    _validate_records(records)
    torch.manual_seed(config.seed)

    _, model = load_checkpoint(config.base_checkpoint, config.device)
    model.train()
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    criterion = nn.CrossEntropyLoss(ignore_index=PAD)

    encoded = []
    for record in records:
        src = encode(record["input"], config.max_input_length)
        tgt = encode(record["target"], config.max_output_length)
        encoded.append((src, [BOS] + tgt, tgt + [EOS]))

    epoch_losses: list[float] = []
    for epoch in range(config.epochs):
        batch_losses = []
        for start in range(0, len(encoded), config.batch_size):
            batch = encoded[start : start + config.batch_size]
            src = _pad_rows([b[0] for b in batch], config.device)
            tgt_in = _pad_rows([b[1] for b in batch], config.device)
            tgt_out = _pad_rows([b[2] for b in batch], config.device)
            logits = model(src, tgt_in, src_pad_mask=src.eq(PAD), tgt_pad_mask=tgt_in.eq(PAD))
            loss = criterion(logits.reshape(-1, logits.shape[-1]), tgt_out.reshape(-1))
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            batch_losses.append(float(loss.detach()))
        mean_loss = sum(batch_losses) / len(batch_losses)
        epoch_losses.append(mean_loss)
        logger.info("epoch %d/%d: loss %.6f", epoch + 1, config.epochs, mean_loss)

    model.eval()
    path = save_checkpoint(model, "seq2seq", config.output_path)
    return path, epoch_losses

"""Tiny byte-level transformer models.

Sized for CPU determinism and committed checkpoints, not quality: the
service contract is about wire shapes, normalization, and reproducible
decoding. Dropout is 0 everywhere so training runs are repeatable too.
"""

from __future__ import annotations

import torch
from torch import nn

from sectsum_service.tokenizer import MAX_INPUT_LENGTH, PAD, VOCAB_SIZE

D_MODEL = 64
N_HEAD = 4
FF_DIM = 128
N_LAYERS = 2


class ByteMaskedLM(nn.Module):
    """Bidirectional encoder with an LM head for masked-token scoring."""

    def __init__(self) -> None:
        super().__init__()
        self.token_embedding = nn.Embedding(VOCAB_SIZE, D_MODEL, padding_idx=PAD)
        self.position_embedding = nn.Embedding(MAX_INPUT_LENGTH, D_MODEL)
        layer = nn.TransformerEncoderLayer(
            d_model=D_MODEL, nhead=N_HEAD, dim_feedforward=FF_DIM, dropout=0.0, batch_first=True
        )
        self.encoder = nn.TransformerEncoder(layer, num_layers=N_LAYERS)
        self.head = nn.Linear(D_MODEL, VOCAB_SIZE)

    def forward(self, ids: torch.Tensor, pad_mask: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        positions = torch.arange(ids.shape[1], device=ids.device).unsqueeze(0)
        hidden = self.token_embedding(ids) + self.position_embedding(positions)
        hidden = self.encoder(hidden, src_key_padding_mask=pad_mask)
        return hidden, self.head(hidden)


class ByteSeq2Seq(nn.Module):
    """Encoder-decoder transformer with a shared byte embedding."""

    def __init__(self) -> None:
        super().__init__()
        self.token_embedding = nn.Embedding(VOCAB_SIZE, D_MODEL, padding_idx=PAD)
        self.src_positions = nn.Embedding(MAX_INPUT_LENGTH, D_MODEL)
        self.tgt_positions = nn.Embedding(MAX_INPUT_LENGTH + 2, D_MODEL)
        self.transformer = nn.Transformer(
            d_model=D_MODEL,
            nhead=N_HEAD,
            num_encoder_layers=N_LAYERS,
            num_decoder_layers=N_LAYERS,
            dim_feedforward=FF_DIM,
            dropout=0.0,
            batch_first=True,
        )
        self.head = nn.Linear(D_MODEL, VOCAB_SIZE)

    def forward(
        self,
        src: torch.Tensor,
        tgt: torch.Tensor,
        src_pad_mask: torch.Tensor | None = None,
        tgt_pad_mask: torch.Tensor | None = None,
    ) -> torch.Tensor:
        src_pos = torch.arange(src.shape[1], device=src.device).unsqueeze(0)
        tgt_pos = torch.arange(tgt.shape[1], device=tgt.device).unsqueeze(0)
        src_emb = self.token_embedding(src) + self.src_positions(src_pos)
        tgt_emb = self.token_embedding(tgt) + self.tgt_positions(tgt_pos)
        causal = nn.Transformer.generate_square_subsequent_mask(tgt.shape[1], device=tgt.device)
        hidden = self.transformer(
            src_emb,
            tgt_emb,
            tgt_mask=causal,
            src_key_padding_mask=src_pad_mask,
            tgt_key_padding_mask=tgt_pad_mask,
            memory_key_padding_mask=src_pad_mask,
        )
        return self.head(hidden)


MODEL_KINDS = {"mlm": ByteMaskedLM, "seq2seq": ByteSeq2Seq}


def build_model(kind: str) -> nn.Module:
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r} (expected one of {sorted(MODEL_KINDS)})")
    return MODEL_KINDS[kind]()

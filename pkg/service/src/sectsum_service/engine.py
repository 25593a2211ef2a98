"""Inference engines wrapping the loaded models.

* embeddings: mean-pooled final-layer states over non-pad positions,
  L2-normalized;
* likelihood: length-normalized pseudo-log-likelihood (mask one position
  at a time, mean log-probability of the true token);
* generation: greedy decoding, at most 512 new tokens, EOS masked at the
  first step so a successful decode is never empty.

The /generate input string is assembled with the same pipe-delimited
template the pipeline's generation gateway uses; the template is part of
the shared wire contract.
"""

from __future__ import annotations

import torch
from torch.nn import functional as F

from sectsum_service.checkpoints import load_checkpoint
from sectsum_service.tokenizer import BOS, EOS, MASK, MAX_INPUT_LENGTH, PAD, decode, encode

MAX_OUTPUT_TOKENS = 512
_PLL_CHUNK = 128


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("|", "\\|")


def format_generation_input(language: str, article_title: str, section_title: str, sentences: list[str]) -> str:
    joined = " ".join(_escape(s) for s in sentences)
    return f"{_escape(language)} | {_escape(article_title)} | {_escape(section_title)} | {joined}"


def _pad_batch(sequences: list[list[int]], device: str) -> tuple[torch.Tensor, torch.Tensor]:
    width = max(len(seq) for seq in sequences)
    ids = torch.full((len(sequences), width), PAD, dtype=torch.long, device=device)
    for row, seq in enumerate(sequences):
        ids[row, : len(seq)] = torch.tensor(seq, dtype=torch.long, device=device)
    return ids, ids.eq(PAD)


class EncoderEngine:
    def __init__(self, checkpoint_id: str, device: str = "cpu", max_input_length: int = MAX_INPUT_LENGTH):
        kind, model = load_checkpoint(checkpoint_id, device)
        if kind != "mlm":
            raise ValueError(f"encoder checkpoint must be an mlm model, got {kind!r}")
        self.checkpoint_id = checkpoint_id
        self.device = device
        self.max_input_length = max_input_length
        self.model = model
        self.dim = model.head.in_features

    @torch.no_grad()
    def embed(self, texts: list[str]) -> list[list[float]]:
        if not texts:
            return []
        sequences = [encode(t, self.max_input_length) for t in texts]
        ids, pad_mask = _pad_batch(sequences, self.device)
        hidden, _ = self.model(ids, pad_mask)
        keep = (~pad_mask).unsqueeze(-1).to(hidden.dtype)
        pooled = (hidden * keep).sum(dim=1) / keep.sum(dim=1)
        normalized = F.normalize(pooled, dim=1)
        return [[float(x) for x in row] for row in normalized]

    @torch.no_grad()
    def pseudo_log_likelihood(self, texts: list[str]) -> list[float]:
        scores = []
        for text in texts:
            seq = encode(text, self.max_input_length)
            length = len(seq)
            total = 0.0
            for start in range(0, length, _PLL_CHUNK):
                positions = list(range(start, min(start + _PLL_CHUNK, length)))
                batch = []
                for position in positions:
                    masked = list(seq)
                    masked[position] = MASK
                    batch.append(masked)
                ids, pad_mask = _pad_batch(batch, self.device)
                _, logits = self.model(ids, pad_mask)
                log_probs = F.log_softmax(logits, dim=-1)
                for row, position in enumerate(positions):
                    total += float(log_probs[row, position, seq[position]])
            scores.append(total / length)
        return scores


class GeneratorEngine:
    def __init__(self, checkpoint_id: str, device: str = "cpu", max_input_length: int = MAX_INPUT_LENGTH):
        kind, model = load_checkpoint(checkpoint_id, device)
        if kind != "seq2seq":
            raise ValueError(f"generator checkpoint must be a seq2seq model, got {kind!r}")
        self.checkpoint_id = checkpoint_id
        self.device = device
        self.max_input_length = max_input_length
        self.model = model

    @torch.no_grad()
    def generate(self, formatted_input: str, max_output_tokens: int = MAX_OUTPUT_TOKENS) -> str:
        budget = min(max_output_tokens, MAX_OUTPUT_TOKENS)
        src_ids = encode(formatted_input, self.max_input_length)
        src, src_pad = _pad_batch([src_ids], self.device)
        produced: list[int] = [BOS]
        for step in range(budget):
            tgt = torch.tensor([produced], dtype=torch.long, device=self.device)
            logits = self.model(src, tgt, src_pad_mask=src_pad)
            step_logits = logits[0, -1].clone()
            # control tokens are never valid output bytes; EOS is additionally
            # barred at the first step so a successful decode is non-empty
            step_logits[PAD] = float("-inf")
            step_logits[MASK] = float("-inf")
            step_logits[BOS] = float("-inf")
            if step == 0:
                step_logits[EOS] = float("-inf")
            next_id = int(torch.argmax(step_logits))
            if next_id == EOS:
                break
            produced.append(next_id)
        return decode(produced[1:])

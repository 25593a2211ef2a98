"""Build the committed builtin checkpoints.

Initializes both models from fixed seeds, pretrains them briefly on the
bundled sample texts (masked-byte prediction for the encoder, input->target
teacher forcing for the generator), and writes the .pt files into the
package's builtin/ directory. Run once; commit the outputs. Rebuilding with
a different torch version may change the weights, which is why the files
are committed rather than regenerated at install time.
"""

from __future__ import annotations

import sys
from pathlib import Path

import torch
from torch import nn

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sectsum_service.checkpoints import save_checkpoint  # noqa: E402
from sectsum_service.models import ByteMaskedLM, ByteSeq2Seq  # noqa: E402
from sectsum_service.sample_texts import GENERATION_PAIRS, SENTENCES  # noqa: E402
from sectsum_service.tokenizer import BOS, EOS, MASK, PAD, encode  # noqa: E402

STEPS = 400
BATCH = 8
LR = 3e-3
MASK_RATE = 0.15


def pad_rows(rows):
    width = max(len(r) for r in rows)
    out = torch.full((len(rows), width), PAD, dtype=torch.long)
    for i, row in enumerate(rows):
        out[i, : len(row)] = torch.tensor(row, dtype=torch.long)
    return out


def train_mlm() -> ByteMaskedLM:
    torch.manual_seed(101)
    model = ByteMaskedLM()
    optimizer = torch.optim.AdamW(model.parameters(), lr=LR)
    criterion = nn.CrossEntropyLoss(ignore_index=-100)
    encoded = [encode(s) for s in SENTENCES]
    generator = torch.Generator().manual_seed(202)
    for step in range(STEPS):
        picks = torch.randint(0, len(encoded), (BATCH,), generator=generator)
        rows = [list(encoded[int(i)]) for i in picks]
        ids = pad_rows(rows)
        labels = torch.full_like(ids, -100)
        for r, row in enumerate(rows):
            mask_positions = torch.rand(len(row), generator=generator) < MASK_RATE
            if not bool(mask_positions.any()):
                mask_positions[int(torch.randint(0, len(row), (1,), generator=generator))] = True
            for p in range(len(row)):
                if bool(mask_positions[p]):
                    labels[r, p] = ids[r, p]
                    ids[r, p] = MASK
        _, logits = model(ids, ids.eq(PAD))
        loss = criterion(logits.reshape(-1, logits.shape[-1]), labels.reshape(-1))
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
        if step % 100 == 0 or step == STEPS - 1:
            print(f"mlm step {step}: loss {float(loss):.4f}")
    model.eval()
    return model


def train_seq2seq() -> ByteSeq2Seq:
    torch.manual_seed(303)
    model = ByteSeq2Seq()
    optimizer = torch.optim.AdamW(model.parameters(), lr=LR)
    criterion = nn.CrossEntropyLoss(ignore_index=PAD)
    pairs = [(encode(src), encode(tgt)) for src, tgt in GENERATION_PAIRS]
    generator = torch.Generator().manual_seed(404)
    for step in range(STEPS):
        picks = torch.randint(0, len(pairs), (4,), generator=generator)
        batch = [pairs[int(i)] for i in picks]
        src = pad_rows([b[0] for b in batch])
        tgt_in = pad_rows([[BOS] + b[1] for b in batch])
        tgt_out = pad_rows([b[1] + [EOS] for b in batch])
        logits = model(src, tgt_in, src_pad_mask=src.eq(PAD), tgt_pad_mask=tgt_in.eq(PAD))
        loss = criterion(logits.reshape(-1, logits.shape[-1]), tgt_out.reshape(-1))
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
        if step % 100 == 0 or step == STEPS - 1:
            print(f"seq2seq step {step}: loss {float(loss):.4f}")
    model.eval()
    return model


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "src" / "sectsum_service" / "builtin"
    mlm = train_mlm()
    save_checkpoint(mlm, "mlm", out_dir / "mlm.pt")
    seq2seq = train_seq2seq()
    save_checkpoint(seq2seq, "seq2seq", out_dir / "seq2seq.pt")
    print(f"wrote checkpoints to {out_dir}")


if __name__ == "__main__":
    main()

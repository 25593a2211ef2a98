import pytest

from sectsum_service.engine import GeneratorEngine
from sectsum_service.sample_texts import GENERATION_PAIRS
from sectsum_service.training import FinetuneConfig, finetune

TOY_RECORDS = [{"input": src, "target": tgt} for src, tgt in GENERATION_PAIRS]


def test_finetune_rejects_empty_records(tmp_path):
    with pytest.raises(ValueError, match="at least one"):
        finetune([], FinetuneConfig(output_path=tmp_path / "out.pt"))


def test_finetune_names_bad_record_index(tmp_path):
    records = TOY_RECORDS[:1] + [{"input": "x", "target": ""}]
    with pytest.raises(ValueError, match="record 1"):
        finetune(records, FinetuneConfig(output_path=tmp_path / "out.pt"))


def test_finetune_config_validation(tmp_path):
    with pytest.raises(ValueError):
        finetune(TOY_RECORDS, FinetuneConfig(output_path=tmp_path / "o.pt", epochs=0))
    with pytest.raises(ValueError):
        finetune(TOY_RECORDS, FinetuneConfig(output_path=tmp_path / "o.pt", learning_rate=0))


def test_finetune_loss_decreases_on_toy_set(tmp_path):
    # 8 records, a few epochs at a test-friendly learning rate
    config = FinetuneConfig(
        output_path=tmp_path / "tuned.pt", epochs=4, batch_size=4, learning_rate=1e-3, seed=1
    )
    path, losses = finetune(TOY_RECORDS, config)
    assert path.exists()
    assert len(losses) == 4
    assert losses[-1] < losses[0]


def test_finetune_defaults_match_training_recipe(tmp_path):
    config = FinetuneConfig(output_path=tmp_path / "x.pt")
    assert config.epochs == 20
    assert config.batch_size == 4
    assert config.learning_rate == 1e-5


def test_finetuned_checkpoint_round_trips(tmp_path):
    config = FinetuneConfig(output_path=tmp_path / "tuned.pt", epochs=1, learning_rate=1e-4, seed=7)
    path, _ = finetune(TOY_RECORDS, config)
    fixture = "en | Borrowed Light | Reception | The work was first published in 1995."
    first = GeneratorEngine(str(path)).generate(fixture, 48)
    second = GeneratorEngine(str(path)).generate(fixture, 48)
    assert first == second


def test_finetune_deterministic_for_fixed_seed(tmp_path):
    config_a = FinetuneConfig(output_path=tmp_path / "a.pt", epochs=2, learning_rate=1e-4, seed=5)
    config_b = FinetuneConfig(output_path=tmp_path / "b.pt", epochs=2, learning_rate=1e-4, seed=5)
    _, losses_a = finetune(TOY_RECORDS, config_a)
    _, losses_b = finetune(TOY_RECORDS, config_b)
    assert losses_a == losses_b

from importlib import resources

from sectsum.segmenter import SentenceRecord, TERMINATORS, normalize_whitespace, segment, split_sentences


def test_two_terminators():
    records = segment(["He ran. She won!"])
    assert [(r.text, r.ref_index, r.sent_index) for r in records] == [
        ("He ran.", 0, 0),
        ("She won!", 0, 1),
    ]


def test_danda_terminator():
    records = segment(["मैं गया। वह आई।"])
    assert [r.text for r in records] == ["मैं गया।", "वह आई।"]
    assert [(r.ref_index, r.sent_index) for r in records] == [(0, 0), (0, 1)]


def test_abbreviation_guard_hand_trace():
    # hand trace: "Dr" precedes the first dot and sits in the guard list, so
    # the only boundary is the final dot at end of text -> one sentence
    records = segment(["Dr. Rao spoke."])
    assert [r.text for r in records] == ["Dr. Rao spoke."]


def test_single_letter_initial_guard():
    records = segment(["F. M. Last arrived today. He left."])
    assert [r.text for r in records] == ["F. M. Last arrived today.", "He left."]


def test_decimal_point_not_split():
    records = segment(["The price rose 3.14 percent. Markets closed."])
    assert [r.text for r in records] == ["The price rose 3.14 percent.", "Markets closed."]


def test_number_before_period_still_splits():
    records = segment(["He counted to 3. Then he stopped."])
    assert [r.text for r in records] == ["He counted to 3.", "Then he stopped."]


def test_question_exclamation_runs():
    records = segment(["Really?! He won. Unbelievable!"])
    assert [r.text for r in records] == ["Really?!", "He won.", "Unbelievable!"]


def test_empty_input_and_blank_reference():
    assert segment([]) == []
    records = segment(["   ", "One sentence."])
    assert [(r.text, r.ref_index, r.sent_index, r.global_index) for r in records] == [
        ("One sentence.", 1, 0, 0)
    ]


def test_global_index_strictly_increasing():
    records = segment(["A b. C d.", "E f? G h!", "ठीक है। चलो।"])
    indices = [r.global_index for r in records]
    assert indices == list(range(len(records)))
    order = [(r.ref_index, r.sent_index) for r in records]
    assert order == sorted(order)


LOSSLESS_FIXTURES = [
    "He ran.   She \t won! Then  they rested.",
    "Dr. Rao spoke. Mr. K. N. Iyer listened.",
    "यह 3.5 किलोमीटर है। वहाँ जाओ। ठीक?",
    "ଏହା ଏକ ପରୀକ୍ଷା। ଦ୍ୱିତୀୟ ବାକ୍ୟ॥ ଶେଷ",
    "No terminator at all",
    "Multiple!!! Terminators?! Here.",
    "e.g. this stays together. i.e. so does this.",
]


def test_lossless_modulo_whitespace():
    for text in LOSSLESS_FIXTURES:
        sentences = split_sentences(text)
        assert " ".join(sentences) == normalize_whitespace(text)
        original = sorted(ch for ch in text if not ch.isspace())
        rebuilt = sorted(ch for s in sentences for ch in s if not ch.isspace())
        assert rebuilt == original


def test_deterministic():
    for text in LOSSLESS_FIXTURES:
        assert split_sentences(text) == split_sentences(text)


def test_no_unguarded_terminator_inside_sentence():
    guard_file = resources.files("sectsum").joinpath("data", "abbreviations.txt").read_text("utf-8")
    guards = {line.strip().lower() for line in guard_file.splitlines() if line.strip() and not line.startswith("#")}
    for text in LOSSLESS_FIXTURES:
        for sentence in split_sentences(text):
            for i, ch in enumerate(sentence[:-1]):
                if ch in TERMINATORS and sentence[i + 1] == " ":
                    token = sentence[sentence.rfind(" ", 0, i) + 1 : i]
                    assert ch == "."
                    assert (len(token) == 1 and token.isalpha()) or token.lower() in guards


def test_record_fields_frozen():
    record = SentenceRecord(text="Hi.", ref_index=0, sent_index=0, global_index=0)
    assert record.text == "Hi."

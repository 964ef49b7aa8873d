import random

import pytest

from src.compiler import (
    BraidWord,
    alphabet,
    evaluate_word,
    format_word,
    inverse_word,
    parse_word,
    reduce_word,
    synthesize,
    verify_gate,
)
from src.cyclotomic import I, ONE, ZETA, CMatrix
from src.group_tools import GroupLimitError
from src.representations import RepSpec, reference_matrices, standard_gates

B4 = RepSpec(4)
B6 = RepSpec(6)
CNOT_WORD = "-3 4 3 1 5 4 -3"


def test_parse_and_format():
    word = parse_word(CNOT_WORD, B6)
    assert word.letters == (-3, 4, 3, 1, 5, 4, -3)
    assert format_word(word) == CNOT_WORD
    assert str(word) == CNOT_WORD
    assert parse_word("", B4).letters == ()


@pytest.mark.parametrize("text", ["1 x 2", "0", "4", "-6"])
def test_parse_rejects_bad_letters(text):
    with pytest.raises(ValueError):
        parse_word(text, B4)


def test_empty_word_is_identity():
    assert evaluate_word(BraidWord(B4)) == CMatrix.identity(2)
    assert verify_gate(BraidWord(B4), standard_gates()["I"], up_to_phase=False) == ONE


def test_hadamard_word():
    h = standard_gates()["H"]
    word = parse_word("1 2 1", B4)
    assert evaluate_word(word) == h.scale(ZETA)
    assert verify_gate(word, h) == ZETA
    assert verify_gate(word, h, up_to_phase=False) is None


def test_not_gate_by_double_exchange():
    x = standard_gates()["X"]
    assert evaluate_word(parse_word("2 2", B4)) == x


def test_cnot_word():
    cnot = standard_gates()["CNOT"]
    phase = verify_gate(parse_word(CNOT_WORD, B6), cnot)
    assert phase == I
    assert phase * phase.conj() == ONE


def test_verify_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_gate(parse_word("1", B4), standard_gates()["CNOT"])


def test_evaluation_is_a_monoid_morphism():
    a = parse_word("1 2 -3", B4)
    b = parse_word("2 2 1", B4)
    assert evaluate_word(a + b) == evaluate_word(a) @ evaluate_word(b)
    assert evaluate_word(inverse_word(a)) == evaluate_word(a).dagger()
    assert evaluate_word(a + inverse_word(a)) == CMatrix.identity(2)


def test_braid_relation_rewriting():
    for k in range(1, 5):
        left = parse_word(f"{k} {k + 1} {k}", B6)
        right = parse_word(f"{k + 1} {k} {k + 1}", B6)
        assert evaluate_word(left) == evaluate_word(right)


def test_reduce_word():
    assert reduce_word(parse_word("1 -1 2", B4)).letters == (2,)
    assert reduce_word(parse_word("2 2", B4)).letters == (2, 2)
    assert reduce_word(parse_word("1 2 -2 -1 3", B4)).letters == (3,)


def test_reduce_word_keeps_value():
    rng = random.Random(7)
    letters = alphabet(B6)
    for _ in range(20):
        word = BraidWord(B6, tuple(rng.choice(letters) for _ in range(12)))
        reduced = reduce_word(word)
        assert evaluate_word(reduced) == evaluate_word(word)
        assert all(a != -b for a, b in zip(reduced.letters, reduced.letters[1:]))


def test_alphabet_order():
    assert alphabet(B4) == [1, -1, 2, -2, 3, -3]


def test_synthesize_hadamard():
    h = standard_gates()["H"]
    result = synthesize(B4, h, max_len=5)
    assert len(result.word) == 3
    assert result.minimal
    assert verify_gate(result.word, h) == result.phase
    assert result.word.letters == (1, 2, 1)
    assert evaluate_word(result.word) == h.scale(result.phase)
    assert h == evaluate_word(result.word).scale(result.phase.inv())


def test_synthesize_identity_is_empty_word():
    result = synthesize(B4, CMatrix.identity(2), max_len=3)
    assert result.word.letters == ()
    assert result.phase == ONE


def test_synthesize_exact_mode():
    r23 = reference_matrices()["R4_23"]
    result = synthesize(B4, r23, max_len=2, up_to_phase=False)
    assert result.word.letters == (2,)


def test_t_gate_is_not_synthesizable():
    assert synthesize(B4, standard_gates()["T"], max_len=20) is None


def test_synthesis_respects_max_len():
    assert synthesize(B4, standard_gates()["H"], max_len=2) is None


def test_synthesize_rejects_non_unitary_target():
    with pytest.raises(ValueError):
        synthesize(B4, CMatrix.diag([1, 2]), max_len=3)
    with pytest.raises(ValueError):
        synthesize(B4, CMatrix.identity(4), max_len=3)


def test_synthesis_limit():
    with pytest.raises(GroupLimitError):
        synthesize(B4, standard_gates()["T"], max_len=20, limit=5)


@pytest.mark.slow
def test_synthesize_cnot():
    cnot = standard_gates()["CNOT"]
    result = synthesize(B6, cnot, max_len=7)
    assert result is not None
    assert len(result.word) <= 7
    assert verify_gate(result.word, cnot) == result.phase


@pytest.mark.slow
def test_threaded_synthesis_matches_serial():
    cnot = standard_gates()["CNOT"]
    serial = synthesize(B6, cnot, max_len=7)
    threaded = synthesize(B6, cnot, max_len=7, workers=4)
    assert threaded.word == serial.word

"""
Braid words: evaluation, gate verification and exhaustive synthesis.

A word is read left to right and evaluated as the matrix product in the
same order, so the rightmost letter acts first on a state vector. Letter
+k is generator k, −k its inverse (the conjugate transpose, generators are
unitary).
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import config
from .cyclotomic import ONE, CMatrix, CycloNumber, equal_up_to_phase
from .group_tools import GroupLimitError
from .representations import RepSpec, generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidWord:
    spec: RepSpec
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        for letter in letters:
            if not isinstance(letter, int) or letter == 0:
                raise ValueError(f"braid letters are nonzero integers, got {letter!r}")
            self.spec.check_index(letter)
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.spec != self.spec:
            raise ValueError("cannot concatenate words over different representations")
        return BraidWord(self.spec, self.letters + other.letters)


@dataclass(frozen=True)
class SynthesisResult:
    """
    A synthesized word and its phase.

    The phase points the same way as the one from verify_gate: the word
    evaluates to phase · target, so target = phase⁻¹ · word. minimal holds
    when the word was found layer by layer.
    """

    word: BraidWord
    phase: CycloNumber
    explored: int
    minimal: bool = True


def parse_word(text: str, spec: RepSpec) -> BraidWord:
    """'-3 4 3 1' -> BraidWord; an empty string is the empty word."""
    letters = []
    for token in text.replace(",", " ").split():
        try:
            letters.append(int(token))
        except ValueError:
            raise ValueError(f"invalid braid letter {token!r} in word {text!r}")
    return BraidWord(spec, tuple(letters))


def format_word(word: BraidWord) -> str:
    return " ".join(str(letter) for letter in word.letters)


def _letter_matrix(spec: RepSpec, letter: int) -> CMatrix:
    g = generator(spec, abs(letter))
    return g if letter > 0 else g.dagger()


def evaluate_word(word: BraidWord) -> CMatrix:
    result = CMatrix.identity(word.spec.dim)
    for letter in word.letters:
        result = result @ _letter_matrix(word.spec, letter)
    return result


def verify_gate(word: BraidWord, target: CMatrix, up_to_phase: bool = True) -> Optional[CycloNumber]:
    """λ with evaluate_word(word) = λ·target, or None."""
    if target.dim != word.spec.dim:
        raise ValueError(
            f"target is {target.dim}x{target.dim}, representation dimension is {word.spec.dim}"
        )
    value = evaluate_word(word)
    if not up_to_phase:
        return ONE if value == target else None
    return equal_up_to_phase(value, target)


def reduce_word(word: BraidWord) -> BraidWord:
    """Cancel adjacent (k, −k) pairs until none are left."""
    stack: list[int] = []
    for letter in word.letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return BraidWord(word.spec, tuple(stack))


def inverse_word(word: BraidWord) -> BraidWord:
    return BraidWord(word.spec, tuple(-letter for letter in reversed(word.letters)))


def alphabet(spec: RepSpec) -> list[int]:
    """Letters in tie-break order: +1, −1, +2, −2, ..."""
    letters = []
    for k in range(1, spec.generator_count + 1):
        letters += [k, -k]
    return letters


def synthesize(spec: RepSpec, target: CMatrix, max_len: int, up_to_phase: bool = True,
               limit: Optional[int] = None, workers: int = 1) -> Optional[SynthesisResult]:
    """
    Shortest braid word for target, breadth first over the Cayley graph.

    States are matrices keyed exactly, or by phase class when up_to_phase.
    Each layer is expanded parent by parent in lexicographic order of the
    parents' words and letters are appended in alphabet order, so the first
    hit is the lexicographically smallest shortest word. Returns None when
    max_len is reached or the image closes without a hit.
    """
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    if target.dim != spec.dim:
        raise ValueError(f"target is {target.dim}x{target.dim}, representation dimension is {spec.dim}")
    if not target.is_unitary():
        raise ValueError("synthesis target must be unitary")
    limit = config.ELEMENT_LIMIT if limit is None else limit

    def state_key(m: CMatrix) -> tuple:
        return m.phase_key if up_to_phase else m.key

    def found(letters: Sequence[int], explored: int) -> SynthesisResult:
        word = BraidWord(spec, tuple(letters))
        phase = verify_gate(word, target, up_to_phase)
        return SynthesisResult(word=word, phase=phase, explored=explored, minimal=True)

    target_key = state_key(target)
    identity = CMatrix.identity(spec.dim)
    visited = {state_key(identity)}
    if state_key(identity) == target_key:
        return found((), 1)

    letters = alphabet(spec)
    steps = {letter: _letter_matrix(spec, letter) for letter in letters}
    layer: list[tuple[CMatrix, tuple[int, ...]]] = [(identity, ())]
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for depth in range(1, max_len + 1):
            moves = [(m, word, letter) for m, word in layer for letter in letters]
            if pool is None:
                products = [m @ steps[letter] for m, _, letter in moves]
            else:
                products = list(pool.map(lambda move: move[0] @ steps[move[2]], moves))
            next_layer = []
            for (_, word, letter), child in zip(moves, products):
                key = state_key(child)
                if key == target_key:
                    return found(word + (letter,), len(visited) + 1)
                if key in visited:
                    continue
                visited.add(key)
                if len(visited) > limit:
                    raise GroupLimitError(len(visited), limit)
                next_layer.append((child, word + (letter,)))
            logger.debug("depth %d: %d new states, %d total", depth, len(next_layer), len(visited))
            if not next_layer:
                logger.info("image closed at depth %d with %d states; target absent", depth, len(visited))
                return None
            layer = next_layer
    finally:
        if pool is not None:
            pool.shutdown()
    return None

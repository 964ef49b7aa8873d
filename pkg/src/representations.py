"""
Braid-group generators for 2n Ising anyons.

Pair j holds anyons 2j−1 and 2j and is tensor factor j (first pair most
significant). Each pair carries one fusion-channel bit: 0 for σ₊σ₊ ("+"),
1 for σ₊σ₋ ("−").

  - odd k = 2j−1 : diag(1, i) on factor j
  - even k = 2j  : the 4×4 universal-R block on factors j, j+1

Fermion parity keeps only even-weight channel strings, leaving 2ⁿ⁻¹ states
that are indexed by n−1 qubits through the XOR encoding below.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, List

import numpy as np

from .cyclotomic import (
    I,
    INV_SQRT2,
    ONE,
    ZETA,
    ZERO,
    CMatrix,
    tensor_all,
)


class Convention(str, Enum):
    WAVEFUNCTION = "wavefunction"
    QUANTUMGROUP = "quantumgroup"


@dataclass(frozen=True)
class RepSpec:
    anyons: int
    convention: Convention = Convention.WAVEFUNCTION
    projected: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.anyons, int) or self.anyons < 4 or self.anyons % 2:
            raise ValueError(f"anyon count must be an even integer >= 4, got {self.anyons!r}")
        try:
            object.__setattr__(self, "convention", Convention(self.convention))
        except ValueError:
            raise ValueError(
                f"unknown convention {self.convention!r}; "
                f"use one of {[c.value for c in Convention]}"
            )

    @property
    def n_pairs(self) -> int:
        return self.anyons // 2

    @property
    def full_dim(self) -> int:
        return 2**self.n_pairs

    @property
    def projected_dim(self) -> int:
        return 2 ** (self.n_pairs - 1)

    @property
    def dim(self) -> int:
        return self.projected_dim if self.projected else self.full_dim

    @property
    def generator_count(self) -> int:
        return self.anyons - 1

    def check_index(self, k: int) -> None:
        if not 1 <= abs(k) <= self.generator_count:
            raise ValueError(
                f"generator index {k} out of range 1..{self.generator_count} for {self.anyons} anyons"
            )

    def with_projected(self, projected: bool) -> RepSpec:
        return replace(self, projected=projected)


@dataclass(frozen=True)
class QubitEncoding:
    """Qubit strings (q₁…q_{n−1}) and their pair-channel strings (e₁…e_n)."""

    n_pairs: int
    states: tuple[tuple[str, str], ...]

    def channels(self, qubits: str) -> str:
        for q, e in self.states:
            if q == qubits:
                return e
        raise KeyError(f"no qubit state {qubits!r} for {self.n_pairs} pairs")

    def indices(self) -> list[int]:
        """Positions of the encoded states inside the 2ⁿ channel space."""
        return [int(e, 2) for _, e in self.states]


# ---------------------------------------------------------
# Universal R matrix blocks
# ---------------------------------------------------------
IDENTITY_2 = CMatrix.identity(2)
ODD_R = CMatrix.diag([1, I])
EVEN_R = CMatrix.from_entries([
    [1, 0, 0, -I],
    [0, 1, -I, 0],
    [0, -I, 1, 0],
    [-I, 0, 0, 1],
]).scale(INV_SQRT2)


@lru_cache(maxsize=None)
def build_generator(spec: RepSpec, k: int) -> CMatrix:
    """
    Unprojected generator for the exchange of anyons k and k+1 (dim 2ⁿ).

    In the wavefunction convention even-k generators carry an extra ζ so the
    projected four-anyon matrices come out exactly as the wave-function
    derivation gives them; the quantumgroup convention is the bare R.
    """
    spec.check_index(k)
    if k < 0:
        raise ValueError(f"build_generator takes positive indices, got {k}")
    n = spec.n_pairs
    if k % 2 == 1:
        j = (k + 1) // 2
        return tensor_all([IDENTITY_2] * (j - 1) + [ODD_R] + [IDENTITY_2] * (n - j))
    j = k // 2
    block = tensor_all([IDENTITY_2] * (j - 1) + [EVEN_R] + [IDENTITY_2] * (n - j - 1))
    if spec.convention is Convention.WAVEFUNCTION:
        block = block.scale(ZETA)
    return block


@lru_cache(maxsize=None)
def parity_projector(n_pairs: int) -> CMatrix:
    """diag over channel strings: 1 on even weight, 0 on odd weight."""
    if n_pairs < 1:
        raise ValueError(f"need at least one pair, got {n_pairs}")
    diag = [ONE if bin(i).count("1") % 2 == 0 else ZERO for i in range(2**n_pairs)]
    return CMatrix.diag(diag)


@lru_cache(maxsize=None)
def qubit_basis_map(n_pairs: int) -> QubitEncoding:
    """
    e₁ = q₁, e_j = q_{j−1} XOR q_j, e_n = q_{n−1}.

    Ordered by the integer value of the qubit string, so that generator
    entries are indexed by computational-basis states.
    """
    if n_pairs < 2:
        raise ValueError(f"qubit encoding needs at least 2 pairs, got {n_pairs}")
    states = []
    for value in range(2 ** (n_pairs - 1)):
        q = [int(b) for b in format(value, f"0{n_pairs - 1}b")]
        e = [q[0]] + [q[j - 1] ^ q[j] for j in range(1, n_pairs - 1)] + [q[-1]]
        states.append(("".join(map(str, q)), "".join(map(str, e))))
    return QubitEncoding(n_pairs=n_pairs, states=tuple(states))


def compress(m: CMatrix, indices: List[int]) -> CMatrix:
    """Rows and columns of m at the given indices, in that order."""
    idx = np.asarray(indices)
    return CMatrix(m.coeffs[:, idx][:, :, idx], m.den)


@lru_cache(maxsize=None)
def project_generator(spec: RepSpec, k: int) -> CMatrix:
    """Generator restricted to the even-parity subspace (dim 2ⁿ⁻¹)."""
    full = build_generator(spec.with_projected(False), k)
    return compress(full, qubit_basis_map(spec.n_pairs).indices())


def generator(spec: RepSpec, k: int) -> CMatrix:
    if spec.projected:
        return project_generator(spec, k)
    return build_generator(spec, k)


def generators(spec: RepSpec) -> list[CMatrix]:
    return [generator(spec, k) for k in range(1, spec.generator_count + 1)]


def generator_description(spec: RepSpec, k: int) -> str:
    """Each generator is ζ^ε·exp(−iπ/4·P) for a Pauli string P on the pairs."""
    spec.check_index(k)
    if k % 2 == 1:
        pauli = f"Z{(k + 1) // 2}"
        phase = "ζ"
    else:
        pauli = f"X{k // 2}X{k // 2 + 1}"
        phase = "ζ" if spec.convention is Convention.WAVEFUNCTION else "1"
    return f"{phase}·exp(-iπ/4·{pauli})"


def projected_dimension_table(max_pairs: int) -> list[dict]:
    rows = []
    for n in range(2, max_pairs + 1):
        projector = parity_projector(n)
        rows.append({
            "n_pairs": n,
            "full_dim": 2**n,
            "projected_dim": len(qubit_basis_map(n).states),
            "projector_rank": projector.rank(),
        })
    return rows


def is_tensor_factorizable(m: CMatrix) -> bool:
    """
    True iff m = A ⊗ B for 2×2 A, B.

    Rearranges m so that each row is one vectorized 2×2 block; a Kronecker
    product is exactly a rank ≤ 1 rearrangement.
    """
    if m.dim != 4:
        raise ValueError(f"factorizability test needs a 4x4 matrix, got {m.dim}x{m.dim}")
    blocks = m.coeffs.reshape(4, 2, 2, 2, 2).transpose(0, 1, 3, 2, 4).reshape(4, 4, 4)
    return CMatrix(blocks, m.den).rank() <= 1


# ---------------------------------------------------------
# Explicit matrices as printed for 4 and 6 anyons, and the gate set
# ---------------------------------------------------------
def reference_matrices() -> Dict[str, CMatrix]:
    phase = ZETA * INV_SQRT2
    r4_23 = CMatrix.from_entries([[1, -I], [-I, 1]]).scale(phase)
    return {
        "R4_12": CMatrix.diag([1, I]),
        "R4_23": r4_23,
        "R4_34": CMatrix.diag([1, I]),
        "R6_12": CMatrix.diag([1, 1, I, I]),
        "R6_23": CMatrix.from_entries([
            [1, 0, -I, 0],
            [0, 1, 0, -I],
            [-I, 0, 1, 0],
            [0, -I, 0, 1],
        ]).scale(phase),
        "R6_34": CMatrix.diag([1, I, I, 1]),
        "R6_45": CMatrix.from_entries([
            [1, -I, 0, 0],
            [-I, 1, 0, 0],
            [0, 0, 1, -I],
            [0, 0, -I, 1],
        ]).scale(phase),
        "R6_56": CMatrix.diag([1, I, 1, I]),
        "R_odd": ODD_R,
        "R_even": EVEN_R,
        "P2": CMatrix.diag([1, 0, 0, 1, 0, 1, 1, 0]),
        "H": CMatrix.from_entries([[1, 1], [1, -1]]).scale(INV_SQRT2),
        "T": CMatrix.diag([1, ZETA]),
        "CNOT": CMatrix.from_entries([
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ]),
    }


def standard_gates() -> Dict[str, CMatrix]:
    """Named gate table: I, X, Z, H, T, CNOT, CZ."""
    constants = reference_matrices()
    return {
        "I": CMatrix.identity(2),
        "X": CMatrix.from_entries([[0, 1], [1, 0]]),
        "Z": CMatrix.diag([1, -1]),
        "H": constants["H"],
        "T": constants["T"],
        "CNOT": constants["CNOT"],
        "CZ": CMatrix.diag([1, 1, 1, -1]),
    }

"""
Numerical analytic continuation of the 4-quasihole Pfaffian wave functions.

The two qubit functions are

    Ψ⁰,¹ = (η₁₃η₂₄)^{1/4} · ∏ η_ab^γ / √(1 ± √x) · (Ψ_(13)(24) ± √x Ψ_(14)(23))

with x = η₁₄η₂₃/(η₁₃η₂₄). The multivalued scalars only depend on the
quasihole positions; they are carried along the exchange path by picking,
at every step, the root closest to the previous value. At the end of the
path the transported pair is fitted onto the initial pair over a handful of
electron configurations, which gives the 2×2 braid matrix.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional, Sequence

import mpmath
import numpy as np

from .config import ORACLE_GAMMA, ORACLE_SEED, ORACLE_STEPS
from .cyclotomic import CMatrix
from .representations import reference_matrices

logger = logging.getLogger(__name__)

PAIRINGS = (((1, 3), (2, 4)), ((1, 4), (2, 3)))
QUASIHOLE_PAIRS = tuple(combinations(range(4), 2))

MIN_SEPARATION = 1e-6
CONSISTENCY_TOL = 1e-8
AMBIGUITY_FRACTION = 0.1


class BranchAmbiguityError(RuntimeError):
    def __init__(self, quantity: str, step: int) -> None:
        super().__init__(
            f"branch of {quantity} is ambiguous at step {step}; increase the number of steps"
        )
        self.quantity = quantity
        self.step = step


class BranchConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class QhConfig:
    eta: tuple[complex, ...]
    z: tuple[complex, ...]

    def __post_init__(self) -> None:
        eta = tuple(complex(e) for e in self.eta)
        z = tuple(complex(p) for p in self.z)
        if len(eta) != 4:
            raise ValueError(f"need exactly 4 quasihole positions, got {len(eta)}")
        if len(z) < 2 or len(z) % 2:
            raise ValueError(f"need an even number (>= 2) of electrons, got {len(z)}")
        _check_separated(eta + z)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "z", z)
        x = crossratio(eta)
        if abs(x) < MIN_SEPARATION or abs(1 - x) < MIN_SEPARATION:
            raise ValueError(f"degenerate crossratio {x}")

    @property
    def crossratio(self) -> complex:
        return crossratio(self.eta)

    def with_eta(self, eta: Sequence[complex]) -> QhConfig:
        return replace(self, eta=tuple(eta))

    def with_z(self, z: Sequence[complex]) -> QhConfig:
        return replace(self, z=tuple(z))


@dataclass(frozen=True)
class BranchState:
    """Continuous values of the multivalued scalars at one set of positions."""

    eta: tuple[complex, ...]
    root4: complex          # (η₁₃η₂₄)^{1/4}
    sqrt_x: complex         # √x
    sqrt_plus: complex      # √(1 + √x)
    sqrt_minus: complex     # √(1 − √x)
    logs: tuple[complex, ...] = field(default=())  # log η_ab for a < b

    def abelian(self, gamma: float) -> complex:
        return complex(np.exp(gamma * np.sum(self.logs)))

    def check(self, eta: Sequence[complex], tol: float = CONSISTENCY_TOL) -> None:
        eta = tuple(complex(e) for e in eta)
        base4 = (eta[0] - eta[2]) * (eta[1] - eta[3])
        x = crossratio(eta)
        checks = {
            "(η13η24)^1/4": (self.root4**4, base4),
            "√x": (self.sqrt_x**2, x),
            "√(1+√x)": (self.sqrt_plus**2, 1 + self.sqrt_x),
            "√(1−√x)": (self.sqrt_minus**2, 1 - self.sqrt_x),
        }
        for (a, b), log in zip(QUASIHOLE_PAIRS, self.logs):
            checks[f"log η{a + 1}{b + 1}"] = (np.exp(log), eta[a] - eta[b])
        for name, (value, expected) in checks.items():
            if abs(value - expected) > tol * max(1.0, abs(expected)):
                raise BranchConsistencyError(
                    f"{name} does not match its base: {value} vs {expected}"
                )


@dataclass(frozen=True)
class OracleComparison:
    max_entry_error: float
    phase: complex


def _check_separated(points: Sequence[complex]) -> None:
    for p, q in combinations(points, 2):
        if abs(p - q) < MIN_SEPARATION:
            raise ValueError(f"points {p} and {q} coincide")


def crossratio(eta: Sequence[complex]) -> complex:
    e1, e2, e3, e4 = eta
    return (e1 - e4) * (e2 - e3) / ((e1 - e3) * (e2 - e4))


def default_config() -> QhConfig:
    return QhConfig(eta=(0, 1, 2 + 1j, 4), z=(0.3 - 0.7j, 2.5 + 1.8j))


# ---------------------------------------------------------
# Single-valued part
# ---------------------------------------------------------
def pfaffian(matrix: np.ndarray) -> complex:
    """Pfaffian of an antisymmetric matrix by expansion along the first row."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"pfaffian needs a square matrix, got shape {a.shape}")
    if n % 2:
        raise ValueError(f"pfaffian needs an even dimension, got {n}")
    if not np.allclose(a, -a.T):
        raise ValueError("pfaffian needs an antisymmetric matrix")
    return _pfaffian(a)


def _pfaffian(a: np.ndarray) -> complex:
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    total = 0j
    for j in range(1, n):
        if a[0, j] == 0:
            continue
        keep = [k for k in range(1, n) if k != j]
        sign = 1 if j % 2 == 1 else -1
        total += sign * a[0, j] * _pfaffian(a[np.ix_(keep, keep)])
    return total


def _pairing_kernel(eta: Sequence[complex], z: Sequence[complex],
                    pairing: tuple[tuple[int, int], tuple[int, int]]) -> np.ndarray:
    (a, b), (c, d) = pairing
    ea, eb, ec, ed = (eta[k - 1] for k in (a, b, c, d))
    zs = np.asarray(z, dtype=complex)
    left = (zs - ea) * (zs - eb)
    right = (zs - ec) * (zs - ed)
    numerator = np.outer(left, right) + np.outer(right, left)
    diff = zs[:, None] - zs[None, :]
    np.fill_diagonal(diff, 1.0)
    kernel = numerator / diff
    np.fill_diagonal(kernel, 0.0)
    return kernel


def _pfaffian_basis(eta: Sequence[complex], z: Sequence[complex],
                    pairing: tuple[tuple[int, int], tuple[int, int]]) -> complex:
    zs = np.asarray(z, dtype=complex)
    vandermonde = np.prod([(zs[i] - zs[j]) ** 2 for i, j in combinations(range(len(zs)), 2)])
    return _pfaffian(_pairing_kernel(eta, z, pairing)) * vandermonde


def eval_pfaffian_basis(config: QhConfig,
                        pairing: tuple[tuple[int, int], tuple[int, int]]) -> complex:
    """Ψ_(ab)(cd) at the configuration; pairing ((a, b), (c, d)) with a < b, c < d."""
    (a, b), (c, d) = pairing
    if not (a < b and c < d) or sorted((a, b, c, d)) != [1, 2, 3, 4]:
        raise ValueError(f"invalid pairing {pairing}")
    return _pfaffian_basis(config.eta, config.z, pairing)


# ---------------------------------------------------------
# Branch tracking
# ---------------------------------------------------------
def initial_branch(eta: Sequence[complex]) -> BranchState:
    """Principal branches of every multivalued scalar."""
    eta = tuple(complex(e) for e in eta)
    base4 = (eta[0] - eta[2]) * (eta[1] - eta[3])
    sqrt_x = np.sqrt(crossratio(eta))
    return BranchState(
        eta=eta,
        root4=complex(base4**0.25),
        sqrt_x=complex(sqrt_x),
        sqrt_plus=complex(np.sqrt(1 + sqrt_x)),
        sqrt_minus=complex(np.sqrt(1 - sqrt_x)),
        logs=tuple(complex(np.log(eta[a] - eta[b])) for a, b in QUASIHOLE_PAIRS),
    )


def _nearest_root(base: complex, order: int, previous: complex, name: str, step: int) -> complex:
    principal = base ** (1.0 / order)
    roots = principal * np.exp(2j * np.pi * np.arange(order) / order)
    distances = np.abs(roots - previous)
    ranked = np.argsort(distances)
    spacing = abs(principal) * 2 * np.sin(np.pi / order)
    if distances[ranked[1]] - distances[ranked[0]] < AMBIGUITY_FRACTION * spacing:
        raise BranchAmbiguityError(name, step)
    return complex(roots[ranked[0]])


def _unwrapped_log(value: complex, previous: complex) -> complex:
    log = np.log(value)
    turns = np.round((previous.imag - log.imag) / (2 * np.pi))
    return complex(log.real, log.imag + 2 * np.pi * turns)


def advance_branch(state: BranchState, eta: Sequence[complex], step: int = 0) -> BranchState:
    """Move every tracked value to new positions by nearest continuation."""
    eta = tuple(complex(e) for e in eta)
    base4 = (eta[0] - eta[2]) * (eta[1] - eta[3])
    sqrt_x = _nearest_root(crossratio(eta), 2, state.sqrt_x, "√x", step)
    return BranchState(
        eta=eta,
        root4=_nearest_root(base4, 4, state.root4, "(η13η24)^1/4", step),
        sqrt_x=sqrt_x,
        sqrt_plus=_nearest_root(1 + sqrt_x, 2, state.sqrt_plus, "√(1+√x)", step),
        sqrt_minus=_nearest_root(1 - sqrt_x, 2, state.sqrt_minus, "√(1−√x)", step),
        logs=tuple(
            _unwrapped_log(eta[a] - eta[b], prev)
            for (a, b), prev in zip(QUASIHOLE_PAIRS, state.logs)
        ),
    )


def eval_qubit_functions(config: QhConfig, branch: BranchState,
                         gamma: Optional[float] = None) -> tuple[complex, complex]:
    """(Ψ⁰, Ψ¹) at config with the scalars taken from branch."""
    gamma = ORACLE_GAMMA if gamma is None else gamma
    branch.check(config.eta)
    a = _pfaffian_basis(config.eta, config.z, PAIRINGS[0])
    b = _pfaffian_basis(config.eta, config.z, PAIRINGS[1])
    prefactor = branch.root4 * branch.abelian(gamma)
    psi0 = prefactor / branch.sqrt_plus * (a + branch.sqrt_x * b)
    psi1 = prefactor / branch.sqrt_minus * (a - branch.sqrt_x * b)
    return psi0, psi1


def eval_qubit_functions_precise(config: QhConfig, gamma: Optional[float] = None,
                                 dps: int = 40) -> tuple[complex, complex]:
    """Principal-branch (Ψ⁰, Ψ¹) recomputed in extended precision (N = 2 only)."""
    gamma = ORACLE_GAMMA if gamma is None else gamma
    if len(config.z) != 2:
        raise ValueError("extended-precision evaluation supports two electrons")
    with mpmath.workdps(dps):
        eta = [mpmath.mpc(e.real, e.imag) for e in config.eta]
        z1, z2 = (mpmath.mpc(p.real, p.imag) for p in config.z)

        def basis(pairing):
            (a, b), (c, d) = pairing
            f = lambda w, p, q: (w - eta[p - 1]) * (w - eta[q - 1])
            s = f(z1, a, b) * f(z2, c, d) + f(z2, a, b) * f(z1, c, d)
            return s * (z1 - z2)

        x = (eta[0] - eta[3]) * (eta[1] - eta[2]) / ((eta[0] - eta[2]) * (eta[1] - eta[3]))
        sx = mpmath.sqrt(x)
        root4 = mpmath.power((eta[0] - eta[2]) * (eta[1] - eta[3]), mpmath.mpf(1) / 4)
        abelian = mpmath.exp(gamma * mpmath.fsum(mpmath.log(eta[a] - eta[b]) for a, b in QUASIHOLE_PAIRS))
        a_val, b_val = basis(PAIRINGS[0]), basis(PAIRINGS[1])
        psi0 = root4 * abelian / mpmath.sqrt(1 + sx) * (a_val + sx * b_val)
        psi1 = root4 * abelian / mpmath.sqrt(1 - sx) * (a_val - sx * b_val)
        return complex(psi0), complex(psi1)


# ---------------------------------------------------------
# Exchanges
# ---------------------------------------------------------
def exchange_path(config: QhConfig, a: int, b: int, t: float) -> tuple[complex, ...]:
    """Positions at path parameter t; t = 1 swaps η_a and η_b counterclockwise."""
    _check_pair(a, b)
    eta = list(config.eta)
    middle = (eta[a - 1] + eta[b - 1]) / 2
    half = (eta[a - 1] - eta[b - 1]) / 2
    rotation = np.exp(1j * np.pi * t)
    eta[a - 1] = middle + rotation * half
    eta[b - 1] = middle - rotation * half
    return tuple(complex(e) for e in eta)


def _check_pair(a: int, b: int) -> None:
    if a == b or not (1 <= a <= 4 and 1 <= b <= 4):
        raise ValueError(f"invalid quasihole pair ({a}, {b})")


def probe_configs(config: QhConfig, count: int = 6, seed: Optional[int] = None) -> list[QhConfig]:
    """config plus seeded perturbations of the electron positions."""
    rng = np.random.default_rng(ORACLE_SEED if seed is None else seed)
    probes = [config]
    while len(probes) < count:
        shift = rng.normal(scale=0.5, size=len(config.z)) + 1j * rng.normal(scale=0.5, size=len(config.z))
        try:
            probes.append(config.with_z(np.asarray(config.z) + shift))
        except ValueError:
            continue
    return probes


def continue_exchange(config: QhConfig, a: int, b: int, steps: Optional[int] = None,
                      turns: float = 0.5, gamma: Optional[float] = None,
                      return_residual: bool = False):
    """
    2×2 matrix M with (Ψ⁰, Ψ¹) transported = M · (Ψ⁰, Ψ¹) initial.

    turns = 1/2 is one counterclockwise exchange, 1 a full monodromy and
    negative values run clockwise. steps counts path points per half turn.
    """
    _check_pair(a, b)
    steps = ORACLE_STEPS if steps is None else steps
    gamma = ORACLE_GAMMA if gamma is None else gamma
    half_turns = 2 * turns
    if half_turns == 0 or half_turns != int(half_turns):
        raise ValueError(f"turns must be a nonzero multiple of 1/2, got {turns}")
    if steps < 8:
        raise ValueError(f"steps must be >= 8, got {steps}")

    total = steps * abs(int(half_turns))
    start = initial_branch(config.eta)
    state = start
    for step, t in enumerate(np.linspace(0.0, half_turns, total + 1)[1:], start=1):
        state = advance_branch(state, exchange_path(config, a, b, t), step)
    logger.debug("branch after %s turns of (%d,%d): %s", turns, a, b, state)

    initial_rows, final_rows = [], []
    for probe in probe_configs(config):
        initial_rows.append(eval_qubit_functions(probe, start, gamma))
        final_rows.append(eval_qubit_functions(probe.with_eta(state.eta), state, gamma))
    initial = np.array(initial_rows)
    final = np.array(final_rows)
    solution, *_ = np.linalg.lstsq(initial, final, rcond=None)
    matrix = solution.T
    residual = float(np.max(np.abs(initial @ solution - final)) / np.max(np.abs(final)))
    logger.debug("fit residual %.3e", residual)
    if return_residual:
        return matrix, residual
    return matrix


def monodromy(config: QhConfig, a: int, b: int, steps: Optional[int] = None,
              gamma: Optional[float] = None) -> np.ndarray:
    return continue_exchange(config, a, b, steps=steps, turns=1, gamma=gamma)


def compare_to_exact(m: np.ndarray, target: CMatrix) -> OracleComparison:
    if target.dim != 2:
        raise ValueError(f"oracle comparison needs a 2x2 target, got {target.dim}x{target.dim}")
    exact = target.to_complex()
    m = np.asarray(m, dtype=complex)
    index = np.unravel_index(np.argmax(np.abs(exact)), exact.shape)
    ratio = m[index] / exact[index]
    phase = ratio / abs(ratio) if abs(ratio) > 0 else 1.0 + 0j
    error = float(np.max(np.abs(m - phase * exact)))
    return OracleComparison(max_entry_error=error, phase=complex(phase))


def exact_exchange(a: int, b: int) -> CMatrix:
    """Exact four-anyon generator for an adjacent exchange."""
    pair = tuple(sorted((a, b)))
    constants = reference_matrices()
    table = {(1, 2): constants["R4_12"], (2, 3): constants["R4_23"], (3, 4): constants["R4_34"]}
    if pair not in table:
        raise ValueError(f"no exact generator for non-adjacent exchange {pair}")
    return table[pair]


def residual_phase(config: QhConfig, a: int, b: int, gamma: float,
                   steps: Optional[int] = None) -> complex:
    """Global phase between the continued exchange and the exact generator."""
    m = continue_exchange(config, a, b, steps=steps, gamma=gamma)
    return compare_to_exact(m, exact_exchange(a, b)).phase

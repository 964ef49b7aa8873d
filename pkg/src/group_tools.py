"""
Finite images of the braid group.

- dimino_enumerate: Dimino's algorithm (cyclic closure of the first
  generator, then one coset of the previous subgroup per new coset
  representative, only representatives are multiplied by generators)
- closure_enumerate: plain breadth-first closure, kept as a cross-check
- relation checks for the braid-group presentation and the Yang-Baxter
  equation, with exact / projective / fail verdicts
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence

from . import config
from .cyclotomic import CMatrix, CycloNumber, equal_up_to_phase, mat_tensor
from .representations import RepSpec, build_generator, generators, parity_projector

logger = logging.getLogger(__name__)


class GroupLimitError(RuntimeError):
    """Enumeration stopped before closing; the group is infinite or the limit too small."""

    def __init__(self, count: int, limit: int) -> None:
        super().__init__(
            f"element limit {limit} exceeded after {count} elements "
            f"(group is not finite or the limit is too small)"
        )
        self.count = count
        self.limit = limit


class OrderBoundError(RuntimeError):
    pass


class Verdict(str, Enum):
    EXACT = "exact"
    PROJECTIVE = "projective"
    FAIL = "fail"


@dataclass(frozen=True)
class RelationReport:
    relation: str
    indices: tuple[int, ...]
    verdict: Verdict
    phase: Optional[CycloNumber] = None

    @property
    def passed(self) -> bool:
        return self.verdict is not Verdict.FAIL

    def as_row(self) -> dict:
        return {
            "relation": self.relation,
            "indices": " ".join(str(i) for i in self.indices),
            "verdict": self.verdict.value,
            "phase": None if self.phase is None else str(self.phase),
        }


class GroupImage:
    """Element store keyed by canonical serialization, in discovery order."""

    def __init__(self, dim: int, generators: Sequence[CMatrix]) -> None:
        self.dim = dim
        self.generators = list(generators)
        self.elements: List[CMatrix] = []
        self._keys: Dict[tuple, int] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m: CMatrix) -> bool:
        return m.key in self._keys

    def __iter__(self):
        return iter(self.elements)

    def add(self, m: CMatrix) -> bool:
        """Insert if absent; True when the element is new."""
        if m.key in self._keys:
            return False
        self._keys[m.key] = len(self.elements)
        self.elements.append(m)
        self.__dict__.pop("phase_keys", None)
        return True

    def index(self, m: CMatrix) -> int:
        return self._keys[m.key]

    @cached_property
    def phase_keys(self) -> set:
        return {m.phase_key for m in self.elements}


def _check_generators(gens: Sequence[CMatrix]) -> int:
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].dim
    for k, g in enumerate(gens, start=1):
        if g.dim != dim:
            raise ValueError(f"generator {k} has dimension {g.dim}, expected {dim}")
        if not g.is_unitary():
            raise ValueError(f"generator {k} is not unitary")
    return dim


def dimino_enumerate(gens: Sequence[CMatrix], limit: Optional[int] = None,
                     workers: int = 1) -> GroupImage:
    """
    Enumerate the group generated by gens.

    Discovery order is fixed by the generator order. With workers > 1 the
    products for each new coset are computed on a thread pool; insertion
    stays in coset order, so the result does not depend on scheduling.
    """
    limit = config.ELEMENT_LIMIT if limit is None else limit
    if limit <= 0:
        raise ValueError(f"element limit must be positive, got {limit}")
    dim = _check_generators(gens)
    identity = CMatrix.identity(dim)
    image = GroupImage(dim, gens)
    image.add(identity)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for i, g in enumerate(gens):
            if g in image:
                continue
            subgroup = list(image.elements)
            active = gens[: i + 1]
            reps = [identity]
            while reps:
                new_reps = []
                for rep in reps:
                    for s in active:
                        candidate = rep @ s
                        if candidate in image:
                            continue
                        if image.order + len(subgroup) > limit:
                            raise GroupLimitError(image.order, limit)
                        if pool is None:
                            coset = [d @ candidate for d in subgroup]
                        else:
                            coset = list(pool.map(lambda d: d @ candidate, subgroup))
                        for element in coset:
                            image.add(element)
                        new_reps.append(candidate)
                reps = new_reps
            logger.debug("generator %d: order %d", i + 1, image.order)
    finally:
        if pool is not None:
            pool.shutdown()
    return image


def closure_enumerate(gens: Sequence[CMatrix], limit: Optional[int] = None) -> GroupImage:
    """Breadth-first closure under right multiplication by the generators."""
    limit = config.ELEMENT_LIMIT if limit is None else limit
    dim = _check_generators(gens)
    image = GroupImage(dim, gens)
    image.add(CMatrix.identity(dim))
    frontier = list(image.elements)
    while frontier:
        next_frontier = []
        for a in frontier:
            for g in gens:
                c = a @ g
                if image.add(c):
                    if image.order > limit:
                        raise GroupLimitError(image.order, limit)
                    next_frontier.append(c)
        frontier = next_frontier
    return image


def read_order_formula(two_n: int) -> int:
    """|Image(B₂ₙ)| = 2^{2n−1}(2n)! for n even, 2^{2n}(2n)! for n odd (2n ≥ 6)."""
    if not isinstance(two_n, int) or two_n < 6 or two_n % 2:
        raise ValueError(f"the closed-form order holds for even 2n >= 6, got {two_n!r}")
    n = two_n // 2
    exponent = two_n - 1 if n % 2 == 0 else two_n
    return 2**exponent * factorial(two_n)


def projective_order(image: GroupImage) -> int:
    """Number of elements counted up to a global phase."""
    return len(image.phase_keys)


def scalar_subgroup(image: GroupImage) -> list[CycloNumber]:
    """The phases λ with λ·I in the image."""
    identity_class = CMatrix.identity(image.dim).phase_key
    return [m.entry(0, 0) for m in image.elements if m.phase_key == identity_class]


def compare_with_read_formula(image: GroupImage, two_n: int) -> dict:
    formula = read_order_formula(two_n)
    ratio = Fraction(image.order, formula)
    power_of_two = all(x & (x - 1) == 0 for x in (ratio.numerator, ratio.denominator))
    return {
        "order": image.order,
        "formula": formula,
        "ratio": ratio,
        "agrees": image.order == formula,
        "ratio_is_power_of_two": power_of_two,
    }


def _verdict(relation: str, indices: tuple[int, ...], left: CMatrix, right: CMatrix,
             mode: str) -> RelationReport:
    if mode not in ("exact", "projective"):
        raise ValueError(f"mode must be 'exact' or 'projective', got {mode!r}")
    if left == right:
        return RelationReport(relation, indices, Verdict.EXACT)
    if mode == "projective":
        phase = equal_up_to_phase(left, right)
        if phase is not None:
            return RelationReport(relation, indices, Verdict.PROJECTIVE, phase)
    return RelationReport(relation, indices, Verdict.FAIL)


def check_artin_relations(gens: Sequence[CMatrix], mode: str = "exact") -> list[RelationReport]:
    """gₖgₖ₊₁gₖ = gₖ₊₁gₖgₖ₊₁ for every adjacent pair."""
    if len(gens) < 2:
        raise ValueError("Artin relations need at least two generators")
    reports = []
    for k in range(len(gens) - 1):
        a, b = gens[k], gens[k + 1]
        reports.append(_verdict("artin", (k + 1, k + 2), a @ b @ a, b @ a @ b, mode))
    return reports


def check_far_commutativity(gens: Sequence[CMatrix], mode: str = "exact") -> list[RelationReport]:
    """gₖgₗ = gₗgₖ whenever |k − l| ≥ 2."""
    reports = []
    for k in range(len(gens)):
        for l in range(k + 2, len(gens)):
            a, b = gens[k], gens[l]
            reports.append(_verdict("far", (k + 1, l + 1), a @ b, b @ a, mode))
    return reports


def check_yang_baxter(r: CMatrix) -> RelationReport:
    """(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R) on three factors."""
    if r.dim != 4:
        raise ValueError(f"Yang-Baxter check needs a 4x4 R matrix, got {r.dim}x{r.dim}")
    identity = CMatrix.identity(2)
    left_factor = mat_tensor(r, identity)
    right_factor = mat_tensor(identity, r)
    lhs = left_factor @ right_factor @ left_factor
    rhs = right_factor @ left_factor @ right_factor
    return _verdict("yang-baxter", (), lhs, rhs, "projective")


def projector_commutes(projector: CMatrix, gens: Iterable[CMatrix]) -> bool:
    return all(projector @ g == g @ projector for g in gens)


def check_projector_commutation(spec: RepSpec) -> bool:
    """Parity projector against every unprojected generator of spec."""
    full = spec.with_projected(False)
    gens = [build_generator(full, k) for k in range(1, full.generator_count + 1)]
    return projector_commutes(parity_projector(spec.n_pairs), gens)


def check_relations(spec: RepSpec) -> list[RelationReport]:
    """Far commutation, Artin (projective verdicts kept) and projector commutation."""
    gens = generators(spec)
    reports = check_far_commutativity(gens, mode="projective")
    reports += check_artin_relations(gens, mode="projective")
    verdict = Verdict.EXACT if check_projector_commutation(spec) else Verdict.FAIL
    reports.append(RelationReport("projector", (), verdict))
    return reports


def contains(image: GroupImage, m: CMatrix, up_to_phase: bool = False) -> bool:
    if m.dim != image.dim:
        raise ValueError(f"dimension mismatch: image {image.dim}, matrix {m.dim}")
    if up_to_phase:
        return m.phase_key in image.phase_keys
    return m in image


def element_order(m: CMatrix, bound: Optional[int] = None) -> int:
    """Least m ≥ 1 with Mᵐ = I."""
    bound = config.ORDER_BOUND if bound is None else bound
    identity = CMatrix.identity(m.dim)
    power = m
    order = 1
    while power != identity:
        order += 1
        if order > bound:
            raise OrderBoundError(f"no identity power up to {bound}")
        power = power @ m
    return order

"""
Command-line front end.

    python -m src.cli enumerate --anyons 4
    python -m src.cli verify --anyons 6 --word "-3 4 3 1 5 4 -3" --target CNOT --up-to-phase
    python -m src.cli error-rate --temperature-mk 5 --gap-mk 500

Every command prints one JSON record. Exit codes: 0 success, 1 negative
verification or synthesis result, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Optional

import numpy as np
from pydantic import BaseModel

from .compiler import format_word, parse_word, synthesize, verify_gate
from .config import ELEMENT_LIMIT, LOG_LEVEL, ORACLE_GAMMA, ORACLE_STEPS
from .continuation_oracle import (
    BranchAmbiguityError,
    BranchConsistencyError,
    QhConfig,
    compare_to_exact,
    continue_exchange,
    default_config,
    exact_exchange,
)
from .cyclotomic import CMatrix, CycloNumber, load_matrix_file, matrix_to_json
from .group_tools import (
    GroupLimitError,
    check_relations,
    check_yang_baxter,
    compare_with_read_formula,
    contains,
    dimino_enumerate,
    projective_order,
    scalar_subgroup,
)
from .representations import (
    EVEN_R,
    Convention,
    RepSpec,
    generator_description,
    generators,
    is_tensor_factorizable,
    parity_projector,
    qubit_basis_map,
    standard_gates,
)

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------
# Output records
# ---------------------------------------------------------
class GeneratorEntry(BaseModel):
    index: int
    description: str
    factorizable: Optional[bool] = None
    matrix: dict


class MatrixListRecord(BaseModel):
    anyons: int
    convention: str
    projected: bool
    dim: int
    generators: list[GeneratorEntry]


class ProjectionRecord(BaseModel):
    anyons: int
    full_dim: int
    projected_dim: int
    states: list[tuple[str, str]]
    projector: dict


class OrderRecord(BaseModel):
    anyons: int
    convention: str
    projected: bool
    dim: int
    generators: int
    order: int
    projective_order: int
    scalars: list[str]
    formula: Optional[int] = None
    ratio: Optional[str] = None
    elements: Optional[list[dict]] = None


class RelationEntry(BaseModel):
    relation: str
    indices: str
    verdict: str
    phase: Optional[str] = None


class RelationRecord(BaseModel):
    anyons: int
    convention: str
    passed: bool
    reports: list[RelationEntry]
    yang_baxter: Optional[RelationEntry] = None


class VerifyRecord(BaseModel):
    anyons: int
    word: str
    target: str
    up_to_phase: bool
    ok: bool
    phase: Optional[list[int]] = None
    phase_text: Optional[str] = None


class SynthesisRecord(BaseModel):
    anyons: int
    target: str
    max_len: int
    found: bool
    word: Optional[str] = None
    length: Optional[int] = None
    phase: Optional[list[int]] = None
    phase_text: Optional[str] = None
    explored: Optional[int] = None


class ContainsRecord(BaseModel):
    anyons: int
    target: str
    up_to_phase: bool
    order: int
    contained: bool


class OracleRecord(BaseModel):
    pair: tuple[int, int]
    turns: float
    steps: int
    gamma: float
    matrix: list[list[tuple[float, float]]]
    fit_residual: float
    target: Optional[dict] = None
    phase: Optional[tuple[float, float]] = None
    max_entry_error: Optional[float] = None


class ErrorRateRecord(BaseModel):
    ratio: float
    error_rate: float


# ---------------------------------------------------------
# Helpers
# ---------------------------------------------------------
def error_rate(ratio: float) -> float:
    """Thermal error estimate (k_BT/Δ)·exp(−Δ/k_BT) for ratio = Δ/k_BT."""
    if not ratio > 0:
        raise ValueError(f"gap/temperature ratio must be positive, got {ratio}")
    return math.exp(-ratio) / ratio


def _spec(args: argparse.Namespace) -> RepSpec:
    return RepSpec(args.anyons, Convention(args.convention), args.projected)


def _target(args: argparse.Namespace) -> tuple[str, CMatrix]:
    if args.target_file:
        return args.target_file, load_matrix_file(args.target_file)
    if not args.target:
        raise UsageError("give --target NAME or --target-file PATH")
    gates = standard_gates()
    if args.target not in gates:
        raise UsageError(f"unknown gate {args.target!r}; known gates: {', '.join(gates)}")
    return args.target, gates[args.target]


def _phase_fields(phase: Optional[CycloNumber]) -> dict:
    if phase is None:
        return {"phase": None, "phase_text": None}
    return {"phase": phase.serialize(), "phase_text": str(phase)}


def _complex_json(values: np.ndarray) -> list:
    return [[(float(v.real), float(v.imag)) for v in row] for row in np.asarray(values)]


def _points(text: str, name: str) -> list[complex]:
    try:
        data = json.loads(text)
        return [complex(re, im) for re, im in data]
    except (json.JSONDecodeError, TypeError, ValueError):
        raise UsageError(f"{name} must be a JSON array of [re, im] pairs, got {text!r}")


# ---------------------------------------------------------
# Commands
# ---------------------------------------------------------
def cmd_gens(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    entries = [
        GeneratorEntry(
            index=k,
            description=generator_description(spec, k),
            factorizable=is_tensor_factorizable(g) if g.dim == 4 else None,
            matrix=matrix_to_json(g),
        )
        for k, g in enumerate(generators(spec), start=1)
    ]
    record = MatrixListRecord(anyons=spec.anyons, convention=spec.convention.value,
                              projected=spec.projected, dim=spec.dim, generators=entries)
    return record, 0


def cmd_project(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    encoding = qubit_basis_map(spec.n_pairs)
    record = ProjectionRecord(
        anyons=spec.anyons,
        full_dim=spec.full_dim,
        projected_dim=spec.projected_dim,
        states=list(encoding.states),
        projector=matrix_to_json(parity_projector(spec.n_pairs)),
    )
    return record, 0


def cmd_enumerate(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    image = dimino_enumerate(generators(spec), limit=args.limit, workers=args.threads)
    record = OrderRecord(
        anyons=spec.anyons,
        convention=spec.convention.value,
        projected=spec.projected,
        dim=spec.dim,
        generators=spec.generator_count,
        order=image.order,
        projective_order=projective_order(image),
        scalars=[str(s) for s in scalar_subgroup(image)],
    )
    if spec.anyons >= 6:
        comparison = compare_with_read_formula(image, spec.anyons)
        record.formula = comparison["formula"]
        record.ratio = str(comparison["ratio"])
    if args.dump:
        record.elements = [matrix_to_json(m) for m in image]
    return record, 0


def cmd_relations(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    reports = check_relations(spec)
    record = RelationRecord(
        anyons=spec.anyons,
        convention=spec.convention.value,
        passed=all(r.passed for r in reports),
        reports=[RelationEntry(**r.as_row()) for r in reports],
    )
    if args.yang_baxter:
        record.yang_baxter = RelationEntry(**check_yang_baxter(EVEN_R).as_row())
    return record, 0 if record.passed else 1


def cmd_verify(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    word = parse_word(args.word, spec)
    name, target = _target(args)
    phase = verify_gate(word, target, args.up_to_phase)
    record = VerifyRecord(anyons=spec.anyons, word=format_word(word), target=name,
                          up_to_phase=args.up_to_phase, ok=phase is not None,
                          **_phase_fields(phase))
    return record, 0 if record.ok else 1


def cmd_synthesize(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    name, target = _target(args)
    result = synthesize(spec, target, args.max_len, args.up_to_phase,
                        limit=args.limit, workers=args.threads)
    if result is None:
        return SynthesisRecord(anyons=spec.anyons, target=name, max_len=args.max_len, found=False), 1
    record = SynthesisRecord(
        anyons=spec.anyons,
        target=name,
        max_len=args.max_len,
        found=True,
        word=format_word(result.word),
        length=len(result.word),
        explored=result.explored,
        **_phase_fields(result.phase),
    )
    return record, 0


def cmd_contains(args) -> tuple[BaseModel, int]:
    spec = _spec(args)
    name, target = _target(args)
    image = dimino_enumerate(generators(spec), limit=args.limit, workers=args.threads)
    record = ContainsRecord(anyons=spec.anyons, target=name, up_to_phase=args.up_to_phase,
                            order=image.order, contained=contains(image, target, args.up_to_phase))
    return record, 0


def cmd_oracle(args) -> tuple[BaseModel, int]:
    base = default_config()
    eta = _points(args.eta, "--eta") if args.eta else base.eta
    z = _points(args.z, "--z") if args.z else base.z
    config = QhConfig(eta=tuple(eta), z=tuple(z))
    a, b = args.pair
    matrix, residual = continue_exchange(config, a, b, steps=args.steps, turns=args.turns,
                                         gamma=args.gamma, return_residual=True)
    record = OracleRecord(pair=(a, b), turns=args.turns, steps=args.steps, gamma=args.gamma,
                          matrix=_complex_json(matrix), fit_residual=residual)
    if abs(a - b) == 1:
        target = exact_exchange(a, b).power(int(round(2 * args.turns)))
        comparison = compare_to_exact(matrix, target)
        record.target = matrix_to_json(target)
        record.phase = (comparison.phase.real, comparison.phase.imag)
        record.max_entry_error = comparison.max_entry_error
    return record, 0


def cmd_error_rate(args) -> tuple[BaseModel, int]:
    if args.ratio is not None:
        ratio = args.ratio
    elif args.temperature_mk is not None and args.gap_mk is not None:
        if args.temperature_mk <= 0:
            raise UsageError(f"temperature must be positive, got {args.temperature_mk} mK")
        ratio = args.gap_mk / args.temperature_mk
    else:
        raise UsageError("give --ratio or both --temperature-mk and --gap-mk")
    return ErrorRateRecord(ratio=ratio, error_rate=error_rate(ratio)), 0


COMMANDS = {
    "gens": cmd_gens,
    "project": cmd_project,
    "enumerate": cmd_enumerate,
    "relations": cmd_relations,
    "verify": cmd_verify,
    "synthesize": cmd_synthesize,
    "contains": cmd_contains,
    "oracle": cmd_oracle,
    "error-rate": cmd_error_rate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ising-braids",
                                     description="Braid-group representations of Ising anyons.")
    parser.add_argument("--output", help="write the JSON record to this file instead of stdout")
    parser.add_argument("--log-level", default=LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    def representation(p: argparse.ArgumentParser) -> None:
        p.add_argument("--anyons", type=int, required=True, help="even anyon count 2n >= 4")
        p.add_argument("--convention", choices=[c.value for c in Convention],
                       default=Convention.WAVEFUNCTION.value)
        p.add_argument("--projected", action=argparse.BooleanOptionalAction, default=True)

    def target(p: argparse.ArgumentParser) -> None:
        p.add_argument("--target", help="gate name: " + ", ".join(standard_gates()))
        p.add_argument("--target-file", help="matrix JSON file")

    def search(p: argparse.ArgumentParser) -> None:
        p.add_argument("--limit", type=int, default=ELEMENT_LIMIT)
        p.add_argument("--threads", type=int, default=1)

    representation(sub.add_parser("gens", help="print the generator matrices"))
    representation(sub.add_parser("project", help="print the parity projector and qubit encoding"))

    p = sub.add_parser("enumerate", help="enumerate the image group")
    representation(p)
    search(p)
    p.add_argument("--dump", action="store_true", help="include every element")

    p = sub.add_parser("relations", help="check the braid relations")
    representation(p)
    p.add_argument("--yang-baxter", action="store_true", help="also check the 4x4 R block")

    p = sub.add_parser("verify", help="check that a braid word implements a gate")
    representation(p)
    target(p)
    p.add_argument("--word", required=True, help='signed letters, e.g. "-3 4 3 1 5 4 -3"')
    p.add_argument("--up-to-phase", action="store_true")

    p = sub.add_parser("synthesize", help="shortest braid word for a gate")
    representation(p)
    target(p)
    search(p)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--up-to-phase", action=argparse.BooleanOptionalAction, default=True)

    p = sub.add_parser("contains", help="membership of a gate in the image")
    representation(p)
    target(p)
    search(p)
    p.add_argument("--up-to-phase", action="store_true")

    p = sub.add_parser("oracle", help="numerical continuation of the 4-quasihole functions")
    p.add_argument("--eta", help="JSON array of 4 [re, im] quasihole positions")
    p.add_argument("--z", help="JSON array of [re, im] electron positions")
    p.add_argument("--pair", type=int, nargs=2, default=(1, 2), metavar=("A", "B"))
    p.add_argument("--turns", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=ORACLE_STEPS)
    p.add_argument("--gamma", type=float, default=ORACLE_GAMMA)

    p = sub.add_parser("error-rate", help="thermal error estimate",
                       description="Sample: --temperature-mk 5 --gap-mk 500 (ratio 100).")
    p.add_argument("--ratio", type=float, help="gap over k_B T")
    p.add_argument("--temperature-mk", type=float)
    p.add_argument("--gap-mk", type=float)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    logging.basicConfig(level=args.log_level.upper(),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logger.info("running %s", args.command)

    try:
        record, code = COMMANDS[args.command](args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupLimitError, BranchAmbiguityError, BranchConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = record.model_dump_json(indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

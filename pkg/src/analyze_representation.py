from collections import Counter
from typing import Dict, List, Optional

from .catalog import GATE_WORDS, MISSING_GATES, SMALL_SYSTEMS
from .compiler import parse_word, verify_gate
from .group_tools import (
    GroupImage,
    check_relations,
    compare_with_read_formula,
    contains,
    dimino_enumerate,
    projective_order,
    scalar_subgroup,
)
from .representations import (
    Convention,
    RepSpec,
    generator,
    generator_description,
    generators,
    is_tensor_factorizable,
    parity_projector,
    reference_matrices,
    standard_gates,
)

# printed names of the projected generators, by anyon count
PRINTED_GENERATORS = {
    4: ["R4_12", "R4_23", "R4_34"],
    6: ["R6_12", "R6_23", "R6_34", "R6_45", "R6_56"],
}


def _fmt(x) -> str:
    """Human-friendly formatting."""
    if x is None:
        return "N/A"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return f"{x}"


def generator_fidelity(anyons: int) -> Dict[str, bool]:
    """Projected wavefunction generators against the printed matrices."""
    names = PRINTED_GENERATORS.get(anyons, [])
    constants = reference_matrices()
    spec = RepSpec(anyons)
    return {name: generator(spec, k) == constants[name] for k, name in enumerate(names, start=1)}


def factorizable_generators(anyons: int) -> Dict[int, bool]:
    """Which two-qubit generators are a tensor product of one-qubit gates."""
    spec = RepSpec(anyons)
    if spec.projected_dim != 4:
        return {}
    return {k: is_tensor_factorizable(g) for k, g in enumerate(generators(spec), start=1)}


def relation_summary(anyons: int) -> Dict[str, Counter]:
    """Verdict counts per relation, for each convention."""
    summary = {}
    for convention in Convention:
        reports = check_relations(RepSpec(anyons, convention))
        summary[convention.value] = Counter(f"{r.relation}:{r.verdict.value}" for r in reports)
    return summary


def gate_checks(anyons: int, image: Optional[GroupImage] = None) -> List[dict]:
    gates = standard_gates()
    spec = RepSpec(anyons)
    rows = []
    for name, count, word, gate in GATE_WORDS:
        if count != anyons:
            continue
        phase = verify_gate(parse_word(word, spec), gates[gate], up_to_phase=True)
        rows.append({"name": name, "word": word, "gate": gate, "phase": phase})
    if image is not None:
        for name, count, gate in MISSING_GATES:
            if count != anyons:
                continue
            rows.append({
                "name": name,
                "word": None,
                "gate": gate,
                "contained": contains(image, gates[gate], up_to_phase=True),
            })
    return rows


def analyze_representation(anyons: int) -> str:
    """
    Human-readable report for one anyon count:
      - dimensions and the parity projector
      - generator forms and fidelity against the printed matrices
      - relation verdicts in both conventions
      - group order (small systems only) and gate words
    """
    spec = RepSpec(anyons)

    image = None
    if anyons in SMALL_SYSTEMS:
        image = dimino_enumerate(generators(spec))

    lines = []
    lines.append("==============================")
    lines.append(f"   ANALYSIS REPORT: {anyons} ANYONS")
    lines.append("==============================\n")

    lines.append("REPRESENTATION")
    lines.append("----------------------------------------------")
    lines.append(f"Qubits:                  {spec.n_pairs - 1}")
    lines.append(f"Full Dimension:          {spec.full_dim}")
    lines.append(f"Projected Dimension:     {spec.projected_dim}")
    lines.append(f"Projector Rank:          {parity_projector(spec.n_pairs).rank()}\n")

    lines.append("GENERATORS")
    lines.append("----------------------------------------------")
    fidelity = generator_fidelity(anyons)
    factorizable = factorizable_generators(anyons)
    names = PRINTED_GENERATORS.get(anyons, [])
    for k in range(1, spec.generator_count + 1):
        line = f"g{k}:".ljust(25) + generator_description(spec, k)
        if k <= len(names):
            line += f"   matches {names[k - 1]}: {_fmt(fidelity[names[k - 1]])}"
        if k in factorizable:
            line += f"   product: {_fmt(factorizable[k])}"
        lines.append(line)
    lines.append("")

    lines.append("RELATIONS")
    lines.append("----------------------------------------------")
    for convention, counts in relation_summary(anyons).items():
        lines.append(f"{convention}:")
        for verdict, count in sorted(counts.items()):
            lines.append(f"  {verdict:<22}{count}")
    lines.append("")

    if image is not None:
        lines.append("GROUP IMAGE")
        lines.append("----------------------------------------------")
        lines.append(f"Order:                   {image.order}")
        lines.append(f"Order Up To Phase:       {projective_order(image)}")
        lines.append(f"Central Phases:          {', '.join(str(s) for s in scalar_subgroup(image))}")
        if anyons >= 6:
            comparison = compare_with_read_formula(image, anyons)
            lines.append(f"Closed-Form Order:       {comparison['formula']}")
            lines.append(f"Ratio:                   {comparison['ratio']}")
        lines.append("")

    checks = gate_checks(anyons, image)
    if checks:
        lines.append("GATES")
        lines.append("----------------------------------------------")
        for row in checks:
            if row["word"] is not None:
                result = "FAIL" if row["phase"] is None else f"phase {row['phase']}"
                lines.append(f"{row['name']:<24}{row['gate']:<6}[{row['word']}]  {result}")
            else:
                lines.append(f"{row['name']:<24}{row['gate']:<6}in image: {_fmt(row['contained'])}")
        lines.append("")

    lines.append("==============================================")

    return "\n".join(lines)

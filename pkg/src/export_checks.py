import os
from datetime import datetime, timezone
from typing import Optional

import pandas as pd

from src.catalog import SMALL_SYSTEMS, SURVEY_SYSTEMS
from src.config import DATA_DIR
from src.group_tools import (
    Verdict,
    check_relations,
    compare_with_read_formula,
    dimino_enumerate,
    projective_order,
)
from src.representations import Convention, RepSpec, generators


def build_row(anyons: int, convention: Convention, enumerate_group: bool) -> dict:
    """Relation verdicts and (optionally) the group order for one representation."""
    timestamp = datetime.now(timezone.utc).isoformat()
    spec = RepSpec(anyons, convention)
    reports = check_relations(spec)

    def count(relation: str, verdict: Verdict) -> int:
        return sum(1 for r in reports if r.relation == relation and r.verdict is verdict)

    row = {
        "timestamp_utc": timestamp,
        "anyons": anyons,
        "convention": convention.value,
        "full_dim": spec.full_dim,
        "projected_dim": spec.projected_dim,

        # relations
        "far_exact": count("far", Verdict.EXACT),
        "far_fail": count("far", Verdict.FAIL),
        "artin_exact": count("artin", Verdict.EXACT),
        "artin_projective": count("artin", Verdict.PROJECTIVE),
        "artin_fail": count("artin", Verdict.FAIL),
        "projector_commutes": count("projector", Verdict.EXACT) == 1,

        # group image
        "order": None,
        "projective_order": None,
        "closed_form_order": None,
        "order_ratio": None,
    }

    if enumerate_group:
        image = dimino_enumerate(generators(spec))
        row["order"] = image.order
        row["projective_order"] = projective_order(image)
        if anyons >= 6:
            comparison = compare_with_read_formula(image, anyons)
            row["closed_form_order"] = comparison["formula"]
            row["order_ratio"] = str(comparison["ratio"])

    return row


def main(out_dir: Optional[str] = None, systems: Optional[list] = None) -> str:
    rows = []
    small = SMALL_SYSTEMS if systems is None else [n for n in systems if n in SMALL_SYSTEMS]
    survey = SURVEY_SYSTEMS if systems is None else [n for n in systems if n not in SMALL_SYSTEMS]

    for convention in Convention:
        for anyons in small:
            rows.append(build_row(anyons, convention, enumerate_group=True))
        for anyons in survey:
            rows.append(build_row(anyons, convention, enumerate_group=False))

    df = pd.DataFrame(rows)

    # Ensure data folder exists
    out_dir = DATA_DIR if out_dir is None else out_dir
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, "latest_checks.csv")
    df.to_csv(out_path, index=False)
    print(f"Wrote checks for {len(rows)} representations to {out_path}")
    return out_path


if __name__ == "__main__":
    main()

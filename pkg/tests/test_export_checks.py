import pandas as pd

from src.export_checks import build_row, main
from src.representations import Convention


def test_build_row_with_enumeration():
    row = build_row(4, Convention.WAVEFUNCTION, enumerate_group=True)
    assert row["order"] == 96
    assert row["projective_order"] == 24
    assert row["artin_exact"] == 2
    assert row["projector_commutes"]
    assert row["closed_form_order"] is None


def test_build_row_survey():
    row = build_row(10, Convention.QUANTUMGROUP, enumerate_group=False)
    assert row["order"] is None
    assert row["far_fail"] == 0
    assert row["artin_fail"] == 0
    assert row["artin_projective"] == 8


def test_main_writes_csv(tmp_path):
    path = main(out_dir=str(tmp_path), systems=[4, 8])
    df = pd.read_csv(path)
    assert len(df) == 4
    assert set(df["convention"]) == {"wavefunction", "quantumgroup"}
    assert "timestamp_utc" in df.columns

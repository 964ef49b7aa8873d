import pytest

from src.cyclotomic import I, INV_SQRT2, ZETA, CMatrix, mat_tensor
from src.representations import (
    EVEN_R,
    ODD_R,
    Convention,
    RepSpec,
    build_generator,
    generator,
    generator_description,
    generators,
    is_tensor_factorizable,
    reference_matrices,
    parity_projector,
    project_generator,
    projected_dimension_table,
    qubit_basis_map,
    standard_gates,
)


def test_rep_spec_validation():
    with pytest.raises(ValueError):
        RepSpec(5)
    with pytest.raises(ValueError):
        RepSpec(2)
    with pytest.raises(ValueError):
        RepSpec(4, convention="braided")
    spec = RepSpec(6, "quantumgroup")
    assert spec.convention is Convention.QUANTUMGROUP
    assert spec.dim == 4
    assert spec.with_projected(False).dim == 8


def test_generator_index_out_of_range():
    with pytest.raises(ValueError):
        build_generator(RepSpec(4), 4)
    with pytest.raises(ValueError):
        generator(RepSpec(4), 0)


def test_four_anyon_generators_match_printed_matrices():
    constants = reference_matrices()
    gens = generators(RepSpec(4))
    assert gens == [constants["R4_12"], constants["R4_23"], constants["R4_34"]]


def test_six_anyon_generators_match_printed_matrices():
    constants = reference_matrices()
    gens = generators(RepSpec(6))
    names = ["R6_12", "R6_23", "R6_34", "R6_45", "R6_56"]
    assert gens == [constants[name] for name in names]


def test_six_anyon_even_generators_are_tensor_products():
    r23 = reference_matrices()["R4_23"]
    identity = CMatrix.identity(2)
    spec = RepSpec(6)
    assert generator(spec, 2) == mat_tensor(r23, identity)
    assert generator(spec, 4) == mat_tensor(identity, r23)


def test_quantumgroup_even_generator_has_no_extra_phase():
    wave = build_generator(RepSpec(4, projected=False), 2)
    quantum = build_generator(RepSpec(4, "quantumgroup", projected=False), 2)
    assert wave == quantum.scale(ZETA)
    assert quantum == EVEN_R


def test_odd_generator_on_last_pair():
    g = build_generator(RepSpec(6, projected=False), 5)
    assert g == mat_tensor(CMatrix.identity(4), ODD_R)


def test_unprojected_generators_are_unitary():
    for g in generators(RepSpec(8, projected=False)):
        assert g.is_unitary()


def test_parity_projector():
    assert parity_projector(3) == reference_matrices()["P2"]
    assert parity_projector(3).rank() == 4
    with pytest.raises(ValueError):
        parity_projector(0)


def test_qubit_encoding_for_three_pairs():
    encoding = qubit_basis_map(3)
    assert encoding.states == (("00", "000"), ("01", "011"), ("10", "110"), ("11", "101"))
    assert encoding.channels("10") == "110"
    with pytest.raises(KeyError):
        encoding.channels("111")


@pytest.mark.parametrize("n_pairs", range(2, 7))
def test_encoded_states_have_even_parity(n_pairs):
    encoding = qubit_basis_map(n_pairs)
    assert len(encoding.states) == 2 ** (n_pairs - 1)
    assert all(e.count("1") % 2 == 0 for _, e in encoding.states)


def test_projected_dimension_table():
    rows = projected_dimension_table(6)
    assert [r["projected_dim"] for r in rows] == [2, 4, 8, 16, 32]
    assert all(r["projector_rank"] == r["projected_dim"] for r in rows)


def test_projection_is_cached_and_consistent():
    spec = RepSpec(4)
    assert project_generator(spec, 2) is project_generator(spec, 2)
    assert project_generator(spec, 2) == generator(spec, 2)


def test_generator_descriptions():
    assert generator_description(RepSpec(6), 3) == "ζ·exp(-iπ/4·Z2)"
    assert generator_description(RepSpec(6), 4) == "ζ·exp(-iπ/4·X2X3)"
    assert generator_description(RepSpec(6, "quantumgroup"), 4) == "1·exp(-iπ/4·X2X3)"


def test_r_blocks_tensor_factorization():
    assert is_tensor_factorizable(mat_tensor(ODD_R, ODD_R))
    assert not is_tensor_factorizable(EVEN_R)
    assert not is_tensor_factorizable(standard_gates()["CNOT"])
    with pytest.raises(ValueError):
        is_tensor_factorizable(ODD_R)


@pytest.mark.parametrize(
    "name, factorizable",
    [("R6_12", True), ("R6_23", True), ("R6_34", False), ("R6_45", True), ("R6_56", True)],
)
def test_only_middle_exchange_entangles_two_qubits(name, factorizable):
    assert is_tensor_factorizable(reference_matrices()[name]) is factorizable


def test_standard_gates():
    gates = standard_gates()
    assert set(gates) == {"I", "X", "Z", "H", "T", "CNOT", "CZ"}
    assert all(g.is_unitary() for g in gates.values())
    assert gates["H"] == CMatrix.from_entries([[1, 1], [1, -1]]).scale(INV_SQRT2)
    assert gates["T"].power(2) == CMatrix.diag([1, I])

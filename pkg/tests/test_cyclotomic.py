import cmath
import json
from fractions import Fraction

import numpy as np
import pytest

from src.cyclotomic import (
    I,
    INV_SQRT2,
    ONE,
    SQRT2,
    ZERO,
    ZETA,
    CMatrix,
    CycloNumber,
    equal_up_to_phase,
    load_matrix_file,
    mat_tensor,
    matrix_from_json,
    matrix_to_json,
    tensor_all,
)


def test_zeta_has_order_eight():
    assert ZETA**4 == CycloNumber(-1)
    assert ZETA**8 == ONE
    assert ZETA**2 == I


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == CycloNumber(2)
    assert INV_SQRT2 * SQRT2 == ONE


def test_inverse_of_one_plus_i():
    x = ONE + I
    assert x * x.inv() == ONE
    assert x.inv() == CycloNumber(Fraction(1, 2), 0, Fraction(-1, 2), 0)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conj_and_norm():
    assert ZETA.conj() == CycloNumber(0, 0, 0, -1)
    assert (ZETA * ZETA.conj()) == ONE
    assert (ONE + I).norm() == 4


def test_galois_maps_sqrt2_to_minus_sqrt2():
    assert SQRT2.galois(3) == -SQRT2
    assert SQRT2.galois(7) == SQRT2
    with pytest.raises(ValueError):
        SQRT2.galois(2)


def test_negative_power_goes_through_inverse():
    x = ONE + ZETA
    assert x**-2 * x**2 == ONE


@pytest.mark.parametrize("j", range(-8, 9))
def test_zeta_power_matches_complex_value(j):
    assert CycloNumber.zeta_power(j).to_complex() == pytest.approx(cmath.exp(1j * cmath.pi * j / 4))


def test_serialize_rejects_bad_input():
    with pytest.raises(ValueError):
        CycloNumber.deserialize([1, 1, 0, 1])
    with pytest.raises(ValueError):
        CycloNumber.deserialize([1, 0, 0, 1, 0, 1, 0, 1])
    assert CycloNumber.deserialize(INV_SQRT2.serialize()) == INV_SQRT2


def test_matrix_product_and_identity():
    h = CMatrix.from_entries([[1, 1], [1, -1]]).scale(INV_SQRT2)
    assert h @ h == CMatrix.identity(2)
    assert h.is_unitary()
    assert h.inverse() == h


def test_equal_matrices_share_storage_key():
    a = CMatrix.from_entries([[Fraction(2, 4), 0], [0, Fraction(1, 2)]])
    b = CMatrix.identity(2).scale(Fraction(1, 2))
    assert a == b
    assert a.key == b.key
    assert hash(a) == hash(b)


def test_tensor_product_dimensions():
    x = CMatrix.from_entries([[0, 1], [1, 0]])
    z = CMatrix.diag([1, -1])
    xz = mat_tensor(x, z)
    assert xz.dim == 4
    assert xz[0, 2] == ONE
    assert xz[1, 3] == CycloNumber(-1)
    assert tensor_all([x, z, x]).dim == 8


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        CMatrix.identity(2) @ CMatrix.identity(4)


def test_equal_up_to_phase():
    h = CMatrix.from_entries([[1, 1], [1, -1]]).scale(INV_SQRT2)
    assert equal_up_to_phase(h.scale(ZETA), h) == ZETA
    assert equal_up_to_phase(h, h) == ONE
    assert equal_up_to_phase(h.scale(2), h) is None
    assert equal_up_to_phase(CMatrix.diag([1, I]), CMatrix.diag([1, -I])) is None


def test_phase_key_identifies_unit_multiples():
    t = CMatrix.diag([1, ZETA])
    assert t.scale(I).phase_key == t.phase_key
    assert t.scale(ZETA**5).phase_key == t.phase_key
    assert t.phase_key != CMatrix.diag([1, I]).phase_key


def test_inverse_requires_unitary():
    with pytest.raises(ValueError):
        CMatrix.diag([1, 2]).inverse()


def test_rank_and_trace():
    projector = CMatrix.diag([1, 0, 0, 1])
    assert projector.rank() == 2
    assert projector.trace() == CycloNumber(2)
    assert CMatrix.zeros(3).rank() == 0


def test_to_complex_embedding():
    r = CMatrix.from_entries([[1, -I], [-I, 1]]).scale(ZETA * INV_SQRT2)
    expected = cmath.exp(1j * cmath.pi / 4) / np.sqrt(2) * np.array([[1, -1j], [-1j, 1]])
    assert np.allclose(r.to_complex(), expected)


def test_large_powers_switch_to_python_integers():
    m = CMatrix.from_entries([[1, 1], [1, 0]])
    big = m.power(200)
    # Fibonacci numbers overflow int64 well before F(201)
    assert big[0, 0].c0 == 453973694165307953197296969697410619233826
    assert big.power(1) == big


def test_json_round_trip(tmp_path):
    m = CMatrix.from_entries([[1, -I], [-I, 1]]).scale(ZETA * INV_SQRT2)
    path = tmp_path / "r23.json"
    path.write_text(json.dumps(matrix_to_json(m)))
    assert load_matrix_file(str(path)) == m


@pytest.mark.parametrize(
    "payload",
    [
        {"dim": 2},
        {"dim": 2, "entries": [[[1, 1, 0, 1, 0, 1, 0, 1]]]},
        {"dim": 0, "entries": []},
    ],
)
def test_malformed_matrix_json(payload):
    with pytest.raises(ValueError):
        matrix_from_json(payload)


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValueError):
        load_matrix_file(str(path))


def random_elements(seed, count):
    rng = np.random.default_rng(seed)
    return [CycloNumber(*(int(c) for c in rng.integers(-10, 11, size=4))) for _ in range(count)]


def test_equal_up_to_phase_is_symmetric():
    h = CMatrix.from_entries([[1, 1], [1, -1]]).scale(INV_SQRT2)
    for phase in (ONE, I, ZETA, ZETA**3, -ZETA):
        lam = equal_up_to_phase(h.scale(phase), h)
        assert lam == phase
        assert equal_up_to_phase(h, h.scale(phase)) == lam.inv()


def test_complex_embedding_respects_field_operations():
    xs = random_elements(11, 100)
    ys = random_elements(12, 100)
    for x, y in zip(xs, ys):
        assert abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-12
        product = x.to_complex() * y.to_complex()
        assert abs((x * y).to_complex() - product) < 1e-12 * max(1.0, abs(product))


def test_inverse_of_random_elements():
    for x in random_elements(13, 50):
        if x.is_zero():
            continue
        assert x * x.inv() == ONE
        assert x.inv() * x == ONE

import numpy as np
import pytest

from mstab import oracle
from mstab.circuit import random_circuit, run_dense
from mstab.majorana import MajoranaString, multiply, parse_operator


def amps(st):
    return {format(i, f"0{st.n}b"): a for i, a in enumerate(st.amps) if abs(a) > 1e-12}


def test_index_convention_site0_most_significant():
    assert oracle.index_of("10") == 2
    assert oracle.index_of("001") == 1


def test_primitive_examples():
    assert amps(oracle.apply_c(oracle.basis("00"), 0)) == {"10": 1}
    assert amps(oracle.apply_ctilde(oracle.basis("00"), 1)) == {"01": 1j}
    assert amps(oracle.apply_p(oracle.basis("10"), 0)) == {"10": -1}


def test_jordan_wigner_sign():
    # c_1 |10> picks up (-1) from the occupied site 0
    assert amps(oracle.apply_c(oracle.basis("10"), 1)) == {"11": -1}


def test_string_examples():
    v = oracle.basis("01")
    assert np.array_equal(oracle.apply_string(v, MajoranaString.identity(2)).amps, v.amps)
    g = MajoranaString(0, [0, 0], [1, 1])
    assert amps(oracle.apply_string(oracle.vacuum(2), g)) == {"11": 1}


def test_rotation_examples():
    out = oracle.apply_rotation(oracle.vacuum(1), MajoranaString.p(1, 0), -1)
    assert np.allclose(out.amps, [np.exp(-1j * np.pi / 4), 0])
    g = parse_operator("i^3 c0 ct1", 2)
    out = oracle.apply_rotation(oracle.vacuum(2), g, -1)
    assert np.allclose(out.amps, np.array([1, 0, 0, -1j]) / np.sqrt(2))


def test_rotation_squared_is_string():
    rng = np.random.default_rng(2)
    g = parse_operator("i^1 c0 c2", 3)
    v = oracle.DenseState(3, rng.normal(size=8) + 1j * rng.normal(size=8))
    for sign in (1, -1):
        twice = oracle.apply_rotation(oracle.apply_rotation(v, g, sign), g, sign)
        # exp(+-i pi/2 g) = +-i g
        expected = oracle.apply_string(v, g.with_phase(g.phi + (1 if sign > 0 else 3)))
        assert np.allclose(twice.amps, expected.amps)


def test_rotation_rejects_non_hermitian():
    with pytest.raises(ValueError):
        oracle.apply_rotation(oracle.vacuum(2), parse_operator("c0 c1", 2), 1)


def test_queries():
    v = oracle.basis("0110")
    assert oracle.inner(v, v) == 1
    assert oracle.amplitude(oracle.vacuum(3), "000") == 1
    for k in range(3):
        assert oracle.expectation(oracle.vacuum(3), MajoranaString.p(3, k)) == 1


def test_size_guard():
    with pytest.raises(ValueError):
        oracle.vacuum(oracle.MAX_ORACLE_N + 1)
    with pytest.raises(IndexError):
        oracle.apply_c(oracle.vacuum(2), 2)


@pytest.mark.parametrize("n", [2, 5, 10])
def test_norm_preserved(n):
    st = run_dense(random_circuit(n, 10 * n, seed=n))
    assert abs(st.norm() - 1) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_majorana_anticommutation_relations(n):
    gammas = [oracle.matrix(f(n, k)) for f in (MajoranaString.c, MajoranaString.ctilde)
              for k in range(n)]
    eye = np.eye(1 << n)
    for a, ga in enumerate(gammas):
        for b, gb in enumerate(gammas):
            assert np.allclose(ga @ gb + gb @ ga, 2 * eye * (a == b))


def test_parity_operator_is_i_ctilde_c():
    n = 3
    for k in range(n):
        p = multiply(MajoranaString(1, [0] * n, [0] * n),
                     multiply(MajoranaString.ctilde(n, k), MajoranaString.c(n, k)))
        assert p == MajoranaString.p(n, k)


def test_dump_lists_nonzero_amplitudes():
    text = oracle.apply_rotation(oracle.vacuum(2), parse_operator("i^3 c0 ct1", 2), -1).dump()
    assert text.splitlines() == ["00 +0.707106781187 +0.000000000000",
                                 "11 +0.000000000000 -0.707106781187"]

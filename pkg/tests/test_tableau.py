import numpy as np
import pytest

from mstab import bits, oracle
from mstab.errors import InvariantViolation
from mstab.majorana import MajoranaString, is_hermitian, multiply, parse_operator
from mstab.tableau import ControlTableau

from _support import rand_bits, rand_control_pair, rand_string, random_tableau


def test_identity_examples():
    T = ControlTableau.identity(1)
    assert T.omega.tolist() == [0] and T.E.tolist() == [[1]] and T.F.tolist() == [[0]]
    T = ControlTableau.identity(2)
    assert bits.is_identity(T.E) and bits.is_identity(T.G) and not T.F.any()
    assert ControlTableau.identity(5).verify_identities()


def test_identity_conjugation_is_trivial():
    rng = np.random.default_rng(0)
    T = ControlTableau.identity(4)
    for _ in range(50):
        g = rand_string(rng, 4)
        assert T.conjugate(g) == g


def test_phase_gate_conjugation():
    T = ControlTableau.identity(2)
    T.right_mult_phase_gate(bits.unit(2, 0), 0)
    # exp(-i pi/4 (1 - p_0))^dag c_0 exp(-i pi/4 (1 - p_0)) = -i p_0 c_0
    assert T.conjugate(MajoranaString.c(2, 0)) == MajoranaString(3, "10", "10")
    assert T.conjugate(MajoranaString.p(2, 0)) == MajoranaString.p(2, 0)
    T = ControlTableau.identity(2)
    T.right_mult_phase_gate(bits.unit(2, 0), 1)
    assert T.conjugate(MajoranaString.c(2, 0)) == MajoranaString(1, "10", "10")


def test_phase_gate_update_rule():
    T = ControlTableau.identity(2)
    T.right_mult_phase_gate(bits.unit(2, 0), 0)
    assert T.omega.tolist() == [3, 0]
    assert [bits.to_str(r) for r in T.F] == ["10", "00"]
    assert bits.is_identity(T.E) and bits.is_identity(T.G)


def test_phase_gate_zero_is_noop():
    rng = np.random.default_rng(1)
    T, _ = random_tableau(rng, 4, 10, dense=False)
    before = T.copy()
    T.right_mult_phase_gate(bits.zeros(4), 0)
    assert T == before


def test_verify_identities_detects_damage():
    T = ControlTableau.identity(3)
    T.G[1] = 0
    assert not T.verify_identities()
    with pytest.raises(InvariantViolation):
        T.check()
    T = ControlTableau.identity(3)
    T.omega[0] = 1
    assert T.verify_identities(check_phases=False) and not T.verify_identities()


def test_identities_survive_random_updates():
    rng = np.random.default_rng(2)
    for n in (1, 2, 5, 9):
        T, _ = random_tableau(rng, n, 100, dense=False)
        assert T.verify_identities()


def test_control_example():
    T = ControlTableau.identity(2)
    T.right_mult_control(MajoranaString.p(2, 0), MajoranaString.p(2, 1))
    assert [bits.to_str(r) for r in T.F] == ["01", "10"]
    assert T.omega.tolist() == [0, 0]
    assert bits.is_identity(T.E) and bits.is_identity(T.G)


def test_control_with_identity_target_is_noop():
    rng = np.random.default_rng(3)
    T, _ = random_tableau(rng, 4, 10, dense=False)
    before = T.copy()
    T.right_mult_control(MajoranaString.p(4, 2), MajoranaString.identity(4))
    assert T == before


@pytest.mark.parametrize("g1, g2", [
    ("c0", "p1"),            # control not p-type
    ("i^1 p0", "p1"),        # control has a phase
    ("p0", "c0 c1"),         # target anti-Hermitian
    ("p0", "c1"),            # target odd
    ("p0", "i^1 c0 c1"),     # target anticommutes with control
])
def test_control_preconditions(g1, g2):
    T = ControlTableau.identity(2)
    with pytest.raises(ValueError):
        T.right_mult_control(parse_operator(g1, 2), parse_operator(g2, 2))


def test_random_control_gate_matches_dense():
    rng = np.random.default_rng(4)
    n = 6
    T, U = random_tableau(rng, n, 6)
    for _ in range(100):
        g = rand_string(rng, n)
        assert np.allclose(oracle.matrix(T.conjugate(g)), U.conj().T @ oracle.matrix(g) @ U)


def test_conjugate_matches_dense_on_random_tableaux():
    rng = np.random.default_rng(5)
    for _ in range(60):
        n = int(rng.integers(1, 5))
        T, U = random_tableau(rng, n, int(rng.integers(0, 12)))
        assert T.verify_identities()
        g = rand_string(rng, n)
        assert np.allclose(oracle.matrix(T.conjugate(g)), U.conj().T @ oracle.matrix(g) @ U)


def test_conjugate_is_homomorphism_and_preserves_structure():
    rng = np.random.default_rng(6)
    for _ in range(100):
        n = int(rng.integers(1, 12))
        T, _ = random_tableau(rng, n, 20, dense=False)
        g, h = rand_string(rng, n), rand_string(rng, n)
        assert T.conjugate(multiply(g, h)) == multiply(T.conjugate(g), T.conjugate(h))
        cg = T.conjugate(g)
        assert is_hermitian(cg) == is_hermitian(g)
        assert bits.parity(cg.x) == bits.parity(g.x)


def test_dagger_examples():
    assert ControlTableau.identity(4).dagger() == ControlTableau.identity(4)
    T = ControlTableau.identity(3)
    T.right_mult_phase_gate(bits.unit(3, 0), 0)
    D = T.dagger()
    assert D.omega.tolist() == [1, 0, 0]
    assert [bits.to_str(r) for r in D.F] == ["100", "000", "000"]
    assert D.conjugate(T.conjugate(MajoranaString.c(3, 0))) == MajoranaString.c(3, 0)


def test_dagger_is_inverse_and_involution():
    rng = np.random.default_rng(7)
    for trial in range(50):
        n = int(rng.integers(1, 17))
        T, _ = random_tableau(rng, n, 30, dense=False)
        D = T.dagger()
        assert D.verify_identities()
        assert D.dagger() == T
        for _ in range(20):
            g = rand_string(rng, n)
            assert D.conjugate(T.conjugate(g)) == g
            assert T.conjugate(D.conjugate(g)) == g


def test_dagger_matches_dense():
    rng = np.random.default_rng(8)
    for _ in range(30):
        n = int(rng.integers(1, 5))
        T, U = random_tableau(rng, n, 15)
        D = T.dagger()
        g = rand_string(rng, n)
        assert np.allclose(oracle.matrix(D.conjugate(g)), U @ oracle.matrix(g) @ U.conj().T)


def test_dagger_rejects_broken_tableau():
    T = ControlTableau.identity(3)
    T.G[0, 1] = 1
    with pytest.raises(InvariantViolation):
        T.dagger()


def test_dagger_apply_to_basis_examples():
    rng = np.random.default_rng(9)
    T, _ = random_tableau(rng, 4, 20, dense=False)
    theta, t = T.dagger_apply_to_basis(bits.zeros(4))
    assert theta == 0 and not t.any()
    theta, t = ControlTableau.identity(3).dagger_apply_to_basis(bits.bitvec("101"))
    assert (theta, bits.to_str(t)) == (0, "101")
    T = ControlTableau.identity(2)
    T.right_mult_phase_gate(bits.unit(2, 0), 0)
    # U_C = exp(-i pi/4 (1 - p_0)) multiplies |10> by -i, so U_C^dag|10> = i|10>
    theta, t = T.dagger_apply_to_basis(bits.bitvec("10"))
    assert (theta, bits.to_str(t)) == (1, "10")


@pytest.mark.parametrize("n", [1, 3, 6])
def test_dagger_apply_to_basis_matches_dense(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(3):
        T, U = random_tableau(rng, n, 50)
        Ud = U.conj().T
        for idx in range(1 << n):
            s = [(idx >> (n - 1 - k)) & 1 for k in range(n)]
            theta, t = T.dagger_apply_to_basis(bits.bitvec(s))
            expected = np.zeros(1 << n, dtype=complex)
            expected[oracle.index_of(t)] = 1j ** theta
            assert np.allclose(Ud[:, idx], expected, atol=1e-12)


def test_control_type_fixes_vacuum():
    rng = np.random.default_rng(12)
    T, U = random_tableau(rng, 4, 30)
    assert np.isclose(U[0, 0], 1)


def test_dict_round_trip_and_validation():
    rng = np.random.default_rng(13)
    T, _ = random_tableau(rng, 5, 20, dense=False)
    assert ControlTableau.from_dict(T.to_dict(), 5) == T
    d = T.to_dict()
    d["omega"][0] = 7
    with pytest.raises(ValueError):
        ControlTableau.from_dict(d, 5)


def test_size_one_tableau():
    T = ControlTableau.identity(1)
    T.right_mult_phase_gate(bits.unit(1, 0), 1)
    assert T.verify_identities()
    assert T.G.tolist() == [[1]]
    assert T.dagger().dagger() == T


def test_phase_gate_preserves_identities_on_random_tableaux():
    rng = np.random.default_rng(14)
    for _ in range(50):
        n = int(rng.integers(1, 10))
        T, _ = random_tableau(rng, n, 10, dense=False)
        T.right_mult_phase_gate(rand_bits(rng, n), int(rng.integers(2)))
        assert T.verify_identities()
        g1, g2 = rand_control_pair(rng, n) if n > 1 else (MajoranaString.p(1, 0), MajoranaString.identity(1))
        T.right_mult_control(g1, g2)
        assert T.verify_identities()

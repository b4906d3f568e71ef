"""Stabilizer tableau of a control-type Majorana Clifford ``U_C`` (``U_C|0> = |0>``).

The tableau stores, for every site ``j``::

    U_C^dag p_j U_C = prod_k p_k**E[j, k]
    U_C^dag c_j U_C = i**omega[j] prod_k p_k**F[j, k] c_k**G[j, k]

Rows of ``E``, ``F``, ``G`` are indexed by the source operator ``j``.
"""
import numpy as np

from . import _kernels, bits
from .errors import InvariantViolation
from .majorana import MajoranaString, anticommutes, apply_to_basis, is_hermitian


class ControlTableau:
    def __init__(self, omega, E, F, G):
        self.omega = np.array(omega, dtype=np.int64) % 4
        self.E = np.array(E, dtype=bits.BIT, order="C")
        self.F = np.array(F, dtype=bits.BIT, order="C")
        self.G = np.array(G, dtype=bits.BIT, order="C")
        n = self.omega.size
        for name in "EFG":
            if getattr(self, name).shape != (n, n):
                raise ValueError(f"{name} must be {n}x{n}")

    @classmethod
    def identity(cls, n):
        if n < 1:
            raise ValueError("need at least one site")
        eye = np.eye(n, dtype=bits.BIT)
        return cls(np.zeros(n), eye, np.zeros((n, n)), eye)

    @property
    def n(self):
        return self.omega.size

    def copy(self):
        return ControlTableau(self.omega.copy(), self.E, self.F, self.G)

    def __eq__(self, other):
        if not isinstance(other, ControlTableau):
            return NotImplemented
        return (np.array_equal(self.omega, other.omega) and np.array_equal(self.E, other.E)
                and np.array_equal(self.F, other.F) and np.array_equal(self.G, other.G))

    def __repr__(self):
        return (f"ControlTableau(omega={self.omega.tolist()}, "
                f"E={[bits.to_str(r) for r in self.E]}, F={[bits.to_str(r) for r in self.F]}, "
                f"G={[bits.to_str(r) for r in self.G]})")

    def p_image(self, j):
        return MajoranaString.p_type(self.E[j])

    def c_image(self, j):
        return MajoranaString(self.omega[j], self.F[j], self.G[j])

    def conjugate(self, g):
        """``U_C^dag g U_C`` in canonical form; O((|z| + |x|) n)."""
        if g.n != self.n:
            raise ValueError(f"operator on {g.n} sites, tableau on {self.n}")
        return MajoranaString(*_kernels.conjugate(self.omega, self.E, self.F, self.G,
                                                  g.phi, g.z.copy(), g.x.copy()))

    def verify_identities(self, check_phases=True):
        """Check E G^T = E^T G = I, F G^T + G F^T = I + G G^T and odd rows of G.

        With ``check_phases`` also require every ``U_C^dag c_j U_C`` to be Hermitian,
        which pins ``omega`` mod 2.
        """
        E, F, G = self.E, self.F, self.G
        if not (bits.is_identity(bits.matmul(E, G.T)) and bits.is_identity(bits.matmul(E.T, G))):
            return False
        lhs = bits.matmul(F, G.T) ^ bits.matmul(G, F.T)
        rhs = bits.matmul(G, G.T) ^ np.eye(self.n, dtype=bits.BIT)
        if not np.array_equal(lhs, rhs):
            return False
        if not bits.parity(G).all():
            return False
        if check_phases:
            return all(is_hermitian(self.c_image(j)) for j in range(self.n))
        return True

    def check(self):
        if not self.verify_identities():
            raise InvariantViolation("tableau identities violated")

    def right_mult_phase_gate(self, z, vartheta):
        """``U_C <- U_C exp(-i (-1)**vartheta pi/4 (I - prod_k p_k**z_k))``."""
        z = bits.bitvec(z, self.n).copy()
        _kernels.right_mult_phase_gate(self.omega, self.F, self.G, z, int(vartheta) & 1)

    def right_mult_control(self, g1, g2):
        """``U_C <- U_C C`` with ``C = exp(-i pi/4 (I - g1)(I - g2))``.

        ``g1`` must be a phase-free p-type string and ``g2`` a Hermitian even-parity
        string commuting with it; conjugation by ``C`` then sends a string ``g`` to
        ``(-1)**(a1 a2) g1**a2 g2**a1 g`` where ``a_i`` flags anticommutation with ``g_i``.
        """
        if g1.n != self.n or g2.n != self.n:
            raise ValueError("site count mismatch")
        if not g1.is_p_type or g1.phi != 0:
            raise ValueError("control operator must be a phase-free p-type string")
        if not is_hermitian(g2) or bits.parity(g2.x):
            raise ValueError("target operator must be Hermitian with even parity")
        if anticommutes(g1, g2):
            raise ValueError("control and target operators must commute")
        _kernels.right_mult_control(self.omega, self.E, self.F, self.G, g1.z.copy(),
                                    g2.phi, g2.z.copy(), g2.x.copy())

    def dagger(self):
        """Tableau of ``U_C^dag``; O(n**3) through GF(2) matrix products."""
        if not self.verify_identities(check_phases=False):
            raise InvariantViolation("cannot invert a tableau that violates its identities")
        E, F, G = self.E, self.F, self.G
        Ed, Gd = G.T.copy(), E.T.copy()
        Fd = bits.matmul(bits.matmul(E.T, F), G.T)

        # U_C (U_C^dag c_i U_C) U_C^dag, assembled with omega' = 0, must come out
        # proportional to c_i; the leftover phase is -omega'_i.
        if not (bits.is_identity(bits.matmul(Gd, G))
                and not (bits.matmul(Fd, E) ^ bits.matmul(Gd, F)).any()):
            raise InvariantViolation("inverse tableau does not map c_i back to c_i")
        n = self.n
        lower = np.tril(np.ones((n, n), dtype=bool), -1)
        pg = bits.parity(G).astype(np.int64)
        pair_c = (_intmatmul(F, G.T) + _intmatmul(G, bits.prefix_parity(G).T)
                  + np.outer(pg, pg)) * lower
        pair_p = _intmatmul(E, G.T) * lower
        pairs = (np.sum(_intmatmul(Gd, pair_c & 1) * Gd, axis=1)
                 + np.sum(_intmatmul(Fd, pair_p & 1) * Gd, axis=1))
        phase = Gd.astype(np.int64) @ self.omega + 2 * (pairs & 1)
        return ControlTableau(-phase, Ed, Fd, Gd)

    def dagger_apply_to_basis(self, s):
        """``U_C^dag |s> = i**theta |t>``, via ``U_C^dag prod c**s U_C |0>``."""
        s = bits.bitvec(s, self.n)
        g = self.conjugate(MajoranaString(0, bits.zeros(self.n), s))
        return apply_to_basis(g, bits.zeros(self.n))

    def to_dict(self):
        return {
            "omega": [int(w) for w in self.omega],
            "E": [bits.to_str(r) for r in self.E],
            "F": [bits.to_str(r) for r in self.F],
            "G": [bits.to_str(r) for r in self.G],
        }

    @classmethod
    def from_dict(cls, d, n):
        mats = []
        for name in "EFG":
            rows = d[name]
            if len(rows) != n:
                raise ValueError(f"{name} must have {n} rows")
            mats.append(np.array([bits.bitvec(r, n) for r in rows], dtype=bits.BIT).reshape(n, n))
        omega = d["omega"]
        if len(omega) != n or any(not isinstance(w, int) or not 0 <= w < 4 for w in omega):
            raise ValueError("omega must hold n integers in 0..3")
        return cls(omega, *mats)


def _intmatmul(a, b):
    return (np.asarray(a, dtype=np.float32) @ np.asarray(b, dtype=np.float32)).astype(np.int64)


def identity(n):
    return ControlTableau.identity(n)


def conjugate(T, g):
    return T.conjugate(g)


def verify_identities(T):
    return T.verify_identities()


def dagger(T):
    return T.dagger()


def dagger_apply_to_basis(T, s):
    return T.dagger_apply_to_basis(s)


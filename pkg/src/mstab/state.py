"""Phase-sensitive Majorana stabilizer states.

A state is stored as ``(phi, U_C, b, s)`` and represents::

    exp(i pi phi / 4) U_C U_B |s>,    U_B = prod_k B_k**b_k,
    B_k = exp(-pi/4 c_k ct_{k+1})

with ``U_C`` a control-type Clifford held as a :class:`ControlTableau`.
``phi`` lives mod 8 and ``b[n-1]`` is always 0. Gate methods update the state
in place.
"""
import json

import numpy as np

from . import _kernels, bits
from .errors import InvariantViolation, StateFormatError
from .exact import ONE, ZERO, Exact
from .majorana import MajoranaString, anticommutes, apply_to_basis, is_hermitian, multiply
from .tableau import ControlTableau

FORMAT_NAME = "mstab-state"
FORMAT_VERSION = 1


def _check_b(b, n):
    b = bits.bitvec(b, n)
    if b[-1]:
        raise ValueError("b[n-1] must be 0")
    return b


def braid_string(beta):
    """``prod_k (c_k ct_{k+1})**beta_k`` for ``beta[n-1] = 0``, built directly in O(n)."""
    return MajoranaString(*_kernels.braid_string(bits.bitvec(beta).copy()))


def conjugate_by_UB(b, g):
    """``U_B^dag g U_B``: each ``B_k`` anticommuting with ``g`` contributes ``c_k ct_{k+1}`` on the left."""
    b = _check_b(b, g.n)
    return MajoranaString(*_kernels.conj_ub(b, g.phi, g.z.copy(), g.x.copy(), True))


def conjugate_by_UB_dagger(b, g):
    """``U_B g U_B^dag``; the same factors with an extra ``(-1)**|beta|``."""
    b = _check_b(b, g.n)
    return MajoranaString(*_kernels.conj_ub(b, g.phi, g.z.copy(), g.x.copy(), False))


def lambda_chain(m, n):
    """Product ``Lambda_{m0+1,m1} Lambda_{m2,m3} ...`` over the sorted differing sites ``m``.

    ``Lambda_{i1,i2} = Y_{i1} ... Y_{i2-1}`` with ``Y_j = i c_j c_{j+1} prod_{k>j+1} p_k``
    flips sites ``i1`` and ``i2``; built in O(n) without forming the ``Y_j``.
    """
    return MajoranaString(*_kernels.lambda_chain(np.asarray(m, dtype=np.int64), n))


class StabilizerState:
    def __init__(self, phi, tab, b, s):
        self.phi = int(phi) % 8
        self.tab = tab
        self.b = bits.bitvec(b, tab.n).copy()
        self.s = bits.bitvec(s, tab.n).copy()
        if self.b[-1]:
            raise InvariantViolation("b[n-1] must be 0")

    @classmethod
    def basis(cls, s):
        s = bits.bitvec(s)
        return cls(0, ControlTableau.identity(s.size), bits.zeros(s.size), s)

    @classmethod
    def vacuum(cls, n):
        return cls.basis(bits.zeros(n))

    @property
    def n(self):
        return self.tab.n

    def copy(self):
        return StabilizerState(self.phi, self.tab.copy(), self.b, self.s)

    def __eq__(self, other):
        """Representation equality (not state equality; use :func:`inner_product` for that)."""
        if not isinstance(other, StabilizerState):
            return NotImplemented
        return (self.phi == other.phi and self.tab == other.tab
                and np.array_equal(self.b, other.b) and np.array_equal(self.s, other.s))

    def __repr__(self):
        return (f"StabilizerState(phi={self.phi}, b={bits.to_str(self.b)}, "
                f"s={bits.to_str(self.s)}, tab={self.tab!r})")

    def check(self):
        """Full invariant check, O(n**3)."""
        if self.b[-1]:
            raise InvariantViolation("b[n-1] must be 0")
        self.tab.check()

    def _site(self, *sites):
        for j in sites:
            if not 0 <= j < self.n:
                raise IndexError(f"site {j} out of range for n={self.n}")

    def _same_n(self, g):
        if g.n != self.n:
            raise ValueError(f"operator on {g.n} sites, state on {self.n}")

    def pull_back(self, g):
        """``U_B^dag U_C^dag g U_C U_B``."""
        self._same_n(g)
        tab = self.tab
        phi, z, x = _kernels.conjugate(tab.omega, tab.E, tab.F, tab.G, g.phi, g.z.copy(), g.x.copy())
        return MajoranaString(*_kernels.conj_ub(self.b, phi, z, x, True))

    # gates

    def apply_majorana(self, g):
        """``|psi> <- g |psi>`` for any Majorana string, odd parity included."""
        theta, t = apply_to_basis(self.pull_back(g), self.s)
        self.phi = (self.phi + 2 * theta) % 8
        self.s = t

    def apply_eta_p(self, j, sign):
        """``exp(-sign i pi/4 p_j)``."""
        self._site(j)
        sign = _sign(sign)
        self.phi = (self.phi - sign) % 8
        self.tab.F[j] ^= self.tab.E[j]
        self.tab.omega[j] = (self.tab.omega[j] + sign) % 4

    def apply_w(self, j, k, sign):
        """``exp(-sign i pi/4 p_j p_k)``."""
        self._site(j, k)
        if j == k:
            raise ValueError("W gate needs two distinct sites")
        sign = _sign(sign)
        tab = self.tab
        self.phi = (self.phi - sign) % 8
        ee = tab.E[j] ^ tab.E[k]
        tab.F[j] ^= ee
        tab.F[k] ^= ee
        tab.omega[j] = (tab.omega[j] + sign) % 4
        tab.omega[k] = (tab.omega[k] + sign) % 4

    def apply_braid_eta(self, j, k):
        """``exp(pi/4 c_j c_k) = (1 + c_j c_k)/sqrt(2)``."""
        if not (0 <= j < self.n and 0 <= k < self.n):
            raise IndexError(f"sites ({j}, {k}) out of range for n={self.n}")
        if j == k:
            raise ValueError("braid needs two distinct sites")
        tab = self.tab
        self._finish(*_kernels.braid_gate(tab.omega, tab.E, tab.F, tab.G, self.b, self.s, j, k))

    def apply_rotation(self, g, sign):
        """``exp(sign i pi/4 g)`` for Hermitian, even-parity ``g``."""
        self._same_n(g)
        if not is_hermitian(g):
            raise ValueError("rotation generator must be Hermitian")
        if bits.parity(g.x):
            raise ValueError("rotation generator must have even parity")
        self._apply_sqrt(g.with_phase(g.phi + (1 if _sign(sign) > 0 else 3)))

    def _apply_sqrt(self, g):
        """Apply ``(1 + g)/sqrt(2)`` where ``g**2 = -1`` and ``g`` has even parity.

        The pulled-back generator maps ``|s>`` to ``i**theta |t>``. A control gate
        pushed into ``U_C`` folds the two branches into a pair differing only at
        neighbouring sites ``w, w+1``, which ``B_w`` then absorbs.
        """
        tab = self.tab
        self._finish(*_kernels.sqrt_gate(tab.omega, tab.E, tab.F, tab.G, self.b, self.s,
                                         g.phi, g.z.copy(), g.x.copy()))

    def _finish(self, dphi, status):
        if status != _kernels.OK:
            raise InvariantViolation(_kernels.MESSAGES[status])
        self.phi = (self.phi + int(dphi)) % 8

    # queries

    def expectation(self, g):
        gp = self.pull_back(g)
        if gp.x.any():
            return ZERO
        return Exact(2 * (gp.phi + 2 * int(bits.dot(gp.z, self.s))))

    def amplitude(self, x):
        """``<x|psi>`` as an exact value."""
        x = bits.bitvec(x, self.n)
        w = bits.weight(x)
        # <x| = <0| (-1)**floor(|x|/2) prod_k c_k**x_k
        g = MajoranaString(2 * ((w // 2) % 2), bits.zeros(self.n), x)
        theta, s = apply_to_basis(self.pull_back(g), self.s)
        if bits.parity(s):
            return ZERO
        sbar = bits.prefix_parity(s)
        if (sbar & (self.b ^ 1)).any():
            return ZERO
        k = self.phi + 2 * theta + 2 * (bits.weight(sbar) + bits.weight(s))
        return Exact(k, bits.weight(self.b))

    def amplitudes(self):
        """All ``2**n`` amplitudes as complex numbers, site 0 most significant."""
        n = self.n
        out = np.empty(1 << n, dtype=np.complex128)
        for idx in range(1 << n):
            x = bits.bitvec([(idx >> (n - 1 - k)) & 1 for k in range(n)])
            out[idx] = complex(self.amplitude(x))
        return out

    # serialization

    def to_dict(self):
        d = {"format": FORMAT_NAME, "version": FORMAT_VERSION, "n": self.n, "phi": int(self.phi)}
        d.update(self.tab.to_dict())
        d["b"] = bits.to_str(self.b)
        d["s"] = bits.to_str(self.s)
        return d

    @classmethod
    def from_dict(cls, d):
        try:
            if d.get("format") != FORMAT_NAME or d.get("version") != FORMAT_VERSION:
                raise StateFormatError("not an mstab-state v1 document")
            n, phi = d["n"], d["phi"]
            if not isinstance(n, int) or n < 1:
                raise StateFormatError("n must be a positive integer")
            if not isinstance(phi, int) or not 0 <= phi < 8:
                raise StateFormatError("phi must be an integer in 0..7")
            tab = ControlTableau.from_dict(d, n)
            b = bits.bitvec(d["b"], n)
            s = bits.bitvec(d["s"], n)
        except StateFormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise StateFormatError(f"bad state document: {exc}") from exc
        if b[-1]:
            raise StateFormatError("b[n-1] must be 0")
        if not tab.verify_identities():
            raise InvariantViolation("state file holds an invalid tableau")
        return cls(phi, tab, b, s)

    def dumps(self):
        d = self.to_dict()
        return "{\n" + ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d.items()) + "\n}\n"

    @classmethod
    def loads(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"state file is not valid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise StateFormatError("state document must be a JSON object")
        return cls.from_dict(d)


def _sign(sign):
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign


def basis_state(s):
    return StabilizerState.basis(s)


def inner_product(bra, ket):
    """``<bra|ket>`` exactly; O(n**3) worst case.

    The bra's braids become rotations applied to a copy of the ket, so the
    side with fewer braids is used as the bra and the result conjugated back.
    """
    if bra.n != ket.n:
        raise ValueError("site count mismatch")
    if bits.weight(ket.b) < bits.weight(bra.b):
        return inner_product(ket, bra).conjugate()
    inv = bra.tab.dagger()
    work = ket.copy()
    tab = work.tab
    # the bra's braids, moved through U_C' onto the ket as rotations
    work._finish(*_kernels.undo_braids(inv.omega, inv.E, inv.F, inv.G, bra.b,
                                       tab.omega, tab.E, tab.F, tab.G, work.b, work.s))
    theta, t = inv.dagger_apply_to_basis(bra.s)
    return work.amplitude(t) * Exact(-bra.phi - 2 * theta)


def apply_majorana(st, g):
    st.apply_majorana(g)
    return st


def expectation(st, g):
    return st.expectation(g)


def amplitude(st, x):
    return st.amplitude(x)


__all__ = ["StabilizerState", "basis_state", "inner_product", "conjugate_by_UB",
           "conjugate_by_UB_dagger", "braid_string", "apply_majorana", "expectation",
           "amplitude", "ONE", "ZERO", "anticommutes"]

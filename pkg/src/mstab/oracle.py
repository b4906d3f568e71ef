"""Dense Jordan-Wigner statevector simulator used as ground truth.

Amplitude index of a bitstring ``s`` is ``sum_k s_k 2**(n-1-k)``: site 0 is
the most significant bit. Every cross-check in the test suite relies on this
convention.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import bits
from .majorana import MajoranaString, is_hermitian, multiply

MAX_ORACLE_N = 14
_SQRT1_2 = np.sqrt(0.5)


@dataclass
class DenseState:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        _guard(self.n)
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        if self.amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got {self.amps.shape}")

    def copy(self):
        return DenseState(self.n, self.amps.copy())

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def dump(self):
        """Text listing of non-zero amplitudes, one ``bitstring re im`` per line."""
        lines = []
        for idx in np.flatnonzero(np.abs(self.amps) > 1e-14):
            a = self.amps[idx]
            lines.append(f"{format(idx, f'0{self.n}b')} {a.real:+.12f} {a.imag:+.12f}")
        return "\n".join(lines) + "\n"


def _guard(n):
    if n < 1:
        raise ValueError("need at least one site")
    if n > MAX_ORACLE_N:
        raise ValueError(f"dense oracle refuses n={n} (limit {MAX_ORACLE_N})")


@lru_cache(maxsize=None)
def _tables(n):
    idx = np.arange(1 << n)
    occ = ((idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1).astype(np.int64)
    # (-1)**(number of occupied sites strictly before k)
    before = np.cumsum(occ, axis=1) - occ
    jw_sign = 1 - 2 * (before & 1)
    return idx, occ, jw_sign


def index_of(s):
    s = bits.bitvec(s)
    return int(sum(int(b) << (s.size - 1 - k) for k, b in enumerate(s)))


def basis(s):
    s = bits.bitvec(s)
    amps = np.zeros(1 << s.size, dtype=np.complex128)
    amps[index_of(s)] = 1
    return DenseState(s.size, amps)


def vacuum(n):
    return basis(bits.zeros(n))


def _site(st, k):
    if not 0 <= k < st.n:
        raise IndexError(f"site {k} out of range for n={st.n}")


def apply_c(st, k):
    _site(st, k)
    idx, _, jw = _tables(st.n)
    out = np.empty_like(st.amps)
    out[idx ^ (1 << (st.n - 1 - k))] = jw[:, k] * st.amps
    return DenseState(st.n, out)


def apply_ctilde(st, k):
    _site(st, k)
    idx, occ, jw = _tables(st.n)
    out = np.empty_like(st.amps)
    out[idx ^ (1 << (st.n - 1 - k))] = 1j * (1 - 2 * occ[:, k]) * jw[:, k] * st.amps
    return DenseState(st.n, out)


def apply_p(st, k):
    _site(st, k)
    _, occ, _ = _tables(st.n)
    return DenseState(st.n, (1 - 2 * occ[:, k]) * st.amps)


def apply_string(st, g):
    """Apply ``i**phi prod_k p_k**z_k c_k**x_k``; the rightmost factor acts first."""
    if g.n != st.n:
        raise ValueError(f"operator on {g.n} sites, state on {st.n}")
    out = st
    for k in reversed(range(st.n)):
        if g.x[k]:
            out = apply_c(out, k)
        if g.z[k]:
            out = apply_p(out, k)
    return DenseState(st.n, (1j ** g.phi) * out.amps)


def apply_rotation(st, g, sign):
    """``exp(sign * i pi/4 * g)`` for Hermitian ``g``."""
    if not is_hermitian(g):
        raise ValueError("rotation generator must be Hermitian")
    moved = apply_string(st, g).amps
    return DenseState(st.n, _SQRT1_2 * (st.amps + sign * 1j * moved))


def apply_eta_p(st, j, sign):
    """``exp(-sign * i pi/4 * p_j)``."""
    return apply_rotation(st, MajoranaString.p(st.n, j), -sign)


def apply_w(st, j, k, sign):
    """``exp(-sign * i pi/4 * p_j p_k)``."""
    if j == k:
        raise ValueError("W gate needs two distinct sites")
    g = multiply(MajoranaString.p(st.n, j), MajoranaString.p(st.n, k))
    return apply_rotation(st, g, -sign)


def apply_braid_eta(st, j, k):
    """``exp(pi/4 c_j c_k) = (1 + c_j c_k)/sqrt(2)``."""
    if j == k:
        raise ValueError("braid needs two distinct sites")
    g = multiply(MajoranaString.c(st.n, j), MajoranaString.c(st.n, k))
    return DenseState(st.n, _SQRT1_2 * (st.amps + apply_string(st, g).amps))


def matrix(g):
    """Dense matrix of a Majorana string (columns are images of basis states)."""
    _guard(g.n)
    dim = 1 << g.n
    cols = np.empty((dim, dim), dtype=np.complex128)
    eye = np.eye(dim, dtype=np.complex128)
    for col in range(dim):
        cols[:, col] = apply_string(DenseState(g.n, eye[col]), g).amps
    return cols


def amplitude(st, x):
    return complex(st.amps[index_of(bits.bitvec(x, st.n))])


def inner(a, b):
    """<a|b>."""
    if a.n != b.n:
        raise ValueError("site count mismatch")
    return complex(np.vdot(a.amps, b.amps))


def expectation(st, g):
    return complex(np.vdot(st.amps, apply_string(st, g).amps))

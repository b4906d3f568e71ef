"""Majorana strings in the canonical ``(phi, z, x)`` form.

A string on ``n`` sites is the operator::

    i**phi * prod_k p_k**z_k c_k**x_k        (k increasing, left to right)

with ``p_k = i ct_k c_k`` the site-parity operator, ``c_k = a_k + a_k^dag`` and
``ct_k = i (a_k^dag - a_k)``. Canonical form makes componentwise equality the
same as operator equality.
"""
import re
from dataclasses import dataclass

import numpy as np

from . import bits
from .errors import OperatorSyntaxError


@dataclass(frozen=True, eq=False)
class MajoranaString:
    phi: int
    z: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        z = bits.bitvec(self.z)
        x = bits.bitvec(self.x)
        if z.size != x.size:
            raise ValueError(f"z has {z.size} sites but x has {x.size}")
        z.flags.writeable = False
        x.flags.writeable = False
        object.__setattr__(self, "phi", int(self.phi) % 4)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "x", x)

    @property
    def n(self):
        return self.z.size

    @classmethod
    def identity(cls, n):
        return cls(0, bits.zeros(n), bits.zeros(n))

    @classmethod
    def c(cls, n, k):
        return cls(0, bits.zeros(n), bits.unit(n, k))

    @classmethod
    def ctilde(cls, n, k):
        # ct_k = -i p_k c_k
        return cls(3, bits.unit(n, k), bits.unit(n, k))

    @classmethod
    def p(cls, n, k):
        return cls(0, bits.unit(n, k), bits.zeros(n))

    @classmethod
    def p_type(cls, z, phi=0):
        z = bits.bitvec(z)
        return cls(phi, z, bits.zeros(z.size))

    @property
    def is_p_type(self):
        return not self.x.any()

    def __eq__(self, other):
        if not isinstance(other, MajoranaString):
            return NotImplemented
        return (self.phi == other.phi and np.array_equal(self.z, other.z)
                and np.array_equal(self.x, other.x))

    def __hash__(self):
        return hash((self.phi, self.z.tobytes(), self.x.tobytes()))

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"MajoranaString({self.phi}; {bits.to_str(self.z)}; {bits.to_str(self.x)})"

    def __str__(self):
        return format_operator(self)

    def with_phase(self, phi):
        return MajoranaString(phi, self.z, self.x)


@dataclass(frozen=True, eq=False)
class InterleavedString:
    """``i**r * prod_k c_k**m[2k] ct_k**m[2k+1]``."""
    r: int
    m: np.ndarray

    def __post_init__(self):
        m = bits.bitvec(self.m)
        m.flags.writeable = False
        object.__setattr__(self, "r", int(self.r) % 4)
        object.__setattr__(self, "m", m)

    def __eq__(self, other):
        if not isinstance(other, InterleavedString):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash((self.r, self.m.tobytes()))


def prefix_parity(x):
    return bits.prefix_parity(x)


def parity(x):
    return bits.parity(x)


def _check_sizes(*arrays):
    n = arrays[0].size
    for a in arrays[1:]:
        if a.size != n:
            raise ValueError(f"site count mismatch: {n} vs {a.size}")


def from_interleaved(g):
    """Convert ``(r, m)`` to the canonical ``(phi, z, x)`` form.

    Each site factor is independent of the others: ``ct = -i p c`` gives
    ``ct_k -> (3; e_k; e_k)`` and ``c_k ct_k -> (1; e_k; 0)``, and canonical
    site factors multiply in increasing k without any reordering sign.
    """
    if g.m.size % 2:
        raise ValueError("interleaved string must have even length")
    me, mo = g.m[0::2], g.m[1::2]
    phi = g.r + 3 * bits.weight(mo) + 2 * int(bits.dot(me, mo))
    return MajoranaString(phi, mo, me ^ mo)


def to_interleaved(g):
    me, mo = g.x ^ g.z, g.z
    m = np.empty(2 * g.n, dtype=bits.BIT)
    m[0::2], m[1::2] = me, mo
    r = g.phi - 3 * bits.weight(mo) - 2 * int(bits.dot(me, mo))
    return InterleavedString(r, m)


def apply_to_basis(g, s):
    """Act with ``g`` on ``|s>``; returns ``(theta, t)`` with ``g|s> = i**theta |t>``."""
    s = bits.bitvec(s)
    _check_sizes(g.z, s)
    t = s ^ g.x
    sign = int(bits.dot(t, g.z)) + int(bits.dot(s, bits.prefix_parity(g.x))) \
        + bits.parity(g.x) * bits.parity(s)
    return (g.phi + 2 * sign) % 4, t


def product_phase(a, b):
    """The sign exponent (mod 2) picked up when canonicalising ``a * b``."""
    return (int(bits.dot(b.z, a.x)) + int(bits.dot(b.x, bits.prefix_parity(a.x)))
            + bits.parity(b.x) * bits.parity(a.x)) & 1


def multiply(g, h):
    """Canonical form of the operator product ``g h``."""
    _check_sizes(g.z, h.z)
    return MajoranaString(g.phi + h.phi + 2 * product_phase(g, h), g.z ^ h.z, g.x ^ h.x)


def product(strings, n=None):
    """Left-to-right product of a sequence of strings."""
    it = iter(strings)
    try:
        acc = next(it)
    except StopIteration:
        if n is None:
            raise ValueError("empty product needs a site count") from None
        return MajoranaString.identity(n)
    for g in it:
        acc = multiply(acc, g)
    return acc


def anticommutes(g, h):
    """1 if ``g h = -h g``, else 0."""
    _check_sizes(g.z, h.z)
    return (int(bits.dot(h.z, g.x)) + int(bits.dot(h.x, g.z ^ g.x))
            + bits.parity(g.x) * bits.parity(h.x)) & 1


def square_phase(z, x):
    """Exponent of i in ``(z, x)**2`` for a phase-free string (0 or 2)."""
    q = int(bits.dot(z, x)) + int(bits.dot(x, bits.prefix_parity(x))) + bits.parity(x)
    return 2 * (q & 1)


def is_hermitian(g):
    return (2 * g.phi + square_phase(g.z, g.x)) % 4 == 0


def hermitian(z, x, flip=False):
    """The Hermitian string with the given support.

    Two phases qualify, differing by a sign; ``flip`` selects the second one.
    """
    phi = square_phase(z, x) // 2 + (2 if flip else 0)
    return MajoranaString(phi, z, x)


def dagger(g):
    return g if is_hermitian(g) else g.with_phase(g.phi + 2)


_TOKEN = re.compile(r"\S+")
_PHASE = re.compile(r"i\^([0-3])")
_SITE = re.compile(r"(ct|c|p)(\d+)")


def parse_operator(text, n):
    """Parse ``[i^r] tok tok ...`` with tokens ``c<k>``, ``ct<k>``, ``p<k>``.

    Tokens multiply left to right, so any order is accepted and reduced to
    canonical form.
    """
    tokens = list(_TOKEN.finditer(text))
    if not tokens:
        raise OperatorSyntaxError("empty operator expression", 0)
    acc = MajoranaString.identity(n)
    for i, tok in enumerate(tokens):
        word = tok.group()
        m = _PHASE.fullmatch(word)
        if m:
            if i != 0:
                raise OperatorSyntaxError(f"phase token {word!r} must come first", tok.start())
            acc = acc.with_phase(int(m.group(1)))
            continue
        m = _SITE.fullmatch(word)
        if not m:
            raise OperatorSyntaxError(f"bad operator token {word!r}", tok.start())
        k = int(m.group(2))
        if k >= n:
            raise OperatorSyntaxError(f"site {k} out of range for n={n}", tok.start())
        factor = {"c": MajoranaString.c, "ct": MajoranaString.ctilde,
                  "p": MajoranaString.p}[m.group(1)](n, k)
        acc = multiply(acc, factor)
    return acc


def format_operator(g):
    """Render in the token syntax; ``parse_operator`` inverts this exactly."""
    words = [f"i^{g.phi}"] if g.phi else []
    for k in range(g.n):
        if g.z[k]:
            words.append(f"p{k}")
        if g.x[k]:
            words.append(f"c{k}")
    return " ".join(words) if words else "i^0"

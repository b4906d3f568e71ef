"""Gate list representation and the ``.mst`` text format.

A circuit file starts with ``n <sites>`` (blank lines and ``#`` comments are
ignored anywhere) followed by one gate per line::

    eta+ j | eta- j        exp(-/+ i pi/4 p_j)
    w+ j k | w- j k        exp(-/+ i pi/4 p_j p_k)
    braid j k              exp(pi/4 c_j c_k)
    rot+ EXPR | rot- EXPR  exp(+/- i pi/4 EXPR), EXPR Hermitian with even parity
    op EXPR                multiply by the Majorana string EXPR

``EXPR`` uses the operator token syntax (``i^3 c0 ct1``). The braid layer
gate ``B_k = exp(-pi/4 c_k ct_{k+1})`` is written ``rot- i^3 c<k> ct<k+1>``.
"""
from dataclasses import dataclass

import numpy as np

from . import bits, oracle
from .errors import (InvalidRotation, MalformedLine, MalformedOperator, OperatorSyntaxError,
                     SiteOutOfRange, UnknownMnemonic)
from .majorana import MajoranaString, format_operator, hermitian, is_hermitian, multiply, parse_operator
from .state import StabilizerState

GATE_KINDS = ("eta", "w", "braid", "rot", "op")


@dataclass(frozen=True)
class EtaP:
    j: int
    sign: int


@dataclass(frozen=True)
class W:
    j: int
    k: int
    sign: int


@dataclass(frozen=True)
class BraidEta:
    j: int
    k: int


@dataclass(frozen=True)
class Rot:
    string: MajoranaString
    sign: int


@dataclass(frozen=True)
class Op:
    string: MajoranaString


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n < 1:
            raise ValueError("a circuit needs at least one site")
        for gate in self.gates:
            validate(gate, self.n)

    def __len__(self):
        return len(self.gates)

    def prefix(self, length):
        return Circuit(self.n, self.gates[:length])


def kind(gate):
    return {EtaP: "eta", W: "w", BraidEta: "braid", Rot: "rot", Op: "op"}[type(gate)]


def validate(gate, n):
    sites = {EtaP: lambda g: (g.j,), W: lambda g: (g.j, g.k),
             BraidEta: lambda g: (g.j, g.k)}.get(type(gate), lambda g: ())(gate)
    for j in sites:
        if not 0 <= j < n:
            raise ValueError(f"site {j} out of range for n={n}")
    if isinstance(gate, (W, BraidEta)) and gate.j == gate.k:
        raise ValueError("two-site gate needs distinct sites")
    if isinstance(gate, (EtaP, W, Rot)) and gate.sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if isinstance(gate, (Rot, Op)) and gate.string.n != n:
        raise ValueError(f"operator on {gate.string.n} sites in an n={n} circuit")
    if isinstance(gate, Rot):
        _check_rotation(gate.string)


def _check_rotation(g):
    if not is_hermitian(g):
        raise ValueError("rotation generator is not Hermitian")
    if bits.parity(g.x):
        raise ValueError("rotation generator has odd parity")


def _sign_suffix(sign):
    return "+" if sign > 0 else "-"


def format_gate(gate):
    if isinstance(gate, EtaP):
        return f"eta{_sign_suffix(gate.sign)} {gate.j}"
    if isinstance(gate, W):
        return f"w{_sign_suffix(gate.sign)} {gate.j} {gate.k}"
    if isinstance(gate, BraidEta):
        return f"braid {gate.j} {gate.k}"
    if isinstance(gate, Rot):
        return f"rot{_sign_suffix(gate.sign)} {format_operator(gate.string)}"
    return f"op {format_operator(gate.string)}"


def serialize_circuit(c):
    return "".join(f"{line}\n" for line in [f"n {c.n}"] + [format_gate(g) for g in c.gates])


def _words(line):
    """Whitespace-separated words with their 1-based columns."""
    out = []
    col = 0
    for word in line.split():
        col = line.index(word, col)
        out.append((word, col + 1))
        col += len(word)
    return out


def _int(word, col, lineno, what="site index"):
    try:
        value = int(word, 10)
    except ValueError:
        raise MalformedLine(f"expected {what}, got {word!r}", lineno, col) from None
    return value


def _site(word, col, lineno, n):
    j = _int(word, col, lineno)
    if not 0 <= j < n:
        raise SiteOutOfRange(f"site index {j} out of range for n={n}", lineno, col)
    return j


_ARITY = {"eta+": 1, "eta-": 1, "w+": 2, "w-": 2, "braid": 2}


def parse_circuit(text):
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = _words(line)
        if not words:
            continue
        head, col = words[0]
        if n is None:
            if head != "n" or len(words) != 2:
                raise MalformedLine("first line must be 'n <sites>'", lineno, col)
            n = _int(words[1][0], words[1][1], lineno, "site count")
            if n < 1:
                raise MalformedLine("site count must be positive", lineno, words[1][1])
            continue
        if head in _ARITY:
            args = words[1:]
            if len(args) != _ARITY[head]:
                raise MalformedLine(f"'{head}' takes {_ARITY[head]} site index(es)", lineno, col)
            sites = [_site(w, c, lineno, n) for w, c in args]
            sign = 1 if head.endswith("+") else -1
            if head.startswith("eta"):
                gates.append(EtaP(sites[0], sign))
                continue
            if sites[0] == sites[1]:
                raise MalformedLine(f"'{head}' needs two distinct sites", lineno, args[1][1])
            gates.append(W(*sites, sign) if head.startswith("w") else BraidEta(*sites))
        elif head in ("rot+", "rot-", "op"):
            if len(words) == 1:
                raise MalformedOperator("missing operator expression", lineno, col + len(head))
            start = words[1][1] - 1
            try:
                g = parse_operator(line[start:], n)
            except OperatorSyntaxError as exc:
                word_col = start + exc.offset + 1
                if exc.args[0].startswith("site"):
                    raise SiteOutOfRange(exc.args[0], lineno, word_col) from None
                raise MalformedOperator(exc.args[0], lineno, word_col) from None
            if head == "op":
                gates.append(Op(g))
                continue
            try:
                _check_rotation(g)
            except ValueError as exc:
                raise InvalidRotation(str(exc), lineno, words[1][1]) from None
            gates.append(Rot(g, 1 if head == "rot+" else -1))
        else:
            raise UnknownMnemonic(f"unknown gate {head!r}", lineno, col)
    if n is None:
        raise MalformedLine("missing 'n <sites>' header", 1, 1)
    return Circuit(n, gates)


def random_circuit(n, depth, seed=None, weights=None):
    """Seeded random circuit over the full gate set.

    ``weights`` maps gate kinds (``eta``, ``w``, ``braid``, ``rot``, ``op``) to
    relative frequencies; missing kinds get weight 0, ``None`` means uniform.
    """
    if n < 2:
        raise ValueError("random circuits need n >= 2")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    kinds, probs = _weights(weights)
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(kinds), size=depth, p=probs)
    return Circuit(n, [_random_gate(kinds[i], n, rng) for i in picks])


def _weights(weights):
    if weights is None:
        weights = dict.fromkeys(GATE_KINDS, 1.0)
    unknown = set(weights) - set(GATE_KINDS)
    if unknown:
        raise ValueError(f"unknown gate kinds in weights: {sorted(unknown)}")
    kinds = [k for k in GATE_KINDS if k in weights]
    w = np.array([float(weights[k]) for k in kinds])
    if w.size == 0 or not np.all(np.isfinite(w)) or (w < 0).any() or w.sum() <= 0:
        raise ValueError("weights must be finite, non-negative and not all zero")
    return kinds, w / w.sum()


def _pair(rng, n):
    j, k = rng.choice(n, size=2, replace=False)
    return int(j), int(k)


def _sign(rng):
    return 1 if rng.integers(2) else -1


def random_rotation_string(n, rng):
    """A random Hermitian, even-parity, non-identity string."""
    while True:
        z = rng.integers(0, 2, n).astype(bits.BIT)
        x = rng.integers(0, 2, n).astype(bits.BIT)
        if bits.parity(x):
            x[rng.integers(n)] ^= 1
        if z.any() or x.any():
            return hermitian(z, x, flip=bool(rng.integers(2)))


def random_op_string(n, rng):
    """``c_k``, ``ct_k`` or a product of two of them."""
    def single():
        k = int(rng.integers(n))
        return MajoranaString.c(n, k) if rng.integers(2) else MajoranaString.ctilde(n, k)
    g = single()
    return multiply(g, single()) if rng.integers(2) else g


def _random_gate(kind_, n, rng):
    if kind_ == "eta":
        return EtaP(int(rng.integers(n)), _sign(rng))
    if kind_ == "w":
        return W(*_pair(rng, n), _sign(rng))
    if kind_ == "braid":
        return BraidEta(*_pair(rng, n))
    if kind_ == "rot":
        return Rot(random_rotation_string(n, rng), _sign(rng))
    return Op(random_op_string(n, rng))


def apply_gate(st, gate):
    """Apply ``gate`` to a :class:`StabilizerState` in place."""
    if isinstance(gate, EtaP):
        st.apply_eta_p(gate.j, gate.sign)
    elif isinstance(gate, W):
        st.apply_w(gate.j, gate.k, gate.sign)
    elif isinstance(gate, BraidEta):
        st.apply_braid_eta(gate.j, gate.k)
    elif isinstance(gate, Rot):
        st.apply_rotation(gate.string, gate.sign)
    else:
        st.apply_majorana(gate.string)
    return st


def apply_gate_dense(st, gate):
    """Apply ``gate`` to a dense oracle state, returning the new state."""
    if isinstance(gate, EtaP):
        return oracle.apply_eta_p(st, gate.j, gate.sign)
    if isinstance(gate, W):
        return oracle.apply_w(st, gate.j, gate.k, gate.sign)
    if isinstance(gate, BraidEta):
        return oracle.apply_braid_eta(st, gate.j, gate.k)
    if isinstance(gate, Rot):
        return oracle.apply_rotation(st, gate.string, gate.sign)
    return oracle.apply_string(st, gate.string)


def run(c, state=None, on_gate=None):
    """Run ``c`` on ``state`` (vacuum by default) with the fast simulator.

    ``on_gate(index, state)`` is called after every gate.
    """
    st = StabilizerState.vacuum(c.n) if state is None else state
    for i, gate in enumerate(c.gates):
        apply_gate(st, gate)
        if on_gate is not None:
            on_gate(i, st)
    return st


def run_dense(c, state=None):
    st = oracle.vacuum(c.n) if state is None else state
    for gate in c.gates:
        st = apply_gate_dense(st, gate)
    return st


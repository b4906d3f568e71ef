"""Binary vectors and matrices over GF(2).

Bit vectors are 1-D ``uint8`` arrays holding 0/1, one element per fermionic
site, site 0 first. Matrices are 2-D ``uint8`` arrays whose rows are bit
vectors. Integer products wrap modulo 256, which preserves parity, so a dot
product mod 2 is just ``(a @ b) & 1``.
"""
import numpy as np

BIT = np.uint8


def bitvec(bits, n=None):
    """Coerce ``bits`` (iterable of 0/1 or a bitstring like ``"0110"``) to a bit vector."""
    if isinstance(bits, np.ndarray) and bits.dtype == BIT:
        arr = bits & 1
    elif isinstance(bits, str):
        if any(ch not in "01" for ch in bits):
            raise ValueError(f"not a bitstring: {bits!r}")
        arr = np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    else:
        arr = (np.asarray(bits).astype(np.int64) & 1).astype(BIT)
    if arr.ndim != 1:
        raise ValueError("bit vector must be one-dimensional")
    if n is not None and arr.size != n:
        raise ValueError(f"expected {n} bits, got {arr.size}")
    return arr


def zeros(n):
    return np.zeros(n, dtype=BIT)


def unit(n, k):
    """The vector e_k."""
    v = np.zeros(n, dtype=BIT)
    v[k] = 1
    return v


def to_str(v):
    return "".join("1" if b else "0" for b in v)


def prefix_parity(x):
    """Inclusive prefix parity: out[k] = x[0] + ... + x[k] mod 2.

    Works along the last axis, so a matrix gets the transform applied row-wise.
    """
    return (np.cumsum(x, axis=-1, dtype=np.int64) & 1).astype(BIT)


def parity(x):
    """|x| mod 2 (along the last axis)."""
    return int(np.count_nonzero(x) & 1) if np.ndim(x) == 1 else (
        np.count_nonzero(x, axis=-1) & 1).astype(BIT)


def weight(x):
    return int(np.count_nonzero(x))


def dot(a, b):
    """a . b mod 2 for vectors; row-wise products for matrix/vector pairs."""
    return (np.asarray(a) @ np.asarray(b)) & 1


def matmul(a, b):
    """GF(2) matrix product.

    Goes through float32 BLAS: row sums never exceed n, which stays far below
    2**24 for any n this package handles, so the rounding is exact.
    """
    prod = np.asarray(a, dtype=np.float32) @ np.asarray(b, dtype=np.float32)
    return (prod.astype(np.int64) & 1).astype(BIT)


def is_identity(m):
    return m.shape[0] == m.shape[1] and np.array_equal(m, np.eye(m.shape[0], dtype=BIT))

"""Wall-time scaling of gate updates and queries.

Every operation is timed call by call, with the garbage collector paused as
``timeit`` does, and summarised by its median. Each repetition draws a fresh
random state so that one unlucky state cannot skew a size, and repetitions
cycle through all sizes so that drift in machine speed hits every size alike.
The growth exponent is the least-squares slope of log(time) against log(n).
"""
from dataclasses import dataclass
import gc
import time

import numpy as np

from . import circuit as circ
from .state import StabilizerState, inner_product

DEFAULT_SIZES = (64, 128, 256, 512, 1024)
KINDS = ("eta", "w", "braid", "rot", "amplitude", "inner")
# operation counts per repetition unit; cheap operations get more samples
_SCALE = {"eta": 40, "w": 40, "braid": 6, "rot": 6, "amplitude": 6, "inner": 1}
# growth exponents of the operation counts
EXPECTED_ORDER = {"eta": 1, "w": 1, "braid": 2, "rot": 2, "amplitude": 2, "inner": 3}


@dataclass(frozen=True)
class Row:
    kind: str
    n: int
    reps: int
    median_s: float


def random_state(n, rng, scramble=12):
    """A state with a dense ``U_C`` and about half of the braids switched on.

    ``U_C`` comes from random rotations applied to the vacuum; ``b`` and ``s``
    are then drawn uniformly, since any ``(phi, U_C, b, s)`` with a valid
    tableau and ``b[n-1] = 0`` is a valid state.
    """
    st = StabilizerState.vacuum(n)
    for _ in range(scramble):
        st.apply_rotation(circ.random_rotation_string(n, rng), 1)
    b = rng.integers(0, 2, n).astype(np.uint8)
    b[-1] = 0
    return StabilizerState(int(rng.integers(8)), st.tab, b, rng.integers(0, 2, n))


def _times(fn, args):
    times = []
    enabled = gc.isenabled()
    gc.disable()
    try:
        for a in args:
            t0 = time.perf_counter()
            fn(*a)
            times.append(time.perf_counter() - t0)
    finally:
        if enabled:
            gc.enable()
    return times


def _pairs(rng, n, count):
    return [tuple(int(v) for v in rng.choice(n, 2, replace=False)) for _ in range(count)]


def _sample(kind, n, count, rng):
    st = random_state(n, rng)
    if kind == "eta":
        args = [(int(j), 1 if s else -1) for j, s in zip(rng.integers(0, n, count), rng.integers(0, 2, count))]
        return _times(st.apply_eta_p, args)
    if kind == "w":
        return _times(st.apply_w, [(j, k, 1) for j, k in _pairs(rng, n, count)])
    if kind == "braid":
        return _times(st.apply_braid_eta, _pairs(rng, n, count))
    if kind == "rot":
        return _times(st.apply_rotation, [(circ.random_rotation_string(n, rng), 1) for _ in range(count)])
    if kind == "amplitude":
        return _times(st.amplitude, [(rng.integers(0, 2, n),) for _ in range(count)])
    return _times(inner_product, [(random_state(n, rng), st)] * count)


def measure(kind, n, reps, rng):
    """Median time of one ``kind`` operation over ``reps`` fresh random states."""
    times = []
    for _ in range(reps):
        times += _sample(kind, n, _SCALE[kind], rng)
    return Row(kind, n, len(times), float(np.median(times)))


def run(sizes=DEFAULT_SIZES, reps=5, seed=0, kinds=KINDS, progress=None):
    """One row per (size, kind); ``progress`` sees each row once its last repetition is done."""
    rng = np.random.default_rng(seed)
    times = {(n, kind): [] for n in sizes for kind in kinds}
    rows = []
    for rep in range(reps):
        for n in sizes:
            for kind in kinds:
                times[n, kind] += _sample(kind, n, _SCALE[kind], rng)
                if rep == reps - 1:
                    ts = times[n, kind]
                    rows.append(Row(kind, n, len(ts), float(np.median(ts))))
                    if progress is not None:
                        progress(rows[-1])
    return rows


def slopes(rows):
    """Log-log slope of median time against n, per kind (needs two or more sizes)."""
    out = {}
    for kind in dict.fromkeys(r.kind for r in rows):
        pts = [(r.n, r.median_s) for r in rows if r.kind == kind]
        if len({n for n, _ in pts}) < 2:
            continue
        ns, ts = np.array(pts, dtype=float).T
        out[kind] = float(np.polyfit(np.log(ns), np.log(ts), 1)[0])
    return out

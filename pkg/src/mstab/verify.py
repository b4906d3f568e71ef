"""Differential verification of the fast simulator against the dense oracle."""
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
import os

import numpy as np

from . import circuit as circ
from . import oracle
from .errors import InvariantViolation
from .state import StabilizerState, inner_product

DEFAULT_MAX_ORACLE_N = 10
EXPECTATION_SAMPLES = 8


def max_oracle_n():
    """Site limit for oracle-backed commands, from ``MSTAB_MAX_ORACLE_N`` (default 10)."""
    raw = os.environ.get("MSTAB_MAX_ORACLE_N")
    if raw is None:
        return DEFAULT_MAX_ORACLE_N
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MSTAB_MAX_ORACLE_N must be an integer, got {raw!r}") from None
    return min(value, oracle.MAX_ORACLE_N)


@dataclass
class Failure:
    gate_index: int
    gate: str
    reason: str


@dataclass
class TrialResult:
    index: int
    seed: int
    amp_dev: float = 0.0
    exp_dev: float = 0.0
    inner_dev: float = 0.0
    failure: Failure | None = None
    state: StabilizerState | None = field(default=None, repr=False)
    dense: oracle.DenseState | None = field(default=None, repr=False)

    @property
    def max_dev(self):
        return max(self.amp_dev, self.exp_dev, self.inner_dev)


@dataclass
class Report:
    n: int
    depth: int
    tol: float
    trials: list

    @property
    def max_dev(self):
        return max((t.max_dev for t in self.trials), default=0.0)

    @property
    def failures(self):
        return [t for t in self.trials if t.failure is not None or not t.max_dev <= self.tol]

    @property
    def ok(self):
        return not self.failures


def trial_seeds(seed, trials):
    """Independent per-trial seeds derived from one master seed."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]


def _deviation(c, length):
    """Amplitude deviation after the first ``length`` gates.

    ``inf`` if the fast path raises or leaves an invalid tableau behind.
    """
    prefix = c.prefix(length)
    try:
        st = circ.run(prefix)
    except InvariantViolation:
        return float("inf")
    if not st.tab.verify_identities():
        return float("inf")
    return float(np.max(np.abs(st.amplitudes() - circ.run_dense(prefix).amps)))


def bisect_failure(c, tol):
    """Index of the first gate after which the two simulators disagree.

    Assumes the empty prefix agrees and the full circuit does not.
    """
    lo, hi = 0, len(c)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _deviation(c, mid) > tol:
            hi = mid
        else:
            lo = mid
    return hi - 1


def run_trial(index, seed, n, depth, tol, check_every_gate=True):
    c = circ.random_circuit(n, depth, seed)
    result = TrialResult(index, seed)

    def check(i, st):
        if st.b[-1]:
            raise InvariantViolation("b[n-1] became nonzero")
        if check_every_gate:
            st.tab.check()

    try:
        st = circ.run(c, on_gate=check)
    except InvariantViolation as exc:
        gi = bisect_failure(c, tol)
        result.failure = Failure(gi, circ.format_gate(c.gates[gi]), f"invariant violation: {exc}")
        result.amp_dev = float("inf")
        return result
    dense = circ.run_dense(c)
    result.state, result.dense = st, dense
    result.amp_dev = float(np.max(np.abs(st.amplitudes() - dense.amps)))

    rng = np.random.default_rng(seed)
    for _ in range(EXPECTATION_SAMPLES):
        g = circ.random_rotation_string(n, rng)
        dev = abs(complex(st.expectation(g)) - oracle.expectation(dense, g))
        result.exp_dev = max(result.exp_dev, dev)

    if not result.max_dev <= tol and len(c):
        gi = bisect_failure(c, tol)
        result.failure = Failure(gi, circ.format_gate(c.gates[gi]),
                                 f"amplitudes deviate by {result.amp_dev:.3g}")
    return result


def verify(n, depth, trials, seed, tol, workers=1, check_every_gate=True):
    """Run ``trials`` random circuits through both simulators.

    Each trial also compares sampled expectation values, and each adjacent pair
    of trial states is compared through its inner product. Results are ordered
    by trial index regardless of ``workers``.
    """
    limit = max_oracle_n()
    if n > limit:
        raise ValueError(f"n={n} exceeds the oracle limit of {limit} sites "
                         f"(set MSTAB_MAX_ORACLE_N to raise it, at most {oracle.MAX_ORACLE_N})")
    if n < 2:
        raise ValueError("verification needs n >= 2")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    seeds = trial_seeds(seed, trials)
    args = [(i, s, n, depth, tol, check_every_gate) for i, s in enumerate(seeds)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda a: run_trial(*a), args))
    else:
        results = [run_trial(*a) for a in args]

    for prev, cur in zip(results, results[1:]):
        if prev.state is None or cur.state is None:
            continue
        dev = abs(complex(inner_product(prev.state, cur.state)) - oracle.inner(prev.dense, cur.dense))
        cur.inner_dev = max(cur.inner_dev, dev)
    for r in results:
        r.state = r.dense = None
    return Report(n, depth, tol, results)


@contextmanager
def mutation(kind):
    """Temporarily corrupt one gate update rule, to check that verification notices."""
    cls = StabilizerState
    name = {"eta": "apply_eta_p", "w": "apply_w", "braid": "apply_braid_eta"}[kind]
    original = getattr(cls, name)

    if kind == "eta":
        def broken(self, j, sign):
            original(self, j, sign)
            self.tab.omega[j] = (self.tab.omega[j] + 2) % 4
    elif kind == "w":
        def broken(self, j, k, sign):
            original(self, j, k, sign)
            self.tab.F[k] ^= self.tab.E[j] ^ self.tab.E[k]
    else:
        def broken(self, j, k):
            original(self, k, j)

    setattr(cls, name, broken)
    try:
        yield
    finally:
        setattr(cls, name, original)


MUTATIONS = ("eta", "w", "braid")

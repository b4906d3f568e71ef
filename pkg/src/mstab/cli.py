"""``mstab`` command line.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 internal
invariant violation.
"""
import argparse
import json
import sys

from . import bench, bits
from . import circuit as circ
from .errors import CircuitParseError, InvariantViolation, OperatorSyntaxError, StateFormatError
from .exact import format_complex
from .majorana import parse_operator
from .state import StabilizerState, inner_product
from . import verify as ver

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_state(path):
    try:
        return StabilizerState.loads(_read(path))
    except StateFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _value(value, fmt):
    if fmt == "machine":
        z = complex(value)
        return json.dumps({"re": z.real, "im": z.imag, "exact": str(value)})
    return f"{format_complex(value)}  ({value})"


def cmd_run(args):
    try:
        c = circ.parse_circuit(_read(args.circuit))
    except CircuitParseError as exc:
        raise InputError(f"{args.circuit}: {exc}") from None
    text = circ.run(c).dumps()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_amp(args):
    st = _load_state(args.state)
    if len(args.bitstring) != st.n or set(args.bitstring) - set("01"):
        raise InputError(f"bitstring must be {st.n} characters of 0/1, got {args.bitstring!r}")
    print(_value(st.amplitude(bits.bitvec(args.bitstring)), args.format))
    return EXIT_OK


def cmd_overlap(args):
    a, b = _load_state(args.a), _load_state(args.b)
    if a.n != b.n:
        raise InputError(f"site counts differ: {a.n} vs {b.n}")
    print(_value(inner_product(a, b), args.format))
    return EXIT_OK


def cmd_expect(args):
    st = _load_state(args.state)
    try:
        g = parse_operator(args.operator, st.n)
    except OperatorSyntaxError as exc:
        raise InputError(f"operator, column {exc.offset + 1}: {exc}") from None
    print(_value(st.expectation(g), args.format))
    return EXIT_OK


def cmd_verify(args):
    try:
        report = _run_verify(args)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for t in report.trials:
        status = "ok" if t.failure is None and t.max_dev <= report.tol else "FAIL"
        if args.format == "machine":
            row = {"trial": t.index, "seed": t.seed, "amp_dev": t.amp_dev, "exp_dev": t.exp_dev,
                   "inner_dev": t.inner_dev, "status": status}
            if t.failure:
                row.update(gate_index=t.failure.gate_index, gate=t.failure.gate, reason=t.failure.reason)
            print(json.dumps(row))
        elif status != "ok" or args.verbose:
            line = f"trial {t.index} seed {t.seed}: {status} deviation {t.max_dev:.3g}"
            if t.failure:
                line += (f"; first divergent gate #{t.failure.gate_index} "
                         f"({t.failure.gate}): {t.failure.reason}")
            print(line)
    verdict = "PASS" if report.ok else "FAIL"
    summary = (f"{verdict}: n={report.n} depth={report.depth} trials={len(report.trials)} "
               f"max deviation {report.max_dev:.3g} (tol {report.tol:g})")
    print(json.dumps({"summary": verdict, "max_dev": report.max_dev}) if args.format == "machine" else summary)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _run_verify(args):
    run = lambda: ver.verify(args.n, args.depth, args.trials, args.seed, args.tol, workers=args.workers)
    if args.mutate:
        with ver.mutation(args.mutate):
            return run()
    return run()


def cmd_bench(args):
    try:
        sizes = [int(v) for v in args.n.split(",")]
    except ValueError:
        raise InputError(f"--n must be a comma-separated list of integers, got {args.n!r}") from None
    if any(n < 2 for n in sizes) or args.reps < 1:
        raise InputError("sizes must be >= 2 and --reps >= 1")
    kinds = args.kinds.split(",") if args.kinds else bench.KINDS
    if set(kinds) - set(bench.KINDS):
        raise InputError(f"unknown kinds {sorted(set(kinds) - set(bench.KINDS))}")
    machine = args.format == "machine"
    if not machine:
        print(f"{'kind':<10} {'n':>6} {'reps':>6} {'median_s':>12}")

    def show(row):
        if machine:
            print(json.dumps({"kind": row.kind, "n": row.n, "reps": row.reps, "median_s": row.median_s}))
        else:
            print(f"{row.kind:<10} {row.n:>6} {row.reps:>6} {row.median_s:>12.4e}")
        sys.stdout.flush()

    rows = bench.run(sizes, args.reps, args.seed, kinds, progress=show)
    for kind, slope in bench.slopes(rows).items():
        expected = bench.EXPECTED_ORDER[kind]
        if machine:
            print(json.dumps({"kind": kind, "slope": slope, "expected_order": expected}))
        else:
            print(f"slope {kind:<10} {slope:5.2f}   (operation count grows as n^{expected})")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="mstab", description="Majorana stabilizer state simulator")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=("human", "machine"), default="human")
        return sp

    sp = add("run", cmd_run, "run a circuit on the vacuum and dump the state")
    sp.add_argument("circuit")
    sp.add_argument("--out", help="write the state dump here instead of stdout")

    sp = add("amp", cmd_amp, "amplitude <x|psi> of a dumped state")
    sp.add_argument("state")
    sp.add_argument("bitstring")

    sp = add("overlap", cmd_overlap, "inner product <a|b> of two dumped states")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("expect", cmd_expect, "expectation value of an operator expression")
    sp.add_argument("state")
    sp.add_argument("operator", help="e.g. 'i^1 c0 ct1'")

    sp = add("verify", cmd_verify, "differential check against the dense simulator")
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--depth", type=int, default=60)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--mutate", choices=ver.MUTATIONS,
                    help="corrupt one update rule first (harness self-test)")
    sp.add_argument("-v", "--verbose", action="store_true", help="print every trial")

    sp = add("bench", cmd_bench, "scaling benchmark")
    sp.add_argument("--n", default=",".join(map(str, bench.DEFAULT_SIZES)),
                    help="comma-separated site counts")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kinds", help=f"comma-separated subset of {','.join(bench.KINDS)}")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"mstab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"mstab: internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())

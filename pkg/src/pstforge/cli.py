"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import schemefile
from .eigen import eig_sym_tridiag, evolve_excitation
from .errors import PstForgeError
from .exactnum import format_rational, max_bit_size
from .solver import solve
from .spectra import (
    Parity,
    Spectrum,
    gen_linear,
    gen_random_odd_gaps,
    gen_ts,
    parse_levels,
)
from .verifier import full_report

FAMILIES = {
    "linear": "unit-gap ladder: {+/-(2i-1)/2} for even N, {0, +/-1, .., +/-k} for odd N; "
    "couplings J_i^2 = i(N-i)/4 (Christandl-type chain)",
    "ts": "two-parameter even-chain family {+/-(T + 1/2 + i(2S+1))}; closed-form "
    "couplings, gaps 2S+1 inside each half and 2T+4S+3 across zero",
    "random": "random odd gaps drawn from [1, gap_max] between adjacent levels; "
    "seeded and reproducible (Mersenne Twister)",
}


def _worker_cap(n_jobs: int) -> int:
    raw = os.environ.get("PSTFORGE_THREADS", "")
    try:
        cap = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_jobs))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pstforge",
        description="Construct, verify, and simulate perfect-state-transfer "
        "coupling schemes for mirror-symmetric XY chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a spectrum (optionally solve it)")
    gen.add_argument("--family", choices=sorted(FAMILIES), required=True)
    gen.add_argument("--n", type=int, required=True, help="number of chain sites N")
    gen.add_argument("--T", type=int, default=0, help="ts family parameter T")
    gen.add_argument("--S", type=int, default=0, help="ts family parameter S")
    gen.add_argument("--gap-max", type=int, default=99, help="odd gap bound (random family)")
    gen.add_argument("--seed", type=int, default=0, help="seed (random family)")
    gen.add_argument("--solve", action="store_true", help="also solve for the couplings")
    gen.add_argument("--out", help="write a scheme file here")

    slv = sub.add_parser("solve", help="solve a spectrum given explicitly")
    slv.add_argument("--spectrum", required=True, help='positive levels, e.g. "3/2,1/2"')
    slv.add_argument("--parity", choices=["even", "odd"], required=True)
    slv.add_argument("--out", help="write a scheme file here")

    ver = sub.add_parser("verify", help="verify scheme files")
    ver.add_argument("--in", dest="paths", nargs="+", required=True, metavar="FILE")
    ver.add_argument(
        "--tau",
        default="1",
        help="transfer time as an exact multiple of pi (rational string, default 1)",
    )

    sim = sub.add_parser("simulate", help="tabulate site probabilities over time")
    sim.add_argument("--in", dest="path", required=True, metavar="FILE")
    sim.add_argument("--t-max", type=float, required=True)
    sim.add_argument("--steps", type=int, required=True)
    sim.add_argument("--source", type=int, default=1)
    sim.add_argument("--csv", required=True, help="output CSV path")

    sub.add_parser("catalog", help="list built-in spectrum families")
    return parser


def _gen_spectrum(args) -> tuple[Spectrum, dict]:
    if args.family == "linear":
        return gen_linear(args.n), {"generator": "linear", "params": {"n": args.n}}
    if args.family == "ts":
        spec = gen_ts(args.n, args.T, args.S)
        return spec, {"generator": "ts", "params": {"n": args.n, "T": args.T, "S": args.S}}
    parity = Parity.of_n_sites(args.n)
    n_levels = args.n // 2
    spec = gen_random_odd_gaps(n_levels, parity, args.gap_max, args.seed)
    return spec, {
        "generator": "random",
        "params": {"n": args.n, "gap_max": args.gap_max},
        "seed": args.seed,
    }


def _cmd_gen(args) -> int:
    spec, provenance = _gen_spectrum(args)
    print(f"spectrum ({spec.parity.value}, N={spec.n_sites}): {spec}")
    if args.solve:
        t0 = time.perf_counter()
        scheme = solve(spec)
        dt = time.perf_counter() - t0
        data = schemefile.scheme_to_dict(scheme, provenance)
        print(f"solved N={spec.n_sites} in {dt:.3f} s")
        print(f"bit_size_max: {data['bit_size_max']}")
    else:
        data = schemefile.spectrum_to_dict(spec, provenance)
    if args.out:
        schemefile.save_json(args.out, data)
        print(f"wrote {args.out}")
    return 0


def _cmd_solve(args) -> int:
    levels = parse_levels(args.spectrum)
    spec = Spectrum.from_levels(levels, Parity.from_label(args.parity))
    scheme = solve(spec)
    print(f"n_sites: {scheme.n_sites}")
    print("J^2: " + ", ".join(format_rational(c) for c in scheme.couplings_squared))
    print("J:   " + ", ".join(f"{c:.12g}" for c in scheme.couplings_float))
    print(f"bit_size_max: {max_bit_size(scheme.couplings_squared)}")
    if args.out:
        schemefile.save_json(
            args.out, schemefile.scheme_to_dict(scheme, {"generator": "cli-solve"})
        )
        print(f"wrote {args.out}")
    return 0


def _verify_one(path: str, tau_over_pi) -> tuple[str, object]:
    scheme = schemefile.scheme_from_dict(schemefile.load_json(path))
    report = full_report(scheme, scheme.source_spectrum, tau_over_pi)
    return path, report


def _cmd_verify(args) -> int:
    from .exactnum import parse_rational

    tau = parse_rational(args.tau)
    paths = args.paths
    with ThreadPoolExecutor(max_workers=_worker_cap(len(paths))) as pool:
        results = list(pool.map(lambda p: _verify_one(p, tau), paths))
    all_ok = True
    for path, report in results:
        ok = report.all_passed()
        all_ok &= ok
        print(f"== {path}")
        print(f"  exact_spectrum_match: {report.exact_spectrum_match}")
        if report.coefficient_mismatches:
            for d, got, want in report.coefficient_mismatches:
                print(
                    f"    degree {d}: got {format_rational(got)}, "
                    f"expected {format_rational(want)}"
                )
        print(f"  pst_valid:            {report.pst_valid}")
        print(f"  fidelity_at_pi:       {report.fidelity_at_pi:.15f}")
        print(f"  fidelity_phase:       {report.fidelity_phase:+.12f} rad")
        print(f"  mirror_deviation:     {report.mirror_deviation:.3e}")
        print(f"  verdict:              {'PASS' if ok else 'FAIL'}")
    return 0 if all_ok else 1


def _cmd_simulate(args) -> int:
    scheme = schemefile.scheme_from_dict(schemefile.load_json(args.path))
    n = scheme.n_sites
    if args.steps < 1:
        raise PstForgeError("--steps must be >= 1")
    eig = eig_sym_tridiag(scheme.couplings_float, n)
    times = np.linspace(0.0, args.t_max, args.steps + 1)
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"p{m}" for m in range(1, n + 1)])
        for t in times:
            amps = evolve_excitation(eig, args.source, float(t))
            writer.writerow([repr(float(t))] + [repr(float(p)) for p in np.abs(amps) ** 2])
    print(f"wrote {args.csv} ({args.steps + 1} rows)")
    return 0


def _cmd_catalog(args) -> int:
    for name in sorted(FAMILIES):
        print(f"{name:8s} {FAMILIES[name]}")
    return 0


_HANDLERS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except PstForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

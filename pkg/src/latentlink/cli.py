"""Command-line frontend: phase scans, capacity evaluation, and the
reproduction table of all headline numbers.

Exit codes: 0 success, 1 reproduction failure, 2 invalid arguments or
malformed channel spec, 3 I/O failure, 4 method inapplicable to the spec.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from ._version import __version__
from .capacity import (
    UPPER_BOUND,
    CapacityResult,
    analytic_upper_bound,
    oracle_holevo,
    orthogonal_lower_bound,
    reduced_capacity,
)
from .channels import effective_single, interference_operator, load_spec
from .errors import LatentLinkError, NotIndependentError, OutOfRangeError
from .experiments import (
    DEFAULT_SEED,
    dephasing_curve,
    fnorm_scatter,
    scan_network_correlated,
    scan_network_uncorrelated,
    scan_single_correlated,
    scan_single_uncorrelated,
    switch_capacity,
)
from .linalg import KET_PLUS, dagger, projector, singular_values
from .reproduce import CRITERION_NAMES, run_all

GRID_CHOICES = ("pi/4", "pi/8", "pi/16", "pi/32")

_PHASE_RE = re.compile(r"^(-)?(\d+(?:\.\d+)?)?\*?pi(?:/(-?\d+(?:\.\d+)?))?$")


def parse_phase(text: str) -> float:
    """Parse 'k*pi/n' (k, n optional) or raw radians."""
    t = text.strip().lower().replace(" ", "")
    if "pi" in t:
        m = _PHASE_RE.match(t)
        if m is None:
            raise argparse.ArgumentTypeError(f"cannot parse phase {text!r}; use k*pi/n or radians")
        k = float(m.group(2)) if m.group(2) else 1.0
        if m.group(1):
            k = -k
        n = float(m.group(3)) if m.group(3) else 1.0
        if n == 0:
            raise argparse.ArgumentTypeError("phase denominator must be nonzero")
        return k * math.pi / n
    try:
        return float(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse phase {text!r}") from exc


def parse_grid(text: str) -> float:
    t = text.strip().lower().replace(" ", "")
    if t not in GRID_CHOICES:
        raise argparse.ArgumentTypeError(f"grid must be one of {', '.join(GRID_CHOICES)}")
    return parse_phase(t)


def parse_permutation(text: str, size: int = 4) -> tuple[int, ...]:
    """Comma-separated transposition pairs like '0-1,2-3'; empty means identity."""
    sigma = list(range(size))
    t = text.strip()
    if not t:
        return tuple(sigma)
    for pair in t.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", pair)
        if m is None:
            raise argparse.ArgumentTypeError(f"bad transposition {pair!r}; use i-j")
        i, j = int(m.group(1)), int(m.group(2))
        if not (0 <= i < size and 0 <= j < size):
            raise argparse.ArgumentTypeError(f"transposition {pair!r} out of range 0..{size - 1}")
        sigma[i], sigma[j] = sigma[j], sigma[i]
    return tuple(sigma)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latentlink",
        description="Effective channels and classical capacities of time-correlated noise "
        "traversed at a superposition of times or paths.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="run a phase-grid scan and write CSV + meta JSON")
    scan.add_argument(
        "--scenario",
        required=True,
        choices=[
            "single-uncorrelated",
            "single-correlated",
            "network-uncorrelated",
            "network-correlated",
            "dephasing",
            "fnorm-scatter",
        ],
    )
    scan.add_argument("--grid", type=parse_grid, default=math.pi / 8, help="grid step: pi/4, pi/8, pi/16 or pi/32")
    scan.add_argument("--fine", action="store_true", help="shorthand for --grid pi/32 (slow)")
    scan.add_argument("--perm", type=parse_permutation, default=None, help="transposition pairs, e.g. 0-1,2-3")
    scan.add_argument(
        "--realization",
        choices=["random_unitary", "arbitrary"],
        default="random_unitary",
        help="realization class for network-uncorrelated",
    )
    scan.add_argument("--s-points", type=int, default=11, help="number of s samples for dephasing")
    scan.add_argument("--seed", type=int, default=DEFAULT_SEED)
    scan.add_argument("--output-dir", default=".")
    scan.add_argument("--workers", type=int, default=None, help="grid workers (default: LATENTLINK_THREADS)")
    scan.add_argument("--no-refine", action="store_true", help="skip refinement around the best grid point")

    capacity = sub.add_parser("capacity", help="evaluate a capacity figure for a channel-spec JSON file")
    capacity.add_argument("spec", help="path to a channel spec JSON document")
    capacity.add_argument("--method", required=True, choices=["reduced", "orthogonal", "oracle", "bound"])
    capacity.add_argument("--seed", type=int, default=DEFAULT_SEED)
    capacity.add_argument("--restarts", type=int, default=64)

    reproduce = sub.add_parser("reproduce", help="run the acceptance table of headline numbers")
    reproduce.add_argument("--grid", type=parse_grid, default=math.pi / 8)
    reproduce.add_argument("--fine", action="store_true", help="shorthand for --grid pi/32 (slow)")
    reproduce.add_argument("--only", choices=CRITERION_NAMES, default=None)
    reproduce.add_argument("--seed", type=int, default=DEFAULT_SEED)
    reproduce.add_argument("--workers", type=int, default=None)

    return parser


def _run_scan(args) -> int:
    grid = math.pi / 32 if args.fine else args.grid
    refine = not args.no_refine
    scenario = args.scenario
    if scenario == "single-uncorrelated":
        result = scan_single_uncorrelated(grid, refine=refine, workers=args.workers)
    elif scenario == "single-correlated":
        sigma = args.perm if args.perm is not None else (1, 0, 3, 2)
        result = scan_single_correlated(grid, sigma=sigma, refine=refine, workers=args.workers)
    elif scenario == "network-uncorrelated":
        result = scan_network_uncorrelated(grid, realization=args.realization, refine=refine, workers=args.workers)
    elif scenario == "network-correlated":
        if args.perm is not None and tuple(args.perm) != (1, 0, 3, 2):
            print("network-correlated supports only the pair-swap permutation 0-1,2-3", file=sys.stderr)
            return 2
        result = scan_network_correlated(grid, refine=refine, workers=args.workers)
    elif scenario == "dephasing":
        if args.s_points < 2:
            print("--s-points must be at least 2", file=sys.stderr)
            return 2
        result = dephasing_curve(np.linspace(0.0, 0.5, args.s_points), refine=refine, workers=args.workers)
    else:
        result = fnorm_scatter(grid, refine=refine, workers=args.workers)

    try:
        os.makedirs(args.output_dir, exist_ok=True)
        csv_path, meta_path = result.save(args.output_dir, scenario)
    except OSError as exc:
        print(f"failed to write scan outputs: {exc}", file=sys.stderr)
        return 3
    best = result.meta.get("max_value_bits", result.max_value())
    print(f"max {best:.6f} bits")
    argmax = result.meta.get("argmax_phases") or result.meta.get("argmax") or result.argmax_coords()
    print(f"argmax {json.dumps(argmax, default=float)}")
    print(f"wrote {csv_path} and {meta_path}")
    return 0


def _run_capacity(args) -> int:
    try:
        spec = load_spec(args.spec)
    except OSError as exc:
        print(f"cannot read {args.spec}: {exc}", file=sys.stderr)
        return 3
    except LatentLinkError as exc:
        print(f"malformed channel spec: {exc}", file=sys.stderr)
        return 2

    method = args.method
    try:
        if method in ("reduced", "bound"):
            if not spec.is_independent:
                print(f"method {method!r} needs an uncorrelated (independent) spec", file=sys.stderr)
                return 4
            if not spec.is_locally_uniform or not _orthogonal_family(spec):
                print(
                    f"method {method!r} needs a completely depolarising marginal "
                    "(uniform joint over an orthogonal unitary basis)",
                    file=sys.stderr,
                )
                return 4
            f = interference_operator(spec)
            if method == "reduced":
                sv = singular_values(f)
                result = reduced_capacity(float(sv[0]), float(sv[1]))
            else:
                norm = float(singular_values(f)[0])
                value = analytic_upper_bound(norm, spec.dim)
                result = CapacityResult(value_bits=value, argmax={"f_norm": norm}, kind=UPPER_BOUND)
        else:
            if spec.dim != 2:
                print(f"method {method!r} supports qubit messages only", file=sys.stderr)
                return 4
            ch = effective_single(spec, projector(KET_PLUS))
            if method == "orthogonal":
                result = orthogonal_lower_bound(ch)
            else:
                result = oracle_holevo(ch, restarts=args.restarts, seed=args.seed)
    except (NotIndependentError, OutOfRangeError) as exc:
        print(f"method {method!r} is not applicable: {exc}", file=sys.stderr)
        return 4

    print(json.dumps({"value_bits": result.value_bits, "kind": result.kind, "argmax": result.argmax}, default=float))
    return 0


def _orthogonal_family(spec) -> bool:
    d = spec.dim
    mats = [u.matrix for u in spec.unitaries]
    if len(mats) != d * d:
        return False
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            inner = np.trace(dagger(a) @ b)
            expected = d if i == j else 0.0
            if abs(inner - expected) > 1e-9:
                return False
    return True


def _run_reproduce(args) -> int:
    grid = math.pi / 32 if args.fine else args.grid
    results = run_all(grid_step=grid, seed=args.seed, only=args.only, workers=args.workers)
    name_w = max(len("criterion"), *(len(r.name) for r in results)) + 2
    header = f"{'criterion':<{name_w}}{'target':<28}{'achieved':>14}{'tolerance':>12}  status"
    print(header)
    print("-" * len(header))
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        print(f"{r.name:<{name_w}}{r.target:<28}{r.achieved:>14.6f}{r.tolerance:>12.1e}  {status}")
    print("-" * len(header))
    print(f"{len(results) - failures}/{len(results)} criteria passed")
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "scan":
        return _run_scan(args)
    if args.command == "capacity":
        return _run_capacity(args)
    return _run_reproduce(args)


if __name__ == "__main__":
    sys.exit(main())

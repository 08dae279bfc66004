"""Command-line front end.

Commands:
  eval               optimize a convex-roof measure for a stored density matrix
  example isotropic  entanglement of formation of an isotropic state vs theory
  example ghzw       three-tangle of a GHZ/W mixture vs theory
  rand-rho           write a random density matrix in cmat v1 format
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .cmatio import format_cmat, load_cmat, save_cmat
from .convexroof import ps_decomposition
from .linalg import density_eig, rand_density_matrix
from .measures import get_measure
from .optimize import (
    STATUS_MAX_ITER,
    OptimizationResult,
    TerminationOptions,
    convex_roof_minimize,
)
from .references import eof_isotropic, ghzw_mixture, isotropic_state, tangle_ghzw

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MAX_ITER = 2


def _add_common_opts(p: argparse.ArgumentParser, default_restarts: int = 5) -> None:
    p.add_argument("--algo", choices=("cg", "bfgs"), default="cg", help="optimization algorithm")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, help="decomposition cardinality (default rank + 4)")
    group.add_argument("--n", type=int, help="cardinality offset: k = rank + n")
    p.add_argument("--rank", type=int, help="truncate the density matrix to this rank")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--tol-fun", type=float, default=1e-12)
    p.add_argument("--tol-g", type=float, default=1e-10)
    p.add_argument("--tol-x", type=float, default=1e-10)
    p.add_argument("--restarts", type=int, default=default_restarts)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write the per-iteration trace CSV to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convroof",
        description="Convex-roof entanglement measures of mixed quantum states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="optimize a measure for a stored density matrix")
    p_eval.add_argument("--rho", required=True, help="density matrix in cmat v1 format")
    p_eval.add_argument("--measure", required=True, help="measure name (entropy, tangle, meyer-wallach)")
    p_eval.add_argument(
        "--dims",
        help="bipartition 'd1,d2' for the entropy measure (default: square split)",
    )
    p_eval.add_argument("--out-decomposition", help="write the optimal decomposition here")
    _add_common_opts(p_eval)

    p_ex = sub.add_parser("example", help="reference benchmarks with analytic values")
    ex_sub = p_ex.add_subparsers(dest="example", required=True)

    p_iso = ex_sub.add_parser("isotropic", help="entanglement of formation of an isotropic state")
    p_iso.add_argument("--d", type=int, default=5, help="subsystem dimension")
    p_iso.add_argument("--f", type=float, default=0.3, help="mixing parameter in [0, 1]")
    _add_common_opts(p_iso, default_restarts=5)

    p_ghzw = ex_sub.add_parser("ghzw", help="three-tangle of a GHZ/W mixture")
    p_ghzw.add_argument("--p", type=float, default=0.7, help="GHZ weight in [0, 1]")
    _add_common_opts(p_ghzw, default_restarts=5)
    p_ghzw.set_defaults(algo="bfgs")

    p_rand = sub.add_parser("rand-rho", help="write a random density matrix (cmat v1)")
    p_rand.add_argument("--dim", type=int, required=True)
    p_rand.add_argument("--rank", type=int)
    p_rand.add_argument("--seed", type=int, default=0)
    p_rand.add_argument("--out", required=True)
    return parser


def _options_from(args) -> TerminationOptions:
    return TerminationOptions(
        max_iter=args.max_iter,
        tol_fun=args.tol_fun,
        tol_g=args.tol_g,
        tol_x=args.tol_x,
    )


def _resolve_k(args, rank: int) -> int:
    if args.k is not None:
        return args.k
    if args.n is not None:
        return rank + args.n
    return rank + 4


def _write_trace(path: str, fvals, reference: float | None = None) -> None:
    with open(path, "w", encoding="ascii") as fh:
        if reference is None:
            fh.write("iter,fval\n")
            for i, v in enumerate(fvals):
                fh.write(f"{i},{v:.16e}\n")
        else:
            fh.write("iter,fval,error\n")
            for i, v in enumerate(fvals):
                fh.write(f"{i},{v:.16e},{abs(v - reference):.16e}\n")


def _report(res: OptimizationResult, label: str = "value") -> None:
    print(f"{label}: {res.value:.15g}")
    print(f"status: {res.status}")
    print(f"iterations: {res.iterations}")


def _exit_code(res: OptimizationResult) -> int:
    return EXIT_MAX_ITER if res.status == STATUS_MAX_ITER else EXIT_OK


def _cmd_eval(args) -> int:
    rho = load_cmat(args.rho)
    dims = None
    if args.dims:
        dims = tuple(int(x) for x in args.dims.split(","))
    measure = get_measure(args.measure, rho.shape[0], dims=dims)
    res = convex_roof_minimize(
        rho,
        measure,
        algorithm=args.algo,
        k=_resolve_k(args, density_eig(rho, max_rank=args.rank).rank),
        rank=args.rank,
        restarts=args.restarts,
        seed=args.seed,
        options=_options_from(args),
    )
    _report(res)
    if args.trace:
        _write_trace(args.trace, res.fvals)
    if args.out_decomposition:
        spectral = density_eig(rho, max_rank=args.rank)
        point = res.point
        if args.algo == "bfgs":
            from .stiefel import build_unitary

            k = _resolve_k(args, spectral.rank)
            point = build_unitary(res.point, k, spectral.rank)
        p, states = ps_decomposition(point, spectral)
        with open(args.out_decomposition, "w", encoding="ascii") as fh:
            fh.write(format_cmat(states))
            fh.write(" ".join(f"{x:.16e}" for x in p) + "\n")
    return _exit_code(res)


def _cmd_example_isotropic(args) -> int:
    if args.d < 2 or not 0.0 <= args.f <= 1.0:
        raise ValueError("need d >= 2 and f in [0, 1]")
    rho = isotropic_state(args.d, args.f)
    measure = get_measure("entropy", args.d * args.d, dims=(args.d, args.d))
    rank = density_eig(rho, max_rank=args.rank).rank
    k = args.k if args.k is not None else (rank + args.n if args.n is not None else 2 * rank)
    res = convex_roof_minimize(
        rho,
        measure,
        algorithm=args.algo,
        k=k,
        rank=args.rank,
        restarts=args.restarts,
        seed=args.seed,
        options=_options_from(args),
    )
    exact = eof_isotropic(args.f, args.d)
    _report(res, label="numeric")
    print(f"analytic: {exact:.15g}")
    print(f"abs-error: {abs(res.value - exact):.3e}")
    if args.trace:
        _write_trace(args.trace, res.fvals, reference=exact)
    return _exit_code(res)


def _cmd_example_ghzw(args) -> int:
    if not 0.0 <= args.p <= 1.0:
        raise ValueError("need p in [0, 1]")
    rho = ghzw_mixture(args.p)
    measure = get_measure("tangle", 8)
    res = convex_roof_minimize(
        rho,
        measure,
        algorithm=args.algo,
        k=_resolve_k(args, density_eig(rho, max_rank=args.rank).rank),
        rank=args.rank,
        restarts=args.restarts,
        seed=args.seed,
        options=_options_from(args),
    )
    exact = tangle_ghzw(args.p)
    _report(res, label="numeric")
    print(f"analytic: {exact:.15g}")
    print(f"abs-error: {abs(res.value - exact):.3e}")
    if args.trace:
        _write_trace(args.trace, res.fvals, reference=exact)
    return _exit_code(res)


def _cmd_rand_rho(args) -> int:
    rho = rand_density_matrix(args.dim, rank=args.rank, rng=np.random.default_rng(args.seed))
    save_cmat(args.out, rho)
    print(f"wrote {args.dim}x{args.dim} density matrix to {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "example":
            if args.example == "isotropic":
                return _cmd_example_isotropic(args)
            return _cmd_example_ghzw(args)
        return _cmd_rand_rho(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""``transheat`` command line interface.

Exit codes: 0 success, 2 parse/input error, 3 compatibility violation,
4 solver failure.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import os
import sys
from pathlib import Path

import numpy as np

from . import problem_file
from .cauchy import cauchy_solution
from .collocation import evaluate_on_mesh, mesh_errors, solve_ibvp, write_mesh_csv
from .estimator import sample_potential
from .exceptions import CompatibilityError, DomainError, ParseError, SolverFailure
from .expr import to_function
from .fdm import crank_nicolson
from .formal_powers import formal_powers
from .gridfn import chebyshev_grid
from .spps import nonvanishing_solution

EXIT_OK, EXIT_PARSE, EXIT_COMPAT, EXIT_SOLVER = 0, 2, 3, 4


def sci(v):
    """Three significant digits in scientific notation."""
    return "nan" if v is None else f"{v:.2e}"


def _thread_limit():
    n = os.environ.get("TRANSHEAT_THREADS")
    if not n:
        return contextlib.nullcontext()
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=max(1, int(n)))


def _emit(lines, out_dir, name):
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    (out_dir / name).write_text(text)


def _solve_kwargs(pf):
    s = pf.solver
    return dict(rcond=s.rcond, grid_size=s.m, alpha=s.alpha, spacing=s.spacing)


def cmd_solve(pf, out_dir):
    s = pf.solver
    sol = solve_ibvp(pf.ibvp(), s.N, M=s.M, **_solve_kwargs(pf))
    mesh = evaluate_on_mesh(sol, s.nx, s.nt)
    mesh.to_csv(out_dir / "mesh.csv")
    _emit([
        f"N = {sol.N}",
        f"M = {sol.M}",
        f"max_abs_error = {sci(mesh.max_abs_error)}",
        f"max_rel_error = {sci(mesh.max_rel_error)}",
        f"condition_number = {sci(sol.condition_number)}",
        f"boundary_residual = {sci(sol.boundary_residual_max)}",
    ], out_dir, "summary.txt")


def table_rows(pf, N_values):
    """One ``(N, max_abs, max_rel, cond)`` tuple per order, M = N + 1 unless set."""
    problem = pf.ibvp()
    s = pf.solver
    rows = []
    for N in N_values:
        sol = solve_ibvp(problem, N, M=s.M if s.M and s.M >= N + 1 else None, **_solve_kwargs(pf))
        mesh = evaluate_on_mesh(sol, s.nx, s.nt)
        rows.append((N, mesh.max_abs_error, mesh.max_rel_error, sol.condition_number))
    return rows


def cmd_table(pf, out_dir, N_values):
    rows = table_rows(pf, N_values or pf.solver.N_list)
    with open(out_dir / "table.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["N", "max_abs", "max_rel", "cond"])
        for N, ea, er, c in rows:
            w.writerow([N, sci(ea), sci(er), sci(c)])
    sys.stdout.write(f"{'N':>4} {'max_abs':>10} {'max_rel':>10} {'cond':>11}\n")
    for N, ea, er, c in rows:
        sys.stdout.write(f"{N:>4} {sci(ea):>10} {sci(er):>10} {sci(c):>11}\n")


def cmd_cauchy(pf, out_dir):
    s = pf.solver
    grid = chebyshev_grid(pf.b, s.m)
    ps = nonvanishing_solution(sample_potential(to_function(pf.q, "x"), grid),
                               strategy=s.alpha)
    basis = formal_powers(ps, 2 * pf.J + 1)
    x = np.linspace(-pf.r, pf.r, s.nx + 2)[1:-1]
    t = np.linspace(-pf.tau, pf.tau, s.nt + 2)[1:-1]
    xx, tt = np.meshgrid(x, t)
    res = cauchy_solution(pf.cauchy(), basis, xx, tt)
    lines = [f"J = {pf.J}", f"r = {pf.r}", f"max_tail = {sci(float(np.max(res.tail)))}"]
    if pf.exact is not None:
        ea, er = mesh_errors(x, t, res.value, to_function(pf.exact, "x", "t"))
        write_mesh_csv(out_dir / "cauchy.csv", x, t, res.value, ea, er)
        lines += [f"max_abs_error = {sci(float(ea.max()))}", f"max_rel_error = {sci(float(er.max()))}"]
    else:
        write_mesh_csv(out_dir / "cauchy.csv", x, t, res.value)
    _emit(lines, out_dir, "summary.txt")


def cmd_oracle(pf, out_dir):
    s = pf.solver
    problem = pf.ibvp()
    fd = crank_nicolson(problem, s.oracle_nx, s.oracle_nt)
    fd.to_csv(out_dir / "oracle.csv", exact=problem.exact)
    sol = solve_ibvp(problem, s.N, M=s.M, **_solve_kwargs(pf))
    gap = float(np.max(np.abs(sol.estimator.predict_grid(fd.x, fd.t).T - fd.values)))
    lines = [
        f"nx = {fd.nx}",
        f"nt = {fd.nt}",
        f"N = {s.N}",
        f"max_collocation_vs_fdm = {sci(gap)}",
    ]
    if problem.exact is not None:
        lines.append(f"fdm_max_abs_error = {sci(fd.max_error(problem.exact))}")
    _emit(lines, out_dir, "summary.txt")


def build_parser():
    parser = argparse.ArgumentParser(prog="transheat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("solve", "solve an initial-boundary value problem and write the evaluation mesh"),
        ("table", "sweep N and write an error/conditioning table"),
        ("cauchy", "evaluate the Cauchy-problem series on a mesh"),
        ("oracle", "cross-check collocation against Crank-Nicolson"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="problem file")
        p.add_argument("--out", help="output directory (default: [output] dir)")
        p.add_argument("--m", type=int, help="Chebyshev grid size")
        p.add_argument("--rcond", type=float, help="relative SVD cutoff")
        if name == "table":
            p.add_argument("--N", dest="N_list", type=problem_file.parse_int_list,
                           help="comma-separated orders, e.g. 5,10,15,20,26")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        pf = problem_file.load(args.file).with_solver(m=args.m, rcond=args.rcond)
        expected_kind = "cauchy" if args.command == "cauchy" else "ibvp"
        if pf.kind != expected_kind:
            raise ParseError(f"'{args.command}' needs kind = {expected_kind}, file has {pf.kind}")
        out_dir = Path(args.out or pf.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        with _thread_limit():
            if args.command == "solve":
                cmd_solve(pf, out_dir)
            elif args.command == "table":
                cmd_table(pf, out_dir, getattr(args, "N_list", None))
            elif args.command == "cauchy":
                cmd_cauchy(pf, out_dir)
            else:
                cmd_oracle(pf, out_dir)
    except (ParseError, DomainError) as exc:
        print(f"transheat: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CompatibilityError as exc:
        print(f"transheat: incompatible data: {exc}", file=sys.stderr)
        return EXIT_COMPAT
    except SolverFailure as exc:
        print(f"transheat: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

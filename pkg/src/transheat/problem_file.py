"""Reading problem descriptions from ``key = value`` files.

Example::

    [problem]
    kind = ibvp
    b = 1
    tau = 1
    q = x^2
    phi = exp(-0.5*x^2)
    psi1 = exp(-0.5 - t)
    psi2 = exp(-0.5 - t)
    exact = exp(-0.5*x^2 - t)

    [solver]
    N = 26

    [output]
    dir = out
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from typing import Optional

from .cauchy import CauchyProblem
from .collocation import SPACINGS, IBVProblem
from .estimator import DEFAULT_RCOND
from .exceptions import ParseError
from .expr import DerivativeProvider, Expr, parse_expr, to_function, variables
from .gridfn import DEFAULT_NODES


@dataclass(frozen=True)
class SolverParams:
    N: int = 20
    M: Optional[int] = None
    rcond: Optional[float] = DEFAULT_RCOND
    m: int = DEFAULT_NODES
    alpha: object = "auto"
    spacing: str = "segments"
    nx: int = 200
    nt: int = 100
    oracle_nx: int = 400
    oracle_nt: int = 400
    N_list: tuple = (5, 10, 15, 20, 26)


@dataclass(frozen=True)
class ProblemFile:
    kind: str
    b: float
    tau: float
    q: Expr
    phi: Optional[Expr] = None
    psi1: Optional[Expr] = None
    psi2: Optional[Expr] = None
    exact: Optional[Expr] = None
    F: Optional[Expr] = None
    G: Optional[Expr] = None
    J: int = 15
    r: Optional[float] = None
    solver: SolverParams = field(default_factory=SolverParams)
    out_dir: str = "."

    def ibvp(self):
        """Build the :class:`IBVProblem`; raises ``CompatibilityError`` on corner mismatch."""
        return IBVProblem(
            b=self.b,
            tau=self.tau,
            q=to_function(self.q, "x"),
            phi=to_function(self.phi, "x"),
            psi1=to_function(self.psi1, "t"),
            psi2=to_function(self.psi2, "t"),
            exact=None if self.exact is None else to_function(self.exact, "x", "t"),
        )

    def cauchy(self):
        return CauchyProblem(F_derivs=DerivativeProvider(self.F, "t"),
                             G_derivs=DerivativeProvider(self.G, "t"), tau=self.tau, J=self.J)

    def with_solver(self, **changes):
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, solver=replace(self.solver, **changes))


def _expr(section, key, allowed, required=True):
    text = section.get(key)
    if text is None:
        if required:
            raise ParseError(f"missing key {key!r} in [{section.name}]")
        return None
    try:
        e = parse_expr(text)
    except ParseError as exc:
        raise ParseError(f"in {key!r}: {exc.message}", exc.offset, exc.expected) from None
    extra = variables(e) - set(allowed)
    if extra:
        raise ParseError(f"{key!r} may only depend on {', '.join(allowed) or 'nothing'}, "
                         f"found {', '.join(sorted(extra))}")
    return e


def _number(section, key, cast, default=None):
    text = section.get(key)
    if text is None:
        if default is None:
            raise ParseError(f"missing key {key!r} in [{section.name}]")
        return default
    try:
        return cast(text)
    except ValueError:
        raise ParseError(f"{key!r} is not a valid {cast.__name__}: {text!r}") from None


def parse_alpha(text):
    text = text.strip()
    if text in ("auto", "real-first"):
        return text
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise ParseError(f"alpha must be 'auto', 'real-first' or a complex number, got {text!r}") from None


def _spacing(text):
    text = text.strip()
    if text not in SPACINGS:
        raise ParseError(f"spacing must be one of {', '.join(SPACINGS)}, got {text!r}")
    return text


def parse_int_list(text):
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise ParseError(f"expected a comma-separated list of integers, got {text!r}") from None


def loads(text):
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"malformed problem file: {exc}") from None
    if not cp.has_section("problem"):
        raise ParseError("problem file needs a [problem] section")
    p = cp["problem"]
    s = cp["solver"] if cp.has_section("solver") else cp["DEFAULT"]
    o = cp["output"] if cp.has_section("output") else cp["DEFAULT"]

    kind = p.get("kind", "ibvp").strip()
    if kind not in ("ibvp", "cauchy"):
        raise ParseError(f"kind must be 'ibvp' or 'cauchy', got {kind!r}")

    N = _number(s, "N", int, 20)
    solver = SolverParams(
        N=N,
        M=_number(s, "M", int, N + 1) if "M" in s else None,
        rcond=_number(s, "rcond", float) if "rcond" in s else DEFAULT_RCOND,
        m=_number(s, "m", int, DEFAULT_NODES),
        alpha=parse_alpha(s.get("alpha", "auto")),
        spacing=_spacing(s.get("spacing", "segments")),
        nx=_number(s, "nx", int, 200),
        nt=_number(s, "nt", int, 100),
        oracle_nx=_number(s, "oracle_nx", int, 400),
        oracle_nt=_number(s, "oracle_nt", int, 400),
        N_list=parse_int_list(s.get("N_list", "5,10,15,20,26")),
    )
    common = dict(
        kind=kind,
        b=_number(p, "b", float),
        tau=_number(p, "tau", float),
        q=_expr(p, "q", ("x",), required=False) or parse_expr("0"),
        solver=solver,
        out_dir=o.get("dir", "."),
    )
    if kind == "ibvp":
        return ProblemFile(
            **common,
            phi=_expr(p, "phi", ("x",)),
            psi1=_expr(p, "psi1", ("t",)),
            psi2=_expr(p, "psi2", ("t",)),
            exact=_expr(p, "exact", ("x", "t"), required=False),
        )
    return ProblemFile(
        **common,
        F=_expr(p, "F", ("t",)),
        G=_expr(p, "G", ("t",)),
        J=_number(p, "J", int, 15),
        r=_number(p, "r", float, 0.8 * common["b"]),
        exact=_expr(p, "exact", ("x", "t"), required=False),
    )


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read problem file: {exc}") from None
    return loads(text)

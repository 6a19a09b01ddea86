"""Scalar function representations.

A uniform evaluable-function contract (``ScalarFunction``), discrete
resolvent-atom integral representations for strongly operator convex and
operator convex functions, the shifted-reciprocal constructor, and a named
catalog. Measures are finite atom lists, so the representation integrals are
exact finite sums with exact termwise derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .errors import ConfigError, ConstructionError, DomainError, InputError
from .hermitian import Interval, REAL_LINE


def _fmt(x: float) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class ScalarFunction:
    """Evaluable real function on an interval with optional derivatives.

    ``eval`` is raw (no domain check); callers that care about the domain
    validate membership themselves (matrix functional calculus does). The
    label doubles as the canonical function-spec string where one exists.
    """

    domain: Interval
    eval: Callable[[float], float]
    deriv1: Optional[Callable[[float], float]] = None
    deriv2: Optional[Callable[[float], float]] = None
    label: str = ""

    def __call__(self, x: float) -> float:
        return self.eval(x)

    @property
    def smooth(self) -> bool:
        return self.deriv1 is not None and self.deriv2 is not None


def restrict(f: ScalarFunction, interval: Interval) -> ScalarFunction:
    """Restrict f to a subinterval of its domain."""
    if not f.domain.contains_interval(interval):
        raise ConfigError(
            f"interval {interval} is not contained in the domain {f.domain} of {f.label or 'f'}"
        )
    return replace(f, domain=interval)


def _check_atoms(atoms, side: str, interval: Interval):
    out = []
    for atom in atoms:
        r, w = float(atom[0]), float(atom[1])
        if not (math.isfinite(r) and math.isfinite(w)):
            raise InputError(f"non-finite atom ({r}, {w})")
        if w <= 0:
            raise InputError(f"atom weight must be positive, got {w}")
        if side == "below" and not r < interval.lo:
            raise InputError(f"below-atom location {r} not strictly below {interval}")
        if side == "above" and not r > interval.hi:
            raise InputError(f"above-atom location {r} not strictly above {interval}")
        out.append((r, w))
    # sum w / (1 + |r|) is automatically finite for finite lists; asserted anyway
    assert math.isfinite(sum(w / (1.0 + abs(r)) for r, w in out))
    return tuple(out)


@dataclass(frozen=True)
class RepMeasure:
    """Discrete measure pair plus constant realizing the strongly operator
    convex representation f(x) = c + sum w/(x-r) [r below] + sum w/(r-x) [r above]."""

    c: float
    atoms_below: tuple
    atoms_above: tuple
    interval: Interval

    def __post_init__(self):
        if self.c < 0:
            raise InputError(f"constant term must be >= 0, got {self.c}")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "atoms_below", _check_atoms(self.atoms_below, "below", self.interval))
        object.__setattr__(self, "atoms_above", _check_atoms(self.atoms_above, "above", self.interval))

    def label(self) -> str:
        fmt_atoms = lambda atoms: ", ".join(f"({_fmt(r)}, {_fmt(w)})" for r, w in atoms)
        return (
            f"rep{{c={_fmt(self.c)}; below=[{fmt_atoms(self.atoms_below)}]; "
            f"above=[{fmt_atoms(self.atoms_above)}]}}"
        )


def eval_soc_rep(rep: RepMeasure, x: float) -> float:
    """Evaluate the strongly-operator-convex representation; every summand is positive."""
    if not rep.interval.contains(x):
        raise DomainError(f"point {x} outside representation interval {rep.interval}")
    total = rep.c
    for r, w in rep.atoms_below:
        total += w / (x - r)
    for r, w in rep.atoms_above:
        total += w / (r - x)
    return total


def _soc_rep_deriv1(rep: RepMeasure, x: float) -> float:
    total = 0.0
    for r, w in rep.atoms_below:
        total -= w / (x - r) ** 2
    for r, w in rep.atoms_above:
        total += w / (r - x) ** 2
    return total


def _soc_rep_deriv2(rep: RepMeasure, x: float) -> float:
    total = 0.0
    for r, w in rep.atoms_below:
        total += 2.0 * w / (x - r) ** 3
    for r, w in rep.atoms_above:
        total += 2.0 * w / (r - x) ** 3
    return total


@dataclass(frozen=True)
class OpConvexRep:
    """Operator convex representation: quadratic part plus atoms integrated
    against the resolvent minus its first-degree Taylor polynomial at x0."""

    a: float
    b: float
    c: float
    x0: float
    atoms_below: tuple
    atoms_above: tuple
    interval: Interval

    def __post_init__(self):
        if self.a < 0:
            raise InputError(f"quadratic coefficient must be >= 0, got {self.a}")
        if not self.interval.strictly_inside(self.x0):
            raise InputError(f"x0 = {self.x0} is not interior to {self.interval}")
        object.__setattr__(self, "atoms_below", _check_atoms(self.atoms_below, "below", self.interval))
        object.__setattr__(self, "atoms_above", _check_atoms(self.atoms_above, "above", self.interval))

    def label(self) -> str:
        return (
            f"ocrep(a={_fmt(self.a)}, b={_fmt(self.b)}, c={_fmt(self.c)}, x0={_fmt(self.x0)}, "
            f"below={list(self.atoms_below)}, above={list(self.atoms_above)})"
        )


def eval_oc_rep(rep: OpConvexRep, x: float) -> float:
    """Evaluate the operator-convex representation at x."""
    if not rep.interval.contains(x):
        raise DomainError(f"point {x} outside representation interval {rep.interval}")
    x0 = rep.x0
    total = rep.a * x * x + rep.b * x + rep.c
    for r, w in rep.atoms_below:
        total += w * (x - x0) ** 2 / ((x - r) * (x0 - r) ** 2)
    for r, w in rep.atoms_above:
        total += w * (x - x0) ** 2 / ((r - x) * (r - x0) ** 2)
    return total


def _oc_rep_deriv1(rep: OpConvexRep, x: float) -> float:
    # termwise: d/dx of the resolvent minus its tangent line at x0
    x0 = rep.x0
    total = 2.0 * rep.a * x + rep.b
    for r, w in rep.atoms_below:
        total += w * (1.0 / (x0 - r) ** 2 - 1.0 / (x - r) ** 2)
    for r, w in rep.atoms_above:
        total += w * (1.0 / (r - x) ** 2 - 1.0 / (r - x0) ** 2)
    return total


def _oc_rep_deriv2(rep: OpConvexRep, x: float) -> float:
    total = 2.0 * rep.a
    for r, w in rep.atoms_below:
        total += 2.0 * w / (x - r) ** 3
    for r, w in rep.atoms_above:
        total += 2.0 * w / (r - x) ** 3
    return total


def rep_as_scalar_function(rep) -> ScalarFunction:
    """Wrap a representation so it can flow into every checker; derivatives
    are exact closed forms summed termwise."""
    if isinstance(rep, RepMeasure):
        return ScalarFunction(
            domain=rep.interval,
            eval=lambda x: eval_soc_rep(rep, x),
            deriv1=lambda x: _soc_rep_deriv1(rep, x),
            deriv2=lambda x: _soc_rep_deriv2(rep, x),
            label=rep.label(),
        )
    if isinstance(rep, OpConvexRep):
        return ScalarFunction(
            domain=rep.interval,
            eval=lambda x: eval_oc_rep(rep, x),
            deriv1=lambda x: _oc_rep_deriv1(rep, x),
            deriv2=lambda x: _oc_rep_deriv2(rep, x),
            label=rep.label(),
        )
    raise InputError(f"unsupported representation type {type(rep)!r}")


def soc_from_shifted_opconvex(
    g: ScalarFunction, lam: float, j: Interval, grid_points: int = 1000
) -> ScalarFunction:
    """Build f = 1/(lam - g) on j from an operator convex g with g < lam there.

    The positivity of lam - g is grid-checked (not proven); a violated grid
    point is reported as the construction witness.
    """
    if not g.domain.contains_interval(j):
        raise ConfigError(f"interval {j} not contained in the domain {g.domain} of g")
    if not j.bounded:
        raise ConfigError("shift construction needs a bounded interval for the grid check")
    for x in j.grid(grid_points):
        if g(x) >= lam:
            raise ConstructionError(
                f"g(x) = {g(x)!r} >= {lam} at x = {x!r}; 1/(lam - g) is undefined there",
                witness=float(x),
            )

    def f_eval(x, _g=g.eval, _lam=lam):
        return 1.0 / (_lam - _g(x))

    d1 = d2 = None
    if g.deriv1 is not None:
        def d1(x, _g=g.eval, _g1=g.deriv1, _lam=lam):
            return _g1(x) / (_lam - _g(x)) ** 2

        if g.deriv2 is not None:
            def d2(x, _g=g.eval, _g1=g.deriv1, _g2=g.deriv2, _lam=lam):
                u = _lam - _g(x)
                return _g2(x) / u**2 + 2.0 * _g1(x) ** 2 / u**3

    return ScalarFunction(
        domain=j,
        eval=f_eval,
        deriv1=d1,
        deriv2=d2,
        label=f"shift({_fmt(lam)}, {g.label})" if g.label else "shift(...)",
    )


def negative_reciprocal(f: ScalarFunction) -> ScalarFunction:
    """g = -1/f with chain-rule derivatives; assumes f != 0 where evaluated."""
    d1 = d2 = None
    if f.deriv1 is not None:
        def d1(x, _f=f.eval, _f1=f.deriv1):
            return _f1(x) / _f(x) ** 2

        if f.deriv2 is not None:
            def d2(x, _f=f.eval, _f1=f.deriv1, _f2=f.deriv2):
                v = _f(x)
                return _f2(x) / v**2 - 2.0 * _f1(x) ** 2 / v**3

    return ScalarFunction(
        domain=f.domain,
        eval=lambda x: -1.0 / f.eval(x),
        deriv1=d1,
        deriv2=d2,
        label=f"neg_recip({f.label})",
    )


def _need(params, k, name):
    if len(params) != k:
        raise ConfigError(f"{name} takes {k} parameter(s), got {len(params)}")
    return [float(p) for p in params]


def catalog(name: str, params=()) -> ScalarFunction:
    """Named function constructor used by the CLI grammar."""
    params = tuple(params)
    if name == "identity":
        _need(params, 0, name)
        return ScalarFunction(REAL_LINE, lambda x: x, lambda x: 1.0, lambda x: 0.0, "identity")
    if name == "affine":
        a, b = _need(params, 2, name)
        return ScalarFunction(
            REAL_LINE,
            lambda x: a * x + b,
            lambda x: a,
            lambda x: 0.0,
            f"affine({_fmt(a)}, {_fmt(b)})",
        )
    if name == "square":
        _need(params, 0, name)
        return ScalarFunction(REAL_LINE, lambda x: x * x, lambda x: 2.0 * x, lambda x: 2.0, "square")
    if name == "abs":
        _need(params, 0, name)
        # non-smooth: no derivatives on purpose; checkers that need them must reject
        return ScalarFunction(REAL_LINE, abs, None, None, "abs")
    if name == "cube":
        _need(params, 0, name)
        return ScalarFunction(
            REAL_LINE, lambda x: x**3, lambda x: 3.0 * x * x, lambda x: 6.0 * x, "cube"
        )
    if name == "exp":
        _need(params, 0, name)
        return ScalarFunction(REAL_LINE, math.exp, math.exp, math.exp, "exp")
    if name == "constant":
        (c,) = _need(params, 1, name)
        return ScalarFunction(
            REAL_LINE, lambda x: c, lambda x: 0.0, lambda x: 0.0, f"constant({_fmt(c)})"
        )
    if name == "resolvent_above":
        (r,) = _need(params, 1, name)
        return ScalarFunction(
            Interval(-math.inf, r, False, False),
            lambda x: 1.0 / (r - x),
            lambda x: 1.0 / (r - x) ** 2,
            lambda x: 2.0 / (r - x) ** 3,
            f"resolvent_above({_fmt(r)})",
        )
    if name == "resolvent_below":
        (r,) = _need(params, 1, name)
        return ScalarFunction(
            Interval(r, math.inf, False, False),
            lambda x: 1.0 / (x - r),
            lambda x: -1.0 / (x - r) ** 2,
            lambda x: 2.0 / (x - r) ** 3,
            f"resolvent_below({_fmt(r)})",
        )
    if name == "eps_over":
        (eps,) = _need(params, 1, name)
        if eps <= 0:
            raise ConfigError(f"eps_over requires eps > 0, got {eps}")
        return ScalarFunction(
            Interval(0.0, math.inf, True, False),
            lambda x: eps / (eps + x),
            lambda x: -eps / (eps + x) ** 2,
            lambda x: 2.0 * eps / (eps + x) ** 3,
            f"eps_over({_fmt(eps)})",
        )
    raise ConfigError(f"unknown catalog function {name!r}")


#: Names the grammar accepts, with their arities.
CATALOG_ARITY = {
    "identity": 0,
    "affine": 2,
    "square": 0,
    "abs": 0,
    "cube": 0,
    "exp": 0,
    "constant": 1,
    "resolvent_above": 1,
    "resolvent_below": 1,
    "eps_over": 1,
}

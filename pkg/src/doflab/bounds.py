"""Closed-form DoF formulas and exact LP maximization over outer-bound regions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParameterError

Pair = tuple[int, int]


@dataclass(frozen=True)
class Inequality:
    """``sum(coeff[v] * d[v]) <= rhs``; absent variables have coefficient 0."""

    coefficients: Mapping[Pair, int]
    rhs: Fraction = Fraction(1)
    focus: Pair | None = None

    def lhs(self, point: Mapping[Pair, Fraction]) -> Fraction:
        return sum((c * Fraction(point[v]) for v, c in self.coefficients.items()), Fraction(0))


@dataclass(frozen=True)
class DofRegion:
    """Nonnegative per-message DoF variables ``d[(dest, src)]`` under linear bounds."""

    kind: str
    variables: tuple[Pair, ...]
    inequalities: tuple[Inequality, ...]

    def matrix(self) -> tuple[list[list[int]], list[Fraction]]:
        index = {v: k for k, v in enumerate(self.variables)}
        rows = []
        for ineq in self.inequalities:
            row = [0] * len(self.variables)
            for v, c in ineq.coefficients.items():
                row[index[v]] = c
            rows.append(row)
        return rows, [ineq.rhs for ineq in self.inequalities]

    def contains(self, point: Mapping[Pair, Fraction]) -> bool:
        if any(Fraction(point[v]) < 0 for v in self.variables):
            return False
        return all(ineq.lhs(point) <= ineq.rhs for ineq in self.inequalities)

    def tight(self, point: Mapping[Pair, Fraction]) -> list[bool]:
        return [ineq.lhs(point) == ineq.rhs for ineq in self.inequalities]


def _combine(terms: Sequence[tuple[Pair, int]]) -> dict[Pair, int]:
    out: dict[Pair, int] = {}
    for v, c in terms:
        out[v] = out.get(v, 0) + c
    return {v: c for v, c in out.items() if c != 0}


def build_outer_region(S: int, D: int | None = None, *, kind: str = "x", relays: int = 0) -> DofRegion:
    """Outer-bound region of an X network or of a K-user full-duplex network.

    ``kind="x"``: ``S`` sources labelled ``1..S`` and ``D`` destinations
    labelled ``S+relays+1 .. S+relays+D``.  One inequality per
    (source ``u``, destination ``v``)::

        sum_q d[q, u] + sum_p d[v, p] - d[v, u] <= 1

    ``kind="full_duplex"``: ``S`` is the node count ``K`` and ``D`` must be
    omitted.  Variables ``d[j, i]`` for ``i != j``; one inequality per
    ordered pair ``p != q``::

        sum_{j != p} d[j, p] + sum_{i != q} d[q, i] - d[q, p] <= 1
    """
    if kind == "x":
        if D is None or S < 1 or D < 1 or relays < 0:
            raise ParameterError("X-network region needs S >= 1, D >= 1")
        sources = range(1, S + 1)
        dests = range(S + relays + 1, S + relays + D + 1)
        variables = tuple((d, s) for d in dests for s in sources)
        ineqs = []
        for u in sources:
            for v in dests:
                terms = [((q, u), 1) for q in dests] + [((v, p), 1) for p in sources] + [((v, u), -1)]
                ineqs.append(Inequality(_combine(terms), focus=(v, u)))
        return DofRegion("x", variables, tuple(ineqs))
    if kind == "full_duplex":
        K = S
        if D is not None or K < 2:
            raise ParameterError("full-duplex region needs a single size K >= 2")
        nodes = range(1, K + 1)
        variables = tuple((j, i) for j in nodes for i in nodes if i != j)
        ineqs = []
        for p in nodes:
            for q in nodes:
                if p == q:
                    continue
                terms = ([((j, p), 1) for j in nodes if j != p]
                         + [((q, i), 1) for i in nodes if i != q] + [((q, p), -1)])
                ineqs.append(Inequality(_combine(terms), focus=(q, p)))
        return DofRegion("full_duplex", variables, tuple(ineqs))
    raise ParameterError(f"unknown region kind {kind!r}")


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    point: dict[Pair, Fraction]
    duals: tuple[Fraction, ...]
    pivots: int


def simplex_max(A: Sequence[Sequence[int]], b: Sequence[int],
                c: Sequence[int]) -> tuple[Fraction, list[Fraction], list[Fraction], int]:
    """Exact ``max c.x  s.t.  A x <= b, x >= 0`` for integer data with ``b >= 0``.

    Fraction-free (Bareiss) tableau simplex: every entry is an integer and the
    represented value is ``entry / det`` where ``det`` is the previous pivot,
    so updates divide exactly and no gcd work is done.  Bland's rule picks the
    entering and leaving variables and cannot cycle.  The slack basis is
    feasible because ``b >= 0``.

    Returns ``(value, x, y, pivots)`` with ``y`` an optimal dual solution.
    """
    m, n = len(A), len(c)
    if any(v < 0 for v in b):
        raise ParameterError("right-hand sides must be nonnegative")
    for v in [*b, *c, *(a for row in A for a in row)]:
        if int(v) != v:
            raise ParameterError("simplex_max expects integer data")
    T = []
    for i in range(m):
        row = [int(v) for v in A[i]] + [0] * m + [int(b[i])]
        row[n + i] = 1
        T.append(row)
    # Last row holds reduced costs -c; optimal once none is negative.
    T.append([-int(v) for v in c] + [0] * (m + 1))
    basis = list(range(n, n + m))
    det = 1
    pivots = 0
    cols = range(n + m + 1)
    obj = T[m]
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        r = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                if r is None:
                    r = i
                    continue
                # compare T[i][-1]/a against T[r][-1]/T[r][enter]
                lhs, rhs = T[i][-1] * T[r][enter], T[r][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[r]):
                    r = i
        if r is None:
            raise ParameterError("LP is unbounded")
        prow = T[r]
        p = prow[enter]
        for i in range(m + 1):
            if i == r:
                continue
            row = T[i]
            f = row[enter]
            if f:
                T[i] = [(row[j] * p - f * prow[j]) // det for j in cols]
            elif p != det:
                T[i] = [(v * p) // det for v in row]
        obj = T[m]
        det = p
        basis[r] = enter
        pivots += 1
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = Fraction(T[i][-1], det)
    y = [Fraction(v, det) for v in obj[n:n + m]]
    return Fraction(obj[-1], det), x, y, pivots


def solve_max_sum(region: DofRegion) -> LPSolution:
    A, b = region.matrix()
    value, x, y, pivots = simplex_max(A, b, [1] * len(region.variables))
    return LPSolution(value, dict(zip(region.variables, x)), tuple(y), pivots)


def max_sum_dof(region: DofRegion) -> Fraction:
    """Exact maximum of the total DoF over ``region``."""
    return solve_max_sum(region).value


def symmetric_point(region: DofRegion) -> dict[Pair, Fraction]:
    """Equal DoF per message at the value that makes every bound tight."""
    row_sum = sum(region.inequalities[0].coefficients.values())
    return {v: Fraction(1, row_sum) for v in region.variables}


# --------------------------------------------------------------------------
# Closed forms
# --------------------------------------------------------------------------


def _check(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


def ic_dof(K: int) -> Fraction:
    _check(K >= 1, "K must be >= 1")
    return Fraction(K, 2)


def x_dof(S: int, D: int) -> Fraction:
    _check(S >= 1 and D >= 1, "S and D must be >= 1")
    return Fraction(S * D, S + D - 1)


def fd_lower(K: int) -> Fraction:
    _check(K >= 2, "K must be >= 2")
    return Fraction(K * (K - 1), 2 * K - 2)


def fd_upper(K: int) -> Fraction:
    _check(K >= 2, "K must be >= 2")
    return Fraction(K * (K - 1), 2 * K - 3)


def half_duplex(K: int) -> Fraction:
    _check(K >= 2, "K must be >= 2")
    return Fraction(K * K, 4 * K - 4)


def parallel_relay(K: int, R: int) -> Fraction:
    _check(K >= 1 and R >= 1, "K and R must be >= 1")
    return Fraction(K * R, K + R - 1)


FORMULAS = {
    "ic_dof": ic_dof,
    "x_dof": x_dof,
    "fd_lower": fd_lower,
    "fd_upper": fd_upper,
    "half_duplex": half_duplex,
    "parallel_relay": parallel_relay,
}


def formula(kind: str, *params: int) -> Fraction:
    """Evaluate one of the closed forms in :data:`FORMULAS` exactly."""
    try:
        fn = FORMULAS[kind]
    except KeyError:
        raise ParameterError(f"unknown formula {kind!r}; choose from {sorted(FORMULAS)}") from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise ParameterError(f"{kind}: {exc}") from None

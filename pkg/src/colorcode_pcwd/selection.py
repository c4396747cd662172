"""Choose a minimum-cost set of generalized paths that reproduces a syndrome.

The 0/1 program: minimise ``sum cost_i f_i`` subject to

* every unsatisfied check ``i`` is covered by the chosen check sets an odd
  number of times (``parity="gf2"``, written ``sum_j f_j - 2 k_i = 1`` with
  integer ``k_i >= 0``) or exactly once (``parity="exact"``);
* ``f_a + f_b + f_c <= t`` for every triple of candidates whose supports
  pairwise intersect. With ``t = 1`` no two members of such a triple may be
  combined; the default ``t = 2`` only forbids taking all three, so two
  overlapping fans whose XOR is the lighter correction stay available;
* ``f_i in {0, 1}``.

The continuous relaxation is tried first and the integer program is only
solved when the relaxation lands on a fractional vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

INTEGRAL_TOL = 1e-6
NODE_LIMIT = 10**6
PARITY_MODES = ("gf2", "exact")
DEFAULT_TRIANGLE_LIMIT = 2


class SelectionError(RuntimeError):
    pass


class Infeasible(SelectionError):
    """No 0/1 assignment satisfies the constraints."""


class ResourceExhausted(SelectionError):
    """Branch-and-bound hit its node limit before proving optimality."""


@dataclass
class SelectionProblem:
    costs: np.ndarray
    checks: List[FrozenSet[int]]
    target: Tuple[int, ...]
    triangles: List[Tuple[int, int, int]]
    uncovered: Tuple[int, ...] = ()
    parity: str = "gf2"
    triangle_limit: int = DEFAULT_TRIANGLE_LIMIT

    def __post_init__(self):
        if self.parity not in PARITY_MODES:
            raise ValueError(f"parity must be one of {PARITY_MODES}, got {self.parity!r}")
        if self.triangle_limit not in (1, 2):
            raise ValueError(f"triangle_limit must be 1 or 2, got {self.triangle_limit!r}")

    @property
    def n(self) -> int:
        return len(self.costs)

    @property
    def infeasible(self) -> bool:
        return bool(self.uncovered)

    def equality_matrix(self) -> np.ndarray:
        A = np.zeros((len(self.target), self.n))
        row = {i: r for r, i in enumerate(self.target)}
        for j, S in enumerate(self.checks):
            for i in S:
                if i in row:
                    A[row[i], j] = 1
        return A

    def triangle_matrix(self) -> np.ndarray:
        A = np.zeros((len(self.triangles), self.n))
        for r, tri in enumerate(self.triangles):
            A[r, list(tri)] = 1
        return A

    def is_feasible(self, chosen) -> bool:
        f = np.zeros(self.n, dtype=int)
        f[list(chosen)] = 1
        cover = self.equality_matrix().astype(int) @ f
        if self.parity == "gf2":
            ok = np.all(cover % 2 == 1)
        else:
            ok = np.all(cover == 1)
        tri = self.triangle_matrix() @ f if self.triangles else np.zeros(0)
        return bool(ok and np.all(tri <= self.triangle_limit))

    def to_lp_text(self) -> str:
        """Human-readable listing of the program (for debugging)."""
        terms = " + ".join(f"{int(c)} f{j}" for j, c in enumerate(self.costs)) or "0"
        lines = ["minimize", f"  {terms}", "subject to"]
        for i in self.target:
            lhs = " + ".join(f"f{j}" for j, S in enumerate(self.checks) if i in S) or "0"
            if self.parity == "gf2":
                lhs += f" - 2 k{i}"
            lines.append(f"  c{i}: {lhs} = 1")
        for a, b, c in self.triangles:
            lines.append(f"  tri: f{a} + f{b} + f{c} <= {self.triangle_limit}")
        lines.append("binary")
        lines.append("  " + " ".join(f"f{j}" for j in range(self.n)))
        if self.parity == "gf2" and self.target:
            lines.append("general")
            lines.append("  " + " ".join(f"k{i}" for i in self.target))
        return "\n".join(lines) + "\n"


@dataclass
class Selection:
    chosen: Tuple[int, ...]
    objective: float
    fractional: bool = False
    relaxation: np.ndarray = field(default=None, repr=False)

    def indicator(self, n: int) -> List[int]:
        f = [0] * n
        for j in self.chosen:
            f[j] = 1
        return f


def _triangles(supports: Sequence[FrozenSet[int]]) -> List[Tuple[int, int, int]]:
    n = len(supports)
    nbrs = [set() for _ in range(n)]
    for a, b in combinations(range(n), 2):
        if supports[a] & supports[b]:
            nbrs[a].add(b)
            nbrs[b].add(a)
    out = []
    for a in range(n):
        for b in sorted(x for x in nbrs[a] if x > a):
            for c in sorted(x for x in nbrs[a] & nbrs[b] if x > b):
                out.append((a, b, c))
    return out


def build_problem(
    candidates, syndrome_support, parity: str = "gf2", triangle_limit: int = DEFAULT_TRIANGLE_LIMIT
) -> SelectionProblem:
    """Assemble the program for ``candidates`` (objects with ``support``,
    ``unsatisfied`` and ``cost``) and the set of unsatisfied checks."""
    target = tuple(sorted(int(i) for i in syndrome_support))
    checks = [frozenset(c.unsatisfied) for c in candidates]
    covered = set().union(*checks) if checks else set()
    return SelectionProblem(
        costs=np.array([c.cost for c in candidates], dtype=float),
        checks=checks,
        target=target,
        triangles=_triangles([frozenset(c.support) for c in candidates]),
        uncovered=tuple(i for i in target if i not in covered),
        parity=parity,
        triangle_limit=triangle_limit,
    )


def _is_integral(x: np.ndarray) -> bool:
    return bool(np.all(np.abs(x - np.round(x)) <= INTEGRAL_TOL))


def solve(problem: SelectionProblem) -> Selection:
    """Minimum-cost feasible 0/1 selection.

    Raises :class:`Infeasible` or :class:`ResourceExhausted`.
    """
    if problem.infeasible:
        raise Infeasible(f"checks {list(problem.uncovered)} are covered by no candidate")
    n = problem.n
    m = len(problem.target)
    if not m:
        return Selection((), 0.0)

    A = problem.equality_matrix()
    if problem.parity == "gf2":
        # slack k_i counts extra pairs of covers at check i
        k_max = np.floor((A.sum(axis=1) - 1) / 2)
        A_eq = np.hstack([A, -2.0 * np.eye(m)])
        upper = np.concatenate([np.ones(n), k_max])
    else:
        A_eq = A
        upper = np.ones(n)
    n_var = A_eq.shape[1]
    c = np.concatenate([problem.costs, np.zeros(n_var - n)])
    b_eq = np.ones(m)
    A_ub = None
    b_ub = None
    if problem.triangles:
        A_ub = np.hstack([problem.triangle_matrix(), np.zeros((len(problem.triangles), n_var - n))])
        b_ub = np.full(len(problem.triangles), float(problem.triangle_limit))

    lp = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                 bounds=list(zip(np.zeros(n_var), upper)), method="highs")
    if lp.status == 2:
        raise Infeasible("linear relaxation is infeasible")
    if lp.status != 0:
        raise ResourceExhausted(f"linear relaxation failed: {lp.message}")

    if _is_integral(lp.x) and np.allclose(A_eq @ lp.x, b_eq, atol=INTEGRAL_TOL):
        chosen = tuple(int(j) for j in np.flatnonzero(lp.x[:n] > 0.5))
        return Selection(chosen, float(problem.costs[list(chosen)].sum()), False, lp.x[:n])

    constraints = [LinearConstraint(A_eq, b_eq, b_eq)]
    if A_ub is not None:
        constraints.append(LinearConstraint(A_ub, -np.inf, b_ub))

    def satisfied(x):
        ok = np.allclose(A_eq @ x, b_eq, atol=INTEGRAL_TOL) and _is_integral(x)
        return ok and (A_ub is None or np.all(A_ub @ x <= b_ub + INTEGRAL_TOL))

    # HiGHS presolve occasionally reports an infeasible point as optimal;
    # every answer is checked and the solve repeated without presolve if needed
    for presolve in (True, False):
        res = milp(
            c,
            constraints=constraints,
            integrality=np.ones(n_var),
            bounds=Bounds(np.zeros(n_var), upper),
            options={"node_limit": NODE_LIMIT, "presolve": presolve},
        )
        if res.status != 0 or res.x is None or satisfied(res.x):
            break
    else:
        raise ResourceExhausted("integer solver returned a point violating the constraints")
    if res.status == 2:
        raise Infeasible("no 0/1 point satisfies the constraints")
    if res.status != 0 or res.x is None:
        raise ResourceExhausted(f"integer program not solved: {res.message}")
    chosen = tuple(int(j) for j in np.flatnonzero(res.x[:n] > 0.5))
    return Selection(chosen, float(problem.costs[list(chosen)].sum()), True, lp.x[:n])

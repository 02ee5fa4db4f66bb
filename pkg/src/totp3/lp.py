"""Linear program interface: min c.x  s.t.  A x <= b,  lb <= x <= ub.

The default backend is scipy's HiGHS solver behind a single seam
(`solve_lp`), so a different LP engine can be swapped in without
touching callers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog


class LpError(ValueError):
    """Raised for malformed LP inputs."""


@dataclass(frozen=True)
class LpProblem:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    lb: np.ndarray
    ub: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        lb = np.asarray(self.lb, dtype=float)
        ub = np.asarray(self.ub, dtype=float)
        for name, v in (("c", c), ("A", A), ("b", b), ("lb", lb), ("ub", ub)):
            object.__setattr__(self, name, v)
        n = c.size
        if A.size and (A.ndim != 2 or A.shape[1] != n):
            raise LpError("A must have one column per variable")
        if A.size and A.shape[0] != b.size:
            raise LpError("A and b row counts differ")
        if lb.size != n or ub.size != n:
            raise LpError("bounds must match the variable count")
        if np.any(lb > ub):
            raise LpError("lb must be <= ub elementwise")
        if not (np.isfinite(c).all() and np.isfinite(A).all()
                and np.isfinite(b).all()):
            raise LpError("c, A, b must be finite")


@dataclass(frozen=True)
class LpSolution:
    status: str  # optimal | infeasible | unbounded | iteration_limit
    x: np.ndarray | None
    objective: float | None
    iterations: int


_STATUS = {0: "optimal", 1: "iteration_limit", 2: "infeasible", 3: "unbounded"}


def solve_lp(problem: LpProblem, feas_tol: float = 1e-9,
             max_iters: int | None = None) -> LpSolution:
    """Solve the LP deterministically; statuses are returned, not raised."""
    options = {"presolve": True}
    if max_iters is not None:
        options["maxiter"] = max_iters
    A = problem.A if problem.A.size else None
    b = problem.b if problem.A.size else None
    res = linprog(problem.c, A_ub=A, b_ub=b,
                  bounds=list(zip(problem.lb, problem.ub)),
                  method="highs", options=options)
    status = _STATUS.get(res.status, "infeasible")
    if status == "optimal":
        x = np.asarray(res.x, dtype=float)
        if problem.A.size:
            viol = float(np.max(problem.A @ x - problem.b, initial=0.0))
            if viol > 100 * feas_tol:
                # belt-and-braces: HiGHS should never hand back this
                status = "infeasible"
        return LpSolution(status=status, x=x, objective=float(res.fun),
                          iterations=int(getattr(res, "nit", 0)))
    return LpSolution(status=status, x=None, objective=None,
                      iterations=int(getattr(res, "nit", 0)))

"""Exact linear programming over the rationals.

A small dense two-phase simplex with Bland's rule, used for convex hull
membership and related feasibility questions.  Problems have the standard
form {x >= 0, A x = b}; infeasibility comes with a Farkas certificate
y such that y.A <= 0 componentwise and y.b > 0.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            factor = tab[r][col]
            tab[r] = [a - factor * b for a, b in zip(tab[r], tab[row])]
    basis[row] = col


def _simplex(tab, basis, cost, allowed):
    """Maximize cost over the tableau; Bland's rule guarantees termination.

    `cost` is the full cost vector (one entry per column); `allowed` marks
    columns permitted to enter the basis.  Returns ("optimal", z) or
    ("unbounded", entering_col).  The cost row is maintained separately as
    reduced costs.
    """
    m = len(tab)
    ncols = len(tab[0]) - 1
    # reduced costs: c_j - c_B . B^-1 A_j
    red = list(cost) + [ZERO]
    for r in range(m):
        cb = cost[basis[r]]
        if cb != 0:
            red = [a - cb * b for a, b in zip(red, tab[r])]
    while True:
        enter = -1
        for j in range(ncols):
            if allowed[j] and red[j] > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, -red[-1], red
        leave, best = -1, None
        for r in range(m):
            if tab[r][enter] > 0:
                ratio = tab[r][-1] / tab[r][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leave]
                ):
                    best, leave = ratio, r
        if leave < 0:
            return UNBOUNDED, enter, red
        factor = red[enter]
        _pivot(tab, basis, leave, enter)
        red = [a - factor * b for a, b in zip(red, tab[leave])]


def solve_eq_nonneg(A, b, objective=None):
    """Solve {x >= 0, A x = b}, optionally maximizing `objective`.x.

    Returns a dict with keys:
      status  -- "feasible" / "optimal" / "infeasible" / "unbounded"
      x       -- a solution (feasible statuses)
      value   -- objective value (status "optimal")
      farkas  -- certificate y with y.A <= 0, y.b > 0 (status "infeasible")
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    flipped = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            flipped.append(True)
        else:
            flipped.append(False)
    # tableau columns: n structural + m artificial + rhs
    tab = []
    for i in range(m):
        art = [ONE if j == i else ZERO for j in range(m)]
        tab.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    ncols = n + m

    phase1_cost = [ZERO] * n + [-ONE] * m
    allowed = [True] * ncols
    status, z1, red = _simplex(tab, basis, phase1_cost, allowed)
    assert status == OPTIMAL
    if z1 < 0:
        # infeasible: recover y from the reduced costs of the artificials
        # (reduced cost of artificial i is -1 - y_i in the maximize form)
        y = [-ONE - red[n + i] for i in range(m)]
        y = [-v for v in y]  # flip to the y.A <= 0, y.b > 0 convention
        y = [(-v if fl else v) for v, fl in zip(y, flipped)]
        return {"status": INFEASIBLE, "farkas": y}

    # drive any degenerate artificials out of the basis
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if tab[r][j] != 0:
                    _pivot(tab, basis, r, j)
                    break
    # artificials that could not be driven out sit on all-zero redundant
    # rows and can never re-enter; they are simply left in place
    x = [ZERO] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][-1]

    if objective is None:
        return {"status": FEASIBLE, "x": x}

    allowed = [True] * n + [False] * m
    cost = [Fraction(c) for c in objective] + [ZERO] * m
    status, z2, _red = _simplex(tab, basis, cost, allowed)
    if status == UNBOUNDED:
        return {"status": UNBOUNDED}
    x = [ZERO] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][-1]
    return {"status": OPTIMAL, "x": x, "value": z2}

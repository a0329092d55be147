"""The bounded-power family: the 0* optimum needs a power ratio of 2*Phi.

For each Phi the system has M+ = [[1,1,0,0],[0,0,1,1]] and
M- = [[0,0,4 Phi^2,4 Phi^2],[1,1,0,0]].  We solve it, report the active
ratio, then use the LP to bound (X1+X2)/(X3+X4) over *all* optimal vectors.
"""

from fractions import Fraction

from genpf.simplex import linprog_eq
from genpf.solver import solve
from genpf.system import GainSystem


def system(phi):
    g = 4 * Fraction(phi) ** 2
    return GainSystem([[1, 1, 0, 0], [0, 0, 1, 1]], [[0, 0, g, g], [1, 1, 0, 0]])


def share_range(s, beta):
    """min and max of X1+X2 over {M- X <= M+ X / beta, sum X = 1, X >= 0}."""
    rows = [[r * beta - p for r, p in zip(rr, pp)] for rr, pp in zip(s.repressor_gains, s.supporter_gains)]
    A = [row + [1 if i == k else 0 for k in range(2)] for i, row in enumerate(rows)]
    A.append([1, 1, 1, 1, 0, 0])
    b = [0, 0, 1]
    out = []
    for sign in (1, -1):
        res = linprog_eq([sign, sign, 0, 0, 0, 0], A, b, exact=True)
        out.append(sign * res.value)
    return out


for phi in (1, 2, 3):
    s = system(phi)
    sol = solve(s)
    i, j = sol.selection.choice
    ratio = sol.x[i] / sol.x[j]
    beta = Fraction(1, 2 * phi)
    lo, hi = share_range(s, beta)
    print(f"Phi={phi}: beta*={sol.beta_star:.6f} (1/(2 Phi)={float(beta):.6f}), 0* ratio X{i + 1}/X{j + 1}={ratio:.6f}")
    print(f"        every optimum has X1+X2 in [{lo}, {hi}], i.e. (X1+X2)/(X3+X4) = {lo / (1 - lo)}")

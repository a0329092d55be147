"""SYS-B: two feasible (x, beta) pairs whose componentwise geometric mean is infeasible."""

import math

import numpy as np

from genpf.feasibility import residuals
from genpf.solver import solve
from genpf.system import SYS_B

root2 = math.sqrt(2)
y1, b1 = np.array([2.0, 0.5, 0.0]), 1.0
y2, b2 = np.array([4.0, 0.0, root2]), root2

for delta in (0.0, 0.25, 0.5, 0.75, 1.0):
    y = y1 ** (1 - delta) * y2 ** delta
    b = b1 ** (1 - delta) * b2 ** delta
    res = residuals(SYS_B, y / y.sum(), b)
    verdict = "feasible" if res.min() >= -1e-12 else "INFEASIBLE"
    print(f"delta={delta:4.2f}  beta={b:.6f}  x={np.round(y / y.sum(), 4)}  min residual={res.min():+.4f}  {verdict}")

sol = solve(SYS_B)
print(f"beta* = {sol.beta_star!r} (sqrt 2 = {root2!r}); selection {sol.selection.choice}")

"""Tunneling curves below a 1 eV barrier, 10 nm wide.

The closed form is written in s = exp(-2 kappa L / hbar_c) so nothing
overflows; this drives it down to T1 ~ 1e-170 and checks the numeric
solver tracks it point by point.
"""

import numpy as np

from etawave import scattering as sc

V0 = 1.0
L = 10.0
M = 0.5e6

template = sc.BarrierProblem(e_energy=V0, v0=V0, length=L, m=M)
ratios = np.linspace(0.02, 0.98, 300)
table = sc.sweep(template, ratios * V0, method="both")

with open("tunneling_sweep.csv", "w", encoding="utf-8") as fh:
    fh.write(table.to_csv(12))

deltas = [row.delta for row in table.rows if row.delta is not None]
t1 = [row.coeffs.t1 for row in table.rows if row.coeffs is not None]
print(f"rows: {len(table.rows)}  max|numeric-closed|: {max(deltas):.3e}")
print(f"T1 range: {min(t1):.3e} .. {max(t1):.3e}")

# the deep end: kappa L = 200 on purpose
kappa = np.sqrt(2.0 * M * (V0 - 0.5 * V0)) / 197.0
deep = sc.BarrierProblem(e_energy=0.5 * V0, v0=V0, length=200.0 / kappa, m=M)
_, numeric = sc.solve_barrier(deep)
closed = sc.closed_form(deep)
print(
    f"kappa L = 200: closed T1 = {closed.t1:.6e}, "
    f"rel delta = {abs(numeric.t1 - closed.t1) / closed.t1:.2e}"
)

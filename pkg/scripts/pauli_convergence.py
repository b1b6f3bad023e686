"""Convergence study for the grid Pauli identity and gauge invariance.

Everything here is second order in h, and all three residuals should
drop ~4x per refinement.  The 128^3 row takes a few seconds; pass
--fast to stop at 64^3.
"""

import sys
import time

from etawave import pauligauge as pg

sizes = (16, 32, 64) if "--fast" in sys.argv else (32, 64, 128)

start = time.perf_counter()
rows = pg.convergence_table(sizes=sizes)
elapsed = time.perf_counter() - start

print("h_nm,identity_residual,gauge_residual,commutator_residual")
for h, ident, gauge, comm in rows:
    print(f"{h:.6e},{ident:.6e},{gauge:.6e},{comm:.6e}")

for col, name in ((1, "identity"), (2, "gauge"), (3, "commutator")):
    orders = pg.convergence_orders([r[col] for r in rows])
    print(f"{name} orders: " + ", ".join(f"{o:.3f}" for o in orders))
print(f"({elapsed:.1f} s)")

"""How large can the spin-flip reflection get?

R2 carries a factor 8 E m V0^2 / (E+m)^2, so it is invisible for eV
barriers on an electron (1e-10-ish) but climbs to the 0.1 scale once V0
is a sizable fraction of the rest energy.  Sweep a 1 MeV barrier and
tabulate the phase-free envelope next to the pointwise value.
"""

import numpy as np

from etawave import scattering as sc

M = 0.5e6
V0 = 1.0e6
L = 2.0e-3  # nm; keeps the phase x = sqrt(2m(E-V0)) L / hbar_c order 10

print("e_over_v0,R2,envelope,fill")
for ratio in np.linspace(1.1, 3.0, 20):
    e_energy = ratio * V0
    prob = sc.BarrierProblem(e_energy=e_energy, v0=V0, length=L, m=M)
    coeffs = sc.closed_form(prob)
    env = sc.r2_envelope(e_energy, V0, M)
    print(f"{ratio:.3f},{coeffs.r2:.6e},{env:.6e},{coeffs.r2 / env:.4f}")

print()
print("mass dependence at E/V0 = 1.5 (envelope only):")
for m in (1e4, 1e5, 0.5e6, 1e6, 1e7):
    env = sc.r2_envelope(1.5 * V0, V0, m)
    # (E+m)^2/m * envelope is mass-free; print both to show it
    scaled = env * (1.5 * V0 + m) ** 2 / m
    print(f"  m={m:9.1e} eV  envelope={env:.6e}  (E+m)^2/m*env={scaled:.6e}")

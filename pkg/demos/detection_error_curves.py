"""Sweep the adversary's total detection error against covert signal power.

Prints a small table comparing three threshold policies: the genie-aided
optimum (instantaneous gain known), the exact distribution-aware threshold,
and the noise-floor approximation.  In the low-power regime all three sit
close to 1, which is exactly what the covert transmitter wants.
"""

import numpy as np

from covertfade import detection
from covertfade.detection import WillieParams

SIGMA_W2 = 0.05
N_D = 50

powers = np.geomspace(1e-4, 0.05, 10)

print(f"# n_d = {N_D}, sigma_w2 = {SIGMA_W2}")
print(f"{'p_d':>10}  {'zeta_csi':>10}  {'zeta_cdi':>10}  {'zeta_floor':>10}")
for p_d in powers:
    w = WillieParams(sigma_w2=SIGMA_W2, n_d=N_D, p_d=float(p_d))
    zeta_csi = detection.expected_zeta_star_csi(w)
    zeta_cdi = detection.zeta_star_cdi(w)
    zeta_floor = detection.expected_zeta_cdi(SIGMA_W2, w)
    print(f"{p_d:10.2e}  {zeta_csi:10.6f}  {zeta_cdi:10.6f}  {zeta_floor:10.6f}")

# The exact distribution-aware threshold converges to the noise floor as
# power shrinks; show the ratio at the two ends of the sweep.
for p_d in (powers[0], powers[-1]):
    w = WillieParams(sigma_w2=SIGMA_W2, n_d=N_D, p_d=float(p_d))
    lam = detection.threshold_cdi_exact(w)
    print(f"# p_d = {p_d:.2e}: exact threshold / noise floor = {lam / SIGMA_W2:.4f}")

"""
Hartman effect for a single rectangular barrier
================================================

The transmission phase time of an opaque barrier stops growing with its
length. Units: hbar = 1, 2m = 1, so E = k**2 and kappa = sqrt(V - E).
"""

import numpy as np

from hartman import BarrierSpec, Mode, phase_time_1d
from hartman.phasetime import detect_saturation, length_series

E, V = 1.0, 5.0
k, kappa = np.sqrt(E), np.sqrt(V - E)

# phase time against barrier length
lengths = np.arange(0.5, 12.0, 0.5)
for L in lengths[::3]:
    print(f"L = {L:5.2f}   tau_t = {phase_time_1d(E, BarrierSpec(V, L)):.8f}")

# the plateau and the opaque-limit value 1/(k kappa)
s = detect_saturation(length_series(lambda L: BarrierSpec(V, L), np.arange(1.0, 21.0), E))
print("plateau", s.saturated_value, "at L =", s.parameters[s.saturation_index])
print("1/(k kappa) =", 1 / (k * kappa))

# a free stretch of the same length is much slower: d / (2k)
print("free delay over L=10:", phase_time_1d(E, BarrierSpec(0.0, 10.0)))

# with absorption the transmission time keeps growing, reflection still saturates
for L in (5.0, 20.0, 50.0):
    bar = BarrierSpec(2.0, L, v_im=10.0)
    print(f"absorptive L = {L:4.0f}: tau_t = {phase_time_1d(E, bar):.4f}  "
          f"tau_r = {phase_time_1d(E, bar, Mode.REFLECTION):.8f}")

"""
Phase times in a Y-shaped splitter
==================================

A base wire splits into two arms at a junction J; each arm may hold a
barrier a distance w from J. Here the thick barrier sits in arm 1 and a thin,
lower one in arm 2. The saturated phase time in arm 1 comes out negative.
"""

import numpy as np

from hartman import Buttiker, Mode, solve_splitter, y_splitter
from hartman.phasetime import saturated_phase_time

E = 1.0

# the barrier-free splitter: r = -1/3, t = 2/3 in both arms
sol = solve_splitter(y_splitter(), E)
print("free junction:", sol.r, sol.t)

make = lambda lb: y_splitter(15.0, lb, 2.5, 5.0, 0.5, 2.5)
s = saturated_phase_time(make, E, Mode.TRANSMISSION, arm=1)
print("tau_1s =", s.saturated_value)
print("flux check |r|^2 + sum |t|^2 - 1 =", solve_splitter(make(10.0), E).flux - 1)

# the plateau in arm 1 depends on the barrier in arm 2
for v2 in (2.5, 5.0, 7.5, 12.5):
    m = lambda lb, v2=v2: y_splitter(5.0, lb, 3.0, v2, 1.0, 3.0)
    print(f"V_2 = {v2:5.2f}: tau_1s = {saturated_phase_time(m, E, arm=1).saturated_value:.6f}")

# a Buttiker junction; epsilon = 4/9 reproduces the wave-guide junction
for eps in (1 / 9, 1 / 3, 4 / 9):
    m = lambda lb, eps=eps: y_splitter(3.0, lb, 3.0, junction=Buttiker(eps))
    t1 = saturated_phase_time(m, E, arm=1).saturated_value
    t2 = saturated_phase_time(m, E, arm=2).saturated_value
    print(f"epsilon = {eps:.4f}: tau_1s = {t1:.4f}  tau_2s = {t2:.4f}")
g = solve_splitter(y_splitter(3.0, 2.0, 3.0), E)
b = solve_splitter(y_splitter(3.0, 2.0, 3.0, junction=Buttiker(4 / 9)), E)
print("max |Griffith - Buttiker(4/9)| =", max(abs(g.r - b.r), *np.abs(np.subtract(g.t, b.t))))

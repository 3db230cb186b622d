"""
Ring between two leads
======================

Leads at J1 and J2, one barrier in each arm. For long arms the transmission
phase time no longer depends on the arm lengths, their ratio, or the flux.
"""

import numpy as np

from hartman import BarrierSpec, Leads, Mode, RingSpec, ring_phase_time, solve_ring_two_lead, tau_ts_saturated

E = 1.0

def ring(lb1, lb2, phi=0.0, V=5.0):
    return RingSpec(BarrierSpec(V, lb1), BarrierSpec(V, lb2), flux=phi, leads=Leads.TWO)

sol = solve_ring_two_lead(ring(2.0, 2.0, 0.3), E)
print("|r|^2 + |t|^2 =", abs(sol.r) ** 2 + abs(sol.t) ** 2)

for lb1, lb2, phi in ((15, 15, 0.0), (20, 10, 0.0), (15, 15, 0.3)):
    tau = ring_phase_time(ring(lb1, lb2, phi), E, Mode.TRANSMISSION)
    print(f"lb = {lb1}:{lb2}, phi = {phi}: tau_t = {tau:.7f}")
print("closed form:", tau_ts_saturated(1.0, 2.0))

# energy dependence at L = 30, V = 1 (so E is E/V)
print(" E/V      tau_t      closed form")
for x in np.arange(0.1, 1.0, 0.1):
    tau = ring_phase_time(ring(15.0, 15.0, V=1.0), x, Mode.TRANSMISSION)
    print(f"{x:4.1f}  {tau:10.6f}  {tau_ts_saturated(np.sqrt(x), np.sqrt(1 - x)):10.6f}")

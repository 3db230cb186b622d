"""
Aharonov-Bohm ring with one lead
================================

A ring threaded by a flux phi (in flux quanta) is attached to a single lead.
With one open channel |r| = 1 and only the phase of r carries information.
"""

import cmath

import numpy as np

from hartman import BarrierSpec, RingSpec, ring_phase_time, ring_reflection_closed_form, solve_ring_one_lead
from hartman import tau_rs_saturated
from hartman.ring import flux_phase

E, V = 1.0, 5.0
k, kappa = 1.0, 2.0

# numerical solve against the closed form
for L, phi in ((2.0, 0.0), (6.0, 0.25), (9.0, 0.6)):
    r = solve_ring_one_lead(RingSpec(BarrierSpec(V, L), flux=phi), E).r
    rc = ring_reflection_closed_form(k, kappa, L, flux_phase(phi))
    print(f"L={L} phi={phi}: |r|={abs(r):.15f}  Arg r={cmath.phase(r):+.10f}  |r - closed|={abs(r - rc):.1e}")

# the reflection time saturates with the circumference
for L in (1.0, 2.0, 4.0, 8.0, 12.0):
    print(f"L = {L:5.1f}   tau_r = {ring_phase_time(RingSpec(BarrierSpec(V, L)), E):.7f}")
print("closed-form plateau:", tau_rs_saturated(k, kappa))

# flux oscillations die out as the ring gets longer
phis = np.arange(64) / 64
for L in (6.0, 7.0, 9.0):
    taus = [ring_phase_time(RingSpec(BarrierSpec(V, L), flux=p), E) for p in phis]
    print(f"L = {L}: peak-to-peak over one flux period = {np.ptp(taus):.3e}")

# a free well between two barriers does not change the plateau
for w in (0.0, 5.0, 10.0):
    spec = RingSpec(BarrierSpec(2.0, 20.0), BarrierSpec(2.0, 5.0), w)
    print(f"w = {w:4.1f}: tau_r = {ring_phase_time(spec, E):.6f}")

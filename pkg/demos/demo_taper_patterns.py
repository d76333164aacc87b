#!/usr/bin/env python3
"""Dolph-Chebyshev tapers and their continuous-wave angle patterns.

Synthesizes weight vectors for a 15-element half-wavelength array at
several sidelobe levels, measures the realized sidelobes with a dense
angle scan, and plots the weights next to the patterns.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fdasim import FieldPoint, PropagationEnv, af_approx, chebyshev_taper, make_phased_array

c = 3e8
f0 = 10e9                 # carrier [Hz]
d = 0.5 * c / f0          # half-wavelength spacing [m]
N = 15

env = PropagationEnv(wave_speed_m_per_s=c)
theta = np.linspace(-np.pi / 2, np.pi / 2, 2001)

print(f"{N}-element linear array, d = {d * 100:.2f} cm, f0 = {f0 / 1e9:.0f} GHz")

fig, (ax_w, ax_p) = plt.subplots(1, 2, figsize=(12, 4.5))

for sll in (20.0, 30.0, 40.0):
    weights = chebyshev_taper(N, sll)
    cfg = make_phased_array(N, d, f0, weights, np.zeros(N))
    pattern = np.abs([af_approx(cfg, env, FieldPoint(0.0, 1e5, float(t)))
                      for t in theta])
    pattern_db = 20 * np.log10(pattern / pattern.max() + 1e-12)

    # realized sidelobe level: everything beyond the first null
    peak = int(np.argmax(pattern))
    i = peak
    while i + 1 < len(pattern) and pattern[i + 1] <= pattern[i]:
        i += 1
    measured = 20 * np.log10(pattern[i:].max() / pattern[peak])
    print(f"  SLL {sll:.0f} dB requested -> {measured:.2f} dB measured, "
          f"edge weight {weights[0]:.4f}")

    ax_w.plot(np.arange(N), weights, "o-", label=f"{sll:.0f} dB")
    ax_p.plot(np.degrees(theta), pattern_db, label=f"{sll:.0f} dB")

ax_w.set_xlabel("element index")
ax_w.set_ylabel("weight")
ax_w.set_title("Chebyshev tapers")
ax_w.grid(alpha=0.3)
ax_w.legend()

ax_p.set_xlabel("angle [deg]")
ax_p.set_ylabel("pattern [dB]")
ax_p.set_title("CW angle patterns (equiripple sidelobes)")
ax_p.set_ylim(-60, 2)
ax_p.grid(alpha=0.3)
ax_p.legend()

fig.tight_layout()
out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "taper_patterns.png")
fig.savefig(out, dpi=130)
print(f"saved {out}")

"""Spreading rate as a function of the tessellation angle.

Sweeps sigma(t)/t over a uniform grid of angles in [0, pi].  The curve is
symmetric about pi/2, vanishes at the trivial angles 0, pi/2 and pi, and
peaks at pi/3 and 2pi/3; these are exactly the angles at which the
spatial-search walk is fast.
"""

from pathlib import Path

import numpy as np

import hexwalk as hw
from _charts import line_chart

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

lat = hw.HexLattice(128)
grid = np.linspace(0.0, np.pi, 65)
sweep = hw.theta_sweep("hexagon", 50, grid, lat)
rates = np.array([rate for _, rate in sweep])

i_peak = int(np.argmax(rates))
print(f"peak sigma/t = {rates[i_peak]:.4f} at theta = {grid[i_peak]:.4f} "
      f"(pi/3 = {np.pi / 3:.4f})")
second = 33 + int(np.argmax(rates[33:]))
print(f"second peak at theta = {grid[second]:.4f} (2pi/3 = {2 * np.pi / 3:.4f})")
print(f"rates at 0, pi/2, pi: {rates[0]:.4f}, {rates[32]:.4f}, {rates[64]:.4f}")
print(f"symmetry about pi/2: max |v(theta) - v(pi-theta)| = "
      f"{np.max(np.abs(rates - rates[::-1])):.2e}")

target = OUT / "angle_sweep.svg"
line_chart(target, [("", grid, rates)], title="spreading rate vs angle",
           x_label="theta", y_label="sigma(t)/t at t=50")
print(f"wrote {target}")

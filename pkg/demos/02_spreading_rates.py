"""Ballistic spreading: sigma(t) is a straight line whose slope peaks at pi/3.

Runs the walk for five angles from a uniform hexagon start and fits
sigma(t) on the late window.  All five lines are straight to R^2 > 0.999;
the pi/3 line is the steepest.
"""

from pathlib import Path

import numpy as np

import hexwalk as hw
from _charts import line_chart

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

lat = hw.HexLattice(256)
angles = [(np.pi / 30, "pi/30"), (4 * np.pi / 30, "4pi/30"),
          (7 * np.pi / 30, "7pi/30"), (np.pi / 3, "pi/3"),
          (11 * np.pi / 30, "11pi/30")]

print(f"{'theta':>10} {'slope':>8} {'R^2':>9}")
series = []
for theta, label in angles:
    result = hw.sigma_series("hexagon", theta, 100, lat)
    series.append((label, result.times, result.sigmas))
    print(f"{label:>10} {result.slope:8.4f} {result.r_squared:9.6f}")

best = max(series, key=lambda s: s[2][-1])[0]
print(f"fastest spreading at theta = {best}")

target = OUT / "spreading_rates.svg"
line_chart(target, series, title="position spread vs time",
           x_label="steps t", y_label="sigma(t)")
print(f"wrote {target}")

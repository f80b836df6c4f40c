"""Marked-vertex search: measured runtimes track the analytic predictions.

For each lattice size the secular equation gives the principal eigenphase
lambda, hence the predicted optimal runtime pi/(2*lambda) and peak success
probability n^2*lambda^2/8.  The simulated probability curve follows
(n^2 lambda^2/8) sin^2(lambda t); runtimes scale like sqrt(N log N) and
the success probability like 1/log N.
"""

from pathlib import Path

import numpy as np

import hexwalk as hw
from _charts import line_chart

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

print(f"{'n':>4} {'lambda':>9} {'C':>7} {'S(n)':>8} {'t_pred':>8} {'t_sim':>6} "
      f"{'P_pred':>8} {'P_sim':>8} {'bounds':>7}")
last = None
for n in (8, 16, 32, 64):
    result = hw.run_search(hw.SearchConfig(n=n))
    bounds = "pass" if hw.verify_appendix_bounds(n).all_hold else "FAIL"
    print(f"{n:>4} {result.lam:9.5f} {result.c:7.4f} {result.s:8.4f} "
          f"{result.t_pred:8.2f} {result.t_sim:6d} {result.p_pred:8.5f} "
          f"{result.p_sim:8.5f} {bounds:>7}")
    last = result

scaled = []
for n in (16, 32, 64, 128):
    t_pred, p_pred = hw.predicted_runtime_and_probability(n)
    big_n = 2 * n * n
    scaled.append((n, t_pred / np.sqrt(big_n * np.log(big_n)),
                   p_pred * np.log(big_n)))
print("\nscaling check (should be roughly flat):")
for n, t_scaled, p_scaled in scaled:
    print(f"  n={n:>3}: t_pred/sqrt(N ln N) = {t_scaled:.4f}   "
          f"P_pred*ln N = {p_scaled:.4f}")

model = last.p_pred * np.sin(last.lam * last.times) ** 2
target = OUT / "search_probability.svg"
line_chart(target,
           [("simulated", last.times, last.p_marked),
            ("sin^2 model", last.times, model)],
           title=f"marked-vertex probability, n={last.config.n}",
           x_label="steps t", y_label="p_marked(t)")
print(f"\nwrote {target}")

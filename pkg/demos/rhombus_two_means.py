"""Two-point quantizers of a rhombus with a 45 degree angle.

Every way a straight cut can cross the rhombus is tried. Each cut that sits
on the perpendicular bisector of its two centroids gives a centroidal pair.
Only one of them is optimal, so being a fixed point of Lloyd is not enough.
"""
from pathlib import Path

from cvtq import Region, best_nmeans, rhombus_all_cases
from cvtq.cases import RHOMBUS
from cvtq.svg import render_region

region = Region.polygon(RHOMBUS)

print("case  alpha      beta       distortion")
for case, sols in rhombus_all_cases().items():
    for s in sols:
        a, b = s.parameters
        print(f"{case:>4}  {a:.7f}  {b:.7f}  {s.distortion:.9f}")

best = best_nmeans(region, 2, restarts=16, seed=42)
print("\nmultistart Lloyd:", best.final.as_lists(), f"V2 = {best.distortion:.9f}")

out = Path(__file__).with_name("rhombus_two_means.svg")
out.write_text(render_region(region, best.final, title="rhombus, best pair"))
print("wrote", out)

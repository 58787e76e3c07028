"""Two means of the unit disc, and the two-cell split of the unit square
under a density proportional to x1 * x2."""
import math

from cvtq import Density, Quantizer, Region, disc_two_means_solve, distortion, golden_partition_solve, lloyd_run

disc = disc_two_means_solve()
print("disc: cut offset", disc.parameters[0], "centers", disc.centers.as_lists())
print(f"  distortion {disc.distortion:.9f}, closed form {0.5 - 16 / (9 * math.pi**2):.9f}")

trace = lloyd_run(Region.disc(), Quantizer(((0.2, 0.1), (-0.3, -0.2))))
print(f"  Lloyd from an arbitrary start: {trace.iterations} steps, V = {trace.distortion:.9f}")

g = golden_partition_solve()
print("square with density 4 x1 x2: cut at", g.parameters[0], "centers", g.centers.as_lists())
square = Region.polygon(((0, 0), (1, 0), (1, 1), (0, 1)), Density.polynomial([(4.0, 1, 1)]))
print(f"  distortion {distortion(square, g.centers).value:.9f}")

"""Exact n-means of the 4 x 4 integer grid by branch and bound.

Lloyd can stall at a fixed point that is not optimal. The exact search shows
how many distinct optimal sets there are for each n.
"""
from cvtq import Quantizer, distortion_discrete, is_discrete_cvt, lloyd_discrete, optimal_nmeans_exact
from cvtq.dquant import grid4, triangle9
from cvtq.reproduce import BETA

for name, dist in (("grid4", grid4()), ("triangle9", triangle9())):
    for n in range(1, 6):
        res = optimal_nmeans_exact(dist, n)
        print(f"{name} n={n}: V = {res.vn:.7f}, optimal sets = {res.multiplicity}, "
              f"nodes = {res.nodes_explored}")

g = grid4()
beta = Quantizer(BETA)
print("\nbeta is a fixed point:", is_discrete_cvt(g, beta), f"V = {distortion_discrete(g, beta):.7f}")
print("Lloyd from beta stays put:", lloyd_discrete(g, beta).centers.close_to(beta, 1e-12))

"""Why cycles cost extra: NEC on acyclic vs cyclic networks.

On an acyclic network the per-firm optimal collaterals compose into the
network optimum (NEC = 1).  On the symmetric 3-cycle family the network
optimum is k+5 while the firms' stand-alone optima sum to 6, so the premium
(k+5)/6 grows without bound in k.
"""
from collat import gen_cycle_family, random_network, solve

print("--- acyclic networks: no premium ---")
for seed in (1, 2, 3):
    net = random_network(8, 3, acyclic=True, seed=seed)
    sol = solve(net)
    print("seed %d: |E|=%d  total=%s  NEC=%s  (method: %s)"
          % (seed, len(net.edges), sol.total, sol.nec, sol.method))
print()

print("--- cycle family: the premium is Theta(k) ---")
for k in (3, 7, 13, 25):
    net = gen_cycle_family(k)
    sol = solve(net)
    per_star = {net.ids[v]: str(t) for v, t in sorted(sol.star_totals.items())}
    print("k=%2d: total=%s  star optima sum=%s  NEC=%s  per-star %s"
          % (k, sol.total, sum(sol.star_optima.values()), sol.nec, per_star))
print()
print("One firm on the cycle must fully secure its big investor (k) plus a")
print("unit spike; the other two get away with the star optimum of 2 each.")

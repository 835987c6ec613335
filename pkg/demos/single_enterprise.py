"""Walk through the single-enterprise (star) problem.

One firm needs Z = 3 to operate, pays interest alpha = 1 (i.e. 100%), and
has three potential investors with amounts 3, 2 and 1.  We look at what each
elimination order costs in collateral, then let the solver pick the cheapest
and sanity-check it against the factorial brute force.
"""
from itertools import permutations

from collat import (
    StarInstance,
    brute_force_star,
    minimal_vector_for_order,
    solve_star,
)

star = StarInstance(amounts=[3, 2, 1], cost=3, rate=1)
print("star: amounts=%s  Z=%s  alpha=%s" % (star.amounts, star.cost, star.rate))
print("profitable:", star.is_profitable())
print()

# Every order in which players can be talked into investing has a unique
# cheapest collateral vector: each player is covered against the worst case
# where only her predecessors invest.
print("per-order minimal collateral vectors:")
for order in permutations(range(star.size)):
    c = minimal_vector_for_order(star, order)
    print("  order %s -> c=%s  total=%s" % (order, c, sum(c)))
print()

sol = solve_star(star)
print("optimal: total=%s, full collaterals to players %s, order %s"
      % (sol.total, sorted(sol.full_set), sol.order))
print("collaterals:", sol.collaterals)

oracle = brute_force_star(star)
assert oracle.total == sol.total
print("brute force over all %d! orders agrees: %s" % (star.size, oracle.total))

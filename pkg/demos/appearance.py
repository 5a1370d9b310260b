"""Index of appearance z(m): formula versus scan.

z(m) is the first n >= 1 with m | U_n.  For an odd prime it divides
(p - e)/2; prime powers lift by a factor p once the valuation runs out.
"""
import numpy as np

from disclab import LucasParams, z_of, z_of_prime, z_of_prime_power
from disclab.appearance import alpha_k_empirical, is_special, z_brute_table

p = LucasParams(1)
print("z(29) =", z_of_prime(p, 29), " z(13) =", z_of_prime(p, 13))

# 13 is a Wieferich-type prime here: 13^2 already divides U_7
print("z(169), c =", z_of_prime_power(p, 13, 2))

res = z_of(p, 50)
print(res.z, [(b.p, b.b, b.z_pb) for b in res.breakdown])

# Compare the formula with a batched scan for every m <= 5000
for k in (1, 2, 6):
    params = LucasParams(k)
    table = z_brute_table(params, 5000)
    formula = np.array([0] + [z_of(params, m).z for m in range(1, 5001)])
    ratio = table[1:] / np.arange(1, 5001)
    below = ratio[ratio < 1]
    print(f"k={k}: agree={bool((table == formula).all())}, "
          f"fixed points={int((ratio == 1).sum())}, max z(m)/m below 1 = {below.max():.4f}")

# 3 is special exactly for k = 2, 6 mod 9
special = [k for k in range(1, 60) if is_special(LucasParams(k), 3)]
print("3 special for k in", special)

for k in (1, 2, 3):
    print(k, alpha_k_empirical(LucasParams(k), 200))

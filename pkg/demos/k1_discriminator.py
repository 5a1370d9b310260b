"""Discriminator of U(1) = 0, 1, 6, 35, 204, ...

Walks through the brute-force scan, the closed form min(v_n, w_n) and the
plateaus where a 2^a 5^b value beats the next power of two.
"""
import numpy as np

from disclab import LucasParams, disc_brute_table, disc_closed_k1, discriminates
from disclab.discriminator import exceptional_intervals_k1, image_k1

p = LucasParams(1)

# The first terms, and the first moduli that keep them apart
print([disc_closed_k1(n).value for n in range(1, 21)])

# 250 separates U_0..U_149 but not U_0..U_150
print(discriminates(p, 150, 250), discriminates(p, 151, 250))

# Brute force over n <= 2048 in one batched scan
values = np.array(disc_brute_table(p, 2048))
closed = np.array([disc_closed_k1(n).value for n in range(1, 2049)])
print("closed form agrees:", bool((values == closed).all()))

# Values that are not powers of two, and where they occur
low_bit = values & -values
mask = values != low_bit
for v in np.unique(values[mask]):
    ns = np.flatnonzero(values == v) + 1
    print(f"  D_1(n) = {v:5d} for n in [{ns.min()}, {ns.max()}]")

# The same plateaus from the closed form alone
for (lo, hi), v in exceptional_intervals_k1(range(7, 12)):
    print(f"  a-plateau [{lo}, {hi}] -> {v}")

# Every value observed lies in the predicted image
print(set(values.tolist()) <= image_k1(4096))

"""D_k(n) for k > 2: the sets A_k, B_k and the cases they miss."""
import math

from disclab import LucasParams, disc_auto_range
from disclab.appearance import membership
from disclab.discriminator import disc_closed_general, fk_extract

for k in (3, 5, 6, 8):
    p = LucasParams(k)
    members = [m for m in range(1, 60) if membership(p, m).positive]
    print(f"k={k}: A_k u B_k below 60 = {members}")

# Closed-form candidate and whether the short window certifies it
p = LucasParams(8)
for n in (25, 40, 100):
    rec, certified = disc_closed_general(p, n)
    print(n, rec.value, rec.classification, certified)

# A range run reconciles every candidate with the oracle
recs = disc_auto_range(LucasParams(6), 1, 1500, threads=4)
lost = [r for r in recs if r.candidate is not None]
print(f"k=6: {len(recs)} values, {len(lost)} where the oracle beat the candidate")
for r in lost[:5]:
    print("  ", r)

# Values outside A_k u B_k
for k in (3, 4, 5, 6, 7):
    print(k, [r.value for r in fk_extract(LucasParams(k), 1500)])

# k = 1 mod every m <= 250 behaves like k = 1 for small n, so 250 shows up
big = LucasParams(1 + math.lcm(*range(1, 251)))
print("k = 1 + lcm(1..250):", [r.value for r in fk_extract(big, 300)])

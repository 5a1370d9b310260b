"""S-units, the set M and the 2^a 5^b gap check."""
import numpy as np

from disclab import SUnitSpec, gap_check_25, sunit_next
from disclab.discriminator import m_density, m_set_member, m_set_member_exact
from disclab.sunit import gap_failures_25, levi_ben_gerson, sunits_upto, thirty_seven_exponents

spec = SUnitSpec((2, 5), (1, 0))
print(sunits_upto(spec, 200))
print(sunit_next(spec, 97), sunit_next(SUnitSpec((2, 5), (1, 1)), 17))

# M: b with frac(b log2 5) >= 1 - log2(6/5)
print([b for b in range(1, 40) if m_set_member(b)])
print(all(m_set_member(b) == m_set_member_exact(b) for b in range(1, 2000)))
for count in (10**2, 10**3, 10**4, 10**5):
    print(count, float(m_density(count)))

# Plain float estimate for comparison
theta = np.log2(5.0)
frac = (np.arange(1, 10**5 + 1) * theta) % 1.0
print("float64 density:", float((frac >= 1 - np.log2(1.2)).mean()))

# Where does [5n/3, 37n/19) miss every 2^a 5^b?
fails = gap_failures_25(1, 10**5)
print(len(fails), fails[-5:])
print(gap_check_25(2 ** 24 * 5 ** 3))

print(thirty_seven_exponents())
print(levi_ben_gerson(10**4))

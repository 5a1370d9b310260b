"""Discriminators of the Lucas family U_{n+2} = (4k+2) U_{n+1} - U_n."""
from disclab.bigmod import (LucasParams, QuadIntMod, SequenceWindow, divisors, factorize,
                            is_prime, legendre, lucas_u, lucas_u_mod, lucas_v, nu_p,
                            quad_pow_mod, window_mod)
from disclab.appearance import (AppearanceResult, SetMembership, alpha_k_empirical,
                                is_special, membership, z_brute, z_of, z_of_prime,
                                z_of_prime_power)
from disclab.discriminator import (DiscriminatorRecord, MSetParams, disc_auto,
                                   disc_auto_range, disc_brute, disc_brute_table,
                                   disc_closed, disc_closed_general, disc_closed_k1,
                                   disc_closed_k2, discriminates, fk_extract, image_k1,
                                   m_density, m_set_member)
from disclab.errors import CapacityError, DiscLabError, InconsistencyError, UndecidableError
from disclab.sunit import SUnitSpec, gap_check_25, sunit_next

__version__ = "0.1.0"

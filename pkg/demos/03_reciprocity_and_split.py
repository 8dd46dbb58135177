# %% [markdown]
# # Reciprocity and the private/public power split
#
# Reversing the information flow (transpose every matrix, swap antenna
# roles and cross gains) permutes the six zero-Q bounds, so both channels
# share R_o(0).

# %%
import numpy as np

from fbmimo import bounds, random_channel, reciprocal
from fbmimo.channel import AntennaConfig, LinkGains

ch = random_channel(AntennaConfig(3, 2, 2, 4), LinkGains(1e4, 1e2, 1e3, 1e4), seed=1)
rec = reciprocal(ch)
a, b = bounds.six_bounds_zero(ch), bounds.six_bounds_zero(rec)
print("original:  ", [round(x, 4) for x in a])
print("reciprocal:", [round(x, 4) for x in b])
print("R_o(0) equal:", np.allclose(bounds.ro0_region(ch).as_tuple(),
                                  bounds.ro0_region(rec).as_tuple()))

# %% [markdown]
# The inner bound sends a private part that arrives at the unintended
# receiver no louder than the noise.

# %%
ps = bounds.power_split(ch)
rx = bounds.received_private(ch.h12, ch.gains.rho12, ps.w1p)
print("eig(K1p):", np.round(np.linalg.eigvalsh(ps.k1p), 6))
print("largest received private eigenvalue:", float(np.linalg.eigvalsh(rx).max()))

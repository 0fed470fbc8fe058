# # Entanglement from the vacuum strip
#
# Two LC oscillators start in |+>|+> and couple to the strip's phonons.  At
# zero temperature the decoherence is mild and the logarithmic negativity
# builds up once the oscillators are causally connected.  Every tau = 2 pi j
# the strip returns to its vacuum and the state is exactly pure again.

# %%
import math

import numpy as np

from phonent import DimensionlessConfig, negativity_curve, rephasing_negativity

sigma = math.pi / 2
taus = np.linspace(0.0, 4 * math.pi, 801)

# %%
for lam in (0.1, 0.2, 4 / math.pi ** 2, 1.0):
    series = negativity_curve(DimensionlessConfig(lam, sigma), taus)
    first = taus[np.argmax(series.values > 0)]
    print("lambda %.3f: first entangled tau %.3f, E_N(2 pi) %.6f, max %.4f" % (
        lam, first, series.values[np.argmin(abs(taus - 2 * math.pi))], series.values.max()))

# %% [markdown]
# Nothing happens before tau = sigma.  At the rephasing times the
# negativity follows a simple law in the cross phase, which reaches one
# ebit for lambda = 4 / pi^2 at sigma = pi / 2.

# %%
for j in (1, 2, 3):
    print(j, rephasing_negativity(4 / math.pi ** 2, sigma, j))

# %% [markdown]
# For that coupling the cross phase at tau = 4 pi is a full pi and the
# state is a product again, so the second peak is absent.  The CLI writes
# the curves with ``phonent fig3``.

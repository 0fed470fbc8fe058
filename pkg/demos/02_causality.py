# # Causal cross phase
#
# The phase coupling the two oscillators, p2, must vanish until a phonon
# had time to cross the gap between them, tau < sigma.  The exact mode sum
# respects that.  Truncating it to a handful of modes does not.

# %%
import math

import numpy as np

from phonent import DimensionlessConfig, p2_closed, p_mode_sum

cfg = DimensionlessConfig(lam=1.0, sigma=math.pi / 2)

# %%
taus = np.linspace(0.0, 2 * math.pi, 13)
print("  tau      exact       J=1        J=5")
for t in taus:
    print("%5.2f  %+.3e  %+.3e  %+.3e" % (
        t, p2_closed(t, cfg), p_mode_sum("p2", t, cfg, 1), p_mode_sum("p2", t, cfg, 5)))

# %% [markdown]
# Before the signal arrives the exact phase is zero to rounding, while the
# single-mode model already shows a large spurious value.

# %%
early = np.linspace(0.0, cfg.sigma, 1000)
print("max |p2| before arrival:", np.max(np.abs(p2_closed(early, cfg))))
print("max |p2, J=1| there   :", max(abs(p_mode_sum("p2", t, cfg, 1)) for t in early))

# %% [markdown]
# The same data as CSV: ``phonent fig2 --out fig2.csv``.

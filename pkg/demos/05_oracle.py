# # Brute-force check
#
# The reduced dynamics can be checked without any closed form: keep two
# strip modes, each truncated at a few phonons, build the full Hamiltonian
# and evolve exactly.  Tracing out the strip must give the analytic state
# restricted to those same two modes.

# %%
import math

import numpy as np

from phonent import REFERENCE_DEVICE, derive
from phonent.evolution import FockDensityMatrix
from phonent.oracle import BathTruncation, analytic_truncated_reference, evolve_and_reduce

dp = derive(REFERENCE_DEVICE)
trunc = BathTruncation.from_device(dp, modes=2, n_max=14)
print("Hilbert space dimension", trunc.dim, "coupling scale", trunc.scale)

# %%
rho0 = FockDensityMatrix.plus_plus()
for tau in np.linspace(0.0, 2 * math.pi, 5):
    brute = evolve_and_reduce(np.full(4, 0.5), tau, trunc).matrix
    ref = analytic_truncated_reference(rho0, tau, trunc).matrix
    print("tau %.3f  max deviation %.1e" % (tau, np.max(np.abs(brute - ref))))

# %% [markdown]
# Raising the phonon cutoff should not change the answer.

# %%
finer = BathTruncation.from_device(dp, modes=2, n_max=18)
tau = 2.0
print(np.max(np.abs(evolve_and_reduce(np.full(4, 0.5), tau, finer).matrix
                    - evolve_and_reduce(np.full(4, 0.5), tau, trunc).matrix)))

# # Unit-circle polylogarithms
#
# Every closed form in the package is built from the real and imaginary
# parts of Li_s(e^{i theta}) for s = 2 and 3.  The even and odd parts of
# order 2 and 3 that we need are either polynomials (sl2, sl3) or a fast
# series (cl3).  This script checks them against brute-force sums.

# %%
import math

import numpy as np

from phonent import specfun

# %% [markdown]
# Known values at special angles.

# %%
z3 = specfun.ZETA3
for label, got, want in [
    ("cl3(0)", specfun.cl3(0.0), z3),
    ("cl3(pi)", specfun.cl3(math.pi), -0.75 * z3),
    ("cl3(pi/2)", specfun.cl3(math.pi / 2), -3 * z3 / 32),
    ("sl2(0)", specfun.sl2(0.0), math.pi ** 2 / 6),
    ("sl3(pi/2)", specfun.sl3(math.pi / 2), math.pi ** 3 / 32),
]:
    print("%-10s %+.15f  err %.1e" % (label, got, abs(got - want)))

# %% [markdown]
# Compare with the defining sums over n up to 10^5.  The cubic sums have a
# tail below 1e-10, so agreement should be at that level.

# %%
theta = np.linspace(0.1, 2 * math.pi - 0.1, 7)
n = np.arange(1, 100_001, dtype=float)
arg = np.outer(theta, n)
print("max |cl3 - sum cos/n^3| =", np.max(np.abs(specfun.cl3(theta) - np.cos(arg) @ n ** -3)))
print("max |sl3 - sum sin/n^3| =", np.max(np.abs(specfun.sl3(theta) - np.sin(arg) @ n ** -3)))

# %% [markdown]
# The complex wrapper bundles both parts.  Angles outside [0, 2 pi) are
# folded back before evaluation.

# %%
print(specfun.li_unit(3, math.pi / 3))
print(specfun.li_unit(3, math.pi / 3 + 4 * math.pi))

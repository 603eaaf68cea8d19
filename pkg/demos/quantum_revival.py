# %% [markdown]
# # Perfect return and fractional revival
#
# Symmetrizing the generator gives a Hamiltonian whose eigenvectors are
# the normalized polynomials. All eigenvalues are rational, so every
# amplitude returns to the identity after a finite time ``t0``.

# %%
from fractions import Fraction
from pathlib import Path

import numpy as np

from xkraw import ModelConfig
from xkraw.quantum_walk import amplitude_matrix, perfect_return_time, pst_scan, revival_report
from xkraw.render import BubblePlotSpec, fmt, render_svg

for N, p in ((5, Fraction(1, 4)), (5, Fraction(1, 2)), (6, Fraction(1, 2))):
    print(N, p, perfect_return_time(ModelConfig(N, p)))

# %% [markdown]
# At ``p = 1/2`` the state started at site 1 splits over sites of a single
# parity at half the period.

# %%
cfg = ModelConfig(5, Fraction(1, 2))
t0 = perfect_return_time(cfg)
times = [t0 * Fraction(k, 4) for k in range(5)]
mags = np.array([amplitude_matrix(cfg, t).magnitudes[1] for t in times])
print(np.round(mags, 4))
rep = revival_report(cfg, 1)
print(rep.half_time_support, rep.theorem_prediction, rep.agreement)

# %%
out = Path("revival_N5.svg")
out.write_text(render_svg(BubblePlotSpec(mags, tuple(fmt(t) for t in times),
                                         title="|c_1j(t)|, N = 5, p = 1/2")))
print("wrote", out)

# %% [markdown]
# For ``N = 6`` the kept parity matches the start site.

# %%
cfg6 = ModelConfig(6, Fraction(1, 2))
for start in range(cfg6.size):
    print(start, revival_report(cfg6, start).half_time_support.value)

# %% [markdown]
# No pair of distinct sites ever exchanges the full amplitude.

# %%
for p in (Fraction(1, 4), Fraction(1, 2)):
    c = ModelConfig(5, p)
    T = perfect_return_time(c)
    scan = pst_scan(c, [T * Fraction(k, 2000) for k in range(1, 2001)])
    print(p, f"{scan.overall_max:.4f}", scan.pst)

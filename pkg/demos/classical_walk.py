# %% [markdown]
# # A birth and death process with long jumps
#
# The recurrence coefficients become transition rates of a continuous-time
# chain on ``{0..N, N+3}``. Transition probabilities have a closed form in
# terms of the polynomials, which we compare with two independent routes.

# %%
from fractions import Fraction

import numpy as np

from xkraw import ModelConfig
from xkraw.classical_walk import (
    gillespie_sample,
    matexp_oracle,
    rate_matrix,
    stationary,
    total_variation,
    transition_matrix,
)

cfg = ModelConfig(5, Fraction(1, 4))
A = rate_matrix(cfg)
print(np.array([[str(v) for v in row] for row in A.entries]))

# %% [markdown]
# Closed form against scaling and squaring.

# %%
for t in (0.1, 1.0, 10.0):
    P = transition_matrix(cfg, t).entries
    E = matexp_oracle(A, t).entries
    print(f"t = {t:5}: max difference {np.abs(P - E).max():.2e}")

# %% [markdown]
# And against a simulation.

# %%
emp = gillespie_sample(cfg, start=0, horizon=1.0, trajectories=100_000, seed=1)
print("TV distance", total_variation(emp.frequencies, transition_matrix(cfg, 1.0).row(0)))

# %% [markdown]
# The chain forgets its start quickly. The limit is known exactly.

# %%
r = stationary(cfg)
print([str(v) for v in r])
for t in (0.5, 2.0, 8.0, 32.0):
    gap = np.abs(transition_matrix(cfg, t).entries - np.array([float(v) for v in r])).max()
    print(f"t = {t:4}: distance to stationary {gap:.2e}")

# %% [markdown]
# # Exceptional Krawtchouk polynomials
#
# A Darboux step applied to the ordinary Krawtchouk family drops degree
# ``N+1`` and ``N+2`` and adds degree ``N+3``. The new family lives on the
# shifted grid ``x = -1..N`` and stays orthogonal for a positive weight.

# %%
from fractions import Fraction

from xkraw import ModelConfig, build_table, recurrence_coeffs

cfg = ModelConfig(5, Fraction(1, 4))
tab = build_table(cfg)
print("labels", cfg.labels)
print("grid  ", cfg.grid)

# %% [markdown]
# Values are exact rationals. The last row is the degree ``N+3`` member.

# %%
for n in cfg.labels:
    print(f"{n:>2}", [str(tab.value(n, x)) for x in cfg.grid])

# %% [markdown]
# Orthogonality is an exact identity, not a floating point statement.

# %%
G = tab.gram()
print(all(G[i][j] == (tab.norms[i] if i == j else 0)
          for i in range(cfg.size) for j in range(cfg.size)))
print("weights", [str(w) for w in tab.weights])
print("norms  ", [str(h) for h in tab.norms])

# %% [markdown]
# The recurrence in the degree has seven terms. At ``p = 1/2`` the
# coefficients at offsets 2 and -2 vanish.

# %%
for p in (Fraction(1, 4), Fraction(1, 2)):
    c = recurrence_coeffs(ModelConfig(5, p), 2)
    print(p, {k: str(v) for k, v in c.by_offset().items()})

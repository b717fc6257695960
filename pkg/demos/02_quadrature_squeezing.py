# %% [markdown]
# # Quadrature squeezing against the generalized bound
#
# With Q = (A + A+)/sqrt(2) and P = (A - A+)/(sqrt(2) i) the uncertainty
# product is bounded by |<[A, A+]>|/2, which depends on the state.  A
# quadrature is squeezed when its variance falls below that bound.

# %%
import numpy as np

from gensqueeze import SpectrumModel, squeezing_sweep

rm = SpectrumModel.rosen_morse(b=1.0, d=1.0)
alphas = np.linspace(0, 8, 9)

# %% [markdown]
# At xi = 0 the states are intelligent: dQ = dP and the product sits on the
# bound.

# %%
for row in squeezing_sweep(rm, alphas, 0.0):
    print(f"alpha={row.alpha.real:4.1f} dQ={row.dQ:.6f} dP={row.dP:.6f} gap={row.product_gap:+.1e}")

# %% [markdown]
# Positive real xi squeezes Q and negative xi squeezes P.  The squeezed
# variance is a fixed fraction (1 - xi)/(1 + xi) of the bound at every alpha.

# %%
for xi in (0.2, -0.2, 0.5, -0.5):
    rows = squeezing_sweep(rm, alphas, xi)
    ratios = [r.squeeze_ratio for r in rows]
    print(f"xi={xi:+.1f} squeezes {rows[3].squeezed_quadrature}  ratio {min(ratios):.4f}..{max(ratios):.4f}")

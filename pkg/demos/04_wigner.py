# %% [markdown]
# # Wigner function
#
# W(z) = sum C[m1, m2] Phi[m1, m2](z) with Laguerre kernels.  The fast
# kernel pairs each off-diagonal with its conjugate and walks one
# recurrence per diagonal offset; the naive kernel evaluates every pair.

# %%
import time

import numpy as np

from gensqueeze import (
    DensityMatrix,
    SpectrumModel,
    StateParams,
    negativity_summary,
    scaled_coefficients,
    wigner_fast,
    wigner_naive_grid,
)

axis = np.linspace(-4, 4, 81)
for m in range(4):
    grid = wigner_fast(DensityMatrix.fock(m), axis, axis)
    print(f"|{m}>  W(0)={grid.at(0j):+.3f}  integral={grid.integral:.6f}")

# %% [markdown]
# Negativity grows with xi for Rosen-Morse squeezed states.

# %%
rm = SpectrumModel.rosen_morse(b=1.0, d=1.0)
axis = np.linspace(-8, 8, 101)
for xi in (0.0, 0.6, 0.8, 0.95):
    rho = DensityMatrix.from_state(scaled_coefficients(rm, StateParams(3.0, xi)))
    s = negativity_summary(wigner_fast(rho, axis, axis))
    print(f"xi={xi:<5} dim={rho.dim:<4d} min W={s.min_value:+.4f}  negative volume={s.negative_volume:.4f}")

# %% [markdown]
# Both kernels agree; the fast one is much quicker.

# %%
rho = DensityMatrix.from_state(scaled_coefficients(rm, StateParams(2.0, 0.6)))
axis = np.linspace(-5, 5, 61)
t0 = time.perf_counter()
naive = wigner_naive_grid(rho, axis, axis)
t1 = time.perf_counter()
fast = wigner_fast(rho, axis, axis)
t2 = time.perf_counter()
print(f"N={rho.dim - 1} naive {1e3 * (t1 - t0):.0f} ms, fast {1e3 * (t2 - t1):.0f} ms, "
      f"max diff {np.max(np.abs(naive.values - fast.values)):.1e}")

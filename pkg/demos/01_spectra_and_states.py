# %% [markdown]
# # Spectra and squeezed states
#
# A spectrum function k(n) fixes the deformed ladder operator
# A|n> = sqrt(k(n)) |n-1>.  The harmonic oscillator has k(n) = n; the
# trigonometric Rosen-Morse well has quadratically growing gaps.

# %%
import numpy as np

from gensqueeze import (
    SpectrumModel,
    StateParams,
    closed_form_J,
    eigen_residual,
    k_values,
    recurrence_J,
    scaled_coefficients,
)

ho = SpectrumModel.harmonic()
rm = SpectrumModel.rosen_morse(b=1.0, d=1.0)
n = np.arange(8)
print("n      ", n)
print("k_ho   ", k_values(ho, n))
print("k_rm   ", np.round(k_values(rm, n), 4))

# %% [markdown]
# The eigenstates of A + xi A+ have Fock amplitudes J(n)/sqrt(k(1)...k(n)).
# J(n) obeys a three-term recurrence and also has a closed form as a
# nested sum; the two agree term by term.

# %%
alpha, xi = 1.2 + 0.3j, 0.4
J = recurrence_J(rm, alpha, xi, 10)
C = [closed_form_J(rm, alpha, xi, j) for j in range(11)]
print("max relative difference:", np.max(np.abs(J - C) / np.abs(J)))

# %% [markdown]
# The raw J(n) grow factorially.  The production path recurs on the scaled
# amplitudes directly and stops once the tail weight drops below 1e-12.

# %%
for x in (0.0, 0.6, 0.8, 0.95):
    state = scaled_coefficients(rm, StateParams(3.0, x))
    print(
        f"xi={x:<5} N_used={state.n_used:<4d} <n>={state.mean_n:8.4f} "
        f"tail={state.tail_mass:.1e} residual={eigen_residual(state):.1e}"
    )

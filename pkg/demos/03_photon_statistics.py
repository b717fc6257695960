# %% [markdown]
# # Photon statistics
#
# The Mandel parameter Q = var(n)/<n> - 1 is negative for sub-Poissonian
# light.  On the Rosen-Morse spectrum even the xi = 0 states are
# sub-Poissonian, and squeezing pushes Q further down.

# %%
import numpy as np

from gensqueeze import SpectrumModel, mandel_sweep

rm = SpectrumModel.rosen_morse(b=1.0, d=1.0)
alphas = np.linspace(0.1, 40, 400)
curves = mandel_sweep(rm, alphas, [0.0, 0.2, 0.4, 0.6])

# %%
for xi, q in curves.items():
    i = int(np.argmin(q))
    print(f"xi={xi:.1f}  min Q={q[i]:+.4f} at alpha={alphas[i]:5.2f}  Q<0 on {np.sum(q < 0)}/{len(q)} points")

# %% [markdown]
# At small alpha the curves are ordered differently; the xi = 0.6 curve
# only drops below xi = 0.4 further out.

# %%
for a in (0.5, 2.0, 10.0, 30.0):
    j = int(np.argmin(np.abs(alphas - a)))
    print(f"alpha={alphas[j]:5.2f}  " + "  ".join(f"{xi}:{q[j]:+.3f}" for xi, q in curves.items()))

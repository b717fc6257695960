"""Spectrum functions k(n) and the ladder-operator matrix elements they induce.

A spectrum model fixes the deformed ladder operators through

    A |n>  = sqrt(k(n))   |n-1>
    A+ |n> = sqrt(k(n+1)) |n+1>

so that ``A+ A |n> = k(n) |n>``.  ``k(0) = 0`` for every model; the
factorial product ``k(n)! = k(1) ... k(n)`` uses the empty-product
convention ``k(0)! = 1`` and is never formed explicitly by this package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigInvalid, TabulatedOutOfRange

__all__ = [
    "SpectrumKind",
    "SpectrumModel",
    "k",
    "k_values",
    "rosen_morse_energy",
    "ladder_factor_sqrt",
    "registered_models",
]


class SpectrumKind(str, enum.Enum):
    HARMONIC_OSCILLATOR = "ho"
    ROSEN_MORSE = "rosen_morse"
    TABULATED = "table"


@dataclass(frozen=True)
class SpectrumModel:
    """Immutable description of a spectrum function k(n).

    Parameters
    ----------
    kind : SpectrumKind
        Which family of spectra.
    b, d : float
        Rosen-Morse strength and shape (ignored by the other kinds).
    table : tuple of float
        ``table[i]`` is ``k(i + 1)`` for tabulated models.
    """

    kind: SpectrumKind = SpectrumKind.HARMONIC_OSCILLATOR
    b: float = 0.0
    d: float = 0.0
    table: tuple = field(default=(), repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", SpectrumKind(self.kind))
        if self.kind is SpectrumKind.ROSEN_MORSE:
            if not (math.isfinite(self.b) and math.isfinite(self.d)):
                raise ValueError("Rosen-Morse parameters must be finite")
            if self.b < 0 or self.d < 0:
                raise ValueError(f"Rosen-Morse needs b, d >= 0, got b={self.b}, d={self.d}")
        if self.kind is SpectrumKind.TABULATED:
            table = tuple(float(v) for v in self.table)
            if not table:
                raise ValueError("tabulated spectrum needs at least one entry")
            if not all(math.isfinite(v) and v > 0 for v in table):
                raise ValueError("tabulated k(n) must be finite and strictly positive")
            object.__setattr__(self, "table", table)

    # constructors -------------------------------------------------------

    @classmethod
    def harmonic(cls) -> "SpectrumModel":
        return cls(SpectrumKind.HARMONIC_OSCILLATOR)

    @classmethod
    def rosen_morse(cls, b: float = 1.0, d: float = 1.0) -> "SpectrumModel":
        return cls(SpectrumKind.ROSEN_MORSE, b=float(b), d=float(d))

    @classmethod
    def tabulated(cls, table: Sequence[float]) -> "SpectrumModel":
        return cls(SpectrumKind.TABULATED, table=tuple(table))

    @classmethod
    def from_config(cls, cfg: Mapping) -> "SpectrumModel":
        """Build a model from a ``spectrum`` config section.

        Recognised keys are ``kind`` (``"ho"``, ``"rosen_morse"`` or
        ``"table"``), ``b``, ``d`` and ``table``.
        """
        kind = cfg.get("kind", "ho")
        try:
            kind = SpectrumKind(kind)
        except ValueError:
            raise ConfigInvalid("spectrum.kind", f"unknown kind {kind!r}") from None
        try:
            if kind is SpectrumKind.HARMONIC_OSCILLATOR:
                return cls.harmonic()
            if kind is SpectrumKind.ROSEN_MORSE:
                return cls.rosen_morse(cfg.get("b", 1.0), cfg.get("d", 1.0))
            if "table" not in cfg:
                raise ConfigInvalid("spectrum.table", "required for kind 'table'")
            return cls.tabulated(cfg["table"])
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigInvalid):
                raise
            raise ConfigInvalid("spectrum", str(exc)) from None

    def to_config(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is SpectrumKind.ROSEN_MORSE:
            out.update(b=self.b, d=self.d)
        elif self.kind is SpectrumKind.TABULATED:
            out["table"] = list(self.table)
        return out

    @property
    def max_n(self) -> float:
        """Largest admissible argument of k (infinite unless tabulated)."""
        if self.kind is SpectrumKind.TABULATED:
            return len(self.table)
        return math.inf

    def __call__(self, n):
        return k_values(self, n)


def k_values(model: SpectrumModel, n):
    """Vectorised k(n); accepts an integer or an integer array."""
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("k(n) is defined for n >= 0 only")
    nf = arr.astype(float)
    if model.kind is SpectrumKind.HARMONIC_OSCILLATOR:
        out = nf
    elif model.kind is SpectrumKind.ROSEN_MORSE:
        b, d = model.b, model.d
        out = nf * (nf + 2 * d + 2) * (1 + b * b / ((d + 1) ** 2 * (nf + d + 1) ** 2))
    else:
        if np.any(arr > len(model.table)):
            raise TabulatedOutOfRange(
                f"k({int(np.max(arr))}) requested but table stops at k({len(model.table)})"
            )
        lookup = np.concatenate(([0.0], model.table))
        out = lookup[arr.astype(int)]
    if np.ndim(out) == 0:
        return float(out)
    return out


def k(model: SpectrumModel, n: int) -> float:
    """Spectrum function k(n) of ``model``; ``k(0) == 0`` always."""
    if int(n) != n:
        raise ValueError(f"n must be an integer, got {n!r}")
    return k_values(model, int(n))


def rosen_morse_energy(b: float, d: float, n):
    """Trigonometric Rosen-Morse eigenvalue ``(n+d+1)**2 - b**2/(n+d+1)**2``."""
    if d <= -1:
        raise ValueError("d must exceed -1")
    s = np.asarray(n, dtype=float) + d + 1
    out = s * s - b * b / (s * s)
    return float(out) if np.ndim(out) == 0 else out


def ladder_factor_sqrt(model: SpectrumModel, n: int) -> float:
    """Matrix element ``<n-1|A|n> = sqrt(k(n))`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("ladder factor needs n >= 1")
    return math.sqrt(k(model, n))


def registered_models(seed: int = 1234, table_length: int = 64) -> dict:
    """Canonical models used by sweeps and the property suites.

    The tabulated entry is a seeded random positive sequence with linear
    growth and non-monotone wiggles, so it exercises the construction on a
    spectrum with no closed form at all.
    """
    rng = np.random.default_rng(seed)
    table = rng.uniform(0.5, 4.0, size=table_length) * np.arange(1, table_length + 1)
    return {
        "ho": SpectrumModel.harmonic(),
        "rosen_morse_b1_d1": SpectrumModel.rosen_morse(1.0, 1.0),
        "rosen_morse_b2_d0.5": SpectrumModel.rosen_morse(2.0, 0.5),
        "rosen_morse_b0_d0": SpectrumModel.rosen_morse(0.0, 0.0),
        "table_random": SpectrumModel.tabulated(table.tolist()),
    }

"""Cosine-module mixing: reconstruction of hold-interpolated trains.

Reconstruction multiplies the interpolated signal by a periodic bank of
harmonic cosines ("modules") and lowpass filters the product, folding the
sampling replicas back onto the baseband. All-ones weights give the
classical method. The comb weights (all ones with the last halved for even
periods) collapse the bank to `period` times a periodic impulse train, which
recovers signals interpolated by sh or li exactly.

At most floor(period/2) modules are usable: the cosine at harmonic
j + period/2 aliases onto the one at harmonic j (with alternating sign), so
further modules only distort the bank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import InterpKernel, frequency_response
from .signals import Passband, Signal, ideal_lowpass

__all__ = [
    "ModuleCoeffs",
    "max_modules",
    "classical_coeffs",
    "comb_coeffs",
    "modulation_kernel",
    "reconstruct",
    "passband_gain",
    "error_metric",
]


def max_modules(period: int) -> int:
    """Largest usable module count for a hold period: floor(period / 2)."""
    if period < 1:
        raise ValueError("hold period must be >= 1")
    return period // 2


@dataclass(frozen=True)
class ModuleCoeffs:
    """Weights c_1..c_M of the cosine modules for one hold period."""

    period: int
    c: tuple[float, ...]

    def __post_init__(self):
        cap = max_modules(self.period)
        weights = tuple(float(v) for v in self.c)
        if len(weights) > cap:
            raise ValueError(
                f"{len(weights)} modules exceed the maximum {cap} for period {self.period}"
            )
        if not all(math.isfinite(v) for v in weights):
            raise ValueError("module weights must all be finite")
        object.__setattr__(self, "c", weights)

    @property
    def modules(self) -> int:
        return len(self.c)


def classical_coeffs(period: int, modules: int) -> ModuleCoeffs:
    """Unit weights: the classical module bank (every cosine multiplied by 2)."""
    if modules < 0:
        raise ValueError("module count must be >= 0")
    return ModuleCoeffs(period, (1.0,) * modules)


def comb_coeffs(period: int) -> ModuleCoeffs:
    """Weights whose module bank equals `period` times an impulse train.

    Even periods use the full budget with the last weight halved (the
    Nyquist-harmonic cosine is its own alias pair); odd periods need no
    halving.
    """
    if period % 2 == 0:
        c = (1.0,) * (period // 2 - 1) + (0.5,)
    else:
        c = (1.0,) * ((period - 1) // 2)
    return ModuleCoeffs(period, c)


def modulation_kernel(coeffs: ModuleCoeffs, n: int) -> Signal:
    """Periodic module bank m[t] = 1 + sum_j 2 c_j cos(2 pi j t / period).

    One period is evaluated and tiled, so periodicity is exact; the mean over
    any full period is 1.
    """
    period = coeffs.period
    if n % period:
        raise ValueError(f"module period {period} does not divide length {n}")
    t = np.arange(period)
    one_period = np.ones(period)
    for j, weight in enumerate(coeffs.c, start=1):
        one_period += 2.0 * weight * np.cos(2.0 * np.pi * j * t / period)
    return Signal(np.tile(one_period, n // period))


def reconstruct(s: Signal, coeffs: ModuleCoeffs, band: Passband) -> Signal:
    """Module-mix `s` and lowpass filter the product to `band`. Linear in s."""
    mixed = Signal(s.samples * modulation_kernel(coeffs, len(s)).samples)
    return ideal_lowpass(mixed, band)


def passband_gain(
    kernel: InterpKernel, coeffs: ModuleCoeffs, n: int, band: Passband
) -> np.ndarray:
    """Effective passband transfer function G(k), returned for k = -K..K.

    G(k) = (1/period) * sum_{j=-M..M} c_|j| H((k - j n/period) mod n) with
    c_0 = 1. Reconstruction of a signal band-limited inside the sampling
    Nyquist bin satisfies X_hat(k) = G(k) X(k), so unit gain on the band
    means perfect recovery.
    """
    period = kernel.period
    if coeffs.period != period:
        raise ValueError(
            f"kernel period {period} does not match coefficient period {coeffs.period}"
        )
    if n % period:
        raise ValueError(f"hold period {period} does not divide length {n}")
    k_max = band.half_width_bins
    if k_max > n // 2:
        raise ValueError(f"passband half-width {k_max} exceeds N/2 = {n // 2}")
    normalized = frequency_response(kernel, n) / period
    shift = n // period
    bins = np.arange(-k_max, k_max + 1)
    gain = normalized[bins % n].astype(complex)
    for j, weight in enumerate(coeffs.c, start=1):
        gain += weight * (
            normalized[(bins - j * shift) % n] + normalized[(bins + j * shift) % n]
        )
    return gain


def error_metric(
    kernel: InterpKernel, coeffs: ModuleCoeffs, n: int, band: Passband
) -> float:
    """Replica-sum error sum_{k=-K..K} |G(k) - 1|^2.

    The magnitude square makes the metric meaningful for causal kernels,
    whose responses are complex; for zero-phase kernels it reduces to a plain
    square.
    """
    gain = passband_gain(kernel, coeffs, n, band)
    return float(np.sum(np.abs(gain - 1.0) ** 2))

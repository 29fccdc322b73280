"""Hold-type interpolation kernels and their application to sample trains.

Built-in kernels: causal sample-and-hold (`sh`), zero-phase linear
interpolation (`li`) and the general nth-order hold (`hold:<n>`, the
(n+1)-fold self-convolution of a rectangle). Taps always sum to the hold
period, so dividing a replica sum by the period gives unit DC gain.

Convolution is circular: the whole analysis lives on N-point DFTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .signals import Signal

__all__ = [
    "InterpKernel",
    "sh_kernel",
    "li_kernel",
    "nth_order_hold",
    "custom_kernel",
    "kernel_from_id",
    "interpolate",
    "frequency_response",
]

_TAP_SUM_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class InterpKernel:
    """Impulse response of an interpolator.

    `taps[origin]` is the lag-zero value. The sample-and-hold kernel is
    causal (origin 0, matching hardware); higher-order holds are centred so
    their frequency response stays as close to zero-phase as the tap count
    allows.
    """

    taps: np.ndarray
    origin: int
    period: int
    id: str

    def __post_init__(self):
        taps = np.array(self.taps, dtype=float)
        if taps.ndim != 1 or taps.size == 0:
            raise ValueError("kernel taps must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(taps)):
            raise ValueError("kernel taps must all be finite")
        if not 0 <= self.origin < taps.size:
            raise ValueError(f"origin {self.origin} outside taps [0, {taps.size})")
        if self.period < 1:
            raise ValueError("hold period must be >= 1")
        total = float(taps.sum())
        if abs(total - self.period) > _TAP_SUM_RTOL * self.period:
            raise ValueError(
                f"kernel taps sum to {total!r}, expected the hold period {self.period}"
            )
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)


def sh_kernel(period: int) -> InterpKernel:
    """Causal sample-and-hold: hold each sample for `period` steps."""
    return InterpKernel(np.ones(period), 0, period, "sh")


def li_kernel(period: int) -> InterpKernel:
    """Zero-phase linear interpolator: symmetric triangle with peak 1."""
    j = np.arange(2 * period - 1)
    taps = 1.0 - np.abs(j - (period - 1)) / period
    return InterpKernel(taps, period - 1, period, "li")


def nth_order_hold(order: int, period: int) -> InterpKernel:
    """(order+1)-fold self-convolution of the length-`period` rectangle.

    Order 0 is the sample-and-hold, order 1 the linear triangle. Beyond
    order 1 the kernel is smoother but no longer interpolating.
    """
    if order < 0:
        raise ValueError("hold order must be >= 0")
    taps = np.ones(period)
    for _ in range(order):
        taps = np.convolve(taps, np.ones(period))
    taps = taps / float(period) ** order
    origin = 0 if order == 0 else (taps.size - 1) // 2
    return InterpKernel(taps, origin, period, f"hold:{order}")


def custom_kernel(path: str | Path, period: int) -> InterpKernel:
    """Load taps from a text file: whitespace-separated values, then a line
    `origin=<int>`."""
    origin = None
    values: list[float] = []
    for line in Path(path).read_text().splitlines():
        stripped = line.strip()
        if stripped.startswith("origin="):
            origin = int(stripped[len("origin=") :])
        elif stripped:
            values.extend(float(token) for token in stripped.split())
    if origin is None:
        raise ValueError(f"{path}: missing 'origin=<int>' line")
    return InterpKernel(np.array(values), origin, period, f"custom:{path}")


def kernel_from_id(kernel_id: str, period: int) -> InterpKernel:
    """Build a kernel from its textual id: sh | li | hold:<n> | custom:<path>."""
    if kernel_id == "sh":
        return sh_kernel(period)
    if kernel_id == "li":
        return li_kernel(period)
    if kernel_id.startswith("hold:"):
        try:
            order = int(kernel_id[len("hold:") :])
        except ValueError:
            raise ValueError(f"bad hold order in kernel id {kernel_id!r}") from None
        return nth_order_hold(order, period)
    if kernel_id.startswith("custom:"):
        return custom_kernel(kernel_id[len("custom:") :], period)
    raise ValueError(f"unknown kernel id {kernel_id!r}")


def interpolate(train: Signal, kernel: InterpKernel) -> Signal:
    """Circular convolution of a sample train with the kernel taps.

    Taps are shifted so the origin tap lands on each retained sample, which
    makes interpolating kernels (sh, li) reproduce the train's values at the
    sample positions exactly.
    """
    n = len(train)
    if n % kernel.period:
        raise ValueError(f"kernel period {kernel.period} does not divide length {n}")
    if kernel.taps.size > n:
        raise ValueError(f"kernel has {kernel.taps.size} taps but the signal only {n} samples")
    out = np.zeros(n)
    for m, tap in enumerate(kernel.taps):
        if tap != 0.0:
            out += tap * np.roll(train.samples, m - kernel.origin)
    return Signal(out)


def frequency_response(kernel: InterpKernel, n: int) -> np.ndarray:
    """N-point DFT of the origin-aligned, zero-padded kernel taps.

    H(k) = sum_m taps[m] exp(-i 2 pi k (m - origin) / n); H(0) equals the
    hold period by the tap-sum normalization.
    """
    if kernel.taps.size > n:
        raise ValueError(f"kernel has {kernel.taps.size} taps but the DFT size is {n}")
    padded = np.zeros(n)
    padded[(np.arange(kernel.taps.size) - kernel.origin) % n] = kernel.taps
    return np.fft.fft(padded)

"""Deterministic sweep harness: module-count and input-noise experiments.

Every trial is a pure function of (master_seed, trial_index): the test
signal is seeded with master_seed + trial_index and, when an input SNR is
requested, the injected noise with that value plus _NOISE_SEED_OFFSET.
Results are therefore identical whether trials run sequentially or in
parallel. Optimized weights are solved once per (kernel, period, length,
modules, passband) and cached, lookup-table style.

Per-trial SNRs of +inf (exact recovery) are clamped to SNR_CLAMP_DB before
averaging; finite values above the clamp are clamped too, so no output ever
exceeds it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernels import interpolate, kernel_from_id
from .modular import ModuleCoeffs, classical_coeffs, comb_coeffs, max_modules, reconstruct
from .optimizer import assemble_system, solve_coefficients
from .signals import Passband, add_noise, gen_bandlimited, sample_train, snr_db

__all__ = [
    "METHODS",
    "SNR_CLAMP_DB",
    "CSV_HEADER",
    "SweepSpec",
    "SweepRow",
    "run_trial",
    "run_module_sweep",
    "run_noise_sweep",
    "write_csv",
]

METHODS = ("classical", "comb", "optimized")
SNR_CLAMP_DB = 300.0
CSV_HEADER = "method,modules,input_snr_db,mean_output_snr_db,std_output_snr_db,trials"

_NOISE_SEED_OFFSET = 1 << 20


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of one benchmark sweep."""

    kernel_id: str
    period: int
    n: int
    k_sig: Passband
    methods: tuple[str, ...]
    modules: tuple[int, ...]
    trials: int
    master_seed: int
    noise_snrs_db: tuple[float, ...] | None = None
    guard_fraction: float = 0.10

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "modules", tuple(int(m) for m in self.modules))
        if self.noise_snrs_db is not None:
            object.__setattr__(
                self, "noise_snrs_db", tuple(float(s) for s in self.noise_snrs_db)
            )
        if self.period < 1 or self.n % self.period:
            raise ValueError(f"period {self.period} must divide signal length {self.n}")
        if not self.methods:
            raise ValueError("at least one method is required")
        unknown = sorted(set(self.methods) - set(METHODS))
        if unknown:
            raise ValueError(f"unknown methods {unknown}; choose from {list(METHODS)}")
        cap = max_modules(self.period)
        for m in self.modules:
            if not 1 <= m <= cap:
                raise ValueError(
                    f"{m} modules outside 1..{cap} (the maximum for period {self.period})"
                )
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        nyquist_bin = self.n // (2 * self.period)
        if self.k_sig.half_width_bins > nyquist_bin - 1:
            raise ValueError(
                f"signal passband {self.k_sig.half_width_bins} must stay below "
                f"the sampling Nyquist bin {nyquist_bin}"
            )
        if not 0.0 <= self.guard_fraction < 0.5:
            raise ValueError("guard_fraction must lie in [0, 0.5)")


@dataclass(frozen=True)
class SweepRow:
    """One aggregated result line of a sweep; input_snr_db None means clean."""

    method: str
    modules: int
    input_snr_db: float | None
    mean_output_snr_db: float
    std_output_snr_db: float
    trials: int


@lru_cache(maxsize=None)
def _optimized_coeffs(
    kernel_id: str, period: int, n: int, modules: int, passband: int
) -> ModuleCoeffs:
    kernel = kernel_from_id(kernel_id, period)
    system = assemble_system(kernel, n, modules, Passband(passband))
    return solve_coefficients(system).coeffs


def _method_coeffs(spec: SweepSpec, method: str, modules: int) -> ModuleCoeffs:
    if method == "classical":
        return classical_coeffs(spec.period, modules)
    if method == "comb":
        return comb_coeffs(spec.period)
    if method == "optimized":
        if modules == 0:
            return ModuleCoeffs(spec.period, ())
        return _optimized_coeffs(
            spec.kernel_id, spec.period, spec.n, modules, spec.k_sig.half_width_bins
        )
    raise ValueError(f"unknown method {method!r}")


def run_trial(
    spec: SweepSpec,
    method: str,
    modules: int,
    input_snr_db: float | None,
    trial_index: int,
) -> float:
    """Run one seeded trial and return the raw output SNR in dB (maybe +inf).

    Pipeline: band-limited test signal -> optional input noise -> sampling
    train -> kernel interpolation -> module reconstruction -> SNR against
    the clean signal over the guarded interior.
    """
    seed = spec.master_seed + trial_index
    kernel = kernel_from_id(spec.kernel_id, spec.period)
    clean = gen_bandlimited(spec.n, spec.k_sig, 1.0, seed)
    source = clean
    if input_snr_db is not None:
        source = add_noise(clean, input_snr_db, seed + _NOISE_SEED_OFFSET)
    held = interpolate(sample_train(source, spec.period), kernel)
    restored = reconstruct(held, _method_coeffs(spec, method, modules), spec.k_sig)
    return snr_db(clean, restored, spec.guard_fraction)


def _aggregate(
    spec: SweepSpec, method: str, modules: int, input_snr_db: float | None
) -> SweepRow:
    snrs = np.array(
        [
            min(SNR_CLAMP_DB, run_trial(spec, method, modules, input_snr_db, i))
            for i in range(spec.trials)
        ]
    )
    return SweepRow(
        method=method,
        modules=modules,
        input_snr_db=input_snr_db,
        mean_output_snr_db=float(snrs.mean()),
        std_output_snr_db=float(snrs.std()),
        trials=spec.trials,
    )


def run_module_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Clean-signal sweep over module counts, one row per (method, modules).

    Rows are ordered by (method, modules). The comb method has a fixed
    implied module count, so it contributes a single row at that count no
    matter what the requested modules list says.
    """
    rows = []
    for method in sorted(set(spec.methods)):
        if method == "comb":
            counts = [comb_coeffs(spec.period).modules]
        else:
            counts = sorted(set(spec.modules))
        for modules in counts:
            rows.append(_aggregate(spec, method, modules, None))
    return rows


def run_noise_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Noisy-input sweep at a fixed module count over the requested SNRs.

    Noise is injected into the band-limited signal before sampling. Rows are
    grouped by method (alphabetical) and follow the requested SNR order.
    """
    if not spec.noise_snrs_db:
        raise ValueError("noise sweep needs a non-empty noise_snrs_db list")
    if len(set(spec.modules)) != 1:
        raise ValueError("noise sweep uses exactly one module count")
    modules = spec.modules[0]
    rows = []
    for method in sorted(set(spec.methods)):
        for input_snr in spec.noise_snrs_db:
            rows.append(_aggregate(spec, method, modules, input_snr))
    return rows


def write_csv(rows: list[SweepRow], path) -> None:
    """Write sweep rows as CSV; clean-input rows carry the literal text `clean`.

    Output bytes are deterministic for identical rows: fixed header, 6
    decimal places, "\\n" line endings, newline-terminated.
    """
    try:
        with open(path, "w", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                snr_text = (
                    "clean" if row.input_snr_db is None else f"{row.input_snr_db:.6f}"
                )
                fh.write(
                    f"{row.method},{row.modules},{snr_text},"
                    f"{row.mean_output_snr_db:.6f},{row.std_output_snr_db:.6f},"
                    f"{row.trials}\n"
                )
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc

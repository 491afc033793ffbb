"""Out-basis expansions of the in-states and the four scenario states.

An accelerated mode's in-vacuum and one-particle states become, in the out
basis, correlated particle/antiparticle expansions controlled by a squeezing
parameter:

* scalar vacuum:       sum_n tanh(r)^n / cosh(r) |n_p, n_a>
* scalar one-particle: sum_n sqrt(n+1) tanh(r)^n / cosh(r)^2 |(n+1)_p, n_a>
* fermion vacuum:      cos(r_f) e^{-i phi} |0_p, 0_a> - sin(r_f) |1_p, 1_a>
* fermion one-particle: |1_p, 0_a>

A scenario starts from the maximally entangled combination
(|0_s 0_w> + |1_s 1_w>)/sqrt(2) and substitutes the out expansion for every
accelerated mode; an unaccelerated mode stays a bare two-level particle
sub-mode.  Bosonic expansions are truncated at a cutoff, renormalized, and
the norm deficit is reported; fermionic states are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fock import (
    DEFAULT_AMPLITUDE_LIMIT,
    Ket,
    SubsystemLayout,
    boson_mode,
    fermion_mode,
    normalize,
    tensor,
)
from .sparse import CoordKet, normalize_coords

__all__ = [
    "Scenario",
    "scenario_layout",
    "scalar_out_vacuum",
    "scalar_out_one",
    "fermion_out_vacuum",
    "fermion_out_one",
    "build_final_state",
    "build_final_state_coords",
]

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class Scenario:
    """Which statistics, how many accelerated modes, and how strongly.

    ``squeeze`` is r for scalars (any value >= 0) or r_f in [0, pi/2] for
    fermions.  ``phase`` enters only the fermionic vacuum expansion and must
    not affect any entanglement result.  ``cutoff`` is the bosonic truncation;
    fermions ignore it.
    """

    statistics: str  # "scalar" | "fermion"
    accelerated: str  # "one" | "both"
    squeeze: float
    phase: float = 0.0
    cutoff: int = 30

    def __post_init__(self) -> None:
        if self.statistics not in ("scalar", "fermion"):
            raise DomainError(f"statistics must be 'scalar' or 'fermion', got {self.statistics!r}")
        if self.accelerated not in ("one", "both"):
            raise DomainError(f"accelerated must be 'one' or 'both', got {self.accelerated!r}")
        if not math.isfinite(self.squeeze) or self.squeeze < 0.0:
            raise DomainError(f"squeeze must be finite and >= 0, got {self.squeeze}")
        if self.statistics == "fermion" and self.squeeze > _HALF_PI:
            raise DomainError(f"fermion squeeze must be <= pi/2, got {self.squeeze}")
        if not math.isfinite(self.phase):
            raise DomainError("phase must be finite")
        if self.statistics == "scalar" and self.cutoff < 4:
            raise DomainError(f"scalar scenarios need cutoff >= 4, got {self.cutoff}")

    @property
    def is_fermion(self) -> bool:
        return self.statistics == "fermion"


def _pair_layout(mode: str, cutoff: int, statistics: str, max_amplitudes=None) -> SubsystemLayout:
    # One-particle bosonic amplitudes reach occupation cutoff+1, so the
    # particle sub-mode gets one extra level; sharing the layout between the
    # vacuum and one-particle expansions keeps them superposable.
    if statistics == "fermion":
        modes = (fermion_mode(f"{mode}_p"), fermion_mode(f"{mode}_a"))
    else:
        modes = (boson_mode(f"{mode}_p", cutoff + 1), boson_mode(f"{mode}_a", cutoff))
    if max_amplitudes is None:
        return SubsystemLayout(modes)
    return SubsystemLayout(modes, max_amplitudes=max_amplitudes)


def scenario_layout(sc: Scenario, max_amplitudes: int | None = None) -> SubsystemLayout:
    """Canonical layout (s_p, s_a, w_p, w_a), omitting absent sub-modes."""
    modes: list = []
    for mode in ("s", "w"):
        if sc.accelerated == "both" or mode == "w":
            pair = _pair_layout(mode, sc.cutoff, sc.statistics)
            modes.extend(pair.modes)
        else:
            # Unaccelerated mode: bare two-level particle sub-mode, no
            # antiparticle partner is ever populated.
            modes.append(
                fermion_mode(f"{mode}_p") if sc.is_fermion else boson_mode(f"{mode}_p", 1)
            )
    if max_amplitudes is None:
        max_amplitudes = DEFAULT_AMPLITUDE_LIMIT
    return SubsystemLayout(tuple(modes), max_amplitudes=max_amplitudes)


def _vacuum_weights(r: float, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff + 1)
    return np.tanh(r) ** n / math.cosh(r)


def _one_particle_weights(r: float, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff + 1)
    return np.sqrt(n + 1.0) * np.tanh(r) ** n / math.cosh(r) ** 2


def _check_scalar_args(r: float, cutoff: int) -> None:
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"squeeze parameter must be finite and >= 0, got {r}")
    if cutoff < 1:
        raise DomainError(f"cutoff must be >= 1, got {cutoff}")


def _scalar_pair_array(weights: np.ndarray, cutoff: int, particle_shift: int) -> np.ndarray:
    arr = np.zeros((cutoff + 2, cutoff + 1), dtype=np.complex128)
    n = np.arange(cutoff + 1)
    arr[n + particle_shift, n] = weights
    return arr


def scalar_out_vacuum(r: float, cutoff: int, mode: str = "w") -> tuple[Ket, float]:
    """Truncated two-mode squeezed vacuum |n_p, n_a>, renormalized.

    The reported deficit equals the geometric tail tanh(r)^(2(cutoff+1)).
    """
    _check_scalar_args(r, cutoff)
    raw = _scalar_pair_array(_vacuum_weights(r, cutoff), cutoff, 0)
    return normalize(Ket(_pair_layout(mode, cutoff, "scalar"), raw.ravel()))


def scalar_out_one(r: float, cutoff: int, mode: str = "w") -> tuple[Ket, float]:
    """Truncated one-particle expansion |(n+1)_p, n_a>, renormalized with deficit."""
    _check_scalar_args(r, cutoff)
    raw = _scalar_pair_array(_one_particle_weights(r, cutoff), cutoff, 1)
    return normalize(Ket(_pair_layout(mode, cutoff, "scalar"), raw.ravel()))


def fermion_out_vacuum(r_f: float, phase: float = 0.0, mode: str = "w") -> Ket:
    """Fermionic vacuum in the out basis: cos(r_f) e^{-i phase}|0,0> - sin(r_f)|1,1>."""
    if not 0.0 <= r_f <= _HALF_PI:
        raise DomainError(f"r_f must lie in [0, pi/2], got {r_f}")
    amps = np.zeros(4, dtype=np.complex128)
    amps[0] = math.cos(r_f) * np.exp(-1j * phase)
    amps[3] = -math.sin(r_f)
    return Ket(_pair_layout(mode, 1, "fermion"), amps)


def fermion_out_one(mode: str = "w") -> Ket:
    """Fermionic one-particle state in the out basis: exactly |1_p, 0_a>."""
    return Ket.basis_state(_pair_layout(mode, 1, "fermion"), (1, 0))


def build_final_state(sc: Scenario, max_amplitudes: int | None = None) -> tuple[Ket, float]:
    """Scenario state on the canonical layout, renormalized, with norm deficit.

    Fermionic states are exactly unit norm (deficit 0); truncated scalar
    states are renormalized and the truncation deficit is returned.  Use
    :func:`build_final_state_coords` for scalar layouts too large to hold
    densely.
    """
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    if sc.is_fermion:
        if sc.accelerated == "one":
            s_layout = SubsystemLayout((fermion_mode("s_p"),))
            branch0 = tensor(Ket.basis_state(s_layout, (0,)), fermion_out_vacuum(sc.squeeze, sc.phase, "w"))
            branch1 = tensor(Ket.basis_state(s_layout, (1,)), fermion_out_one("w"))
        else:
            branch0 = tensor(
                fermion_out_vacuum(sc.squeeze, sc.phase, "s"),
                fermion_out_vacuum(sc.squeeze, sc.phase, "w"),
            )
            branch1 = tensor(fermion_out_one("s"), fermion_out_one("w"))
        amps = (branch0.amplitudes + branch1.amplitudes) * inv_sqrt2
        return Ket(branch0.layout, amps), 0.0

    layout = scenario_layout(sc, max_amplitudes)
    vac = _scalar_pair_array(_vacuum_weights(sc.squeeze, sc.cutoff), sc.cutoff, 0).ravel()
    one = _scalar_pair_array(_one_particle_weights(sc.squeeze, sc.cutoff), sc.cutoff, 1).ravel()
    if sc.accelerated == "one":
        q0 = np.array([1.0, 0.0], dtype=np.complex128)
        q1 = np.array([0.0, 1.0], dtype=np.complex128)
        raw = (np.kron(q0, vac) + np.kron(q1, one)) * inv_sqrt2
    else:
        raw = (np.kron(vac, vac) + np.kron(one, one)) * inv_sqrt2
    return normalize(Ket(layout, raw))


def build_final_state_coords(sc: Scenario) -> tuple[CoordKet, float]:
    """Scalar scenario state in coordinate form (no dense allocation).

    Holds only the O(cutoff^2) populated occupation tuples, so arbitrary
    truncation cutoffs stay cheap.  Amplitudes match
    :func:`build_final_state` exactly where both can run.
    """
    if sc.is_fermion:
        raise DomainError("coordinate construction is for scalar scenarios; fermionic layouts are tiny")
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    c = _vacuum_weights(sc.squeeze, sc.cutoff)
    d = _one_particle_weights(sc.squeeze, sc.cutoff)
    n = np.arange(sc.cutoff + 1)
    # The amplitude limit guards dense allocations; the coordinate form never
    # makes one, so size the layout to whatever the cutoff implies.
    pair_dim = (sc.cutoff + 2) * (sc.cutoff + 1)
    total = pair_dim * pair_dim if sc.accelerated == "both" else 2 * pair_dim
    layout = scenario_layout(sc, max_amplitudes=max(total, DEFAULT_AMPLITUDE_LIMIT))
    if sc.accelerated == "one":
        zeros = np.zeros_like(n)
        occ = np.concatenate(
            [
                np.stack([zeros, n, n], axis=1),  # |0_s> (x) vacuum branch
                np.stack([zeros + 1, n + 1, n], axis=1),  # |1_s> (x) one-particle branch
            ]
        )
        val = np.concatenate([c, d]) * inv_sqrt2
    else:
        ns, nw = np.meshgrid(n, n, indexing="ij")
        occ = np.concatenate(
            [
                np.stack([ns, ns, nw, nw], axis=-1).reshape(-1, 4),
                np.stack([ns + 1, ns, nw + 1, nw], axis=-1).reshape(-1, 4),
            ]
        )
        val = np.concatenate([np.outer(c, c).ravel(), np.outer(d, d).ravel()]) * inv_sqrt2
    populated = val != 0.0  # keep the stored support tight (r = 0, underflow)
    return normalize_coords(CoordKet(layout, occ[populated], val[populated]))

"""Negativity and logarithmic negativity over bipartitions of scenario states.

Conventions: the negativity is the absolute sum of the negative eigenvalues
of the partial transpose (equivalently (trace norm - 1)/2), and
LN = log2(2 N + 1).  Eigenvalues above -1e-12 count as zero so that
truncation and round-off never masquerade as entanglement; that threshold is
what lets the scalar antiparticle bipartitions report an exact 0.

Reduced systems carry the conventional names: "s,p" pairs the inert s mode
with the w particles, "p,p" pairs the particles of both accelerated modes,
and so on; "full" keeps every sub-mode, split s side vs w side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, LayoutError
from .fock import DensityMatrix, Ket, hermitian_eigenvalues
from .sparse import (
    hermitian_block_eigenvalues,
    partial_transpose_sparse,
    reduced_gram,
    schmidt_weights,
)
from .states import Scenario, build_final_state, build_final_state_coords

__all__ = [
    "NEGATIVE_EIGENVALUE_TOL",
    "Bipartition",
    "reduced_density",
    "partial_transpose",
    "negativity",
    "log_negativity",
    "log_negativity_pure",
    "closed_form_ln",
    "named_bipartitions",
    "SystemResult",
    "ScenarioResult",
    "evaluate_scenario",
]

# Partial-transpose eigenvalues in [-1e-12, 0) are treated as zero.
NEGATIVE_EIGENVALUE_TOL = 1e-12

# Schmidt weights below this are discarded before taking square roots, so the
# sqrt of eigensolver noise cannot accumulate across large layouts.
_SCHMIDT_WEIGHT_TOL = 1e-12

_UNIT_NORM_TOL = 1e-10


@dataclass(frozen=True)
class Bipartition:
    """Party A, party B, and the traced-out remainder of a layout's labels."""

    party_a: frozenset[str]
    party_b: frozenset[str]
    traced: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "party_a", frozenset(self.party_a))
        object.__setattr__(self, "party_b", frozenset(self.party_b))
        object.__setattr__(self, "traced", frozenset(self.traced))
        if not self.party_a or not self.party_b:
            raise LayoutError("both parties of a bipartition must be non-empty")
        if (
            self.party_a & self.party_b
            or self.party_a & self.traced
            or self.party_b & self.traced
        ):
            raise LayoutError("bipartition sets must be pairwise disjoint")

    @property
    def kept(self) -> frozenset[str]:
        return self.party_a | self.party_b

    def check_layout(self, labels: Iterable[str]) -> None:
        labels = set(labels)
        if self.kept | self.traced != labels:
            raise LayoutError(
                f"bipartition {sorted(self.kept | self.traced)} does not cover layout "
                f"labels {sorted(labels)}"
            )


def reduced_density(state: Ket, bp: Bipartition) -> DensityMatrix:
    """Density matrix of the kept sub-modes: |state><state| traced over bp.traced.

    Computed as a Gram contraction of the amplitude tensor, which agrees with
    outer product followed by partial trace without materializing the full
    outer product.
    """
    bp.check_layout(state.layout.labels)
    if abs(state.norm_squared() - 1.0) > _UNIT_NORM_TOL:
        raise DomainError("reduced_density requires a unit-norm state; normalize first")
    layout = state.layout
    keep_pos = sorted(layout.position(lbl) for lbl in bp.kept)
    traced_pos = [i for i in range(len(layout.dims)) if i not in keep_pos]
    dims = layout.dims
    keep_dim = math.prod(dims[p] for p in keep_pos)
    block = state.amplitudes.reshape(dims).transpose(keep_pos + traced_pos)
    block = block.reshape(keep_dim, -1)
    return DensityMatrix(layout.restricted(bp.kept), block @ block.conj().T)


def partial_transpose(rho: DensityMatrix, party_a: Iterable[str]) -> np.ndarray:
    """Transpose the party-A sub-mode indices between rows and columns.

    Involutive and trace-preserving; Hermiticity of the input is preserved.
    The result is generally not positive semidefinite, so a plain matrix is
    returned rather than a DensityMatrix.
    """
    labels = set(party_a)
    layout = rho.layout
    positions = sorted(layout.position(lbl) for lbl in labels)
    dims = layout.dims
    n_modes = len(dims)
    t = rho.entries.reshape(dims + dims)
    for p in positions:
        t = np.swapaxes(t, p, n_modes + p)
    return np.ascontiguousarray(t.reshape(rho.entries.shape))


def _negativity_from_eigenvalues(eigs: np.ndarray) -> float:
    return float(-eigs[eigs < -NEGATIVE_EIGENVALUE_TOL].sum())


def negativity(rho: DensityMatrix, party_a: Iterable[str]) -> float:
    """Absolute sum of the negative partial-transpose eigenvalues.

    Equals (||rho^{T_A}||_1 - 1)/2 for unit-trace input.
    """
    eigs = hermitian_eigenvalues(partial_transpose(rho, party_a))
    return _negativity_from_eigenvalues(eigs)


def log_negativity(rho: DensityMatrix, party_a: Iterable[str]) -> float:
    """LN = log2(2 N + 1); zero for PPT (in particular, product) states."""
    return math.log2(2.0 * negativity(rho, party_a) + 1.0)


def _ln_from_schmidt(weights: np.ndarray) -> tuple[float, float, float]:
    """(LN, negativity, min PT eigenvalue) of a pure state from its Schmidt weights.

    For a pure state the partial-transpose spectrum is {w_i} plus
    {+-sqrt(w_i w_j)}, so the trace norm is (sum_i sqrt(w_i))^2.
    """
    w = weights[weights > _SCHMIDT_WEIGHT_TOL]
    roots = np.sqrt(w)
    total = float(roots.sum())
    neg = (total * total - 1.0) / 2.0
    neg = max(neg, 0.0)
    min_eig = -float(roots[0] * roots[1]) if roots.size >= 2 else 0.0
    return math.log2(2.0 * neg + 1.0), neg, min_eig


def log_negativity_pure(state: Ket, party_a: Iterable[str]) -> float:
    """LN across party_a | rest for a pure state, via its Schmidt spectrum."""
    if abs(state.norm_squared() - 1.0) > _UNIT_NORM_TOL:
        raise DomainError("log_negativity_pure requires a unit-norm state")
    layout = state.layout
    a_pos = sorted(layout.position(lbl) for lbl in set(party_a))
    if len(a_pos) == len(layout.dims):
        raise LayoutError("party A must be a proper subset of the layout")
    b_pos = [i for i in range(len(layout.dims)) if i not in a_pos]
    dims = layout.dims
    dim_a = math.prod(dims[p] for p in a_pos)
    x = state.amplitudes.reshape(dims).transpose(a_pos + b_pos).reshape(dim_a, -1)
    gram = x @ x.conj().T if dim_a <= x.shape[1] else x.conj().T @ x
    weights = np.clip(np.linalg.eigvalsh(gram), 0.0, None)[::-1]
    return _ln_from_schmidt(weights)[0]


_CLOSED_FORMS = {
    "fermion-one": {
        "full": lambda c2, s2: 1.0,
        "s,p": lambda c2, s2: math.log2(1.0 + c2),
        "s,a": lambda c2, s2: math.log2(1.0 + s2),
    },
    "fermion-both": {
        "full": lambda c2, s2: 1.0,
        "p,p": lambda c2, s2: math.log2(1.0 + c2 * c2),
        "a,a": lambda c2, s2: math.log2(1.0 + s2 * s2),
        # LN(a,p) = LN(p,a) by the particle/antiparticle exchange symmetry.
        "p,a": lambda c2, s2: math.log2(1.0 + c2 * s2),
        "a,p": lambda c2, s2: math.log2(1.0 + c2 * s2),
    },
}


def closed_form_ln(scenario: str, system: str, r_f: float) -> float:
    """Closed-form fermionic logarithmic negativity for a named reduced system."""
    try:
        forms = _CLOSED_FORMS[scenario]
    except KeyError:
        raise DomainError(
            f"closed forms exist for 'fermion-one' and 'fermion-both', got {scenario!r}"
        ) from None
    if system not in forms:
        raise DomainError(f"unknown reduced system {system!r} for {scenario}: {sorted(forms)}")
    if not 0.0 <= r_f <= math.pi / 2.0:
        raise DomainError(f"r_f must lie in [0, pi/2], got {r_f}")
    c2 = math.cos(r_f) ** 2
    s2 = math.sin(r_f) ** 2
    return forms[system](c2, s2)


def named_bipartitions(sc: Scenario) -> dict[str, Bipartition]:
    """The reduced systems studied for a scenario, in canonical order."""
    if sc.accelerated == "one":
        return {
            "full": Bipartition({"s_p"}, {"w_p", "w_a"}),
            "s,p": Bipartition({"s_p"}, {"w_p"}, {"w_a"}),
            "s,a": Bipartition({"s_p"}, {"w_a"}, {"w_p"}),
        }
    return {
        "full": Bipartition({"s_p", "s_a"}, {"w_p", "w_a"}),
        "p,p": Bipartition({"s_p"}, {"w_p"}, {"s_a", "w_a"}),
        "p,a": Bipartition({"s_p"}, {"w_a"}, {"s_a", "w_p"}),
        "a,p": Bipartition({"s_a"}, {"w_p"}, {"s_p", "w_a"}),
        "a,a": Bipartition({"s_a"}, {"w_a"}, {"s_p", "w_p"}),
    }


@dataclass(frozen=True)
class SystemResult:
    """Entanglement figures for one named reduced system."""

    log_negativity: float
    negativity: float
    min_pt_eigenvalue: float


@dataclass(frozen=True)
class ScenarioResult:
    """LN of every named bipartition of a scenario state, plus its deficit."""

    scenario: Scenario
    deficit: float
    systems: Mapping[str, SystemResult]


def _result_from_eigenvalues(eigs: np.ndarray) -> SystemResult:
    neg = _negativity_from_eigenvalues(eigs)
    return SystemResult(
        log_negativity=math.log2(2.0 * neg + 1.0),
        negativity=neg,
        min_pt_eigenvalue=float(eigs[0]) if eigs.size else 0.0,
    )


def evaluate_scenario(sc: Scenario) -> ScenarioResult:
    """Build the scenario state and compute LN for each named bipartition.

    Fermionic scenarios run through the dense pipeline (their layouts have at
    most 16 states).  Scalar scenarios run through the coordinate pipeline so
    that large truncation cutoffs stay tractable; the two pipelines agree to
    machine precision (see the test suite).  Pure-state untraced bipartitions
    ("full") are evaluated from the Schmidt spectrum.
    """
    systems = named_bipartitions(sc)
    results: dict[str, SystemResult] = {}
    if sc.is_fermion:
        ket, deficit = build_final_state(sc)
        for name, bp in systems.items():
            rho = reduced_density(ket, bp)
            eigs = hermitian_eigenvalues(partial_transpose(rho, bp.party_a))
            results[name] = _result_from_eigenvalues(eigs)
        return ScenarioResult(sc, deficit, results)

    ck, deficit = build_final_state_coords(sc)
    for name, bp in systems.items():
        bp.check_layout(ck.layout.labels)
        if not bp.traced:
            ln, neg, min_eig = _ln_from_schmidt(schmidt_weights(ck, bp.party_a))
            results[name] = SystemResult(ln, neg, min_eig)
            continue
        rho, kept_dims, kept_labels = reduced_gram(ck, bp.kept)
        a_pos = [i for i, lbl in enumerate(kept_labels) if lbl in bp.party_a]
        pt = partial_transpose_sparse(rho, kept_dims, a_pos)
        eigs = hermitian_block_eigenvalues(pt)
        results[name] = _result_from_eigenvalues(eigs)
    return ScenarioResult(sc, deficit, results)

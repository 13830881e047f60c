"""Tripartite (Alice, Bob, Eve) attack-state constructors.

All scenarios start from the entangled resource |Phi+> = (|00> + |11>)/sqrt(2)
shared by Alice and Bob, with Eve's probe prepared in |0>.  Eve acts on the
(Bob, Eve) pair:

* ``SG`` — she applies the attack unitary U_SG(phi) directly.
* ``SWITCH`` / ``DRAFT_SWITCH`` — she feeds U_SG(phi) and a partner gate
  into a quantum switch and keeps the |+> control branch, i.e. applies the
  normalized anticommutator ``(U_SG P + P U_SG)/2``.
* ``SYMMETRIC_CNOT`` — the basis-symmetric probe coupling, given directly
  by its state vector
  cos(phi)|000> + (sin(phi)/2)(|101> + |011> + |100> + |010>).

``phi`` in [0, pi/2] is the attack strength in every case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import (
    DensityMatrix,
    PureState,
    embed,
    make_gate,
    partial_trace,
    pure_to_density,
)
from .switch import lambda_branch

__all__ = [
    "SCENARIO_KINDS",
    "SWITCH_PARTNERS",
    "AttackScenario",
    "sg_state",
    "switch_attack_state",
    "symmetric_cnot_state",
    "scenario_pure_state",
    "scenario_state",
    "reduced_pair",
]

SCENARIO_KINDS = ("SG", "SWITCH", "SYMMETRIC_CNOT", "DRAFT_SWITCH")
#: Partner gates accepted for switch-based scenarios.
SWITCH_PARTNERS = ("XZ", "SWAP", "CNOT", "U_SG", "V_DRAFT")
_PARAMETRIC_PARTNERS = ("U_SG", "V_DRAFT")

_DIMS = (2, 2, 2)  # Alice, Bob, Eve


@dataclass(frozen=True)
class AttackScenario:
    """One attack configuration: kind, strength, and optional partner gate."""

    kind: str
    phi: float
    partner: str | None = None
    phi1: float | None = None

    def __post_init__(self):
        kind = str(self.kind).upper().replace("-", "_")
        if kind not in SCENARIO_KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; known: {SCENARIO_KINDS}")
        phi = float(self.phi)
        if not (0.0 <= phi <= np.pi / 2 + 1e-12):
            raise ValueError(f"attack strength phi must lie in [0, pi/2], got {phi}")
        partner = None if self.partner is None else str(self.partner).upper().replace("-", "_")
        needs_partner = kind in ("SWITCH", "DRAFT_SWITCH")
        if needs_partner:
            if partner is None:
                raise ValueError(f"scenario {kind} requires a partner gate")
            allowed = _PARAMETRIC_PARTNERS if kind == "DRAFT_SWITCH" else SWITCH_PARTNERS
            if partner not in allowed:
                raise ValueError(
                    f"partner {partner!r} is not valid for {kind}; allowed: {allowed}"
                )
        elif partner is not None:
            raise ValueError(f"scenario {kind} takes no partner gate")
        phi1 = None if self.phi1 is None else float(self.phi1)
        if partner in _PARAMETRIC_PARTNERS and phi1 is None:
            raise ValueError(f"partner {partner} requires the second angle phi1")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "partner", partner)
        object.__setattr__(self, "phi1", phi1)


def _resource_amplitudes() -> np.ndarray:
    # |Phi+>_AB (x) |0>_E
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = 1 / np.sqrt(2)
    amps[0b110] = 1 / np.sqrt(2)
    return amps


def _sg_pure(phi: float) -> PureState:
    u = embed(make_gate("U_SG", [phi]), [1, 2], _DIMS)
    return PureState(u @ _resource_amplitudes(), _DIMS)


def sg_state(phi: float) -> DensityMatrix:
    """Attack without a switch: (I (x) U_SG(phi)) |Phi+>|0>.

    The result is the pure state
    (|000> + cos(phi)|110> + sin(phi)|101>)/sqrt(2).
    """
    return pure_to_density(_sg_pure(phi))


def _partner_gate(partner: str, phi1: float | None):
    if partner in _PARAMETRIC_PARTNERS:
        if phi1 is None:
            raise ValueError(f"partner {partner} requires the second angle phi1")
        return make_gate(partner, [phi1])
    return make_gate(partner)


def _switch_pure(phi: float, partner: str, phi1: float | None) -> PureState:
    lam = lambda_branch(make_gate("U_SG", [phi]), _partner_gate(partner, phi1), +1)
    psi = embed(lam, [1, 2], _DIMS) @ _resource_amplitudes()
    norm_sq = float(np.vdot(psi, psi).real)
    if norm_sq < 1e-12:
        raise ValueError(
            f"attack annihilates state: switch branch has norm {norm_sq:.3e} "
            f"for partner {partner} at phi={phi}"
        )
    return PureState(psi / np.sqrt(norm_sq), _DIMS)


def switch_attack_state(phi: float, partner: str, phi1: float | None = None) -> DensityMatrix:
    """Post-selected switch attack state on (A, B, E).

    Applies ``I (x) L`` with ``L = (U_SG(phi) P + P U_SG(phi))/2`` to the
    resource and renormalizes.  ``P`` is the partner gate on (Bob, Eve);
    U_SG and V_DRAFT partners take their own angle ``phi1``.
    """
    partner = str(partner).upper().replace("-", "_")
    if partner not in SWITCH_PARTNERS:
        raise ValueError(f"unknown partner {partner!r}; allowed: {SWITCH_PARTNERS}")
    return pure_to_density(_switch_pure(phi, partner, phi1))


def _symmetric_cnot_pure(phi: float) -> PureState:
    c, s = np.cos(phi), np.sin(phi)
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = c
    for idx in (0b101, 0b011, 0b100, 0b010):
        amps[idx] = s / 2
    return PureState(amps, _DIMS)


def symmetric_cnot_state(phi: float) -> DensityMatrix:
    """Symmetric individual attack state |chi> on (A, B, E)."""
    return pure_to_density(_symmetric_cnot_pure(phi))


def scenario_pure_state(scenario: AttackScenario) -> PureState:
    """State vector of the scenario (every scenario here produces a pure state)."""
    if scenario.kind == "SG":
        return _sg_pure(scenario.phi)
    if scenario.kind in ("SWITCH", "DRAFT_SWITCH"):
        return _switch_pure(scenario.phi, scenario.partner, scenario.phi1)
    return _symmetric_cnot_pure(scenario.phi)


def scenario_state(scenario: AttackScenario) -> DensityMatrix:
    """Density matrix of the scenario state on (A, B, E)."""
    return pure_to_density(scenario_pure_state(scenario))


_PAIR_INDICES = {"AB": (0, 1), "AE": (0, 2), "BE": (1, 2)}


def reduced_pair(rho_abe: DensityMatrix, pair: str) -> DensityMatrix:
    """Two-qubit reduced state for pair 'AB', 'AE', or 'BE'."""
    key = str(pair).upper()
    if key not in _PAIR_INDICES:
        raise ValueError(f"pair must be one of {sorted(_PAIR_INDICES)}, got {pair!r}")
    if rho_abe.dims != _DIMS:
        raise ValueError(f"expected a three-qubit state, got dims {rho_abe.dims}")
    return partial_trace(rho_abe, _PAIR_INDICES[key])

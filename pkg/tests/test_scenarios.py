import numpy as np
import pytest

from qswitch_qkd.qstate import partial_trace
from qswitch_qkd.scenarios import (
    AttackScenario,
    reduced_pair,
    scenario_pure_state,
    scenario_state,
    sg_state,
    switch_attack_state,
    symmetric_cnot_state,
)


def basis_ket(index, n=8):
    v = np.zeros(n, dtype=complex)
    v[index] = 1.0
    return v


class TestAttackScenario:
    def test_phi_out_of_range(self):
        with pytest.raises(ValueError, match=r"\[0, pi/2\]"):
            AttackScenario("SG", 2.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown scenario kind"):
            AttackScenario("BOGUS", 0.1)

    def test_switch_requires_partner(self):
        with pytest.raises(ValueError, match="requires a partner"):
            AttackScenario("SWITCH", 0.1)

    def test_plain_scenario_takes_no_partner(self):
        with pytest.raises(ValueError, match="takes no partner"):
            AttackScenario("SG", 0.1, partner="SWAP")

    def test_draft_switch_partner_restriction(self):
        with pytest.raises(ValueError, match="not valid"):
            AttackScenario("DRAFT_SWITCH", 0.1, partner="SWAP")

    def test_parametric_partner_requires_phi1(self):
        with pytest.raises(ValueError, match="phi1"):
            AttackScenario("SWITCH", 0.1, partner="V_DRAFT")

    def test_cli_style_labels_normalize(self):
        sc = AttackScenario("draft-switch", 0.1, partner="u_sg", phi1=0.9)
        assert sc.kind == "DRAFT_SWITCH"
        assert sc.partner == "U_SG"


class TestSgState:
    def test_no_attack_leaves_resource(self):
        rho = sg_state(0.0)
        expected = (basis_ket(0b000) + basis_ket(0b110)) / np.sqrt(2)
        assert np.allclose(rho.mat, np.outer(expected, expected.conj()), atol=1e-12)

    def test_full_strength_swaps_into_probe(self):
        rho = sg_state(np.pi / 2)
        expected = (basis_ket(0b000) + basis_ket(0b101)) / np.sqrt(2)
        assert np.allclose(rho.mat, np.outer(expected, expected.conj()), atol=1e-12)

    def test_general_amplitudes(self):
        phi = 0.8
        rho = sg_state(phi)
        expected = (
            basis_ket(0b000) + np.cos(phi) * basis_ket(0b110) + np.sin(phi) * basis_ket(0b101)
        ) / np.sqrt(2)
        assert np.allclose(rho.mat, np.outer(expected, expected.conj()), atol=1e-12)

    def test_pure_for_all_phi(self):
        for phi in np.linspace(0, np.pi / 2, 25):
            assert sg_state(phi).purity() == pytest.approx(1.0, abs=1e-9)


class TestSwitchAttackState:
    def test_swap_partner_closed_form(self):
        for phi in (0.0, 0.4, 1.1, np.pi / 2):
            c = np.cos(phi)
            n = np.sqrt(1 + c * c)
            expected = (basis_ket(0b000) + c * basis_ket(0b101)) / n
            rho = switch_attack_state(phi, "SWAP")
            assert np.allclose(rho.mat, np.outer(expected, expected.conj()), atol=1e-12)

    def test_swap_partner_at_half_pi_collapses(self):
        rho = switch_attack_state(np.pi / 2, "SWAP")
        assert rho.mat[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_xz_partner_eve_marginal(self):
        rho = switch_attack_state(0.0, "XZ")
        rho_e = partial_trace(rho, [2])
        assert np.allclose(rho_e.mat, np.diag([1.0, 0.0]), atol=1e-12)
        for phi in (0.3, 1.0):
            rho_e = partial_trace(switch_attack_state(phi, "XZ"), [2])
            assert rho_e.mat[0, 0].real == pytest.approx((1 + np.cos(phi)) / 2, abs=1e-12)

    def test_parametric_partners_build(self):
        for partner in ("U_SG", "V_DRAFT"):
            rho = switch_attack_state(0.5, partner, phi1=0.9)
            assert rho.dims == (2, 2, 2)

    def test_cnot_partner_builds(self):
        assert switch_attack_state(0.5, "CNOT").dims == (2, 2, 2)

    def test_unknown_partner(self):
        with pytest.raises(ValueError, match="unknown partner"):
            switch_attack_state(0.5, "TOFFOLI")

    def test_annihilating_branch_is_reported(self):
        # at full turn the anticommutator of the attack unitary and XZ vanishes
        # on the whole resource support
        with pytest.raises(ValueError, match="annihilates"):
            switch_attack_state(np.pi, "XZ")


class TestSymmetricCnotState:
    def test_zero_strength(self):
        rho = symmetric_cnot_state(0.0)
        assert rho.mat[0, 0] == pytest.approx(1.0)

    def test_full_strength_four_terms(self):
        rho = symmetric_cnot_state(np.pi / 2)
        expected = 0.5 * (
            basis_ket(0b101) + basis_ket(0b011) + basis_ket(0b100) + basis_ket(0b010)
        )
        assert np.allclose(rho.mat, np.outer(expected, expected.conj()), atol=1e-12)

    def test_amplitudes_normalized(self):
        # cos^2 + 4 (sin/2)^2 = 1 keeps the printed amplitudes normalized
        rho = symmetric_cnot_state(0.3)
        assert np.trace(rho.mat).real == pytest.approx(1.0, abs=1e-12)


class TestReducedPair:
    def test_ae_of_swap_partner_is_pure_entangled_pair(self):
        phi = 0.5
        c = np.cos(phi)
        n = np.sqrt(1 + c * c)
        rho_ae = reduced_pair(switch_attack_state(phi, "SWAP"), "AE")
        target = np.zeros(4, dtype=complex)
        target[0b00] = 1 / n
        target[0b11] = c / n
        assert np.allclose(rho_ae.mat, np.outer(target, target.conj()), atol=1e-12)

    def test_ab_of_unattacked_state_is_bell_pair(self):
        rho_ab = reduced_pair(sg_state(0.0), "AB")
        bell = np.zeros(4, dtype=complex)
        bell[0b00] = bell[0b11] = 1 / np.sqrt(2)
        assert np.allclose(rho_ab.mat, np.outer(bell, bell.conj()), atol=1e-12)

    def test_be_of_ground_state(self):
        rho = symmetric_cnot_state(0.0)
        rho_be = reduced_pair(rho, "BE")
        assert np.allclose(rho_be.mat, np.diag([1.0, 0, 0, 0]), atol=1e-12)

    def test_invalid_pair_label(self):
        with pytest.raises(ValueError, match="pair"):
            reduced_pair(sg_state(0.1), "XY")


class TestScenarioDispatch:
    @pytest.mark.parametrize(
        "scenario",
        [
            AttackScenario("SG", 0.4),
            AttackScenario("SWITCH", 0.4, partner="SWAP"),
            AttackScenario("SWITCH", 0.4, partner="XZ"),
            AttackScenario("SWITCH", 0.4, partner="CNOT"),
            AttackScenario("SWITCH", 0.4, partner="U_SG", phi1=0.9),
            AttackScenario("DRAFT_SWITCH", 0.4, partner="V_DRAFT", phi1=0.9),
            AttackScenario("SYMMETRIC_CNOT", 0.4),
        ],
    )
    def test_pure_and_density_agree(self, scenario):
        psi = scenario_pure_state(scenario)
        rho = scenario_state(scenario)
        assert np.allclose(
            rho.mat, np.outer(psi.amplitudes, psi.amplitudes.conj()), atol=1e-12
        )

    def test_bob_marginal_diagonal_for_swap_partner(self):
        # the SWAP-partner attack leaves Bob in |0> regardless of phi, so his
        # marginal never develops Z-basis coherence
        for phi in np.linspace(0, np.pi / 2, 21):
            rho_b = partial_trace(switch_attack_state(phi, "SWAP"), [1])
            assert abs(rho_b.mat[0, 1]) < 1e-12

"""Classical correlations, discord, work deficits, classicality detection."""

import numpy as np
import pytest

from conftest import grid_classical_correlations, grid_discord, werner
from qcorrkit import (
    DensityMatrix,
    OptimizerConfig,
    ProjectiveBasis,
    PureState,
    RandomSource,
    classical_correlations,
    dephase,
    discord,
    discord_two_sided,
    is_classical,
    mutual_information,
    one_way_deficit,
    random_density,
    random_pure,
    relative_entropy_of_quantumness,
    tensor,
    total_work,
    von_neumann,
    work_deficit_bound_check,
    zero_way_deficit,
)

SQ2 = 1.0 / np.sqrt(2.0)


class TestClassicalCorrelations:
    def test_product_state_zero(self, fast_config):
        src = RandomSource(1)
        rho = tensor(random_density((2,), 2, src.split()), random_density((2,), 2, src.split()))
        assert classical_correlations(rho, "B", fast_config).bits <= 1e-8

    def test_bell_state_one(self, bell_dm, fast_config):
        assert abs(classical_correlations(bell_dm, "B", fast_config).bits - 1.0) <= 1e-6

    def test_quantum_coin_measured_event_side(self, coin_quantum, fast_config):
        value = classical_correlations(coin_quantum, "B", fast_config).bits
        assert abs(value - 0.399124) <= 1e-4
        assert abs(value - grid_classical_correlations(coin_quantum)) <= 1e-4

    def test_quantum_coin_measured_register_side(self, coin_quantum, fast_config):
        # measuring the register reveals the pure event states exactly
        value = classical_correlations(coin_quantum, "A", fast_config).bits
        assert abs(value - 0.600876) <= 1e-4

    def test_povm_at_least_projective(self, fast_config):
        src = RandomSource(2)
        rho = random_density((2, 2), 3, src.split())
        proj = classical_correlations(rho, "B", fast_config).bits
        povm = classical_correlations(rho, "B", fast_config, n_outcomes=3).bits
        assert povm >= proj - 1e-5

    def test_diagnostics_exposed(self, bell_dm, fast_config):
        value = classical_correlations(bell_dm, "B", fast_config)
        assert value.n_outcomes == 2
        assert value.spread >= 0.0
        assert len(value.params) == 2


class TestDiscord:
    def test_classical_quantum_state_zero(self, coin_quantum, fast_config):
        # the register side is classical: measuring it loses nothing
        assert discord(coin_quantum, "A", fast_config).bits <= 1e-6

    def test_bell_state_one(self, bell_dm, fast_config):
        assert abs(discord(bell_dm, "B", fast_config).bits - 1.0) <= 1e-6

    def test_werner_against_grid(self, fast_config):
        rho = werner(0.8)
        value = discord(rho, "B", fast_config).bits
        assert abs(value - grid_discord(rho)) <= 1e-4

    def test_nonnegative_and_clipped(self, coin_classical, fast_config):
        assert discord(coin_classical, "B", fast_config).bits == 0.0


class TestDiscordTwoSided:
    def test_classical_classical_zero(self, coin_classical, fast_config):
        assert discord_two_sided(coin_classical, fast_config).bits <= 1e-6

    def test_bell_state_one(self, bell_dm, fast_config):
        assert abs(discord_two_sided(bell_dm, fast_config).bits - 1.0) <= 1e-6

    def test_dominates_one_sided(self, fast_config):
        src = RandomSource(3)
        for _ in range(10):
            rho = random_density((2, 2), 4, src.split())
            two = discord_two_sided(rho, fast_config).bits
            one = discord(rho, "B", fast_config).bits
            assert two >= one - 1e-6


class TestWorkDeficits:
    def test_classical_classical_both_zero(self, coin_classical, fast_config):
        assert one_way_deficit(coin_classical, "B", fast_config).bits <= 1e-8
        assert zero_way_deficit(coin_classical, fast_config).bits <= 1e-8

    def test_bell_state_zero_way_one(self, bell_dm, fast_config):
        assert abs(zero_way_deficit(bell_dm, fast_config).bits - 1.0) <= 1e-6

    def test_pure_state_equals_marginal_entropy(self, fast_config):
        src = RandomSource(4)
        for _ in range(5):
            psi = random_pure((2, 2), src.split())
            from qcorrkit import partial_trace

            target = von_neumann(partial_trace(psi.density(), (0,)))
            assert abs(zero_way_deficit(psi, fast_config).bits - target) <= 1e-5

    def test_independent_dephasing_path(self, fast_config):
        # recompute the optimal product dephasing entropy with the channel map
        src = RandomSource(5)
        rho = random_density((2, 2), 4, src.split())
        res = zero_way_deficit(rho, fast_config)
        from qcorrkit.optimize import qubit_basis_vectors

        x = res.params
        basis_a = ProjectiveBasis.from_unitary(qubit_basis_vectors(x[0], x[1]))
        basis_b = ProjectiveBasis.from_unitary(qubit_basis_vectors(x[2], x[3]))
        dephased = dephase(dephase(rho, basis_a, 0), basis_b, 1)
        assert abs(von_neumann(dephased) - von_neumann(rho) - res.bits) <= 1e-9

    def test_relative_entropy_of_quantumness_labels(self, bell_dm, fast_config):
        qc = relative_entropy_of_quantumness(bell_dm, "QC", "B", fast_config)
        cc = relative_entropy_of_quantumness(bell_dm, "CC", "B", fast_config)
        assert abs(qc.bits - one_way_deficit(bell_dm, "B", fast_config).bits) <= 1e-12
        assert abs(cc.bits - zero_way_deficit(bell_dm, fast_config).bits) <= 1e-12

    def test_unknown_variant_rejected(self, bell_dm):
        with pytest.raises(ValueError):
            relative_entropy_of_quantumness(bell_dm, "XX")


class TestTotalWork:
    def test_maximally_mixed_zero(self):
        rho = DensityMatrix((2, 2), np.eye(4) / 4.0)
        assert abs(total_work(rho)) <= 1e-12

    def test_pure_two_qubit_state(self, bell_dm):
        assert abs(total_work(bell_dm) - 2.0) <= 1e-10

    def test_deficit_bounds_pure_relative_entanglement(self, bell_dm, fast_config):
        assert work_deficit_bound_check(bell_dm, fast_config)


class TestIsClassical:
    def test_classical_coin_is_cc(self, coin_classical, fast_config):
        verdict, bases = is_classical(coin_classical, "CC", config=fast_config)
        assert verdict
        assert len(bases) == 2

    def test_quantum_coin_register_side_invariant(self, coin_quantum, fast_config):
        verdict, _ = is_classical(coin_quantum, "CQ", measured="A", config=fast_config)
        assert verdict

    def test_quantum_coin_event_side_not_invariant(self, coin_quantum, fast_config):
        verdict, _ = is_classical(coin_quantum, "CQ", measured="B", config=fast_config)
        assert not verdict

    def test_quantum_coin_not_cc(self, coin_quantum, fast_config):
        verdict, _ = is_classical(coin_quantum, "CC", config=fast_config)
        assert not verdict

    def test_bell_state_fails_both(self, bell_dm, fast_config):
        assert not is_classical(bell_dm, "CC", config=fast_config)[0]
        assert not is_classical(bell_dm, "CQ", measured="B", config=fast_config)[0]

    def test_discord_zero_iff_classical_quantum(self, fast_config):
        src = RandomSource(6)
        g = src.split().generator
        # constructed classical-quantum state: classical on side A
        probs = g.dirichlet([1.0, 1.0])
        blocks = [random_density((2,), 2, src.split()) for _ in range(2)]
        data = np.zeros((4, 4), dtype=complex)
        for x in range(2):
            data[2 * x : 2 * x + 2, 2 * x : 2 * x + 2] = probs[x] * blocks[x].data
        cq = DensityMatrix((2, 2), data)
        assert discord(cq, "A", fast_config).bits <= 1e-6
        assert is_classical(cq, "CQ", measured="A", config=fast_config)[0]
        # a generic random state has positive discord and is not classical
        rho = random_density((2, 2), 2, src.split())
        if discord(rho, "A", fast_config).bits > 1e-4:
            assert not is_classical(rho, "CQ", measured="A", config=fast_config)[0]


class TestLocalUnitaryInvariance:
    def test_quantumness_invariant_under_local_rotations(self, fast_config):
        from qcorrkit import random_unitary

        src = RandomSource(7)
        rho = random_density((2, 2), 3, src.split())
        u = np.kron(random_unitary(2, src.split()), random_unitary(2, src.split()))
        rotated = DensityMatrix((2, 2), u @ rho.data @ u.conj().T)
        for fn in (
            lambda r: discord(r, "B", fast_config).bits,
            lambda r: zero_way_deficit(r, fast_config).bits,
        ):
            assert abs(fn(rho) - fn(rotated)) <= 2e-4

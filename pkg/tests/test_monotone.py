"""
Pruebas de src/services/monotone.py.
"""
import numpy as np
import pytest

from src.models import BipartiteShape
from src.models.errors import BadExponentError, BadRangeError, DimensionMismatchError
from src.services import monotone, states
from src.utils import linalg


class TestPureStates:
    def test_bell_state_q2(self, bell_state):
        assert monotone.q_concurrence_pure(bell_state, 2) == pytest.approx(0.5)

    def test_bell_state_q3(self, bell_state):
        assert monotone.q_concurrence_pure(bell_state, 3) == pytest.approx(0.75)

    def test_product_state_is_zero(self, product_pure):
        assert monotone.q_concurrence_pure(product_pure, 2.5) == 0.0

    @pytest.mark.parametrize('d,q', [(2, 2.0), (3, 2.0), (3, 4.5), (5, 3.0)])
    def test_maximum_at_maximally_entangled(self, d, q):
        value = monotone.q_concurrence_pure(states.maximally_entangled(d), q)
        assert value == pytest.approx(1.0 - d ** (1.0 - q))

    def test_rejects_exponent_below_two(self, bell_state):
        with pytest.raises(BadExponentError):
            monotone.q_concurrence_pure(bell_state, 1.5)

    def test_concurrence_relation(self, rng):
        psi = states.random_pure_state(BipartiteShape(dim_a=2, dim_b=2), rng)
        amplitudes = psi.amplitude_matrix()
        wootters = 2 * abs(np.linalg.det(amplitudes))
        assert monotone.concurrence_pure(psi) == pytest.approx(wootters, abs=1e-10)

    def test_from_coefficients(self):
        assert monotone.q_concurrence_from_coefficients([0.5, 0.5], 2) == pytest.approx(0.5)

    def test_bounded_by_maximum(self, rng):
        shape = BipartiteShape(dim_a=3, dim_b=4)
        for _ in range(20):
            value = monotone.q_concurrence_pure(states.random_pure_state(shape, rng), 3.0)
            assert 0.0 <= value <= 1.0 - 3 ** (-2.0) + 1e-12


class TestScalarFunctions:
    def test_f_q_of_pure_state_is_zero(self, bell_state):
        assert monotone.f_q(bell_state.to_density_matrix(), 2) == 0.0

    def test_f_q_maximally_mixed(self):
        assert monotone.f_q(np.eye(4) / 4, 2) == pytest.approx(0.75)

    def test_f_q_schatten_form(self, rng):
        rho = states.random_density_matrix(BipartiteShape(dim_a=2, dim_b=3), 4, rng)
        assert monotone.f_q(rho, 3.5) == pytest.approx(1.0 - linalg.schatten_q_norm(rho, 3.5) ** 3.5)

    def test_h_q_endpoints_and_center(self):
        assert monotone.h_q(0.0, 2) == 0.0
        assert monotone.h_q(1.0, 3) == 0.0
        assert monotone.h_q(0.5, 3) == pytest.approx(1.0 - 2 ** (-2.0))

    def test_h_q_rejects_out_of_range(self):
        with pytest.raises(BadRangeError):
            monotone.h_q(1.2, 2)

    def test_tsallis_entropy(self):
        assert monotone.tsallis_entropy(np.eye(2) / 2, 2) == pytest.approx(0.5)

    def test_tsallis_requires_exponent_above_one(self):
        with pytest.raises(BadExponentError):
            monotone.tsallis_entropy(np.eye(2) / 2, 1.0)

    def test_is_pure(self, bell_state):
        assert monotone.is_pure(bell_state.projector())
        assert not monotone.is_pure(np.eye(2) / 2)


class TestLemma1:
    @pytest.mark.parametrize('m,n', [(2, 2), (2, 3), (3, 3)])
    @pytest.mark.parametrize('q', [2.0, 2.5, 4.0])
    def test_random_states(self, m, n, q, rng):
        shape = BipartiteShape(dim_a=m, dim_b=n)
        for rank in (1, 2, m * n):
            report = monotone.check_lemma1(states.random_density_matrix(shape, rank, rng), q, tol=1e-9)
            assert report.passed

    def test_symmetry_for_pure_states(self, rng):
        psi = states.random_pure_state(BipartiteShape(dim_a=2, dim_b=4), rng)
        report = monotone.check_lemma1(psi.to_density_matrix(), 3.0, tol=1e-9)
        assert report.symmetric is True
        assert report.f_a == pytest.approx(report.f_b)

    def test_symmetry_not_evaluated_for_mixed(self):
        report = monotone.check_lemma1(states.maximally_mixed(BipartiteShape(dim_a=2, dim_b=2)), 2.0)
        assert report.symmetric is None

    def test_product_of_pure_states_saturates_lower(self, product_pure):
        report = monotone.check_lemma1(product_pure.to_density_matrix(), 2.0)
        assert report.lower_gap == pytest.approx(0.0, abs=1e-12)

    def test_product_state_upper_inequality(self, rng):
        rho = states.random_product_density(BipartiteShape(dim_a=2, dim_b=2), rng)
        report = monotone.check_lemma1(rho, 2.0)
        assert report.upper_holds


class TestConcavity:
    def test_random_ensembles(self, rng):
        shape = BipartiteShape(dim_a=2, dim_b=2)
        for _ in range(20):
            rhos = [states.random_density_matrix(shape, int(rng.integers(1, 5)), rng) for _ in range(3)]
            probs = rng.dirichlet(np.ones(3))
            report = monotone.check_concavity(rhos, probs, 2.5, tol=1e-9)
            assert report.passed

    def test_orthogonal_pure_states_saturate_quasi_convexity(self):
        shape = BipartiteShape(dim_a=2, dim_b=1)
        rhos = [
            states.product_state([1.0, 0.0], [1.0]).to_density_matrix(),
            states.product_state([0.0, 1.0], [1.0]).to_density_matrix(),
        ]
        assert rhos[0].shape == shape
        report = monotone.check_concavity(rhos, [0.3, 0.7], 2.0)
        assert report.quasi_convexity_gap == pytest.approx(0.0, abs=1e-12)

    def test_dimension_mismatch(self):
        a = states.maximally_mixed(BipartiteShape(dim_a=2, dim_b=2))
        b = states.maximally_mixed(BipartiteShape(dim_a=2, dim_b=3))
        with pytest.raises(DimensionMismatchError):
            monotone.check_concavity([a, b], [0.5, 0.5], 2.0)


class TestCharacteristicIdentity:
    def test_residual_vanishes(self, rng):
        psi = states.random_pure_state(BipartiteShape(dim_a=3, dim_b=3), rng)
        rho_a = linalg.partial_trace(psi.projector(), psi.shape, 'B')
        assert monotone.characteristic_identity_residual(rho_a) == pytest.approx(0.0, abs=1e-10)


class TestExponentMonotonicity:
    EXPONENTS = np.arange(2.0, 8.0 + 1e-12, 0.5)

    @pytest.mark.parametrize('coefficients', [[0.7, 0.3], [0.5, 0.3, 0.2], [0.99, 0.01], [0.5, 0.5]])
    def test_strictly_increasing_in_q(self, coefficients):
        shape = BipartiteShape(dim_a=3, dim_b=3)
        psi = states.schmidt_state(coefficients, shape)
        values = [monotone.q_concurrence_pure(psi, q) for q in self.EXPONENTS]
        assert np.all(np.diff(values) > 0)

    def test_random_entangled_states(self, rng):
        shape = BipartiteShape(dim_a=3, dim_b=4)
        for _ in range(10):
            psi = states.random_pure_state(shape, rng)
            values = [monotone.q_concurrence_pure(psi, q) for q in self.EXPONENTS]
            assert np.all(np.diff(values) > 0)

    def test_product_state_stays_zero(self, product_pure):
        values = [monotone.q_concurrence_pure(product_pure, q) for q in self.EXPONENTS]
        assert values == [0.0] * len(self.EXPONENTS)

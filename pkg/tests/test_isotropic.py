"""
Pruebas de src/services/isotropic.py.
"""
import numpy as np
import pytest

from src.models.errors import BadDimensionError, BadFidelityError, BadGridError, BadRangeError
from src.services import isotropic


class TestXi:
    def test_zero_below_threshold(self):
        assert isotropic.xi(0.2, 2.0, 3) == 0.0
        assert isotropic.xi(1 / 3, 3.0, 3) == 0.0

    @pytest.mark.parametrize('d,q', [(2, 2.0), (3, 2.0), (4, 3.5)])
    def test_value_at_one(self, d, q):
        assert isotropic.xi(1.0, q, d) == pytest.approx(1.0 - d ** (1.0 - q))

    @pytest.mark.parametrize('fidelity', [0.55, 0.7, 0.9, 1.0])
    def test_two_qubit_closed_form(self, fidelity):
        assert isotropic.xi(fidelity, 2.0, 2) == pytest.approx((1 - 2 * fidelity) ** 2 / 2)

    def test_rejects_bad_inputs(self):
        with pytest.raises(BadFidelityError):
            isotropic.xi(-0.1, 2.0, 3)
        with pytest.raises(BadDimensionError):
            isotropic.xi(0.5, 2.0, 1)

    @pytest.mark.parametrize('d', [2, 3, 4, 5, 6])
    @pytest.mark.parametrize('q', [2.0, 3.0, 4.0])
    def test_matches_vertex_oracle(self, d, q):
        for fidelity in np.linspace(1.0 / d + 0.01, 1.0, 15):
            assert isotropic.xi_oracle(fidelity, q, d) == pytest.approx(isotropic.xi(fidelity, q, d), abs=1e-9)

    def test_oracle_below_threshold(self):
        assert isotropic.xi_oracle(0.1, 2.0, 3) == 0.0


class TestHull:
    def test_lower_hull_drops_points_above(self):
        hull = isotropic.lower_hull([(0, 0), (1, 1), (2, 0), (1, -1)])
        assert hull == [(0.0, 0.0), (1.0, -1.0), (2.0, 0.0)]

    def test_lower_hull_keeps_lowest_per_abscissa(self):
        hull = isotropic.lower_hull([(0, 0), (0, -1), (1, 0)])
        assert hull[0] == (0.0, -1.0)


class TestEnvelope:
    def test_two_qubits_matches_closed_form(self):
        curve = isotropic.envelope(2.0, 2, 2001)
        for fidelity, value in curve.grid:
            expected = (1 - 2 * fidelity) ** 2 / 2 if fidelity > 0.5 else 0.0
            assert value == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize('d', [3, 4, 6])
    def test_matches_piecewise_closed_form(self, d):
        curve = isotropic.envelope(2.0, d, 2001)
        for fidelity, value in curve.grid[::50]:
            assert value == pytest.approx(isotropic.c2_isotropic_closed_form(fidelity, d), abs=1e-5)

    @pytest.mark.parametrize('d,q', [(3, 2.0), (3, 3.0), (5, 4.0)])
    def test_envelope_is_convex_and_below_xi(self, d, q):
        curve = isotropic.envelope(q, d, 1001)
        values = curve.values()
        assert np.all(np.diff(values, 2) >= -1e-9)
        for fidelity, value in curve.grid:
            assert value <= isotropic.xi(fidelity, q, d) + 1e-12 or fidelity <= 1.0 / d

    @pytest.mark.parametrize('d,q', [(3, 2.0), (4, 3.0)])
    def test_bound_below_envelope(self, d, q):
        curve = isotropic.envelope(q, d, 1001)
        for fidelity, value in curve.grid:
            assert isotropic.isotropic_lower_bound(fidelity, q, d) <= value + 1e-9

    def test_rejects_coarse_grid(self):
        with pytest.raises(BadGridError):
            isotropic.envelope(2.0, 3, 50)

    def test_value_at(self):
        assert isotropic.isotropic_q_concurrence(1.0, 2.0, 3, 1001) == pytest.approx(2 / 3)
        assert isotropic.isotropic_q_concurrence(0.2, 2.0, 3, 1001) == 0.0


class TestClosedForm:
    def test_linear_branch(self):
        d = 3
        fidelity = 0.95
        assert isotropic.c2_isotropic_closed_form(fidelity, d) == pytest.approx(
            (d * fidelity - d) / (d - 1) + (d - 1) / d
        )

    def test_continuous_at_breakpoint(self):
        d = 4
        breakpoint_f = 4 * (d - 1) / d ** 2
        left = isotropic.c2_isotropic_closed_form(breakpoint_f, d)
        right = (d * breakpoint_f - d) / (d - 1) + (d - 1) / d
        assert left == pytest.approx(right, abs=1e-10)

    def test_lower_bound_example(self):
        assert isotropic.isotropic_lower_bound(0.9, 2.0, 3) == pytest.approx(2.89 / 6)


class TestFig1:
    def test_rows_sorted_and_bounded(self):
        rows = isotropic.fig1_data(range(3, 6), resolution=21, workers=2)
        assert len(rows) == 3 * 21
        assert [row[0] for row in rows[:21]] == [3] * 21
        for d, fidelity, exact, bound in rows:
            assert bound <= exact + 1e-12

    def test_rejects_large_dimension(self):
        with pytest.raises(BadRangeError):
            isotropic.fig1_data([11])

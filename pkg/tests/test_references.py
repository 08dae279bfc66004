import numpy as np
import pytest

from convroof.measures import eof2x2, tangle
from convroof.references import (
    eof_isotropic,
    ghz_state,
    ghzw_mixture,
    isotropic_state,
    max_entangled_state,
    tangle_ghzw,
    w_state,
)


class TestStates:
    def test_max_entangled_norm(self):
        for d in (2, 3, 5):
            assert np.linalg.norm(max_entangled_state(d)) == pytest.approx(1.0, abs=1e-14)

    def test_isotropic_valid_density_matrix(self):
        rho = isotropic_state(4, 0.3)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-14
        assert np.linalg.eigvalsh(rho).min() > -1e-14

    def test_isotropic_extremes(self):
        psi = max_entangled_state(3)
        assert np.allclose(isotropic_state(3, 1.0), np.outer(psi, psi.conj()), atol=1e-14)
        # f = 1/d^2 is the maximally mixed point
        assert np.allclose(isotropic_state(3, 1.0 / 9.0), np.eye(9) / 9.0, atol=1e-14)

    def test_ghz_w_properties(self):
        assert tangle(ghz_state()) == pytest.approx(1.0, abs=1e-14)
        assert tangle(w_state()) == pytest.approx(0.0, abs=1e-14)

    def test_ghzw_mixture_is_density_matrix(self):
        rho = ghzw_mixture(0.4)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
        assert np.linalg.matrix_rank(rho) == 2

    def test_input_validation(self):
        with pytest.raises(ValueError):
            isotropic_state(3, 1.5)
        with pytest.raises(ValueError):
            ghzw_mixture(-0.1)
        with pytest.raises(ValueError):
            max_entangled_state(1)


class TestEofIsotropic:
    def test_zero_below_threshold(self):
        for d in (2, 3, 5):
            assert eof_isotropic(1.0 / d, d) == 0.0
            assert eof_isotropic(0.5 / d, d) == 0.0

    def test_pure_point(self):
        for d in (2, 3, 5, 8):
            assert eof_isotropic(1.0, d) == pytest.approx(np.log2(d), abs=1e-12)

    def test_continuity_at_branch_points(self):
        for d in (3, 5):
            eps = 1e-9
            f0 = 1.0 / d
            assert abs(eof_isotropic(f0 + eps, d) - eof_isotropic(f0 - eps, d)) < 1e-4
            f1 = 4.0 * (d - 1.0) / d**2
            assert abs(eof_isotropic(f1 + eps, d) - eof_isotropic(f1 - eps, d)) < 1e-7

    def test_monotone_in_f(self):
        for d in (2, 4):
            vals = [eof_isotropic(f, d) for f in np.linspace(1.0 / d, 1.0, 60)]
            assert np.all(np.diff(vals) >= -1e-12)

    def test_d2_matches_wootters(self):
        # for two qubits the closed form must agree with the concurrence formula
        for f in (0.6, 0.75, 0.9, 0.99):
            assert eof_isotropic(f, 2) == pytest.approx(
                eof2x2(isotropic_state(2, f)), abs=1e-12
            )

    def test_input_validation(self):
        with pytest.raises(ValueError):
            eof_isotropic(0.5, 1)
        with pytest.raises(ValueError):
            eof_isotropic(1.2, 3)


class TestTangleGhzw:
    def test_plateau_is_zero(self):
        for p in (0.0, 0.3, 0.62):
            assert tangle_ghzw(p) == 0.0

    def test_pure_ghz(self):
        assert tangle_ghzw(1.0) == pytest.approx(1.0, abs=1e-12)

    def test_continuity_and_monotone(self):
        ps = np.linspace(0.0, 1.0, 400)
        vals = np.array([tangle_ghzw(p) for p in ps])
        assert np.all(np.diff(vals) >= -1e-12)
        assert np.max(np.abs(np.diff(vals))) < 0.02  # no jumps

    def test_tangent_point_location(self):
        from convroof.references import _tangent_point

        p1, slope = _tangent_point()
        assert 0.70 < p1 < 0.72
        # tangent line touches the lower branch at p1 with matching slope
        from convroof.references import _g1, _g1_prime

        assert 1.0 - slope * (1.0 - p1) == pytest.approx(_g1(p1), abs=1e-12)
        assert slope == pytest.approx(_g1_prime(p1), abs=1e-10)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            tangle_ghzw(1.1)

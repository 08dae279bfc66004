import numpy as np
import pytest

from convroof.linalg import rand_state
from convroof.measures import (
    NonSmoothPointWarning,
    entropy_of_entanglement,
    eof2x2,
    get_measure,
    grad_entropy_of_entanglement,
    grad_meyer_wallach,
    grad_tangle,
    measure_names,
    meyer_wallach,
    tangle,
)
from convroof.references import ghz_state, max_entangled_state, w_state
from conftest import fd_grad_state


def bell_state():
    return max_entangled_state(2)


class TestEntropy:
    def test_bell_state_is_one(self):
        assert entropy_of_entanglement(bell_state(), (2, 2)) == pytest.approx(1.0, abs=1e-12)

    def test_max_entangled_qudit(self):
        psi = max_entangled_state(5)
        assert entropy_of_entanglement(psi, (5, 5)) == pytest.approx(np.log2(5), abs=1e-12)

    def test_product_state_is_zero(self, rng):
        psi = np.kron(rand_state(3, rng), rand_state(4, rng))
        assert entropy_of_entanglement(psi, (3, 4)) == pytest.approx(0.0, abs=1e-12)

    def test_gradient_matches_fd(self, rng):
        for _ in range(5):
            psi = rand_state(12, rng)
            g = grad_entropy_of_entanglement(psi, (3, 4))
            g_fd = fd_grad_state(lambda v: entropy_of_entanglement(v, (3, 4)), psi)
            assert np.max(np.abs(g - g_fd)) < 1e-7

    def test_gradient_warns_near_singular(self, rng):
        psi = np.kron(rand_state(2, rng), rand_state(2, rng))
        with pytest.warns(NonSmoothPointWarning):
            grad_entropy_of_entanglement(psi, (2, 2))

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError):
            entropy_of_entanglement(rand_state(6, rng), (2, 2))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            entropy_of_entanglement(np.ones(4), (2, 2))


class TestEof2x2:
    def test_bell_state(self):
        psi = bell_state()
        assert eof2x2(np.outer(psi, psi.conj())) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert eof2x2(np.eye(4) / 4.0) == pytest.approx(0.0, abs=1e-12)

    def test_pure_state_matches_entropy(self, rng):
        for _ in range(10):
            psi = rand_state(4, rng)
            rho = np.outer(psi, psi.conj())
            # eof2x2 goes through a non-symmetric eigensolve, good to ~1e-8
            assert eof2x2(rho) == pytest.approx(
                entropy_of_entanglement(psi, (2, 2)), abs=1e-7
            )

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            eof2x2(np.eye(3) / 3.0)


class TestTangle:
    def test_ghz_is_one(self):
        assert tangle(ghz_state()) == pytest.approx(1.0, abs=1e-12)

    def test_w_is_zero(self):
        assert tangle(w_state()) == pytest.approx(0.0, abs=1e-12)

    def test_product_state_is_zero(self, rng):
        psi = np.kron(np.kron(rand_state(2, rng), rand_state(2, rng)), rand_state(2, rng))
        assert tangle(psi) == pytest.approx(0.0, abs=1e-12)

    def test_local_unitary_invariance(self, rng):
        from convroof.linalg import rand_unitary

        psi = rand_state(8, rng)
        t0 = tangle(psi)
        u = np.kron(np.kron(rand_unitary(2, rng=rng), rand_unitary(2, rng=rng)),
                    rand_unitary(2, rng=rng))
        assert tangle(u @ psi) == pytest.approx(t0, abs=1e-10)

    def test_gradient_matches_fd(self, rng):
        for _ in range(5):
            psi = rand_state(8, rng)
            g = grad_tangle(psi)
            g_fd = fd_grad_state(tangle, psi)
            assert np.max(np.abs(g - g_fd)) < 1e-7

    def test_gradient_zero_with_warning_at_kink(self):
        with pytest.warns(NonSmoothPointWarning):
            g = grad_tangle(w_state())
        assert np.array_equal(g, np.zeros(8))

    def test_requires_dim_8(self, rng):
        with pytest.raises(ValueError):
            tangle(rand_state(4, rng))


class TestMeyerWallach:
    def test_ghz_is_one(self):
        assert meyer_wallach(ghz_state()) == pytest.approx(1.0, abs=1e-12)

    def test_w_state(self):
        assert meyer_wallach(w_state()) == pytest.approx(8.0 / 9.0, abs=1e-12)

    def test_product_state_is_zero(self, rng):
        psi = np.kron(np.kron(rand_state(2, rng), rand_state(2, rng)), rand_state(2, rng))
        assert meyer_wallach(psi) == pytest.approx(0.0, abs=1e-12)

    def test_two_qubits_matches_concurrence(self, rng):
        # for two qubits the measure equals the squared concurrence
        for _ in range(5):
            psi = rand_state(4, rng)
            c2 = 4.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]) ** 2
            assert meyer_wallach(psi) == pytest.approx(c2, abs=1e-12)

    def test_gradient_matches_fd(self, rng):
        for _ in range(5):
            psi = rand_state(16, rng)
            g = grad_meyer_wallach(psi)
            g_fd = fd_grad_state(meyer_wallach, psi)
            assert np.max(np.abs(g - g_fd)) < 1e-7

    def test_rejects_non_power_of_two(self, rng):
        with pytest.raises(ValueError):
            meyer_wallach(rand_state(6, rng))


class TestRegistry:
    def test_known_names(self):
        assert {"tangle", "meyer-wallach"} <= set(measure_names())

    def test_entropy_default_square_split(self, rng):
        h = get_measure("entropy", 9)
        psi = max_entangled_state(3)
        assert h.evaluate(psi) == pytest.approx(np.log2(3), abs=1e-12)

    def test_entropy_explicit_dims(self, rng):
        h = get_measure("entropy", 6, dims=(2, 3))
        psi = rand_state(6, rng)
        assert h.evaluate(psi) == pytest.approx(entropy_of_entanglement(psi, (2, 3)), abs=1e-14)

    def test_entropy_non_square_requires_dims(self):
        with pytest.raises(ValueError):
            get_measure("entropy", 6)

    def test_tangle_requires_dim_8(self):
        with pytest.raises(ValueError):
            get_measure("tangle", 16)

    def test_handles_are_consistent(self, rng):
        for name, dim in (("tangle", 8), ("meyer-wallach", 8)):
            h = get_measure(name, dim)
            psi = rand_state(dim, rng)
            g = h.gradient(psi)
            g_fd = fd_grad_state(h.evaluate, psi)
            assert np.max(np.abs(g - g_fd)) < 1e-6

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            get_measure("negativity", 4)

import numpy as np
import pytest

from helpers import random_hermitian, random_unitary

from ncprism.errors import (
    NotHermitianError,
    NotIsometryError,
    NotPSDError,
    ShapeMismatchError,
)
from ncprism.matkernel import (
    ToleranceConfig,
    check_order,
    commutant_dimension,
    compress,
    dagger,
    direct_sum,
    kron,
    opnorm,
    psd_sqrt,
    support_value,
)


class TestToleranceConfig:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.alg_tol == 1e-10
        assert tol.spec_tol == 1e-8
        assert tol.psd_clamp == 1e-12

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"psd_clamp": 0.0},
            {"psd_clamp": 1e-9},  # above alg_tol
            {"alg_tol": 1e-7},  # above spec_tol
            {"spec_tol": 1.0},
        ],
    )
    def test_invalid_orderings_rejected(self, kwargs):
        with pytest.raises(ValueError):
            ToleranceConfig(**kwargs)


class TestPsdSqrt:
    def test_identity_fixed_point(self):
        assert np.allclose(psd_sqrt(np.eye(2)), np.eye(2), atol=1e-14)

    def test_diagonal(self):
        assert np.allclose(psd_sqrt(np.diag([4.0, 0.0])), np.diag([2.0, 0.0]), atol=1e-14)

    def test_against_eigendecomposition_oracle(self):
        h = np.array([[1.0, 0.6], [0.6, 1.0]], dtype=complex)
        w, u = np.linalg.eigh(h)
        oracle = (u * np.sqrt(w)) @ dagger(u)
        s = psd_sqrt(h)
        assert opnorm(s - oracle) <= 1e-12
        assert opnorm(s @ s - h) <= 1e-8

    def test_clamps_tiny_negative_eigenvalues(self):
        h = np.diag([1.0, -0.5e-12])
        s = psd_sqrt(h)
        assert np.linalg.eigvalsh(s).min() >= 0.0

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(np.diag([1.0, -0.1]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            psd_sqrt(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_square_property_random(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(1, 17))
            raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = raw @ dagger(raw)
            s = psd_sqrt(h)
            assert opnorm(s @ s - h) <= 1e-8 * (1 + opnorm(h))
            assert np.linalg.eigvalsh(s).min() >= -1e-12


class TestCommutant:
    def test_identity_has_full_commutant(self):
        dim, basis = commutant_dimension([np.eye(2)])
        assert dim == 4
        assert len(basis) == 4

    def test_irreducible_pair(self):
        mats = [np.diag([-1.0, 1.0]), np.array([[0.0, 1.0], [1.0, 0.0]])]
        dim, basis = commutant_dimension(mats)
        assert dim == 1
        # The single basis element is a scalar multiple of the identity.
        b = basis[0]
        assert opnorm(b - b[0, 0] * np.eye(2)) <= 1e-10

    def test_diagonal_commutant(self):
        dim, _ = commutant_dimension([np.diag([1.0, -1.0])])
        assert dim == 2

    def test_basis_orthonormal_and_commutes(self):
        rng = np.random.default_rng(3)
        mats = [random_hermitian(rng, 4) for _ in range(2)]
        dim, basis = commutant_dimension(mats)
        for i, b in enumerate(basis):
            for a in mats:
                assert opnorm(b @ a - a @ b) <= 1e-6
            for j, other in enumerate(basis):
                ip = np.vdot(b.ravel(), other.ravel())
                assert abs(ip - (1.0 if i == j else 0.0)) <= 1e-10

    def test_unitary_conjugation_invariance(self):
        rng = np.random.default_rng(11)
        mats = [np.diag([-1.0, 1.0, 1.0]), random_hermitian(rng, 3)]
        dim, basis = commutant_dimension(mats)
        u = random_unitary(rng, 3)
        conj = [u @ m @ dagger(u) for m in mats]
        dim2, basis2 = commutant_dimension(conj)
        assert dim2 == dim
        # The conjugated original basis lies in the span of the new basis.
        for b in basis:
            target = (u @ b @ dagger(u)).ravel()
            coeffs = np.array([np.vdot(nb.ravel(), target) for nb in basis2])
            reconstructed = sum(c * nb.ravel() for c, nb in zip(coeffs, basis2))
            assert np.linalg.norm(reconstructed - target) <= 1e-6

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            commutant_dimension([np.eye(2), np.eye(3)])
        with pytest.raises(ShapeMismatchError):
            commutant_dimension([])


class TestSupportValue:
    def test_largest_eigenvalue(self):
        assert support_value([np.diag([1.0, -1.0])], [1.0]) == pytest.approx(1.0)

    def test_sqrt_two(self):
        # Eigenvalues of [[1, 1], [1, -1]] are +/- sqrt(2).
        mats = [np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [1.0, 0.0]])]
        assert support_value(mats, [1.0, 1.0]) == pytest.approx(np.sqrt(2.0), abs=1e-12)

    def test_zero_operator(self):
        assert support_value([np.zeros((3, 3))], [5.0]) == pytest.approx(0.0)

    def test_width_nonnegative_property(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            mats = [random_hermitian(rng, n) for _ in range(3)]
            c = rng.standard_normal(3)
            width = support_value(mats, c) + support_value(mats, -c)
            assert width >= -1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            support_value([np.array([[0.0, 1.0], [0.0, 0.0]])], [1.0])

    def test_rejects_bad_direction(self):
        with pytest.raises(ShapeMismatchError):
            support_value([np.eye(2)], [1.0, 2.0])


class TestBlocks:
    def test_kron_identities(self):
        assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_direct_sum(self):
        out = direct_sum(np.array([[1.0]]), np.array([[-1.0]]))
        assert np.array_equal(out, np.diag([1.0, -1.0]).astype(complex))

    def test_compress_corner(self):
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        e1 = np.array([[1.0], [0.0]])
        assert np.array_equal(compress(swap, e1), np.array([[0.0]], dtype=complex))

    def test_compress_first_block_inclusion_is_exact(self):
        rng = np.random.default_rng(9)
        a = random_hermitian(rng, 3)
        b = random_hermitian(rng, 2)
        big = direct_sum(a, b)
        inclusion = np.vstack([np.eye(3), np.zeros((2, 3))])
        assert np.array_equal(compress(big, inclusion), a)

    def test_compress_rejects_non_isometry(self):
        with pytest.raises(NotIsometryError):
            compress(np.eye(2), np.array([[1.0], [1.0]]))


class TestCheckOrder:
    def test_identity_order_one(self):
        assert check_order(np.eye(3), 1)

    def test_roots_of_unity(self):
        omega = np.exp(2j * np.pi / 3)
        assert check_order(np.diag([1.0, omega, omega**2]), 3)

    def test_wrong_order_rejected(self):
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert check_order(swap, 2)
        assert not check_order(swap, 3)

    def test_non_unitary_rejected(self):
        assert not check_order(np.diag([0.5, 1.0]), 1)

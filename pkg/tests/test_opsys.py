import numpy as np
import pytest

from helpers import random_psd_trace_one

from ncprism.convexity import random_prism_point
from ncprism.dilation import joint_prism_dilation
from ncprism.errors import (
    InvalidDensityError,
    NotSelfadjointError,
    WrongLevelError,
)
from ncprism.matkernel import check_order, hermitize, opnorm
from ncprism.opsys import (
    Certified,
    DiagTuple,
    DualTuple,
    PrismElement,
    Refuted,
    dual_member,
    element_distance,
    functional_to_tuple,
    matrix_positivity_prism,
    psi_k,
    psi_k_basis_element,
    scalar_positivity_cube,
    scalar_positivity_prism,
)
from ncprism.reps import prism_vertex_rep


def scalar_element(k, coeffs, g):
    blocks = [np.array([[complex(c)]]) for c in coeffs]
    return PrismElement(k, 1, blocks, np.array([[complex(g)]]))


class TestPsiK:
    def test_all_ones_maps_to_unit(self):
        image = psi_k(DiagTuple.ones(3, 1))
        assert element_distance(image, PrismElement.unit(3, 1)) <= 1e-12

    def test_kernel_vector_maps_to_zero(self):
        eye = np.eye(1, dtype=complex)
        kernel = DiagTuple(3, 1, [eye, eye, eye, -eye, -eye])
        image = psi_k(kernel)
        assert max(opnorm(b) for b in [*image.c, image.g]) <= 1e-12

    def test_spectral_average_expansion(self):
        # k e_0 expands to coefficient 1/2 on every power of w.
        k = 4
        zero = np.zeros((1, 1), dtype=complex)
        blocks = [np.eye(1) * k, zero, zero, zero, zero, zero]
        image = psi_k(DiagTuple(k, 1, blocks))
        for block in image.c:
            assert complex(block[0, 0]) == pytest.approx(0.5, abs=1e-14)
        assert opnorm(image.g) <= 1e-14

    def test_matrix_level_kernel(self):
        rng = np.random.default_rng(19)
        y = hermitize(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        kernel = DiagTuple(3, 2, [y, y, y, -y, -y])
        image = psi_k(kernel)
        assert max(opnorm(b) for b in [*image.c, image.g]) <= 1e-12

    def test_basis_images_are_positive_scalar_elements(self):
        for index in range(5):
            e = psi_k_basis_element(3, index)
            verdict = scalar_positivity_prism(e)
            assert verdict.positive


class TestDualMember:
    def test_balanced(self):
        assert dual_member(DualTuple(3, np.array([1.0, 1.0, 1.0, 1.0, 2.0])))

    def test_unbalanced(self):
        assert not dual_member(DualTuple(3, np.array([1.0, 1.0, 1.0, 1.0, 1.0])))

    def test_zero(self):
        assert dual_member(DualTuple(3, np.zeros(5)))


class TestFunctionalToTuple:
    def test_vertex_state(self):
        pair, xi = prism_vertex_rep(3, 0, 1)
        rho = np.outer(xi, xi.conj())
        z = functional_to_tuple(pair, rho, 3)
        assert np.allclose(z.z, [0.5, 0.0, 0.0, 0.5, 0.0], atol=1e-10)
        assert dual_member(z)

    def test_trivial_character(self):
        from ncprism.reps import assemble_dimension

        pair = assemble_dimension(1)
        z = functional_to_tuple(pair, np.eye(1), 3)
        assert np.allclose(z.z, [0.5, 0.0, 0.0, 0.5, 0.0], atol=1e-12)

    def test_maximally_mixed_on_vertex_rep(self):
        pair, _ = prism_vertex_rep(3, 1, -1)
        rho = np.eye(3) / 3.0
        z = functional_to_tuple(pair, rho, 3)
        assert dual_member(z)
        assert z.z.real.min() >= -1e-10
        assert np.abs(z.z.imag).max() <= 1e-10

    def test_random_densities_land_in_dual_cone(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            k = int(rng.choice([3, 4, 5]))
            pair, _ = prism_vertex_rep(k, int(rng.integers(0, k)), int(rng.choice([1, -1])))
            rho = random_psd_trace_one(rng, pair.dim)
            z = functional_to_tuple(pair, rho, k)
            assert dual_member(z)
            assert z.z.real.min() >= -1e-10

    def test_rejects_bad_density(self):
        pair, _ = prism_vertex_rep(3, 0, 1)
        with pytest.raises(InvalidDensityError):
            functional_to_tuple(pair, np.eye(3), 3)  # trace 3, not 1
        with pytest.raises(InvalidDensityError):
            functional_to_tuple(pair, np.diag([1.5, -0.5, 0.0]), 3)


class TestScalarPositivity:
    def test_unit(self):
        verdict = scalar_positivity_prism(PrismElement.unit(3, 1))
        assert verdict.positive
        assert verdict.margin == pytest.approx(1.0)

    def test_one_plus_v(self):
        verdict = scalar_positivity_prism(scalar_element(3, [1, 0, 0], 1))
        assert verdict.positive
        assert verdict.margin == pytest.approx(0.0, abs=1e-14)
        assert verdict.worst_vertex[1] == -1

    def test_one_plus_w_plus_wstar_plus_v(self):
        verdict = scalar_positivity_prism(scalar_element(3, [1, 1, 1], 1))
        assert not verdict.positive
        assert verdict.margin == pytest.approx(-1.0, abs=1e-12)

    def test_requires_selfadjoint(self):
        with pytest.raises(NotSelfadjointError):
            scalar_positivity_prism(scalar_element(3, [0, 1, 0], 0))

    def test_requires_scalar_level(self):
        with pytest.raises(WrongLevelError):
            scalar_positivity_prism(PrismElement.unit(3, 2))


class TestScalarCube:
    def test_margin_zero(self):
        positive, margin = scalar_positivity_cube(1.0, [1.0, 0.0])
        assert positive and margin == pytest.approx(0.0)

    def test_positive(self):
        positive, margin = scalar_positivity_cube(2.0, [1.0, 1.0])
        assert positive and margin == pytest.approx(0.0)

    def test_negative(self):
        positive, margin = scalar_positivity_cube(1.9, [1.0, 1.0])
        assert not positive
        assert margin == pytest.approx(-0.1)


class TestMatrixPositivity:
    def test_unit_certified(self):
        verdict = matrix_positivity_prism(PrismElement.unit(3, 1), samples=4)
        assert isinstance(verdict, Certified)
        # Re-verify the certificate from its payload alone.
        assert verdict.lift.min_block_eigenvalue() >= 1e-6 - 1e-12
        assert element_distance(psi_k(verdict.lift), PrismElement.unit(3, 1)) <= 1e-8

    def test_negative_element_refuted_with_sound_witness(self):
        e = scalar_element(3, [1, 1, 1], 1)
        verdict = matrix_positivity_prism(e, samples=4)
        assert isinstance(verdict, Refuted)
        pair = verdict.witness
        assert check_order(pair.w, 3)
        assert check_order(pair.v, 2)
        low = float(np.linalg.eigvalsh(hermitize(e.evaluate(pair))).min())
        assert low <= -1e-8

    def test_interior_matrix_level_certified(self):
        rng = np.random.default_rng(5)
        perturb = hermitize(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        perturb = perturb / opnorm(perturb) * 0.1
        blocks = [1.5 * np.eye(2), perturb, perturb.conj().T]
        e = PrismElement(3, 2, blocks, np.zeros((2, 2)))
        assert e.is_selfadjoint()
        verdict = matrix_positivity_prism(e, samples=4)
        assert isinstance(verdict, Certified)
        assert element_distance(psi_k(verdict.lift), e) <= 1e-8
        assert verdict.lift.min_block_eigenvalue() >= 1e-6 - 1e-12

    def test_boundary_element_is_not_contradicted(self):
        # 1 + v has scalar margin exactly 0: no refutation may appear, and
        # certification at strict margin is impossible, so Unknown is the
        # honest outcome (Certified would also be sound if slack existed).
        e = scalar_element(3, [1, 0, 0], 1)
        verdict = matrix_positivity_prism(e, samples=4, max_iter=300)
        assert not isinstance(verdict, Refuted)

    def test_consistency_with_scalar_rule_on_grid(self):
        for cval in np.linspace(-1.0, 1.0, 5):
            for gval in np.linspace(-1.0, 1.0, 5):
                e = scalar_element(3, [1.0, cval, cval], gval)
                scalar = scalar_positivity_prism(e)
                verdict = matrix_positivity_prism(e, samples=3, max_iter=400)
                if isinstance(verdict, Certified):
                    assert scalar.margin >= -1e-10
                if isinstance(verdict, Refuted):
                    assert scalar.margin <= 1e-8

    def test_rejects_non_selfadjoint(self):
        with pytest.raises(NotSelfadjointError):
            matrix_positivity_prism(scalar_element(3, [0, 1, 0], 0))


class TestDualPairing:
    def test_entrywise_pairing_nonnegative(self):
        # Positivity in the diagonal source system pairs nonnegatively with
        # entrywise-nonnegative dual tuples.
        rng = np.random.default_rng(11)
        for _ in range(20):
            k = 3
            blocks = []
            for _ in range(k + 2):
                raw = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                blocks.append(raw @ raw.conj().T)
            x = DiagTuple(k, 2, blocks)
            weights = rng.uniform(0.0, 1.0, k + 2)
            paired = sum(w * b for w, b in zip(weights, x.blocks))
            assert np.linalg.eigvalsh(hermitize(paired)).min() >= -1e-10


class TestSelfadjointness:
    def test_selfadjoint_flag(self):
        rng = np.random.default_rng(7)
        c1 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        blocks = [np.eye(2), c1, c1.conj().T]
        e = PrismElement(3, 2, blocks, np.eye(2))
        assert e.is_selfadjoint()
        bad = PrismElement(3, 2, [np.eye(2), c1, c1], np.eye(2))
        assert not bad.is_selfadjoint()

    def test_evaluation_is_hermitian_for_selfadjoint(self):
        rng = np.random.default_rng(9)
        a, b = random_prism_point(rng, 2, 3)
        pair, _ = joint_prism_dilation(a, b, 3)
        c1 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        e = PrismElement(3, 2, [np.eye(2), c1, c1.conj().T], np.eye(2))
        value = e.evaluate(pair)
        assert opnorm(value - value.conj().T) <= 1e-8

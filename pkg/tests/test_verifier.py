"""Pointwise criteria: independence matrix, defining functions, tangent oracle."""

import numpy as np
import pytest

from crsphere import (
    GaussianRational,
    OneForm,
    TwoForm,
    WPolynomial,
    ar_embedding,
    block_sum_embedding,
    cr_dim_at,
    defining_functions,
    del_form,
    equivalence_check,
    equivalence_check_many,
    eval_embedding,
    independence_matrix,
    two_form_identity_check,
    make_ar_polynomial,
    make_graph_embedding,
    make_negative_control,
    point_report,
    sample_sphere,
    wedge,
    wedge_nonzero,
)
from helpers import random_unit, random_wpoly

GR = GaussianRational.of
CONTROLS = ("holomorphic", "zero", "radial")


class TestIndependenceMatrix:
    def test_ar_at_first_axis(self):
        M = independence_matrix(ar_embedding(), [1, 0])
        assert np.allclose(M, [[1, 0], [0, 1j]], atol=1e-15)

    def test_ar_at_second_axis(self):
        M = independence_matrix(ar_embedding(), [0, 1])
        assert np.allclose(M, [[0, 1], [1, 0]], atol=1e-15)

    def test_zero_control_has_zero_row(self):
        C = make_negative_control("zero", 2)
        rng = np.random.default_rng(41)
        M = independence_matrix(C, random_unit(rng, 2))
        assert np.all(M[1] == 0)

    def test_off_sphere_rejected(self):
        with pytest.raises(ValueError, match="off the unit sphere"):
            independence_matrix(ar_embedding(), [0.5, 0])


class TestPointReport:
    def test_ar_axis_report(self):
        rep = point_report(ar_embedding(), [1, 0])
        assert abs(rep.sigma_min - 1) < 1e-14
        assert rep.rank == 2
        assert rep.cr_regular and not rep.marginal

    def test_holomorphic_rank_one(self):
        C = make_negative_control("holomorphic", 2)
        rng = np.random.default_rng(42)
        rep = point_report(C, random_unit(rng, 2))
        assert rep.rank == 1 and not rep.cr_regular

    def test_radial_parallel_rows(self):
        C = make_negative_control("radial", 2)
        rep = point_report(C, [1, 0])
        assert rep.rank == 1 and not rep.cr_regular

    def test_json_echo(self):
        rep = point_report(ar_embedding(), [1, 0])
        d = rep.to_json_dict()
        assert d["z"] == [[1.0, 0.0], [0.0, 0.0]]
        assert d["rank"] == 2 and d["cr_regular"] is True

    def test_scaling_graph_function_preserves_verdict(self):
        rng = np.random.default_rng(43)
        E = ar_embedding()
        for scalar in (GR(3, -2), GR(0, 5), GaussianRational.of(1, 0) * 7):
            scaled = make_graph_embedding(2, [E.f[0] * scalar], label="scaled")
            for _ in range(20):
                z = random_unit(rng, 2)
                assert point_report(scaled, z).cr_regular == point_report(E, z).cr_regular
        C = make_negative_control("radial", 2)
        scaled = make_graph_embedding(2, [C.f[0] * GR(2, 1)], label="scaled-control")
        z = random_unit(rng, 2)
        assert point_report(scaled, z).cr_regular == point_report(C, z).cr_regular is False


class TestDefiningFunctions:
    def test_sphere_equation(self):
        rhos = defining_functions(ar_embedding())
        assert len(rhos) == 3
        assert rhos[0].terms == {
            ((0, 0, 0), (0, 0, 0)): GR(-1),
            ((1, 0, 0), (1, 0, 0)): GR(1),
            ((0, 1, 0), (0, 1, 0)): GR(1),
        }

    def test_real_imaginary_split_reassembles(self):
        rhos = defining_functions(ar_embedding())
        g = rhos[1] + GaussianRational.of(0, 1) * rhos[2]
        expected = WPolynomial.variable(3, 2) - make_ar_polynomial().pad_to(3)
        assert g == expected

    def test_all_real(self):
        for rho in defining_functions(block_sum_embedding(2)):
            assert rho.is_real()

    def test_vanish_on_graph(self):
        rng = np.random.default_rng(44)
        E = ar_embedding()
        rhos = defining_functions(E)
        for _ in range(20):
            w = eval_embedding(E, random_unit(rng, 2))
            for rho in rhos:
                assert abs(rho.eval(w)) < 1e-12


class TestForms:
    def test_del_form_of_sphere_equation(self):
        rhos = defining_functions(ar_embedding())
        rng = np.random.default_rng(45)
        w = np.append(random_unit(rng, 2), 0.3 + 0.1j)
        form = del_form(rhos[0], w)
        assert np.allclose(form.coeffs, [np.conj(w[0]), np.conj(w[1]), 0])

    def test_del_form_simple(self):
        rho = WPolynomial.monomial(2, (1, 0), (1, 0), 1)  # z1*zb1
        form = del_form(rho, [1, 0])
        assert np.allclose(form.coeffs, [1, 0])

    def test_del_form_constant_is_zero(self):
        rho = WPolynomial.constant(2, 5)
        assert np.all(del_form(rho, [1, 0]).coeffs == 0)

    def test_del_form_rejects_non_real(self):
        with pytest.raises(ValueError, match="real"):
            del_form(WPolynomial.variable(2, 0), [1, 0])

    def test_wedge_nonzero_basis(self):
        dz1 = OneForm([1, 0, 0])
        dz2 = OneForm([0, 1, 0])
        assert wedge_nonzero([dz1, dz2])

    def test_wedge_parallel_is_zero(self):
        a = OneForm([1, 0])
        assert not wedge_nonzero([a, OneForm([2, 0])])

    def test_wedge_of_ar_defining_forms(self):
        E = ar_embedding()
        w = eval_embedding(E, [1, 0])
        forms = [del_form(r, w) for r in defining_functions(E)]
        assert wedge_nonzero(forms)

    def test_too_many_forms_rejected(self):
        a = OneForm([1, 0])
        with pytest.raises(ValueError, match="independent"):
            wedge_nonzero([a, a, a])

    def test_two_form_antisymmetry_enforced(self):
        with pytest.raises(ValueError, match="antisymmetric"):
            TwoForm(np.ones((2, 2)))

    def test_wedge_is_antisymmetric(self):
        rng = np.random.default_rng(46)
        a = OneForm(rng.standard_normal(3) + 1j * rng.standard_normal(3))
        b = OneForm(rng.standard_normal(3) + 1j * rng.standard_normal(3))
        assert np.allclose(wedge(a, b).coeffs, -wedge(b, a).coeffs)


class TestTwoFormIdentity:
    def test_holomorphic_both_sides_vanish(self):
        f = WPolynomial.monomial(2, (2, 0), (0, 0), 1)  # z1^2
        rng = np.random.default_rng(47)
        assert two_form_identity_check(f, random_unit(rng, 2)) < 1e-15

    def test_two_term_case(self):
        # f = z1 + zb2
        f = WPolynomial.variable(2, 0) + WPolynomial.conj_variable(2, 1)
        rng = np.random.default_rng(48)
        for _ in range(10):
            assert two_form_identity_check(f, random_unit(rng, 2)) <= 1e-12

    def test_ar_polynomial_at_many_points(self):
        P = make_ar_polynomial()
        rng = np.random.default_rng(49)
        for _ in range(100):
            assert two_form_identity_check(P, random_unit(rng, 2)) <= 1e-10

    def test_random_polynomials(self):
        rng = np.random.default_rng(50)
        for _ in range(30):
            m = int(rng.integers(1, 5))
            f = random_wpoly(rng, m, max_degree=4)
            assert two_form_identity_check(f, random_unit(rng, m)) <= 1e-10


class TestTangentOracle:
    def test_ar_is_totally_real_at_axis(self):
        assert cr_dim_at(ar_embedding(), [1, 0]) == 0

    def test_block_embedding_dimension_count(self):
        E = block_sum_embedding(2)
        rng = np.random.default_rng(51)
        for _ in range(5):
            assert cr_dim_at(E, random_unit(rng, 4)) == 2

    def test_holomorphic_graph_keeps_complex_tangent(self):
        C = make_negative_control("holomorphic", 2)
        rng = np.random.default_rng(52)
        for _ in range(5):
            assert cr_dim_at(C, random_unit(rng, 2)) == 1

    def test_matches_rank_criterion(self):
        rng = np.random.default_rng(53)
        for E in (ar_embedding(), block_sum_embedding(2)):
            for _ in range(25):
                z = random_unit(rng, E.m)
                if point_report(E, z).cr_regular:
                    assert cr_dim_at(E, z) == E.m - E.q - 1


class TestEquivalence:
    def test_ar_all_agree_pass(self):
        Z = sample_sphere(2, 100, 7)
        results = equivalence_check_many(ar_embedding(), Z)
        assert all(r.agree and r.all_pass for r in results)

    def test_controls_all_agree_fail(self):
        Z = sample_sphere(2, 100, 8)
        for kind in CONTROLS:
            results = equivalence_check_many(make_negative_control(kind, 2), Z)
            assert all(r.agree and not r.all_pass for r in results)

    def test_radial_at_axis(self):
        r = equivalence_check(make_negative_control("radial", 2), [1, 0])
        assert r.agree and not r.all_pass

    def test_result_serializes(self):
        r = equivalence_check(ar_embedding(), [1, 0])
        d = r.to_json_dict()
        assert d["agree"] is True and d["cr_dim"] == 0
        assert d["z"] == [[1.0, 0.0], [0.0, 0.0]]


class TestBlockProperties:
    def test_block_permutation_preserves_sigma_min(self):
        E = block_sum_embedding(2)
        rng = np.random.default_rng(54)
        perm = [2, 3, 0, 1]  # swap the two coordinate pairs
        for _ in range(20):
            z = random_unit(rng, 4)
            s1 = point_report(E, z).sigma_min
            s2 = point_report(E, z[perm]).sigma_min
            assert abs(s1 - s2) < 1e-12

    def test_largest_block_gives_rank_two_submatrix(self):
        # at every point some pair is nonzero, and the 2x2 slice of
        # [z; dQ/dzbar] through the largest pair is already nonsingular
        rng = np.random.default_rng(55)
        for n in (1, 2, 3):
            E = block_sum_embedding(n)
            dzbar = [E.f[0].d_zbar(k) for k in range(2 * n)]
            Z = sample_sphere(2 * n, 10_000 // n, 56 + n)
            for z in Z[: 10_000 // n]:
                norms = [abs(z[2 * k]) ** 2 + abs(z[2 * k + 1]) ** 2 for k in range(n)]
                k = int(np.argmax(norms))
                assert norms[k] > 0
                sub = np.array(
                    [
                        [z[2 * k], z[2 * k + 1]],
                        [dzbar[2 * k].eval(z), dzbar[2 * k + 1].eval(z)],
                    ]
                )
                s = np.linalg.svd(sub, compute_uv=False)
                assert s[-1] > 1e-8 * s[0]

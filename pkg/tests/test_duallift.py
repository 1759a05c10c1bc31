import numpy as np
import pytest

import golden
from conftest import random_quaternion
from quatfact import (Factorization, LinearFactor, MismatchedPolynomials,
                      Quaternion, RealPoly, build_lift_system, solve_lift,
                      verify_lift)

I = Quaternion(0, 1, 0, 0)


@pytest.fixture(scope="module")
def remarkable_pair():
    return (golden.factorization(golden.REMARKABLE_G_PAIRS),
            golden.factorization(golden.REMARKABLE_H_PAIRS))


@pytest.fixture(scope="module")
def remarkable_solution(remarkable_pair):
    system = build_lift_system(*remarkable_pair)
    return system, solve_lift(system)


class TestBuildSystem:
    def test_shape(self, remarkable_pair):
        system = build_lift_system(*remarkable_pair)
        assert system.num_unknowns() == 32
        assert system.num_rows() == 48
        assert len(system.layout) == 8
        assert system.layout[0] == ("G", 1)
        assert system.layout[4] == ("H", 1)

    def test_single_factor_diagonal_solution(self):
        f = Factorization.from_factors([LinearFactor("t", I)])
        system = build_lift_system(f, f)
        assert system.num_unknowns() == 8
        sol = solve_lift(system)
        # equal dual parts d = f with a valid Study pairing solve the system:
        # d = j gives p*conj(d) + d*conj(p) = 0 for p = -i
        vec = np.array([0, 0, 1, 0, 0, 0, 1, 0], dtype=float)
        assert verify_lift(f, f, vec) <= 1e-12
        assert sol.membership_residual(vec) <= 1e-8

    def test_identical_factorizations_admit_diagonal(self, remarkable_pair):
        f1, _ = remarkable_pair
        system = build_lift_system(f1, f1)
        sol = solve_lift(system)
        assert sol.dimension >= 1
        rng = np.random.default_rng(5)
        for _ in range(5):
            if sol.dimension == 0:
                break
            coeffs = rng.normal(size=sol.dimension)
            vec = coeffs @ sol.basis
            assert verify_lift(f1, f1, vec) <= 1e-8

    def test_mismatched_rejected(self, remarkable_pair):
        f1, _ = remarkable_pair
        other = golden.factorization(golden.TWOREP_A_PAIRS)
        with pytest.raises(MismatchedPolynomials):
            build_lift_system(f1, other)

    def test_cofactor_one_required(self, remarkable_pair):
        f1, f2 = remarkable_pair
        scaled = Factorization(f1.unit, RealPoly("t", (1, 0, 1)), f1.factors)
        with pytest.raises(MismatchedPolynomials):
            build_lift_system(scaled, f2)


class TestSolve:
    def test_dimension_four(self, remarkable_solution):
        _, sol = remarkable_solution
        assert sol.dimension == 4
        assert sol.parameters == ("alpha", "beta", "gamma", "delta")

    def test_family_membership(self, remarkable_solution):
        _, sol = remarkable_solution
        for name, vec in golden.LIFT_FAMILY.items():
            assert sol.membership_residual(vec) <= 1e-8, name

    def test_family_satisfies_equations(self, remarkable_pair):
        f1, f2 = remarkable_pair
        for vec in golden.LIFT_FAMILY.values():
            assert verify_lift(f1, f2, vec) <= 1e-8

    def test_basis_vectors_verify(self, remarkable_pair, remarkable_solution):
        f1, f2 = remarkable_pair
        _, sol = remarkable_solution
        for row in sol.basis:
            assert verify_lift(f1, f2, row) <= 1e-8

    def test_random_vector_fails(self, remarkable_pair):
        f1, f2 = remarkable_pair
        rng = np.random.default_rng(17)
        for _ in range(5):
            assert verify_lift(f1, f2, rng.normal(size=32)) > 1e-3

    def test_full_rank_system_has_empty_nullspace(self, remarkable_pair):
        f1, f2 = remarkable_pair
        system = build_lift_system(f1, f2)
        square = system.matrix.T @ system.matrix + np.eye(32)
        from quatfact.duallift import LiftSystem
        fake = LiftSystem(square, tuple(("coeff", 0, 0, "w") for _ in range(32)),
                          system.layout, f1, f2)
        sol = solve_lift(fake)
        assert sol.dimension == 0
        assert sol.basis.shape[0] == 0

    @pytest.mark.xfail(reason="every single row of the 48-equation system is "
                              "redundant (rank 28); only removing row groups "
                              "enlarges the nullspace", strict=True)
    def test_single_study_row_removal_enlarges_nullspace(self, remarkable_solution):
        system, sol = remarkable_solution
        for idx in system.study_row_indices():
            reduced = solve_lift(system.without_row(idx))
            assert reduced.dimension > sol.dimension

    def test_study_rows_as_a_group_constrain(self, remarkable_solution):
        system, sol = remarkable_solution
        reduced = system
        for idx in sorted(system.study_row_indices(), reverse=True):
            reduced = reduced.without_row(idx)
        assert solve_lift(reduced).dimension > sol.dimension


def test_solution_serialization(remarkable_solution):
    _, sol = remarkable_solution
    data = sol.as_dict()
    assert data["dimension"] == 4
    assert len(data["basis"]) == 4
    assert data["layout"][0] == {"side": "G", "index": 1}
    assert data["layout"][-1] == {"side": "H", "index": 4}

import random
from fractions import Fraction

import pytest

from gitwin.errors import DimensionMismatchError, InputError
from gitwin.polyhedra import (
    Cone,
    InnerProduct,
    QpProblem,
    cone_contains,
    equality_constrained_minimum,
    minimize_norm,
    primitive_direction,
    solve_linear_system,
)

from oracles import fm_cone_contains

F = Fraction


def test_primitive_direction():
    assert primitive_direction((2, 4)) == (1, 2)
    assert primitive_direction((-2, -4)) == (-1, -2)
    assert primitive_direction((F(1, 2), F(1, 3))) == (3, 2)
    assert primitive_direction((0, 5, 0)) == (0, 1, 0)
    with pytest.raises(InputError):
        primitive_direction((0, 0))


class TestInnerProduct:
    def test_identity(self):
        q = InnerProduct.identity(2)
        assert q.rank == 2
        assert q.pairing((1, 2), (3, 4)) == 11
        assert q.norm_squared((3, 4)) == 25

    def test_accepts_positive_definite(self):
        q = InnerProduct(((F(2), F(1)), (F(1), F(2))))
        assert q.norm_squared((1, -1)) == 2
        assert q.pairing((1, 0), (0, 1)) == 1

    def test_rejects_singular(self):
        with pytest.raises(InputError, match="not positive definite"):
            InnerProduct(((F(0),),))

    def test_rejects_indefinite(self):
        with pytest.raises(InputError, match="not positive definite"):
            InnerProduct(((F(1), F(2)), (F(2), F(1))))

    def test_rejects_asymmetric(self):
        with pytest.raises(InputError, match="symmetric"):
            InnerProduct(((F(1), F(2)), (F(3), F(1))))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            InnerProduct(((F(1), F(0)),))

    def test_pairing_rank_mismatch(self):
        q = InnerProduct.identity(2)
        with pytest.raises(DimensionMismatchError):
            q.pairing((1,), (1, 0))


class TestSolveLinearSystem:
    def test_box(self):
        x = solve_linear_system(
            [],
            [((1, 0), F(0), False), ((0, 1), F(0), False),
             ((-1, 0), F(-1), False), ((0, -1), F(-1), False)],
            2,
        )
        assert x is not None
        assert 0 <= x[0] <= 1 and 0 <= x[1] <= 1

    def test_equality_substitution(self):
        x = solve_linear_system([((1, 1), F(3))], [((1, 0), F(2), False)], 2)
        assert x is not None
        assert x[0] + x[1] == 3 and x[0] >= 2

    def test_strict_inequality(self):
        x = solve_linear_system([], [((1,), F(0), True)], 1)
        assert x is not None and x[0] > 0

    def test_strict_makes_point_infeasible(self):
        assert solve_linear_system([((1,), F(0))], [((1,), F(0), True)], 1) is None

    def test_infeasible_pair(self):
        assert solve_linear_system(
            [], [((1,), F(1), False), ((-1,), F(0), False)], 1
        ) is None

    def test_contradictory_equalities(self):
        assert solve_linear_system([((1, 1), F(0)), ((1, 1), F(1))], [], 2) is None

    def test_no_constraints(self):
        assert solve_linear_system([], [], 2) == (0, 0)

    def test_random_witnesses_satisfy_rows(self):
        rng = random.Random(20260817)
        feasible = 0
        for _ in range(60):
            nvars = rng.randint(1, 3)
            ineqs = []
            for _ in range(rng.randint(0, 5)):
                coeffs = tuple(rng.randint(-3, 3) for _ in range(nvars))
                ineqs.append((coeffs, F(rng.randint(-2, 2)), rng.random() < 0.3))
            eqs = []
            if rng.random() < 0.4:
                eqs.append((tuple(rng.randint(-2, 2) for _ in range(nvars)),
                            F(rng.randint(-2, 2))))
            x = solve_linear_system(eqs, ineqs, nvars)
            if x is None:
                continue
            feasible += 1
            for a, b in eqs:
                assert sum(F(c) * v for c, v in zip(a, x)) == b
            for a, b, strict in ineqs:
                val = sum(F(c) * v for c, v in zip(a, x))
                assert val > b if strict else val >= b
        assert feasible > 10  # the sweep would be vacuous otherwise


class TestCone:
    def test_dedupes_and_drops_zero(self):
        c = Cone(((1, 0), (1, 0), (0, 0), (0, 1)), 2)
        assert c.generators == ((1, 0), (0, 1))

    def test_dimension(self):
        assert Cone(((1, 0), (0, 1)), 2).dimension() == 2
        assert Cone(((1, 1), (2, 2)), 2).dimension() == 1
        assert Cone((), 2).dimension() == 0

    def test_generator_length_checked(self):
        with pytest.raises(DimensionMismatchError):
            Cone(((1, 0, 0),), 2)

    def test_membership_with_witness(self):
        c = Cone(((1, 0), (1, 1), (-1, 1)), 2)
        m = cone_contains(c, (0, 1))
        assert m.contains and bool(m)
        assert m.separator is None
        recon = [
            sum(u * g[i] for u, g in zip(m.coefficients, c.generators))
            for i in range(2)
        ]
        assert recon == [0, 1]
        assert all(u >= 0 for u in m.coefficients)

    def test_membership_with_separator(self):
        c = Cone(((1, 0), (1, 1), (-1, 1)), 2)
        m = cone_contains(c, (0, -1))
        assert not m.contains and not bool(m)
        assert m.coefficients is None
        sep = m.separator
        assert all(sum(s * g[i] for i, s in enumerate(sep)) >= 0 for g in c.generators)
        assert sum(s * p for s, p in zip(sep, (0, -1))) < 0

    def test_empty_cone(self):
        c = Cone((), 2)
        assert cone_contains(c, (0, 0)).contains
        m = cone_contains(c, (1, 0))
        assert not m.contains and m.separator is not None

    def test_point_rank_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cone_contains(Cone(((1,),), 1), (1, 0))

    def test_against_fourier_motzkin_sweep(self):
        rng = random.Random(4242)
        cones = [
            ((1, 0), (0, 1)),
            ((1, 1), (-1, 1)),
            ((2, 1),),
            ((1, 0), (1, 1), (-1, 1)),
            ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
            ((1, 1, 1), (-1, 0, 1)),
            ((1, 2, 3),),
            ((1, -1), (1, 1), (0, 1)),
        ]
        for gens in cones:
            rank = len(gens[0])
            cone = Cone(gens, rank)
            points = [tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(25)]
            points.append((0,) * rank)
            for p in points:
                assert cone_contains(cone, p).contains == fm_cone_contains(gens, p), (
                    gens,
                    p,
                )


class TestNormMinimization:
    def test_diagonal_touch(self):
        qp = QpProblem(InnerProduct.identity(2), ((1, 0), (0, 1)), (1, 1), F(1))
        opt = minimize_norm(qp)
        assert opt.minimizer == (F(1, 2), F(1, 2))
        assert opt.norm_squared == F(1, 2)

    def test_active_constraint(self):
        # level set <(1,0), x> = 1 with x_2 >= x_1 forces the corner
        qp = QpProblem(InnerProduct.identity(2), ((-1, 1),), (1, 0), F(1))
        opt = minimize_norm(qp)
        assert opt.minimizer == (F(1), F(1))

    def test_infeasible(self):
        qp = QpProblem(InnerProduct.identity(2), ((1, 0),), (-1, 0), F(1))
        assert minimize_norm(qp) is None

    def test_non_identity_objective(self):
        q = InnerProduct(((F(2), F(0)), (F(0), F(1))))
        qp = QpProblem(q, (), (1, 1), F(1))
        opt = minimize_norm(qp)
        # stationarity: gradient Qx parallel to the equality normal
        x = opt.minimizer
        assert 2 * x[0] == x[1]
        assert x[0] + x[1] == 1

    def test_equality_constrained_minimum(self):
        assert equality_constrained_minimum(
            InnerProduct.identity(2), [[F(1), F(1)]], [F(2)]
        ) == (F(1), F(1))
        assert equality_constrained_minimum(
            InnerProduct.identity(2), [[F(1), F(0)], [F(1), F(0)]], [F(1), F(2)]
        ) is None

    def test_unconstrained_minimum_is_origin(self):
        assert equality_constrained_minimum(InnerProduct.identity(3), [], []) == (
            F(0),
            F(0),
            F(0),
        )

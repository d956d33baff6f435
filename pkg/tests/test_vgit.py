import random

import pytest

from gitwin.errors import InputError, PreconditionError
from gitwin.gitcore import TorusActionProblem, kn_stratification
from gitwin.vgit import (
    CHAMBER_INTERIOR,
    ON_WALL,
    OUTSIDE_EFFECTIVE_CONE,
    candidate_wall_normals,
    classify_linearization,
    git_fan,
    wall_crossing_report,
)

from conftest import SEED
from oracles import random_problem


class TestWallNormals:
    def test_quadrant(self, quadrant):
        assert candidate_wall_normals(quadrant) == ((0, 1), (1, 0))

    def test_conifold(self, conifold_wall):
        assert candidate_wall_normals(conifold_wall) == ((1,),)

    def test_normals_are_primitive_and_lead_positive(self, doubled):
        for n in candidate_wall_normals(doubled):
            lead = next(v for v in n if v)
            assert lead > 0


class TestClassifyLinearization:
    def test_quadrant_cases(self, quadrant):
        assert classify_linearization(quadrant) == CHAMBER_INTERIOR
        assert classify_linearization(quadrant.with_linearization((1, 0))) == ON_WALL
        assert (
            classify_linearization(quadrant.with_linearization((-1, 0)))
            == OUTSIDE_EFFECTIVE_CONE
        )

    def test_rank_one(self, pv, conifold_wall):
        assert classify_linearization(pv) == CHAMBER_INTERIOR
        assert classify_linearization(pv.with_linearization((0,))) == ON_WALL
        assert (
            classify_linearization(pv.with_linearization((-2,)))
            == OUTSIDE_EFFECTIVE_CONE
        )
        assert classify_linearization(conifold_wall) == ON_WALL


class TestGitFan:
    def test_conifold_two_chambers_one_wall(self, conifold_wall):
        fan = git_fan(conifold_wall)
        assert [c.generators for c in fan.chambers] == [((-1,),), ((1,),)]
        assert fan.chamber_witnesses == ((-1,), (1,))
        assert len(fan.walls) == 1
        wall = fan.walls[0]
        assert wall.adjacent_chambers == (0, 1)
        assert wall.normal == (1,)
        assert wall.cone.generators == ()  # the origin

    def test_doubled_one_chamber_two_boundary_walls(self, doubled):
        fan = git_fan(doubled)
        assert len(fan.chambers) == 1
        assert fan.chambers[0].generators == ((0, 1), (1, 0))
        assert fan.chamber_witnesses == ((1, 1),)
        assert len(fan.walls) == 2
        boundary = {(w.normal, w.adjacent_chambers, w.cone.generators) for w in fan.walls}
        assert boundary == {
            ((0, 1), (0,), ((1, 0),)),
            ((1, 0), (0,), ((0, 1),)),
        }

    def test_crossing_hyperplane_without_wall_is_merged(self):
        # span{(-1,-1)} cuts through the first quadrant but the semistable
        # supports match on both sides, so no wall separates them
        p = TorusActionProblem(2, 3, ((1, 0), (0, 1), (-1, -1)), (1, 1))
        fan = git_fan(p)
        assert len(fan.chambers) == 3
        assert len(fan.walls) == 3
        merged = fan.chambers[2]
        assert merged.generators == ((0, 1), (1, 0), (1, 1))
        assert fan.chamber_witnesses[2] == (1, 2)
        assert classify_linearization(p) == CHAMBER_INTERIOR
        genuine = {w.normal for w in fan.walls}
        assert (1, -1) in genuine  # the merged hyperplane normal is absent
        assert all(w.adjacent_chambers != () for w in fan.walls)

    def test_witnesses_sit_inside_their_chambers(self):
        rng = random.Random(SEED ^ 0xFA9)
        for _ in range(10):
            problem = random_problem(rng, kmax=2, nmax=4, bound=2)
            fan = git_fan(problem)
            assert len(fan.chambers) == len(fan.chamber_witnesses)
            for cone, witness in zip(fan.chambers, fan.chamber_witnesses):
                shifted = problem.with_linearization(witness)
                assert classify_linearization(shifted) == CHAMBER_INTERIOR
                assert cone.contains(witness)
            for wall in fan.walls:
                assert len(wall.adjacent_chambers) in (1, 2)
                for idx in wall.adjacent_chambers:
                    assert 0 <= idx < len(fan.chambers)

    def test_chambers_have_distinct_semistable_profiles(self, conifold_wall):
        fan = git_fan(conifold_wall)
        profiles = []
        for witness in fan.chamber_witnesses:
            s = kn_stratification(conifold_wall.with_linearization(witness))
            profiles.append(frozenset(s.semistable_supports))
        assert len(set(profiles)) == len(profiles)


class TestWallCrossing:
    def test_conifold_balanced_equivalence(self, conifold_wall):
        r = wall_crossing_report(conifold_wall, (1,))
        assert r.balanced
        assert r.verdict == "equivalence"
        assert r.cy_shortcut
        assert r.degenerate_side is None
        assert r.epsilon_denominator == 1
        assert r.plus_character == (1,)
        assert r.minus_character == (-1,)
        assert r.plus_classification == CHAMBER_INTERIOR
        assert r.minus_classification == CHAMBER_INTERIOR
        assert len(r.matches) == 1
        m = r.matches[0]
        assert (m.eta_plus, m.eta_minus, m.omega_weight) == (2, 2, 0)
        assert not m.members_mirror

    def test_blowup_unbalanced_widths(self, blowup_wall):
        r = wall_crossing_report(blowup_wall, (1,))
        assert r.balanced  # strata match up; only the widths differ
        assert not r.cy_shortcut
        assert r.verdict == "embed_minus_into_plus"
        m = r.matches[0]
        assert (m.eta_plus, m.eta_minus) == (3, 1)
        assert m.omega_weight == 2
        assert abs(m.eta_plus - m.eta_minus) == abs(m.omega_weight)

    def test_width_identity_on_matches(self, conifold_wall, blowup_wall):
        for problem in (conifold_wall, blowup_wall):
            r = wall_crossing_report(problem, (1,))
            for m in r.matches:
                assert m.eta_plus - m.eta_minus == m.omega_weight

    def test_degenerate_side(self):
        p = TorusActionProblem(1, 2, ((1,), (1,)), (0,))
        r = wall_crossing_report(p, (1,))
        assert r.degenerate_side == "minus"
        assert r.verdict == "indeterminate"
        assert r.minus_classification == OUTSIDE_EFFECTIVE_CONE
        assert r.minus_stratification is None
        assert not r.balanced

    def test_off_wall_is_a_precondition_error(self, conifold_plus):
        with pytest.raises(PreconditionError, match="not on a wall"):
            wall_crossing_report(conifold_plus, (1,))

    def test_tangent_direction_rejected(self, quadrant):
        on_wall = quadrant.with_linearization((1, 0))
        with pytest.raises(PreconditionError, match="tangent"):
            wall_crossing_report(on_wall, (1, 0))

    def test_codimension_two_rejected(self, quadrant):
        origin = quadrant.with_linearization((0, 0))
        with pytest.raises(PreconditionError, match="codimension >= 2"):
            wall_crossing_report(origin, (1, 1))

    def test_zero_direction_rejected(self, conifold_wall):
        with pytest.raises(InputError):
            wall_crossing_report(conifold_wall, (0,))

    def test_wrong_length_direction_rejected(self, conifold_wall):
        with pytest.raises(InputError):
            wall_crossing_report(conifold_wall, (1, 0))

    def test_sides_live_in_adjacent_chambers(self, conifold_wall):
        r = wall_crossing_report(conifold_wall, (1,))
        fan = git_fan(conifold_wall)
        plus_home = [
            i for i, c in enumerate(fan.chambers) if c.contains(r.plus_character)
        ]
        minus_home = [
            i for i, c in enumerate(fan.chambers) if c.contains(r.minus_character)
        ]
        assert plus_home and minus_home and plus_home != minus_home

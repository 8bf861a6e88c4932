import random

import pytest

from optmech.infima import (alloc_image, approach_points, inf_diff_given_eff, inf_welfare,
                            inf_welfare_given_eff)
from optmech.model import BoxPiece, PointSetPiece, valuation
from optmech.numerics import Rat
from optmech.randomgen import random_box, random_points
from optmech.welfare import ExternalityContext, eff_given_ctx, welfare_at

from oracles import brute_min, grid

NONE, A, B = 0, 1, 2
RAY_A = BoxPiece.make([0, 4, 0], [0, None, 0])
RAY_B = BoxPiece.make([0, 0, 4], [0, 0, None])
FIG1_A_ROW1 = BoxPiece.make([0, 4, 1], [0, 6, 3])
FIG1_A_ROW2 = BoxPiece.make([0, 4, 1], [0, 6, 5])
FIG1_B = BoxPiece.make([0, "0.5", 4], [0, 1, 6])


def test_alloc_image_examples(ctx1):
    assert alloc_image(RAY_A, ctx1) == {A}
    assert alloc_image(RAY_B, ctx1) == {B}
    assert alloc_image(FIG1_A_ROW1, ctx1) == {A}
    assert alloc_image(FIG1_B, ctx1) == {B}
    zero = BoxPiece.make([0, 0, 0], [0, 0, 0])
    assert alloc_image(zero, ctx1) == {NONE}
    tied = ExternalityContext(0, (Rat(2), Rat(5), Rat(5)))
    assert alloc_image(zero, tied) == {A}


def test_inf_welfare_examples(ctx1):
    r = inf_welfare(RAY_A, ctx1)
    assert r.value == 7 and r.witness == (0, 4, 0)
    assert inf_welfare(RAY_B, ctx1).value == 5
    pt = PointSetPiece.make([[0, 2, 3]])
    assert inf_welfare(pt, ctx1).value == welfare_at(valuation([0, 2, 3]), ctx1)


def test_inf_welfare_given_eff_examples(ctx1):
    r = inf_welfare_given_eff(FIG1_A_ROW1, A, ctx1)
    assert r.value == 7 and r.witness == (0, 4, 1) and r.attained
    assert inf_welfare_given_eff(FIG1_B, B, ctx1).value == 5
    assert not inf_welfare_given_eff(FIG1_B, A, ctx1).feasible
    assert not inf_welfare_given_eff(RAY_A, NONE, ctx1).feasible


def test_inf_diff_examples(ctx1):
    r = inf_diff_given_eff(FIG1_A_ROW1, A, B, ctx1)
    assert r.value == 3 and r.witness == (0, 4, 3)
    r = inf_diff_given_eff(FIG1_A_ROW2, A, B, ctx1)
    assert r.value == 1 and r.witness == (0, 4, 5)
    r = inf_diff_given_eff(FIG1_B, B, A, ctx1)
    assert r.value == 1 and r.witness == (0, 1, 4)
    assert not inf_diff_given_eff(FIG1_B, A, B, ctx1).feasible
    with pytest.raises(ValueError):
        inf_diff_given_eff(FIG1_B, A, A, ctx1)


def random_cases(seed, n, finite=True):
    rng = random.Random(seed)
    for _ in range(n):
        m = rng.randint(2, 4)
        ctx = ExternalityContext(0, tuple(Rat(rng.randint(0, 12), rng.choice((1, 2))) for _ in range(m)))
        piece = random_box(rng, m, allow_inf=not finite, max_width=3)
        yield piece, ctx


def test_nonnegative_and_partition():
    for piece, ctx in random_cases(11, 300, finite=False):
        img = alloc_image(piece, ctx)
        assert img
        per_alloc = [inf_welfare_given_eff(piece, a, ctx).value for a in img]
        assert inf_welfare(piece, ctx).value == min(per_alloc)
        for a in img:
            for b in range(len(ctx.c)):
                if b != a:
                    assert inf_diff_given_eff(piece, a, b, ctx).value >= 0


def test_witnesses_reevaluate_exactly():
    for piece, ctx in random_cases(12, 300, finite=False):
        c = ctx.c
        for a in alloc_image(piece, ctx):
            r = inf_welfare_given_eff(piece, a, ctx)
            assert piece.contains(r.witness)
            assert r.witness[a] + c[a] == r.value
            # on the closure, a is weakly efficient
            assert welfare_at(r.witness, ctx) == r.value
            assert r.attained == (eff_given_ctx(r.witness, ctx) == a)
            for b in range(len(c)):
                if b == a:
                    continue
                r = inf_diff_given_eff(piece, a, b, ctx)
                w = r.witness
                assert piece.contains(w)
                assert welfare_at(w, ctx) - w[b] - c[b] == r.value


@pytest.mark.parametrize("step", [Rat(1), Rat(1, 2), Rat(1, 3)])
def test_grid_oracle_brackets_closed_forms(step):
    for piece, ctx in random_cases(13, 120):
        pts = grid(piece, step)
        L = len(ctx.c)
        assert brute_min(pts, ctx.c) == inf_welfare(piece, ctx).value
        for a in range(L):
            closed = inf_welfare_given_eff(piece, a, ctx)
            brute = brute_min(pts, ctx.c, alloc=a)
            if not closed.feasible:
                assert brute is None
                continue
            if brute is None:
                continue
            assert closed.value <= brute <= closed.value + L * step
            for b in range(L):
                if b == a:
                    continue
                closed = inf_diff_given_eff(piece, a, b, ctx)
                brute = brute_min(pts, ctx.c, alloc=a, versus=b)
                assert closed.value <= brute <= closed.value + L * step
                if closed.attained and closed.witness in set(pts):
                    assert brute == closed.value


def test_point_sets_match_enumeration_exactly():
    rng = random.Random(14)
    for _ in range(300):
        m = rng.randint(2, 4)
        ctx = ExternalityContext(0, tuple(Rat(rng.randint(0, 8)) for _ in range(m)))
        piece = random_points(rng, m, rng.randint(1, 5))
        for a in range(m):
            r = inf_welfare_given_eff(piece, a, ctx)
            assert r.value == brute_min(piece.points, ctx.c, alloc=a)
            assert (a in alloc_image(piece, ctx)) == r.feasible
            for b in range(m):
                if b != a:
                    assert inf_diff_given_eff(piece, a, b, ctx).value == \
                        brute_min(piece.points, ctx.c, alloc=a, versus=b)


def test_approach_points_when_tie_breaking_excludes_witness():
    # A's infimum over the ray sits where A ties the earlier "none" allocation
    ctx = ExternalityContext(0, (Rat(5), Rat(3), Rat(0)))
    ray = BoxPiece.make([0, 0, 0], [0, None, 0])
    r = inf_welfare_given_eff(ray, 1, ctx)
    assert r.value == 5 and r.witness == (0, 2, 0) and not r.attained
    near = approach_points(ray, 1, r.witness, ctx, Rat(1, 1000))
    assert near == [(0, Rat(2001, 1000), 0)]
    assert eff_given_ctx(near[0], ctx) == 1

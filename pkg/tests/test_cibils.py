import random

import pytest

from hhglue.bar import BarComplex
from hhglue.cibils import (CibilsComplex, NotRadicalSquareZero, cibils_center_dim, count_paths,
                           hhn_rsz, verify_highhoch_gluing)
from hhglue.generators import random_rsz
from hhglue.gluing import glue
from hhglue.presentation import radical_square_zero
from hhglue.quiver import Arrow, Quiver

SOURCE_SINK = [("kronecker2", "e1", "e2"), ("zigzag_n2", "e1", "e4"), ("zigzag_n3", "e1", "e6")]


def cyclic(n):
    vs = [str(i) for i in range(n)]
    return radical_square_zero(Quiver(vs, [Arrow(f"a{i}", vs[i], vs[(i + 1) % n]) for i in range(n)]))


def test_two_loops_closed_form(load):
    bq = load("two_loops")
    cc = CibilsComplex(bq)
    dims = [hhn_rsz(bq, n, complex_=cc) for n in range(5)]
    # m^(n+1) - m^(n-1) with m = 2 for n >= 2
    assert dims == [3, 4, 6, 12, 24]


@pytest.mark.parametrize("name", ["kronecker2", "zigzag_n2", "zigzag_n3"])
def test_vanishing_in_degrees_two_and_three(load, name):
    bq = load(name)
    assert [hhn_rsz(bq, n) for n in (2, 3)] == [0, 0]


@pytest.mark.parametrize("name", ["two_loops", "kronecker2", "zigzag_n2", "running_example"])
def test_agrees_with_bar(load, name):
    bq = load(name)
    cc, bc = CibilsComplex(bq), BarComplex(bq)
    for n in range(4):
        assert cc.check_square_zero(n)
        assert cc.hh_dim(n) == bc.hh_dim(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_crowns_against_bar(n):
    bq = cyclic(n)
    assert CibilsComplex(bq).formula(3) is None
    cc, bc = CibilsComplex(bq), BarComplex(bq)
    assert [cc.hh_dim(k) for k in range(5)] == [bc.hh_dim(k) for k in range(5)]


def test_center_and_path_counts(load):
    bq = load("running_example")
    assert cibils_center_dim(bq) == 3
    cc = CibilsComplex(bq)
    for n in range(4):
        assert count_paths(bq.quiver, n) == len(cc.paths(n))


def test_rejects_non_rsz(load):
    with pytest.raises(NotRadicalSquareZero):
        CibilsComplex(load("double_fork"))


@pytest.mark.parametrize("name, e1, en", SOURCE_SINK)
def test_gluing_inequality(load, name, e1, en):
    g = glue(load(name), e1, en)
    assert g.source_sink
    for n in range(2, 5):
        rep = verify_highhoch_gluing(g, n)
        assert rep.passed, [c.as_dict() for c in rep.checks if not c.ok]
        assert rep.data["hh_B"] >= rep.data["hh_A"]


def test_generic_gluing_only_checks_injectivity():
    q = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")])
    g = glue(radical_square_zero(q), "1", "2")
    assert not g.source_sink
    rep = verify_highhoch_gluing(g, 2)
    assert rep.passed and rep.notes and len(rep.checks) == 1


def test_random_rsz_against_bar():
    rng = random.Random(13)
    for _ in range(10):
        bq = random_rsz(rng)
        cc, bc = CibilsComplex(bq), BarComplex(bq)
        assert [cc.hh_dim(n) for n in range(3)] == [bc.hh_dim(n) for n in range(3)]

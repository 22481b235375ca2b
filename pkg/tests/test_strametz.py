import random

import pytest

from hhglue.bar import BarComplex, oracle_hh1_derivations
from hhglue.generators import random_monomial
from hhglue.linalg import Field
from hhglue.presentation import blocks
from hhglue.strametz import (apply_derivation, build_cmon, center, derivation_on_arrows,
                             graded_decomposition, hh1, l0_decomposition, lie_structure,
                             p_power, pair_bracket, sanchez_flores)

# name -> (HH0, HH1, dim Ker d1, dim Im d0)
VALUES = {
    "loop_char2": (1, 3, 6, 3),
    "parallel_chain_n2": (1, 3, 6, 3),
    "parallel_chain_n3": (1, 8, 11, 3),
    "loops_and_cycle": (5, 13, 17, 4),
    "a5_path": (1, 0, 4, 4),
    "double_fork": (1, 4, 7, 3),
    "running_example": (3, 10, 18, 8),
    "a2_char2": (1, 0, 1, 1),
    "dual_numbers_pair": (4, 2, 2, 0),
    "two_loops": (3, 4, 4, 0),
    "kronecker2": (1, 3, 4, 1),
}


@pytest.mark.parametrize("name", sorted(VALUES))
def test_hh0_hh1_and_oracles(load, name):
    bq = load(name)
    cm = build_cmon(bq)
    summary, h = hh1(cm)
    got = (center(cm).dim, summary.dim, summary.ker_delta1, summary.im_delta0)
    assert got == VALUES[name]
    bar = BarComplex(bq, cm.basis)
    assert (bar.hh_dim(0), bar.hh_dim(1)) == got[:2]
    assert oracle_hh1_derivations(bq).dim == summary.dim


@pytest.mark.parametrize("name", sorted(VALUES))
def test_lie_and_grading(load, name):
    _, h = hh1(build_cmon(load(name)))
    if not h.dim:
        return
    L = lie_structure(h)
    assert not L.antisymmetry_defect() and not L.jacobi_defect()
    dims = graded_decomposition(h).dims
    assert sum(dims.values()) == h.dim


def test_negative_degree_only_in_positive_characteristic(load):
    _, h = hh1(build_cmon(load("loop_char2")))
    assert graded_decomposition(h).dims == {-1: 1, 0: 1, 1: 1}
    _, h = hh1(build_cmon(load("loops_and_cycle")))
    assert graded_decomposition(h).dims == {0: 4, 1: 8, 2: 1}


def test_bracket_is_commutator_of_derivations(load):
    cm = build_cmon(load("loops_and_cycle"))
    _, h = hh1(cm)
    q = cm.bq.quiver
    f = cm.field
    for x in h.reps[:6]:
        for y in h.reps[:6]:
            fx, fy = derivation_on_arrows(cm, x), derivation_on_arrows(cm, y)
            br = derivation_on_arrows(cm, pair_bracket(cm, x, y))
            for a in range(q.n_arrows):
                ap = {q.arrow_path(a): f.one}
                xy = apply_derivation(cm, fx, apply_derivation(cm, fy, ap))
                yx = apply_derivation(cm, fy, apply_derivation(cm, fx, ap))
                comm = {p: c for p, c in ((p, f(xy.get(p, 0) - yx.get(p, 0))) for p in set(xy) | set(yx)) if c}
                assert comm == {p: c for p, c in br.get(a, {}).items() if c}


def test_l0_double_fork(load):
    _, h = hh1(build_cmon(load("double_fork")))
    d = l0_decomposition(h)
    assert d.basis_ok and d.center_matches
    assert sum(d.ideal_dims.values()) == graded_decomposition(h).dims[0]


def test_l0_basis_running_example(load):
    _, h = hh1(build_cmon(load("running_example")))
    d = l0_decomposition(h)
    assert d.basis_ok and d.center_matches and d.center_dim == 4


def test_p_power_lands_in_derivations(load):
    _, h = hh1(build_cmon(load("loop_char2")))
    for k in range(h.dim):
        out = p_power(h, {k: h.field.one})
        assert all(0 <= j < h.dim for j in out)
    _, h0 = hh1(build_cmon(load("double_fork")))
    with pytest.raises(ValueError):
        p_power(h0, {0: 1})


def test_sanchez_flores_on_blocks(load):
    bq = load("running_example")
    for b in blocks(bq):
        assert sanchez_flores(b).dim == hh1(build_cmon(b))[0].dim
    pred = sanchez_flores(load("two_loops"))
    assert pred.dim == 4 and pred.sizes == [2]
    with pytest.raises(ValueError):
        sanchez_flores(load("double_fork"))


def test_cmon_square_zero_random():
    rng = random.Random(11)
    for fld in (Field(0), Field(3)):
        for _ in range(20):
            cm = build_cmon(random_monomial(rng, field=fld))
            assert cm.delta1.compose(cm.delta0).is_zero()

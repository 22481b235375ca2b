"""Acceptance criteria 1-10.  Each test records its outcome for the terminal summary
before asserting, so failing criteria still print a line."""
import random
import time

from conftest import ACCEPTANCE, load_fixture
from test_gluing import STEPS, round_trip
from hhglue.bar import BarComplex
from hhglue.batch import run_batch
from hhglue.cibils import CibilsComplex, hhn_rsz, verify_highhoch_gluing
from hhglue.generators import CONFIGS, random_gluing, random_monomial, random_rsz
from hhglue.gluing import (SUITES, GluingAnalysis, glue, ideal_generator_delta, special_sets,
                           split_vertex)
from hhglue.lie import abelian, profile_product
from hhglue.linalg import Field
from hhglue.presentation import BudgetExceeded, blocks
from hhglue.strametz import (build_cmon, center, graded_decomposition, hh1, lie_structure,
                             sanchez_flores)


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    assert ok, detail


def analysis(name, e1, en):
    return GluingAnalysis(glue(load_fixture(name), e1, en))


def test_criterion_01_example_chain_with_parallel_arrows():
    start = time.perf_counter()
    got, want = {}, {}
    identity = True
    for n in (2, 3):
        an = analysis(f"parallel_chain_n{n}", "e1", "e4")
        ss = special_sets(an)
        got[n] = (an.h_a.im.dim, an.h_b.im.dim, an.h_a.ker.dim, an.h_b.ker.dim, ss["sp"], ss["kspp"])
        want[n] = (3, n + 2, n * n + 2, n * n + 2 * n + 2, n, 2 * n)
        identity &= SUITES["hh1"](an).passed
    elapsed = time.perf_counter() - start
    ok = got == want and identity and elapsed < 1
    record(1, ok, f"(ImA, ImB, KerA, KerB, sp, kspp) got {got} want {want}; identity {identity}; {elapsed:.2f}s")


def test_criterion_02_ideal_and_degree_one_part():
    start = time.perf_counter()
    an = analysis("double_fork", "e1", "e4")
    ha, hb = an.h_a, an.h_b
    grading = graded_decomposition(hb)
    l1 = [hb.labels()[k] for k in grading.reps.get(1, [])]
    gen = ideal_generator_delta(an).data["generator"]
    pa, pb = lie_structure(ha).profile(), lie_structure(hb).profile()
    product = profile_product([pa, abelian(an.field, 1).profile()])
    elapsed = time.perf_counter() - start
    ok = ((ha.dim, hb.dim) == (4, 5) and l1 == ["gamma||alpha2.beta"]
          and gen == "alpha1||alpha1 + alpha2||alpha2 + gamma||gamma + eta||eta"
          and pb == product and elapsed < 1)
    record(2, ok, f"HH1 {ha.dim}/{hb.dim}; L1(B) {l1}; I = <{gen}>; profile match {pb == product}; {elapsed:.2f}s")


def test_criterion_03_special_pairs_two_loops_and_arrows():
    start = time.perf_counter()
    ss = special_sets(analysis("loops_and_cycle", "e1", "e3"))
    elapsed = time.perf_counter() - start
    got = (ss["spp"], ss["kspp"], ss["sp"])
    ok = got == (25, 13, 2) and elapsed < 2
    record(3, ok, f"(|Spp|, kspp, sp) got {got} want (25, 13, 2); {elapsed:.2f}s")


def test_criterion_04_single_special_pair():
    start = time.perf_counter()
    an = analysis("a5_path", "e1", "e5")
    ss = special_sets(an)
    rep = SUITES["hh1"](an)
    elapsed = time.perf_counter() - start
    ok = ((an.h_a.dim, an.h_b.dim) == (0, 1) and ss["z_spp"] == ["b||b.c.d - a||c.d.a"]
          and rep.passed and elapsed < 1)
    record(4, ok, f"HH1 {an.h_a.dim}/{an.h_b.dim}; Z_spp {ss['z_spp']}; {rep.data['text']}; {elapsed:.2f}s")


def test_criterion_05_char_two_exception():
    start = time.perf_counter()
    an = analysis("a2_char2", "e1", "e2")
    rows = lambda sub, c1: sorted(c1.render(r) for r in sub.rows)
    im_a, ker_a = rows(an.h_a.im, an.cm_a.c1), rows(an.h_a.ker, an.cm_a.c1)
    ker_b = an.h_b.ker
    c1b = an.cm_b.c1
    expected_b = [{c1b.index[(an.qb.arrow_path(0), p)]: 1} for p in
                  (an.qb.trivial(an.g.f1), an.qb.arrow_path(0))]
    span_ok = ker_b.dim == 2 and all(ker_b.contains(v) for v in expected_b)
    kspp = an.z_spp.dim
    elapsed = time.perf_counter() - start
    ok = (im_a == ker_a == ["alpha||alpha"] and an.h_b.im.dim == 0 and span_ok
          and ker_b.dim == an.h_a.ker.dim + kspp and elapsed < 1)
    record(5, ok, f"ImA = KerA = {im_a}; ImB {an.h_b.im.dim}; KerB {ker_b.dim} = {an.h_a.ker.dim} + {kspp}; {elapsed:.2f}s")


def test_criterion_06_radical_square_zero_reduction():
    start = time.perf_counter()
    bq = load_fixture("running_example")
    _, h = hh1(build_cmon(bq))
    prof = lie_structure(h).profile()
    steps_ok = True
    for f, s1, s2, names in STEPS:
        bq = split_vertex(bq, f, s1, s2, names)
        for b in blocks(bq):
            steps_ok &= sanchez_flores(b).dim == hh1(build_cmon(b))[0].dim
    elapsed = time.perf_counter() - start
    ok = (h.dim == 10 and prof.center_dim == 4 and prof.derived_dim == 6 and steps_ok
          and elapsed < 5)
    record(6, ok, f"dim {h.dim}, center {prof.center_dim}, derived {prof.derived_dim}; "
                  f"closed formula matches every step {steps_ok}; {elapsed:.2f}s")


def test_criterion_07_higher_degrees():
    start = time.perf_counter()
    two = load_fixture("two_loops")
    cc = CibilsComplex(two)
    loops = [hhn_rsz(two, n, complex_=cc) for n in (2, 3)]
    vanish = {name: [hhn_rsz(load_fixture(name), n) for n in (2, 3)]
              for name in ("kronecker2", "zigzag_n2", "zigzag_n3")}
    ineq = True
    for name, e1, en in (("kronecker2", "e1", "e2"), ("zigzag_n2", "e1", "e4"),
                         ("zigzag_n3", "e1", "e6")):
        g = glue(load_fixture(name), e1, en)
        ineq &= all(verify_highhoch_gluing(g, n).passed for n in range(2, 5))
    elapsed = time.perf_counter() - start
    ok = (loops == [6, 14] and all(v == [0, 0] for v in vanish.values()) and ineq
          and elapsed < 10)
    record(7, ok, f"two loops HH2, HH3 got {loops} want [6, 14]; vanishing {vanish}; "
                  f"inequality {ineq}; {elapsed:.2f}s")


def test_criterion_08_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(2024)
    bad = []
    for fld in (Field(0), Field(5)):
        for i in range(100):
            bq = random_monomial(rng, max_dim=14, field=fld)
            cm = build_cmon(bq)
            s, _ = hh1(cm)
            bc = BarComplex(bq, cm.basis)
            if (center(cm).dim, s.dim) != (bc.hh_dim(0), bc.hh_dim(1)):
                bad.append((str(fld), i))
    for i in range(30):
        bq = random_rsz(rng)
        cc, bc = CibilsComplex(bq), BarComplex(bq)
        if [cc.hh_dim(n) for n in range(4)] != [bc.hh_dim(n) for n in range(4)]:
            bad.append(("rsz", i))
    elapsed = time.perf_counter() - start
    record(8, not bad and elapsed < 300, f"200 monomial + 30 rsz instances, mismatches {bad}; {elapsed:.1f}s")


def test_criterion_09_verifier_batch():
    start = time.perf_counter()
    results = run_batch(200, seed=9, jobs=4)
    elapsed = time.perf_counter() - start
    summary = ", ".join(f"{r.block}/{r.kind} {r.instances} ({len(r.failures)} failed)" for r in results)
    ok = all(r.ok and r.instances == 200 for r in results) and elapsed < 600
    record(9, ok, f"{summary}; {elapsed:.1f}s")


def test_criterion_10_structural_properties():
    start = time.perf_counter()
    rng = random.Random(77)
    lie_ok = square_ok = True
    trips = attempts = skipped = 0
    while trips < 100 and attempts < 400:
        block, kind = CONFIGS[attempts % len(CONFIGS)]
        attempts += 1
        g = random_gluing(rng, block, kind, field=Field(0) if attempts % 3 else Field(3))
        for bq in (g.A, g.B):
            cm = build_cmon(bq)
            square_ok &= cm.delta1.compose(cm.delta0).is_zero()
            bc = BarComplex(bq, cm.basis)
            square_ok &= bc.check_square_zero(0)
            try:
                square_ok &= bc.check_square_zero(1)
            except BudgetExceeded:
                skipped += 1
            _, h = hh1(cm)
            if h.dim:
                L = h.lie
                lie_ok &= not L.antisymmetry_defect() and not L.jacobi_defect()
        out = round_trip(g)
        if out is None:
            continue
        if out[1].B != g.B:
            break
        trips += 1
    elapsed = time.perf_counter() - start
    ok = square_ok and lie_ok and trips == 100 and elapsed < 120
    record(10, ok, f"square zero {square_ok}; Lie identities {lie_ok}; round trips {trips}/100; bar degree 1 skipped on {skipped} over budget; {elapsed:.1f}s")

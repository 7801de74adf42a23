"""Acceptance criteria, one test per criterion, exact arithmetic throughout.

Each test prints one line on success.  Search-completeness statements (that a
vanishing certificate exists for every taut input, and anything resting on
virtual-fibering machinery) are not desk-testable; exhaustion is reported as
"unknown" and that behavior is covered in test_sutured/test_cli.
"""

import random
import time
from fractions import Fraction

import fox_oracle
from scx.algebra import GF, QQ, Matrix, snf_integers
from scx.chain import (betti, duality_check, euler_check, integer_boundary_matrix,
                       specialize, untwisted_homology)
from scx.cli import load_document, main
from scx.groups import (enumerate_quotients, permutation_representation,
                        regular_representation, trivial_representation)
from scx.models import fibered_cut, interval_product
from scx.sutured import (CohomologyClass, SuturedComplex, certify_taut,
                         complexity_lower_bound, double, nonproduct_search)

from conftest import SUTURED_BUNDLED, random_presentation_doc, random_quotient

MV_B1 = {"product_D2": 1, "product_A1": 2, "product_T1": 3,
         "meridional_solidtorus": 3, "slope2_solidtorus": 2,
         "d3_two_sutures": 2}


def _passed(n, text):
    print(f"ACCEPTANCE {n}: PASS - {text}")


def test_c01_product_detection(capsys):
    start = time.perf_counter()
    code = main(["homology", "bundled:product_T1", "--rel", "R-",
                 "--rep", "trivial:1"])
    out = capsys.readouterr().out
    assert code == 0 and "b = (0, 0, 0, 0)" in out
    sc = SuturedComplex(load_document("bundled:product_T1"))
    rminus = sc.rminus()
    count = 0
    for q in enumerate_quotients(sc.cx.group, 4):
        rep = permutation_representation(q)
        bv = betti(specialize(sc.cx, rep, rminus))
        assert bv.b == (0, 0, 0, 0), q.describe()
        count += 1
    elapsed = time.perf_counter() - start
    assert count >= 50
    assert elapsed < 10.0
    with capsys.disabled():
        _passed(1, f"product pair homology vanishes for trivial rep and"
                   f" {count} permutation reps of degree <= 4 ({elapsed:.2f}s)")


def test_c02_meridional_never_vanishes(capsys):
    start = time.perf_counter()
    sc = SuturedComplex(load_document("bundled:meridional_solidtorus"))
    rminus = sc.rminus()
    triv = trivial_representation(sc.cx.group, 1, QQ)
    assert betti(specialize(sc.cx, triv, rminus))[1] == 1
    checked = 1
    for n in range(2, 7):
        cycle = tuple((i + 1) % n for i in range(n))
        q = next(q for q in enumerate_quotients(sc.cx.group, n)
                 if q.degree == n and q.images == (cycle,))
        bv = betti(specialize(sc.cx, permutation_representation(q), rminus))
        assert bv[1] == n and bv[1] != 0
        checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    with capsys.disabled():
        _passed(2, f"excluded solid torus: b1(M,R-) = k for the trivial and"
                   f" all cyclic reps of degree <= 6 ({elapsed:.2f}s)")


def test_c03_slope2_nonproduct_numbers(capsys):
    start = time.perf_counter()
    sc = SuturedComplex(load_document("bundled:slope2_solidtorus"))
    rminus = sc.rminus()
    b_triv = betti(specialize(
        sc.cx, trivial_representation(sc.cx.group, 1, QQ), rminus))
    assert b_triv[1] == 0
    q = next(q for q in enumerate_quotients(sc.cx.group, 2)
             if q.image_order == 2)
    b_reg = betti(specialize(sc.cx, regular_representation(q), rminus))
    assert b_reg[1] == 1
    verdict = nonproduct_search(sc, 2)
    assert verdict.status == "certified-not-product"
    assert verdict.witness["test"] == "index"
    assert verdict.witness["quotient"].startswith("degree=2")
    divisors = snf_integers(integer_boundary_matrix(sc.cx, 2, rminus))
    assert divisors[-1] == 2
    free, torsion = untwisted_homology(sc.cx, rminus)[1]
    assert (free, torsion) == (0, (2,))
    elapsed = time.perf_counter() - start
    assert elapsed < 2.0
    with capsys.disabled():
        _passed(3, f"slope-2: b1 = 0/1 over Q/regular, index test fires at"
                   f" degree 2, integral H1 = Z/2 with diagonal {divisors}"
                   f" ({elapsed:.2f}s)")


def test_c04_euler_identity_random(capsys):
    rng = random.Random(20260808)
    checked = 0
    while checked < 200:
        doc = random_presentation_doc(rng)
        if rng.random() < 0.5:
            doc = interval_product(doc, subs=False)
        cx = doc.complex()
        q = random_quotient(cx.group, rng)
        rep = permutation_representation(q)
        seed_cells = [c for c in cx.all_cells() if rng.random() < 0.4]
        closed = set(seed_cells)
        changed = True
        while changed:
            changed = False
            for c in list(closed):
                for _, _, t in cx.boundary.get(c, ()):
                    if t not in closed:
                        closed.add(t)
                        changed = True
        sub = cx.subcomplex("Y", closed) if closed else None
        report = euler_check(cx, sub, rep)
        assert report.ok, report
        checked += 1
    with capsys.disabled():
        _passed(4, f"twisted Euler characteristic equals k*chi on {checked}"
                   " random (complex, subcomplex, permutation rep) triples")


def test_c05_h0_h3_vanishing(capsys):
    pairs_checked = 0
    for name in SUTURED_BUNDLED:
        sc = SuturedComplex(load_document(f"bundled:{name}"))
        manifold3 = sc.manifold3
        total_cells = sum(len(sc.cx.cells[d]) for d in range(4))
        for sub_name, members in sc.doc.subs.items():
            if not members:
                continue
            ref = sc.ref(sub_name)
            reps = [trivial_representation(sc.cx.group, 1, QQ)]
            reps += [permutation_representation(q)
                     for q in enumerate_quotients(sc.cx.group, 4)]
            for rep in reps:
                bv = betti(specialize(sc.cx, rep, ref))
                assert bv[0] == 0, (name, sub_name, rep.describe())
                if manifold3 and len(members) < total_cells:
                    assert bv[3] == 0, (name, sub_name, rep.describe())
                pairs_checked += 1
    with capsys.disabled():
        _passed(5, f"b0 = 0 (and b3 = 0 on 3-manifold models) across"
                   f" {pairs_checked} (pair, representation) combinations")


def test_c06_duality_meridional(capsys):
    sc = SuturedComplex(load_document("bundled:meridional_solidtorus"))
    rminus = sc.rminus()
    yplus = sc.ref("Yplus")
    reps = [trivial_representation(sc.cx.group, 1, QQ)]
    reps += [permutation_representation(q)
             for q in enumerate_quotients(sc.cx.group, 3)]
    for rep in reps:
        report = duality_check(sc.cx, rminus, yplus, rep)
        assert report.ok, (rep.describe(), report)
    with capsys.disabled():
        _passed(6, f"Poincare-Lefschetz pairing of Betti numbers holds on the"
                   f" meridional model for {len(reps)} representations")


def test_c07_bound_and_certificate(capsys):
    sc = SuturedComplex(load_document("bundled:product_T1"))
    rep = trivial_representation(sc.cx.group, 1, QQ)
    report = complexity_lower_bound(sc, rep)
    assert report.bound == Fraction(1) and report.sharp
    assert report.chi_minus_rminus == 1 and report.chi_minus_rplus == 1
    verdict = certify_taut(sc, 2)
    assert verdict.status == "certified-taut"
    assert verdict.witness["representation"] == "trivial k=1"
    code = main(["certify-taut", "bundled:product_T1"])
    assert code == 0
    with capsys.disabled():
        _passed(7, "complexity bound x >= 1 sharp on the punctured-torus"
                   " product; certified taut by the trivial representation")


def test_c08_twisted_orders_vs_oracle(capsys):
    from scx.alex import thurston_bound, twisted_alexander
    expectations = {
        "trefoil": ("-1 + t", "1 - t + t^2", "1"),
        "figure8": ("-1 + t", "1 - 3*t + t^2", "1"),
    }
    for name, expected in expectations.items():
        start = time.perf_counter()
        doc = load_document(f"bundled:{name}")
        cx = doc.complex()
        phi = CohomologyClass(doc.phis["ab"])
        rep = trivial_representation(cx.group, 1, QQ)
        oracle = fox_oracle.alexander_polys(
            len(doc.gens), [tuple(r) for r in doc.relators],
            [doc.phis["ab"][g] for g in doc.gens])
        for i in range(3):
            order = twisted_alexander(cx, phi, rep, i)
            assert order.poly_str() == expected[i], (name, i)
            mine = {e + order.poly.low: c
                    for e, c in enumerate(order.poly.coeffs)}
            canon = fox_oracle.pcanon(mine)
            target = fox_oracle.pcanon(oracle[i])
            assert canon == target or fox_oracle.preverse(canon) == target
        bound = thurston_bound(cx, phi, rep)
        assert bound.bound == 1
        elapsed = time.perf_counter() - start
        assert elapsed < 2.0
    with capsys.disabled():
        _passed(8, "twisted orders match the independent Fox-calculus oracle;"
                   " norm bound 1 for both knot complexes")


def test_c09_det_degree_equivalence(capsys):
    from scx.alex import detab_property
    rng = random.Random(424242)
    total = 0
    for dom in (QQ, GF(5)):
        for _ in range(500):
            s = rng.randint(1, 5)
            a = Matrix.from_rows(dom, [[rng.randint(-4, 4) for _ in range(s)]
                                       for _ in range(s)])
            b = Matrix.from_rows(dom, [[rng.randint(-4, 4) for _ in range(s)]
                                       for _ in range(s)])
            report = detab_property(a, b)
            assert report.equivalence_holds, (dom, a.rows, b.rows)
            total += 1
    with capsys.disabled():
        _passed(9, f"deg det(A+tB) = size iff both determinants are nonzero,"
                   f" on {total} random pairs over Q and F5")


def test_c10_double_construction(capsys):
    for name in SUTURED_BUNDLED:
        sc = SuturedComplex(load_document(f"bundled:{name}"))
        result = double(sc)
        dm = result.complex()
        assert dm.euler_characteristic() == 0, name
        assert result.phi.is_cocycle(dm.group), name
        dm.abelian_boundary_check()
        sampled = 0
        for q in enumerate_quotients(dm.group, 2):
            specialize(dm, permutation_representation(q), None)
            sampled += 1
            if sampled >= 10:
                break
        free, _ = untwisted_homology(dm)[1]
        assert free == MV_B1[name], (name, free)
    with capsys.disabled():
        _passed(10, "all six doubles: chi = 0, dual class is a cocycle, d^2"
                    " vanishes under sampled reps, untwisted b1 matches the"
                    " recorded Mayer-Vietoris values")


def test_c11_det_form_cross_check(capsys):
    from scx.alex import det_form_check
    cut = fibered_cut()
    w_cx = cut["w_doc"].complex()
    phi = CohomologyClass(cut["w_doc"].phis["dual"])
    rep_w = trivial_representation(w_cx.group, 1, QQ)
    report = det_form_check(w_cx, phi, rep_w, cut, 1)
    assert report.applicable          # b1(R-) = b1(X-) verified inside
    assert report.match or report.reversed_match
    from scx.algebra import poly_to_str
    assert poly_to_str(report.ring, report.det_side) == "1 - t + t^2"
    with capsys.disabled():
        _passed(11, "det(left - t*right) on the fiber agrees with the first"
                    " twisted order of the mapping torus (1 - t + t^2)")

"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (printed in the terminal summary and on
stdout) before asserting, so a failing criterion is still reported.
"""
import math
import random

import numpy as np

import bruteforce as bf
from sftmat.blocks import build_blocks, build_vpairs
from sftmat.matrix import (EMPTY, NONEMPTY, Budgets, Cycle, StripMatrix, analyze, build_strip_matrix,
                           is_complementary, prune, survivors, synthesize_periodic_point)
from sftmat.patterns import count_windows_by_cubes, normalize_to_cubes
from sftmat.strips import PeriodicStrip, canonicalize_strip, enumerate_strips
from sftmat.torus import (count_admissible_squares, enumerate_torus_configs, is_admissible_on_torus,
                          primitive)


def record(acceptance, number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    acceptance.append((number, ok, detail))
    assert ok, line


def certificate_ok(spec, report):
    pt = report.certificate
    return pt is not None and pt.verified and is_admissible_on_torus(spec, pt.torus)


def test_criterion_1_hard_square(acceptance, hardsquare):
    report = analyze(hardsquare)
    cubes = normalize_to_cubes(hardsquare)
    ours = [count_admissible_squares(hardsquare, n) for n in range(1, 5)]
    oracle = [bf.count_windows(hardsquare, n) for n in range(1, 5)]
    ok = (report.status == NONEMPTY and certificate_ok(hardsquare, report)
          and cubes.side == 2 and len(cubes.allowed) == 7
          and ours == oracle == [2, 7, 63, 1234])
    record(acceptance, 1, ok, f"status={report.status} l={cubes.side} cubes={len(cubes.allowed)} "
                              f"counts={ours} oracle={oracle}")


def test_criterion_2_checkerboard(acceptance, checkerboard):
    cubes = normalize_to_cubes(checkerboard)
    blocks = build_blocks(checkerboard, cubes)
    vpairs = build_vpairs(checkerboard, blocks)
    strips = enumerate_strips(checkerboard, blocks, 2)
    report = analyze(checkerboard, Budgets(max_period=2))
    periods = primitive(report.certificate).periods if report.certificate else None
    tori = enumerate_torus_configs(checkerboard, (2, 2))
    ok = (len(cubes.allowed) == 2 and len(vpairs) == 2 and len(strips) == 1
          and report.status == NONEMPTY and certificate_ok(checkerboard, report)
          and periods == (2, 2) and len(tori) == 2)
    record(acceptance, 2, ok, f"cubes={len(cubes.allowed)} vpairs={len(vpairs)} strips={len(strips)} "
                              f"status={report.status} periods={periods} tori={len(tori)}")


def test_criterion_3_emptiness(acceptance, contradiction, nocells):
    a = analyze(contradiction)
    b = analyze(nocells)
    ok = (a.status == EMPTY and a.witness == 2 and count_admissible_squares(contradiction, 2) == 0
          and bf.count_windows(contradiction, 2) == 0
          and b.status == EMPTY and b.witness == 1 and count_admissible_squares(nocells, 1) == 0)
    record(acceptance, 3, ok, f"contradiction={a.status}({a.witness}) nocells={b.status}({b.witness})")


def test_criterion_4_cube_equivalence(acceptance, corpus):
    checked = 0
    bad = []
    for idx, spec in enumerate(corpus):
        cubes = normalize_to_cubes(spec)
        for n in range(cubes.side, 6):
            checked += 1
            if count_windows_by_cubes(cubes, n) != count_admissible_squares(spec, n):
                bad.append((idx, n))
    in_bounds = all(spec.dim == 2 and len(spec.alphabet) <= 3 and len(spec.forbidden) <= 4
                    and normalize_to_cubes(spec).side <= 3 for spec in corpus)
    ok = len(corpus) >= 20 and in_bounds and not bad
    record(acceptance, 4, ok, f"specs={len(corpus)} comparisons={checked} mismatches={bad}")


def test_criterion_5_prune(acceptance):
    rng = np.random.default_rng(5)
    failures = 0
    nontrivial = 0
    for _ in range(100):
        n = int(rng.integers(0, 13))
        arr = rng.random((n, n)) < rng.uniform(0.05, 0.5)
        base = survivors(arr)
        nontrivial += 0 < len(base) < n
        for _ in range(10):
            if survivors(arr, rng.permutation(n).tolist()) != base:
                failures += 1
        m = StripMatrix.from_array(arr)
        if not is_complementary(m, base) or list(prune(m).indices) != base:
            failures += 1
        for i in set(range(n)) - set(base):
            if is_complementary(m, base + [i]):
                failures += 1
    ok = failures == 0
    record(acceptance, 5, ok, f"matrices=100 orders=10 failures={failures} partial_prunes={nontrivial}")


def rotation(strip, canon):
    """``r`` with ``strip[x] == canon[x + r]`` for every column ``x``."""
    s, c = strip.array, canon.array
    xs = np.arange(strip.period)
    for r in range(canon.period):
        if np.array_equal(s, c[(xs + r) % canon.period]):
            return r
    raise AssertionError("strip is not a rotation of its canonical form")


def test_criterion_6_cycles_and_tori(acceptance, corpus):
    tori = missing = synthesized = failures = 0
    for spec in corpus:
        l = normalize_to_cubes(spec).side
        blocks = build_blocks(spec, normalize_to_cubes(spec))
        strips = enumerate_strips(spec, blocks, 3)
        where = {s: i for i, s in enumerate(strips)}
        m = build_strip_matrix(spec, strips)
        for q in (l, 2 * l, 3 * l):
            for pt in enumerate_torus_configs(spec, (q, 2 * l), limit=200):
                tori += 1
                arr = pt.array
                lower = PeriodicStrip.from_array(arr[:, :l])
                upper = PeriodicStrip.from_array(arr[:, l:])
                cl, cu = canonicalize_strip(lower), canonicalize_strip(upper)
                if cl not in where or cu not in where:
                    missing += 1
                    continue
                i, j = where[cl], where[cu]
                rl, ru = rotation(lower, cl), rotation(upper, cu)
                g = math.gcd(cl.period, cu.period)
                up, down = (ru - rl) % g, (rl - ru) % g
                if up not in m.phases.get((i, j), ()) or down not in m.phases.get((j, i), ()):
                    missing += 1
                    continue
                point = synthesize_periodic_point(spec, m, Cycle((i, j), (up, down)))
                synthesized += 1
                failures += not is_admissible_on_torus(spec, point.torus)
        report = analyze(spec)
        if report.status == NONEMPTY:
            synthesized += 1
            failures += not certificate_ok(spec, report)
    ok = tori > 0 and missing == 0 and failures == 0
    record(acceptance, 6, ok, f"tori={tori} missing_cycles={missing} synthesized={synthesized} "
                              f"unverified={failures}")


def corpus_with_named(corpus, request):
    names = ("hardsquare", "checkerboard", "contradiction", "nocells", "fullshift")
    return list(corpus) + [request.getfixturevalue(n) for n in names]


def test_criterion_7_monotonicity(acceptance, corpus, request):
    base = Budgets()
    nonempty = lost = 0
    for spec in corpus_with_named(corpus, request):
        r = analyze(spec, base)
        if r.status != NONEMPTY:
            continue
        nonempty += 1
        r2 = analyze(spec, base.doubled())
        if r2.status != NONEMPTY or not certificate_ok(spec, r2):
            lost += 1
    ok = nonempty > 0 and lost == 0
    record(acceptance, 7, ok, f"nonempty_at_B={nonempty} lost_at_2B={lost}")


def test_criterion_8_no_contradictions(acceptance, corpus, request):
    budgets = [Budgets(max_period=1, n_max=2), Budgets(), Budgets().doubled()]
    tally = {}
    clashes = []
    for idx, spec in enumerate(corpus_with_named(corpus, request)):
        seen = set()
        for b in budgets:
            status = analyze(spec, b).status
            tally[status] = tally.get(status, 0) + 1
            seen.add(status)
        if {EMPTY, NONEMPTY} <= seen:
            clashes.append(idx)
    ok = not clashes
    record(acceptance, 8, ok, f"verdicts={dict(sorted(tally.items()))} clashes={clashes}")

"""The independent checkers must reject doctored certificates, not just accept good ones."""

from dataclasses import replace

import numpy as np

from recforge import WindowSet, validate
from recforge.constructions import md_point, sm_point
from recforge.families import piecewise_syndetic_witness, run_profile, syndetic_gap
from recforge.independence import IndependenceQuery, IndependenceResult, check_independence
from recforge.subshift import minimality_certificate, recurrence_certificate
from recforge.words import complement_of_progressions, constant, periodic, thue_morse


def test_syndetic_rejects_wrong_gap():
    S = WindowSet(99, range(0, 99, 3))
    g = syndetic_gap(S)
    assert validate.check_syndetic(S, g) == []
    assert validate.check_syndetic(S, g - 1)
    assert validate.check_syndetic(S, g + 1)  # not least
    assert validate.check_syndetic_absent(S, g)


def test_thick_rejects_tampered_runs():
    S = WindowSet(20, [2, 3, 4, 9])
    cert = run_profile(S)
    assert validate.check_thick(S, cert.runs, cert.max_run) == []
    assert validate.check_thick(S, ((2, 2), (9, 1)), 2)
    assert validate.check_thick(S, cert.runs, 4)


def test_piecewise_rejects_stretched_interval():
    S = WindowSet(100, range(40, 80, 2))
    cert = piecewise_syndetic_witness(S, 2)
    assert validate.check_piecewise(S, 2, (30, 80))
    assert validate.check_piecewise(S, 2, (40, 42))


def test_md_rejects_flipped_bit():
    C = constant(1, 3000)
    y, trace = md_point(C, 2)
    bad = y.word.copy()
    bad[-1] ^= 1
    assert validate.check_md(C, bad, trace)
    stages = list(trace.stages)
    stages[1] = replace(stages[1], a=stages[1].a + 1)
    assert validate.check_md(C, y, replace(trace, stages=stages))


def test_md_rejects_support_violation():
    C = constant(1, 3000)
    y, trace = md_point(C, 2)
    holes = C.word.copy()
    holes[np.flatnonzero(y.word)[-1]] = 0
    assert any("outside C" in p for p in validate.check_md(holes, y, trace))


def test_sm_rejects_tampered_word_and_gap():
    F = complement_of_progressions([600], 100000)
    y, trace = sm_point(F, 2)
    assert validate.check_sm(F, y, trace) == []
    bad = y.word.copy()
    bad[len(bad) // 2] ^= 1
    assert validate.check_sm(F, bad, trace)
    stages = list(trace.stages)
    stages[1] = replace(stages[1], l=1)
    assert validate.check_sm(F, y, replace(trace, stages=stages))


def test_ip_rejects_bad_generators():
    x = periodic("01", 1000)
    assert validate.check_extract_ip(x, [2, 4, 8]) == []
    assert validate.check_extract_ip(x, [2, 3, 8])
    assert validate.check_rapid_ip([(0, 100)], [1, 2, 4]) == []
    assert validate.check_rapid_ip([(0, 5)], [1, 2, 4])
    assert validate.check_hindman((1, 2, 4), lambda v: v % 2, (1, 2))
    assert validate.check_hindman((1, 2, 4), lambda v: 0, (3, 2))


def test_independence_rejects_false_witness():
    x = thue_morse(4096)
    res = check_independence(IndependenceQuery(x, ["0", "1"], [0, 1]))
    assert validate.check_independence(x, ["0", "1"], [0, 1], res) == []
    forged = dict(res.witnesses)
    forged[(0, 0)] = forged[(1, 1)]
    assert validate.check_independence(x, ["0", "1"], [0, 1], replace(res, witnesses=forged))
    lie = IndependenceResult(False, None, (0, 1), 3)
    assert validate.check_independence(x, ["0", "1"], [0, 1], lie)


def test_subshift_rejects_wrong_tables():
    x = thue_morse(1024)
    rec = recurrence_certificate(x, 5)
    rec[3] += 1
    assert validate.check_recurrence(x, rec)
    gaps = minimality_certificate(x, 2)
    gaps["00"] += 1
    assert validate.check_minimality(x, 2, gaps)


def test_joint_and_entropy_reject():
    x = periodic("01", 100)
    assert validate.check_joint(x, "0", x, "0", WindowSet(99, [0, 2]))
    y, trace = md_point(constant(1, 20000), 2)
    from recforge.constructions import entropy_bound_check
    rows = entropy_bound_check(y, trace, 2)
    assert validate.check_entropy(y, [replace(rows[0], blocks=rows[0].blocks + 1)])

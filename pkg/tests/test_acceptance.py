"""Acceptance suite: one test per criterion, each printing a pass line.

Everything is exact rational arithmetic, so every tolerance is equality.
Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  The criteria reuse the deterministic check functions behind
`igc check` (seed 0) plus direct CLI invocations for the last one.
"""

import subprocess
import sys

from igc.checks import (
    CHECK_NAMES,
    check_action_relations,
    check_action_swap_k2,
    check_cohomology,
    check_free_lie_rinehart,
    check_homotopy,
    check_lie_extension,
    check_relative_cases,
    check_s_invariance,
    check_strong_difference,
    check_trivial_agreement,
    check_weil_dictionary,
    check_weil_multiplicativity,
    check_weil_negative_control,
)

SEED = 0
MAX_DEGREE = 4


def _require(report):
    assert report.passed, f"{report.name}: {report.failures[:3]}"
    return report


def _announce(number, label, reports):
    cases = sum(r.cases for r in reports)
    print(f"PASS criterion {number}: {label} ({cases} cases)")


def test_criterion_1_weil_multiplicativity():
    reports = [
        _require(check_weil_multiplicativity(SEED, MAX_DEGREE)),
        _require(check_weil_negative_control(SEED, MAX_DEGREE)),
    ]
    _announce(1, "morphism multiplicativity on 100 fields + negative control", reports)


def test_criterion_2_decomposition_dictionary():
    reports = [_require(check_weil_dictionary(SEED, MAX_DEGREE))]
    _announce(2, "roundtrip dictionary and second-order part", reports)


def test_criterion_3_symmetric_group_action():
    reports = [
        _require(check_action_relations(SEED, MAX_DEGREE)),
        _require(check_action_swap_k2(SEED, MAX_DEGREE)),
    ]
    _announce(3, "square/braid/distant relations both flavors, k=3,4", reports)


def test_criterion_4_strong_difference_bracket():
    reports = [_require(check_strong_difference(SEED, MAX_DEGREE))]
    _announce(4, "strong-difference pipeline equals the coordinate bracket", reports)


def test_criterion_5_free_lie_rinehart():
    reports = [
        _require(check_free_lie_rinehart(SEED, MAX_DEGREE)),
        _require(check_lie_extension(SEED, MAX_DEGREE)),
    ]
    _announce(5, "alternation, Jacobi, defining relation, slice ranks", reports)


def test_criterion_6_relative_special_cases():
    reports = [_require(check_relative_cases(SEED, MAX_DEGREE))]
    _announce(6, "vertical collapse, fully free case, quotient ranks", reports)


def test_criterion_7_homotopy():
    reports = [_require(check_homotopy(SEED, MAX_DEGREE))]
    _announce(7, "h2 formula, projection kill, pair counts", reports)


def test_criterion_8_trivial_homotopy_agreement():
    reports = [_require(check_trivial_agreement(SEED, MAX_DEGREE))]
    _announce(8, "definitional vs disjoint-pair characterization, 100 fields", reports)


def test_criterion_9_cohomology():
    reports = [_require(check_cohomology(SEED, MAX_DEGREE))]
    _announce(9, "cup chains to wedges, degeneracies, Schouten identities", reports)


def test_criterion_10_s_invariance():
    reports = [_require(check_s_invariance(SEED, MAX_DEGREE))]
    _announce(10, "cup and compose equivariance", reports)


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "igc", *args], capture_output=True, text=True
    )


def test_criterion_11_cli():
    examples = [
        (["--dim", "2", "bracket", "lie", "d0", "x0*d1"], "d1\n"),
        (["--dim", "2", "reduce", "cup(d0, d1)"], "d0 ^ d1\n"),
        (
            ["--dim", "2", "trivial?", "compose(d0, x0*d1)"],
            "false  witness: (0,1,{0},{1})\n",
        ),
    ]
    for args, expected in examples:
        r = _cli(*args)
        assert r.returncode == 0 and r.stdout == expected, (args, r.stdout, r.stderr)

    full = _cli("--dim", "2", "check")
    assert full.returncode == 0, full.stdout + full.stderr

    for name in CHECK_NAMES:
        r = _cli("--dim", "2", "check", "--only", name, "--invert", name)
        assert r.returncode == 3, (name, r.stdout)

    print("PASS criterion 11: CLI outputs bit-exact; check exits 0, inverted checks exit 3")

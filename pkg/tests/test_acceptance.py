"""Acceptance criteria 1-10, each at exact equality.

Every test prints one ``PASS``/``FAIL`` line.  Run on its own with::

    pytest tests/test_acceptance.py -s
"""

import json
import subprocess
import sys

import pytest

from qweyl.algebra import AlgebraId
from qweyl.checks import (
    Bounds,
    check_chi_gauss,
    check_classical_limits,
    check_corollaries,
    check_oracle_equivalence,
    check_qo_recursion,
    check_representations,
    check_sym_closed_forms,
    check_sym_homomorphism,
)
from qweyl.cli import main

BOUNDS = Bounds()


@pytest.fixture
def report(capsys):
    def emit(number, title, passed, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if passed else 'FAIL'} criterion {number}: {title} {detail}".rstrip())
        assert passed, detail

    return emit


def _check(report, number, result):
    report(number, result.name, result.passed, f"({result.checked} cases, {result.seconds:.1f}s) {result.counterexample or ''}")


def test_criterion_01_oracle_equivalence_q_oscillator(report):
    result = check_oracle_equivalence(AlgebraId.Q_OSCILLATOR, BOUNDS, 1)
    assert result.checked >= 729
    _check(report, 1, result)


@pytest.mark.parametrize("algebra", [AlgebraId.Q_WEYL, AlgebraId.H_WEYL, AlgebraId.SL2])
def test_criterion_02_oracle_equivalence(report, algebra):
    _check(report, 2, check_oracle_equivalence(algebra, BOUNDS, 2))


def test_criterion_03_chi_is_gaussian_binomial(report):
    result = check_chi_gauss(Bounds(chi_max=8))
    assert result.checked == 45
    _check(report, 3, result)


def test_criterion_04_recursion_vs_enumeration(report):
    _check(report, 4, check_qo_recursion(BOUNDS))


def test_criterion_05_representations(report):
    _check(report, 5, check_representations(BOUNDS))


def test_criterion_06_corollaries(report):
    _check(report, 6, check_corollaries(BOUNDS))


def test_criterion_07_sym_homomorphism(report):
    _check(report, 7, check_sym_homomorphism(BOUNDS))


def test_criterion_08_sym_closed_forms(report):
    _check(report, 8, check_sym_closed_forms(BOUNDS))


def test_criterion_09_classical_limits(report):
    _check(report, 9, check_classical_limits(BOUNDS))


EXAMPLES = [
    (
        ["normalize", "--algebra", "q-oscillator", "y x"],
        '{"algebra":"q-oscillator","terms":[{"exps":[1,1],"coeff":"q"},{"exps":[0,0],"coeff":"h"}]}',
    ),
    (["coeffs", "--algebra", "q-weyl", "--factors", "(0,0,1),(2,0,0)"], '{"0":"1","1":"1 + q"}'),
]


def test_criterion_10_cli(report, capsys):
    problems = []
    for argv, expected in EXAMPLES:
        proc = subprocess.run([sys.executable, "-m", "qweyl", *argv], capture_output=True, check=False)
        if proc.returncode != 0 or proc.stdout != (expected + "\n").encode():
            problems.append(f"{argv[0]}: {proc.stdout!r}")
    proc = subprocess.run(
        [sys.executable, "-m", "qweyl", "verify", "--suite", "representations"], capture_output=True, check=False
    )
    doc = json.loads(proc.stdout)
    if proc.returncode != 0 or doc["pass"] is not True or doc["checked"] != 141:
        problems.append(f"verify: {proc.stdout!r}")
    # byte-identical across runs
    again = subprocess.run(
        [sys.executable, "-m", "qweyl", "verify", "--suite", "representations"], capture_output=True, check=False
    )
    if again.stdout != proc.stdout:
        problems.append("verify output differs between runs")

    status = main(["selftest", "--quiet"])
    doc = json.loads(capsys.readouterr().out)
    ran = sorted({r["criterion"] for r in doc["results"]})
    if status != 0 or not doc["pass"] or ran != list(range(1, 10)):
        problems.append(f"selftest: status {status}, criteria {ran}")
    report(10, "CLI conformance", not problems, "; ".join(problems))

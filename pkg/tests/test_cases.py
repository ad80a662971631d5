import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noether.cases import run_all, run_case, run_theorem18_subcase
from noether.cases.engine import DIVERGENCE, FAIL, parse_monomial
from noether.errors import NoetherError
from noether.groups import families_at
from noether.rationality import NOT_RATIONAL, RATIONAL, FieldDescriptor


def test_g8_n5_epsilon_minus_one():
    rep = run_case(8, 5, FieldDescriptor.cyclotomic(4))
    assert rep.passed
    assert rep.extras["epsilon"] == -1
    assert rep.step("table Eq.(3.3)").status == "pass"
    assert rep.step("table Eq.(3.4)").status == "pass"


def test_g8_n6_epsilon_plus_one():
    rep = run_case(8, 6, FieldDescriptor.cyclotomic(8))
    assert rep.passed and rep.extras["epsilon"] == 1


def test_g2_direct_product_route():
    rep = run_case("G2", 5)
    assert rep.passed
    assert rep.verdict.status == RATIONAL
    names = [s.name for s in rep.steps]
    assert "Theorem 1.3 for <s,t>" in names and "rule Theorem 2.6" in names


def test_errata_are_divergences():
    rep = run_case(8, 5)
    div = [s.name for s in rep.steps if s.status == DIVERGENCE]
    assert "eigenvector X" in div and "eigenvector Y" in div
    assert not [s for s in rep.steps if s.status == FAIL]


def test_missing_root_fails_hypotheses():
    rep = run_case(8, 6, FieldDescriptor.cyclotomic(4))
    assert not rep.passed
    assert rep.failed_steps()[0].name == "field hypotheses"


def test_script_range():
    with pytest.raises(NoetherError):
        run_case(1, 4)
    with pytest.raises(NoetherError):
        run_case(19, 5)


def test_run_all_empty():
    assert run_all(()) == []


def test_run_all_n5_count():
    reps = run_all((5,), workers=1)
    # families I, II and IV at n = 5 (family III starts at 6)
    assert len(reps) == len(families_at(5)) == 19
    assert all(r.passed for r in reps)


def test_n6_includes_family_iii():
    cases = {r.case for r in run_all((6,), workers=1)}
    assert {f"G{f}@n=6" for f in range(19, 26)} <= cases


def test_report_json_roundtrip():
    rep = run_case(13, 5)
    obj = json.loads(json.dumps(rep.to_json(), default=str))
    assert obj["expected_verdict"] == RATIONAL
    assert len(obj["steps"]) == len(rep.steps)


@pytest.mark.parametrize("sub,want", [(1, RATIONAL), (2, RATIONAL), (3, NOT_RATIONAL)])
def test_theorem18_subcases(sub, want):
    rep = run_theorem18_subcase(sub, 3)
    assert rep.passed and rep.verdict.status == want


def test_theorem18_subcase3_epsilon():
    rep = run_theorem18_subcase(3, 3)
    assert rep.step("exceptional form").detail["epsilon"] == -1
    flip = run_theorem18_subcase(3, 3, FieldDescriptor.cyclotomic(6, minus_one=True))
    assert flip.passed and flip.verdict.status == RATIONAL


@pytest.mark.parametrize("m", [5, 7, 9])
def test_theorem18_larger_m(m):
    assert all(run_theorem18_subcase(s, m).passed for s in (1, 2, 3))


def test_parse_monomial():
    e = parse_monomial("i zeta^-1 u1^2/(u2 u3)", 8, {"zeta": 1, "i": 2})
    assert e.coef == 1 and e.exps == {"u1": 2, "u2": -1, "u3": -1}


@settings(max_examples=15)
@given(st.sampled_from(families_at(5)), st.data())
def test_single_mutation_fails(fid, data):
    clean = run_case(fid, 5)
    if clean.entries == 0:
        return
    k = data.draw(st.integers(0, clean.entries - 1))
    assert not run_case(fid, 5, mutation=k).passed

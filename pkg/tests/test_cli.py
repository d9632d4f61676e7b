import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from b3lift.cli import evaluate, main, parse, to_text
from b3lift.cli.expr import Add, Comm, ExprSyntaxError, Gen, Group, Mu, Mul, Neg, Num, Pow, Q, Sub
from b3lift.datum import ROOTS, canonical_datum
from b3lift.liftings import build_lifting

ROUND_TRIP = [
    "y1", "y2", "y3", "y21", "y32", "y31", "yt32", "yt31", "yt21", "q",
    "2", "-3", "1/2", "-5/7", "q^2", "q^-1", "g[1,0,0]", "g[0,2,1]", "g[1,1,1]^-1", "mu[a1]",
    "mu[at21]", "mu[y32]", "y1 y2", "y1*y2", "y2 y1 y3", "y1^3", "y21^2 y1", "(y1 + y2)^2", "-(y1 - y2)", "y1 - -y2",
    "y1 + y2 - y3", "2*y1 - 3/4*y2", "q^3 y31 + q y3^2", "[y2, y1]_c", "[y3, y3]_c", "[[y3, y2]_c, y1]_c",
    "[y32, y1]_c - y31", "g[1,0,0] y1 g[1,0,0]^-1", "mu[a1] (g[3,0,0] - 1)", "(y1)", "((y2))",
    "y1 (y2 + y3) y1", "-y1^2", "(-y1)^2", "y3^2 - (1 - q^3) y3 y3", "1 + q + q^2 + q^3",
    "(q - 1)^3 y2", "y1^0", "[y1 + y2, y3]_c", "mu[a2] mu[a3] yt32 - yt32 mu[a3] mu[a2]",
]

LIFT = build_lifting(canonical_datum(3), "symbolic")

MALFORMED = [
    "", "y", "y4", "y1 +", "+ y1", "(y1", "y1)", "y1 ^", "y1^y2", "g[]", "g[1,", "g[1 2]",
    "mu[]", "mu[b7]", "[y1 y2]_c", "[y1, y2]", "1/", "y1 ** 2", "y1 & y2", "q^1.5", "y1^^2",
]


def test_round_trip_corpus_size():
    assert len(ROUND_TRIP) == 50


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_round_trip(text):
    tree = parse(text)
    printed = to_text(tree)
    assert parse(printed) == tree
    assert to_text(parse(printed)) == printed


@pytest.mark.parametrize("text", MALFORMED)
def test_malformed_exits_with_usage_code(text, capsys):
    assert main(["normalize", "canonical:3", "-e", text]) == 2
    assert "error" in capsys.readouterr().err


def test_syntax_error_carries_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse("y1 + (y2")
    assert info.value.pos == 8
    assert info.value.caret().splitlines()[1] == " " * 8 + "^"


leaves = st.one_of(
    st.sampled_from(["a1", "a2", "a3", "a21", "a32", "a31", "at32", "at31", "at21"]).map(Gen),
    st.just(Q()),
    st.lists(st.integers(0, 5), min_size=3, max_size=3).map(lambda v: Group(tuple(v))),
    st.sampled_from(ROOTS).map(Mu),
)


def _trees(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Comm, children, children),
    )


trees = st.recursive(leaves, _trees, max_leaves=8)


@given(trees)
def test_printed_trees_reparse_to_same_value(tree):
    rs = LIFT
    printed = to_text(tree)
    again = parse(printed)
    assert to_text(again) == printed
    try:
        want = evaluate(tree, rs)
    except Exception as exc:  # noqa: BLE001 - evaluation limits apply to both sides alike
        with pytest.raises(type(exc)):
            evaluate(again, rs)
        return
    assert evaluate(again, rs) == want


def test_numbers_keep_fractions():
    assert parse("3/6") == Num(Fraction(1, 2))


@pytest.mark.parametrize("text", ["y1^3", "y21^3", "[y3, y3]_c + q^2 y31", "yt21 y1 y3", "g[1,0,0]^-1 y2"])
def test_normal_form_output_reparses(text, capsys, lift3):
    assert main(["normalize", "canonical:3", "--mode", "lifting", "-e", text]) == 0
    out = capsys.readouterr().out.strip()
    assert evaluate(parse(out), lift3) == evaluate(parse(text), lift3)


def test_negative_power_of_non_group_element(capsys):
    assert main(["normalize", "canonical:3", "-e", "y1^-1"]) == 2


def test_exit_codes(tmp_path, capsys):
    assert main(["validate", "canonical:7"]) == 0
    bad = tmp_path / "bad.json"
    doc = canonical_datum(3).to_json()
    doc["E"] = [[2, 2, 0], [1, 2, 1], [0, 1, 1]]
    bad.write_text(json.dumps(doc))
    assert main(["validate", str(bad)]) == 1
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "canonical:3", "--suite", "nope"]) == 2
    assert main(["u-alpha", "canonical:3", "--root", "y9"]) == 2
    capsys.readouterr()


def test_budget_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("B3LIFT_STEP_BUDGET", "3")
    code = main(["normalize", "canonical:3", "-e", "y1 y2 y3 y2 y1 y3"])
    assert code == 3


def test_verify_json_schema(capsys):
    assert main(["--json", "verify", "canonical:3", "--suite", "claims"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "b3lift-report/1"
    assert doc["failed"] == 0 and doc["passed"] == len(doc["checks"])
    assert doc["meta"]["suite"] == "claims"


def test_dims_and_u_alpha_commands(capsys):
    assert main(["dims", "canonical:3", "--upto", "4", "--box"]) == 0
    out = capsys.readouterr().out
    assert "14348907" in out and "19683" in out
    assert main(["u-alpha", "canonical:3", "--root", "y21"]) == 0
    assert capsys.readouterr().out.startswith("y21^3 = ")


def _run(*args):
    return subprocess.run([sys.executable, "-m", "b3lift", *args], capture_output=True, check=False)


@pytest.mark.parametrize("args", [
    ("verify", "canonical:3", "--suite", "powers"),
    ("--json", "verify", "canonical:3", "--suite", "deg3"),
    ("coproduct", "canonical:3", "-e", "yt32"),
])
def test_output_is_byte_identical_across_runs(args):
    a, b = _run(*args), _run(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_worker_count_does_not_change_output():
    one = _run("verify", "canonical:3", "--suite", "deg3")
    many = _run("verify", "canonical:3", "--suite", "deg3", "--jobs", "3")
    assert one.returncode == many.returncode == 0
    assert one.stdout == many.stdout

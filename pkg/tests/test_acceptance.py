"""The twelve acceptance criteria, one test each.

Each test records a line ``ACCEPTANCE k PASS|FAIL title (secs)`` which the
conftest hook prints after the run; running this file as a script prints
the same lines directly.  Wall-clock limits are part of each criterion.
"""

import io
import time
from contextlib import redirect_stderr, redirect_stdout

import pytest

from b3lift.cyclo import CycField, q_binomial, q_binomial_poly
from b3lift.datum import CANONICAL_E, ROOTS, canonical_datum, height, validate_datum
from b3lift.hopfverify.checks import (
    antipode_defect,
    beta_adjudication,
    confluence_check,
    dims_check,
    random_monomials,
    table_identities_check,
    verify_hopf_ideal,
    verify_power_coproduct,
    verify_power_formulas,
)
from b3lift.hopfverify.tensor import coassociator, coproduct, counit_left, counit_right
from b3lift.liftings import build_lifting, expand_recursion_check
from b3lift.pbwalg import box_count, dimension_formula

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script outside pytest
    ACCEPTANCE_LINES = []


def _record(k: int, title: str, limit: float, fn):
    t0 = time.perf_counter()
    ok, note = False, ""
    try:
        ok, note = fn()
    finally:
        secs = time.perf_counter() - t0
        in_time = secs < limit
        status = "PASS" if ok and in_time else "FAIL"
        extra = f" [{note}]" if note else ""
        if ok and not in_time:
            extra += f" [over the {limit:g}s limit]"
        ACCEPTANCE_LINES.append(f"ACCEPTANCE {k} {status} {title} ({secs:.1f}s){extra}")
    assert ok, note
    assert in_time, f"took {secs:.1f}s, limit {limit:g}s"


def _pascal(n: int, k: int) -> list:
    """Gaussian binomial coefficients of q by the recurrence [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    table = {(0, 0): [1]}
    for m in range(1, n + 1):
        for j in range(0, m + 1):
            a = table.get((m - 1, j - 1), [0])
            b = [0] * j + table.get((m - 1, j), [0])
            size = max(len(a), len(b))
            c = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)]
            while len(c) > 1 and c[-1] == 0:
                c.pop()
            table[(m, j)] = c
    return table[(n, k)]


def crit1():
    for N in (3, 5, 7):
        z = CycField(N).zeta(1)
        if any(q_binomial(N, j, z) for j in range(1, N)):
            return False, f"nonzero binomial at N={N}"
    for n in range(13):
        for k in range(n + 1):
            if list(q_binomial_poly(n, k)) != _pascal(n, k):
                return False, f"[{n},{k}] disagrees with the recurrence"
    return True, ""


def crit2():
    from test_datum import expected_violations

    for N in (3, 5, 7, 9, 11):
        if not validate_datum(canonical_datum(N)).ok:
            return False, f"canonical N={N} rejected"
    for N in (3, 7):
        for i in range(3):
            for j in range(3):
                E = [list(r) for r in CANONICAL_E]
                E[i][j] += 1
                rep = validate_datum(canonical_datum(N, tuple(map(tuple, E))))
                if rep.ok or set(rep.names()) != expected_violations(E, N):
                    return False, f"perturbation ({i},{j}) at N={N}: {rep.names()}"
    return True, ""


def crit3():
    bad = []
    for N in (3, 7):
        d = canonical_datum(N)
        for mode in ("serre", "nichols", "lifting"):
            rep = confluence_check(d, mode, "symbolic")
            bad += rep.failed_names()
    return not bad, ", ".join(bad)


def crit4():
    d = canonical_datum(7)
    rep = dims_check(d, 6)
    rep.extend(table_identities_check(d))
    return rep.ok, ", ".join(rep.failed_names())


def crit5():
    rep = verify_hopf_ideal(canonical_datum(7), "symbolic")
    return rep.ok, f"{len(rep)} rows, failed: {rep.failed_names()}" if not rep.ok else f"{len(rep)} rows"


def crit6():
    notes, bad = [], []
    d3 = canonical_datum(3)
    for r in ROOTS:
        bad += verify_power_coproduct(r, d3).failed_names()
    d7 = canonical_datum(7)
    for group, roots in (("deg<=3", [r for r in ROOTS if height(r) <= 3]),
                         ("deg4-5", [r for r in ROOTS if height(r) >= 4])):
        t0 = time.perf_counter()
        for r in roots:
            bad += verify_power_coproduct(r, d7).failed_names()
        notes.append(f"N=7 {group} {time.perf_counter() - t0:.1f}s")
    return not bad, "; ".join(notes + bad)


def crit7():
    d = canonical_datum(3)
    rep = None
    for n in (1, 2, 3, 4):
        r = verify_power_formulas(n, d)
        rep = r if rep is None else rep.extend(r)
    need = ("powers.b2^N", "powers.c4^N", "powers.b3^N")
    missing = [k for k in need if k not in rep.names()]
    return rep.ok and not missing, ", ".join(rep.failed_names() + missing)


def crit8():
    bad = []
    for N in (3, 5, 7):
        bad += [f"N={N}:{r}" for r, _ in expand_recursion_check(canonical_datum(N), "symbolic")]
    return not bad, ", ".join(bad)


def crit9():
    rep = beta_adjudication((3, 5, 7))
    documented = all("variant: false" in r.detail for r in rep)
    return rep.ok and documented and len(rep) == 3, ", ".join(rep.failed_names())


def crit10():
    d = canonical_datum(3)
    if d.group.invariant_factors != (9, 9, 9):
        return False, f"group is {d.group.invariant_factors}"
    if confluence_check(d, "lifting", "symbolic").failures:
        return False, "lifting system not confluent"
    total = dimension_formula(d)
    box = box_count(build_lifting(d, "symbolic"))
    return total == 14_348_907 and box == 19_683, f"dim {total}, box {box}"


def crit11():
    d = canonical_datum(3)
    rs = build_lifting(d, "symbolic")
    mons = random_monomials(rs, 200, 4, seed=11)
    bad = {"coassociativity": 0, "counit": 0, "algebra map": 0, "antipode": 0}
    for i, m in enumerate(mons):
        left, right = coassociator(m)
        bad["coassociativity"] += left != right
        dm = coproduct(m)
        bad["counit"] += counit_left(dm) != m or counit_right(dm) != m
        nxt = mons[(i + 1) % len(mons)]
        bad["algebra map"] += coproduct(m * nxt) != dm * coproduct(nxt)
        sl, sr = antipode_defect(m)
        bad["antipode"] += bool(sl) or bool(sr)
    failed = {k: v for k, v in bad.items() if v}
    return not failed, f"{len(mons)} monomials" + (f", failures {failed}" if failed else "")


def crit12():
    from b3lift.cli import main, parse, to_text
    from test_cli import ROUND_TRIP

    if len(ROUND_TRIP) != 50:
        return False, "corpus size"
    for s in ROUND_TRIP:
        t = parse(s)
        printed = to_text(t)
        if parse(printed) != t or to_text(parse(printed)) != printed:
            return False, f"round trip of {s!r}"

    def run(argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
        return code, out.getvalue()

    for argv in (["verify", "canonical:3", "--suite", "claims"], ["--json", "verify", "canonical:3", "--suite", "deg2"]):
        if run(argv) != run(argv):
            return False, f"rerun differs: {argv}"
    codes = {
        0: ["validate", "canonical:3"],
        2: ["normalize", "canonical:3", "-e", "y1 +"],
    }
    for want, argv in codes.items():
        if run(argv)[0] != want:
            return False, f"exit code of {argv}"
    if run(["verify", "canonical:3", "--suite", "nope"])[0] != 2:
        return False, "bad suite exit code"
    return True, ""


CRITERIA = [
    (1, "q-binomials vanish at roots of unity and match the recurrence", 1, crit1),
    (2, "datum validation names each violated congruence", 1, crit2),
    (3, "overlap check empty for serre, nichols, lifting at N=3,7", 120, crit3),
    (4, "graded dimensions and table identities match the word oracle at N=7", 600, crit4),
    (5, "relation ideal is a Hopf ideal at N=7, symbolic parameters", 1800, crit5),
    (6, "coproducts of root-vector powers at N=3 and N=7", 300, crit6),
    (7, "closed power formulas at N=3", 300, crit7),
    (8, "recursive and closed power relations agree", 60, crit8),
    (9, "beta power sum and the rejected exponent variant", 1, crit9),
    (10, "dimension count and exponent box at N=3", 60, crit10),
    (11, "Hopf axioms on 200 random monomials at N=3", 300, crit11),
    (12, "CLI round trip, determinism and exit codes", 1, crit12),
]


@pytest.mark.parametrize("k,title,limit,fn", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_acceptance(k, title, limit, fn):
    _record(k, title, limit, fn)


if __name__ == "__main__":
    for k, title, limit, fn in CRITERIA:
        try:
            _record(k, title, limit, fn)
        except AssertionError:
            pass
        print(ACCEPTANCE_LINES[-1], flush=True)

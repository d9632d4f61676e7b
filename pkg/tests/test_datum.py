import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from b3lift.datum import (
    CANONICAL_E,
    DatumError,
    canonical_datum,
    datum_from_json,
    extended_index,
    q_block,
    twisted_datum,
    validate_datum,
)

# Cartan matrix of B3 with the short simple root third
A = ((2, -1, 0), (-1, 2, -1), (0, -2, 2))


def expected_violations(E, N):
    """Names of the congruences a braiding-exponent matrix breaks, computed from scratch."""
    out = set()
    for a, b in ((0, 1), (1, 0), (1, 2), (2, 1)):
        if (E[a][b] + E[b][a] - A[a][b] * E[a][a]) % N:
            out.add(f"cartan({a + 1},{b + 1})")
    if (E[0][2] + E[2][0]) % N:
        out.add("q13*q31 = 1")
    if (E[0][0] - 2 * E[2][2]) % N:
        out.add("q11 = q33^2")
    if (E[1][1] - 2 * E[2][2]) % N:
        out.add("q22 = q33^2")
    if E[2][2] % N == 0:
        out.add("ord(q33) = N")
    return out


@pytest.mark.parametrize("N", [3, 5, 7, 9, 11])
def test_canonical_is_valid(N):
    assert validate_datum(canonical_datum(N)).ok


@pytest.mark.parametrize("N", [5, 7])
def test_twisted_is_valid(N):
    d = twisted_datum(N)
    assert validate_datum(d).ok
    assert d.q(1, 3) != d.q(3, 1)


@pytest.mark.parametrize("N", [3, 7])
@pytest.mark.parametrize("i,j", [(i, j) for i in range(3) for j in range(3)])
def test_single_entry_perturbation_names_the_congruence(N, i, j):
    E = [list(r) for r in CANONICAL_E]
    E[i][j] += 1
    rep = validate_datum(canonical_datum(N, tuple(map(tuple, E))))
    want = expected_violations(E, N)
    assert want and not rep.ok
    assert set(rep.names()) == want


def test_q13_violation():
    E = [list(r) for r in CANONICAL_E]
    E[0][2] = 1
    rep = validate_datum(canonical_datum(7, tuple(map(tuple, E))))
    assert "q13*q31 = 1" in rep.names()


def test_even_n_rejected():
    with pytest.raises(DatumError):
        canonical_datum(4)
    d = canonical_datum(3)
    bad = datum_from_json({**d.to_json(), "N": 4})
    assert "N odd" in validate_datum(bad).names()


def test_canonical_values():
    d = canonical_datum(7)
    z7 = d.field.root_of_unity(7)
    assert d.q33() == z7
    assert d.q(1, 1) == d.q(2, 2) == z7 ** 2
    assert d.group.power(d.g[0], 7) != d.group.identity
    d3 = canonical_datum(3)
    _, chi21 = d3.root_group_data("a21")
    assert d3.group.is_trivial_character(d3.group.power(chi21, 3))
    assert all(d3.mu_mask().values())


def test_root_group_data():
    d = canonical_datum(5)
    G = d.group
    g1, g2, g3 = d.g
    assert d.root_group_data("a21")[0] == G.mul(g2, g1)
    assert d.root_group_data("at32")[0] == G.mul(G.power(g3, 2), g2)
    assert d.root_group_data("at21")[0] == G.mul(G.mul(G.power(g3, 2), G.power(g2, 2)), g1)
    with pytest.raises(DatumError):
        d.root_group_data("a4")


def test_extended_index_and_q_block():
    assert [extended_index(j) for j in ("1", "3t", "2t")] == [1, 3, 2]
    d = canonical_datum(7)
    assert q_block(2, 2, 1, 1, d) == d.q(2, 1)
    assert q_block(3, 2, 2, 2, d) == d.q(3, 2) * d.q(2, 2)
    assert q_block("3t", 3, 2, 2, d) == d.q(3, 2) ** 2
    with pytest.raises(DatumError):
        q_block(2, 3, 1, 1, d)


@given(st.lists(st.integers(0, 48), min_size=3, max_size=3), st.lists(st.integers(0, 48), min_size=3, max_size=3))
def test_character_pairing_is_bilinear(a, b):
    d = canonical_datum(7)
    G = d.group
    g, h = G.element(a), G.element(b)
    for chi in d.chi:
        assert (d.char_value_exponent(chi, G.mul(g, h)) - d.char_value_exponent(chi, g)
                - d.char_value_exponent(chi, h)) % d.M == 0


def test_json_round_trip(tmp_path):
    d = canonical_datum(5)
    p = tmp_path / "d.json"
    p.write_text(json.dumps(d.to_json()))
    from b3lift.datum import load_datum

    assert load_datum(p) == d


def test_masked_mu_rejected():
    d = canonical_datum(3)
    doc = d.to_json()
    doc["invariant_factors"] = [3, 3, 3]
    doc["chi"] = [[c // 3 for c in x] for x in doc["chi"]]
    doc["mu"] = {"a1": 1}
    rep = validate_datum(datum_from_json(doc))
    assert any(n.startswith("mu mask") for n in rep.names())

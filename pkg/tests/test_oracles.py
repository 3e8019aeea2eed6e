from invarcoh.oracles import (
    MATCH,
    hypersurface_A1_oracle,
    inverse_monomial_socle_oracle,
    run_oracle_suite,
    top_lc_polynomial_oracle,
)


def test_top_lc_oracle_examples():
    assert top_lc_polynomial_oracle(2, -2) == 1
    assert top_lc_polynomial_oracle(2, -5) == 4
    assert top_lc_polynomial_oracle(3, -2) == 0
    assert top_lc_polynomial_oracle(3, -3) == 1
    assert top_lc_polynomial_oracle(1, -1) == 1
    assert top_lc_polynomial_oracle(2, 0) == 0


def test_top_lc_oracle_against_binomial():
    from math import comb

    for n in (1, 2, 3):
        for d in range(-9, 1):
            expected = comb(-d - 1, n - 1) if d <= -n else 0
            assert top_lc_polynomial_oracle(n, d) == expected


def test_hypersurface_oracle_values():
    # the cone K[a,b,c]/(b^2-ac) with deg 2 generators: dim is -d-1 at even
    # d <= -2 and 0 elsewhere
    assert hypersurface_A1_oracle(-2) == 1
    assert hypersurface_A1_oracle(-4) == 3
    assert hypersurface_A1_oracle(-10) == 9
    assert hypersurface_A1_oracle(-3) == 0
    assert hypersurface_A1_oracle(0) == 0
    assert hypersurface_A1_oracle(1) == 0


def test_inverse_monomial_socle_oracle_values():
    full = inverse_monomial_socle_oracle(1, [(1, 0), (0, 1)], -5, 0)
    assert full["total"] == 1 and full["per_degree"][-2] == 1
    gor = inverse_monomial_socle_oracle(2, [(2, 0), (1, 1), (0, 2)], -6, 0)
    assert gor["total"] == 1 and gor["per_degree"][-2] == 1
    ver = inverse_monomial_socle_oracle(3, [(3, 0), (2, 1), (1, 2), (0, 3)], -7, 0)
    assert ver["total"] == 2 and ver["per_degree"][-3] == 2


def test_full_suite_matches():
    reports = run_oracle_suite()
    assert len(reports) >= 20
    mismatches = [r for r in reports if r.verdict != MATCH]
    assert mismatches == []
    # reports serialize cleanly
    for r in reports:
        doc = r.to_json()
        assert set(doc) == {
            "name",
            "inputs",
            "engine_value",
            "oracle_value",
            "verdict",
            "notes",
        }

import pytest

import halfzero


def test_lpoly_x5_minus_x():
    L = halfzero.lpoly(5, 1, "100040")
    assert L == {"q": 5, "g": 2, "coefficients": [1, 0, -10, 0, 25]}
    assert halfzero.vanishes(5, 1, "1,0,0,0,4,0")
    rep = halfzero.eigenvalue_report(5, 1, "100040")
    assert (rep["nu"], rep["m"], rep["E"], rep["O"]) == (2, 1, 0, 0)


def test_normalize_and_squarefree_part():
    assert halfzero.normalize(5, 1, "1,0,0,0,4,0") == ("100040", "t^5+4*t")
    # 2 * t^2 * (t + 1) over F_5
    unit, s, y = halfzero.squarefree_part(5, 1, "2,2,0,0")
    assert (unit, s, y) == (2, "11", "10")
    assert halfzero.jacobi(5, 1, "2", "10") == -1


def test_census_reference_rows():
    rec = halfzero.census(5, 1, 5, collect_list=True)
    assert rec["total"] == 2500
    assert rec["list"] == ["100040"]
    assert halfzero.census(3, 2, 4, jobs=2)["vanishing_count"] == 18


def test_sample_is_deterministic():
    a = halfzero.sample_census(5, 1, 7, 5000, 11)
    b = halfzero.sample_census(5, 1, 7, 5000, 11, jobs=2)
    assert a == b and a["mode"] == "sampled"


def test_base_search_and_twist():
    found = halfzero.find_base_curves(5, 1, max_genus=2)
    assert any(b["f"]["text"] == "100040" for b in found)
    fam = halfzero.twist_family(5, 1, 3)
    assert fam["distinct_d"] == fam["verified_count"] > 0
    dens = halfzero.density(5, 1, 2)
    assert len(dens["localized_primes"]) == 5 and dens["partial_product"] > 0


def test_errors():
    with pytest.raises(ValueError):
        halfzero.lpoly(4, 1, "101")
    with pytest.raises(halfzero.BudgetError):
        halfzero.census(3, 2, 7)
    with pytest.raises(ValueError):
        halfzero.twist_family(7, 1, 2)

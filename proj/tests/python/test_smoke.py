import pytest

import pnormality as pn


def test_fixture_roundtrip():
    f = pn.fixture("example-V")
    assert (f.p, f.n, len(f)) == (3, 6, 729)
    assert pn.resolve("spec:p=3 n=6 term=7:98") == f
    g = pn.Function(3, 2, [0] * 9)
    assert g.table == [0] * 9
    assert g(4) == 0
    names = [name for name, _ in pn.fixtures()]
    assert "example-VII" in names


def test_spectrum_and_classification():
    f = pn.fixture("example-II")
    assert set(pn.walsh_norms(f)) == {5**4}
    assert pn.is_bent(f)
    c = pn.classify(f)
    assert c["kind"] == "regular" and c["bent"]
    assert pn.classify(pn.fixture("example-I"))["kind"] == "weakly_regular"
    assert not pn.classify(pn.parse_spec("zero p=3 n=2"))["bent"]


def test_normality():
    f = pn.fixture("example-I")
    r = pn.test_normality(f, 2)
    assert r["verdict"] == "normal"
    assert r["witness_count"] == 280
    assert pn.test_normality(f, 3)["verdict"] == "not_normal"
    assert pn.test_normality(pn.fixture("quad-wrnr-3-4"), 2, mode="affine")["verdict"] == "not_normal"
    k, report = pn.max_normality(f)
    assert k == 2 and report["k"] == 2


def test_direct_sum_against_oracle():
    f = pn.Function(3, 2, [0, 1, 2, 1, 2, 0, 2, 0, 1])
    g = pn.direct_sum_extend(f)
    for mode in ("constant", "affine"):
        assert pn.brute_force_normal(g, 2, mode) == pn.brute_force_normal(f, 1, mode)


def test_bounds():
    assert pn.nonnormal_existence(3, 6, 3) == (-8, True)
    assert pn.nonnormal_existence(5, 4, 2) == (-14, True)
    assert pn.normality_cap(3, 6, "weakly_regular") == 2
    assert pn.normality_cap(3, 7) == 3
    assert pn.gaussian_binomial(3, 6, 2) == 11011
    assert pn.gaussian_binomial(3, 40, 20) > 2**64


def test_errors():
    with pytest.raises(ValueError, match="wat=1"):
        pn.parse_spec("zero p=3 n=2 wat=1")
    with pytest.raises(ValueError):
        pn.fixture("nope")
    with pytest.raises(ValueError):
        pn.test_normality(pn.fixture("example-I"), 2, mode="weak")

import math

import pytest

import rittlab


def test_factor_and_gcd():
    doc = rittlab.factor("x*exp(x) - x")
    assert doc["complete"]
    assert [h["h"] for h in doc["irreducibles"]] == ["x"]
    assert rittlab.gcd("exp(2*x) - 1", "exp(3*x) - 1") == "exp(1/2*x) - exp(-1/2*x)"
    assert rittlab.divides("exp(x) - 2", "exp(x) - 3") is None


def test_zeros_of_tan_minus_identity():
    s = rittlab.Session("field Q(t) where t^2+1 = 0 near 0+1i")
    s.let("T", "-t*exp(t*x)/2 + t*exp(-t*x)/2 - x*exp(t*x)/2 - x*exp(-t*x)/2")
    zs = rittlab.zeros("T", ["1/2", "8", "-1", "1"], session=s)
    assert [m for _, m in zs] == [1, 1]
    assert abs(zs[0][0].real - 4.493409458) < 1e-8


def test_series_and_constants():
    c = rittlab.bessel_series(0, 5)
    assert c[:4] == ["0", "1", "0", "-1/6"]
    assert rittlab.leibniz_constants(3)[0] == str(math.factorial(3))


def test_winding_and_errors():
    assert rittlab.winding_count("exp(x) - 1", ["-1", "1", "-7", "7"]) == 3
    with pytest.raises(rittlab.RittlabError):
        rittlab.factor("exp(x^2)")
    with pytest.raises(rittlab.RittlabError):
        rittlab.Session().parse("1 +")

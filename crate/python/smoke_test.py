"""Smoke test for the seqspace_py extension module."""

from fractions import Fraction

import seqspace_py as ss


def main():
    ident = ss.Params({"r": 1, "s": 1, "t": 1}, m=1, p=2)
    x = [1, "1/2", Fraction(1, 3), 0.25]
    y = ident.transform(x)
    assert y == [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], y
    assert ident.inverse_transform(y) == [Fraction(v) for v in (1, "1/2", "1/3", "1/4")]

    cesaro = ss.Params.preset("cesaro-alpha", m=2, p=2.0, args={"alpha": "1/2"})
    y = cesaro.transform(x)
    assert cesaro.inverse_transform(y) == [Fraction(v) for v in (1, "1/2", "1/3", "1/4")]
    assert abs(cesaro.paranorm(x) - sum(float(v) ** 2 for v in y) ** 0.5) < 1e-12

    inv = cesaro.matrix("inverse", 5)
    b = cesaro.basis_vector(3, 5)
    assert b == [row[3] if len(row) > 3 else Fraction(0) for row in inv]

    rem = cesaro.remainders(x)
    assert rem[-1] == 0.0 and all(a >= b for a, b in zip(rem, rem[1:]))

    beta = ident.dual_membership([1], "beta", n=8)
    assert beta["holds"] is True, beta

    geo = ss.Operator({"geometric": {"rowRatio": "1/2", "colRatio": "1/2"}})
    norms = geo.norms(ident, 2.0, n=64)
    assert abs(norms["operatorNorm"] - (4 / 3) ** 0.5) < 1e-12, norms
    cls = geo.classify(ident, 2.0, "c0", n=128)
    assert cls["verdict"] == "compact", cls
    chi = ss.Operator("identity").chi(ident, 2.0, "c0", n=64)
    assert abs(chi["lower"] - 1.0) < 1e-9, chi

    report = cesaro.selftest(n=6, trials=3)
    assert report["passed"], report

    try:
        ss.Params({"r": 1, "s": 0, "t": 1})
    except ValueError:
        pass
    else:
        raise AssertionError("s_0 = 0 accepted")

    print("seqspace_py", ss.__version__, "smoke test passed")


if __name__ == "__main__":
    main()

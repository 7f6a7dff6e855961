"""Smoke test for the harmonic_gasket extension. Run after `maturin develop`."""

from fractions import Fraction
import math

import harmonic_gasket as hg


def main():
    assert hg.u_exact("1/2") == ("2/5", "2/5", "1/5")
    assert hg.u_exact(0) == ("1", "0", "0")

    (x, y, z), bound = hg.u_approx(Fraction(1, 3), 40)
    assert abs(x + y + z - 1) < 1e-12 and bound <= 2 * 0.6**40

    r = hg.alpha(Fraction(1, 3))
    assert (r.period, r.n, r.scaled_trace) == ("01", 2, 7)
    assert abs(r.alpha - 1.119) < 1e-3 and r.derivative_class == "Zero"
    assert r.alpha_lo <= r.alpha <= r.alpha_hi

    dyadic = hg.alpha("3/8")
    assert abs(dyadic.alpha - math.log(0.6) / math.log(0.5)) < 1e-12

    assert hg.classify(0, "chi") == "Exceptional"
    assert hg.classify(1, "xi") == "Exceptional"
    assert hg.classify("1/2", "phi") == "Infinite"
    assert hg.classify_u("1/127") == "Infinite"
    assert hg.kernel_test("chi", 0) == "InKernel"

    rows = hg.table(7)
    assert len(rows) == 22 and rows[0].period == "01" and rows[-1].scaled_trace == 4
    assert hg.check_table() == []

    assert hg.expand("1/6") == "0.0(01)"
    assert hg.expand("1/2", "lower") == "0.0(1)"
    assert len(hg.necklaces(7, True)) == 9
    assert hg.plane_trace("01") == "7/25"

    entries, pow5 = hg.word_product("0")
    assert pow5 == 1 and [sum(col) for col in zip(*entries)] == [5, 5, 5]

    est = hg.alpha_estimate("01" * 1024, [2048])
    assert abs(est[0][1] - r.alpha) < 0.01

    grid = dict(hg.harmonic_grid(0, 1, "1/2", 1))
    assert grid[(1, 0)] == "1/2"

    mean, median, frac, low = hg.lyapunov(64, 4, 7)
    assert low and 0 <= frac <= 1 and mean > 0

    for bad in ("3/2", "x"):
        try:
            hg.alpha(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(bad)
    try:
        hg.table(21)
    except OverflowError:
        pass
    else:
        raise AssertionError("cap")

    print("smoke test passed:", r)


if __name__ == "__main__":
    main()

import cmath
import math

import pytest

from mstab.exact import ONE, ZERO, Exact, format_complex, phase


@pytest.mark.parametrize("k", range(8))
def test_units_match_exponential(k):
    assert abs(complex(Exact(k)) - cmath.exp(1j * math.pi * k / 4)) < 1e-15


def test_axis_values_are_exact():
    assert complex(Exact(2)) == 1j and complex(Exact(4)) == -1 and complex(Exact(6)) == -1j


def test_arithmetic():
    a = Exact(3, 1)
    assert a * Exact(5, 1) == Exact(0, 2)
    assert a * ZERO == ZERO and not ZERO and a
    assert a.conjugate() == Exact(5, 1)
    assert abs(a) == pytest.approx(math.sqrt(0.5))
    assert phase(9) == Exact(1) and ONE == Exact(0, 0)
    assert a * 2 == pytest.approx(2 * complex(a))


def test_negative_magnitude_rejected():
    with pytest.raises(ValueError):
        Exact(0, -1)


@pytest.mark.parametrize("value, text", [
    (ONE, "1"), (ZERO, "0"), (Exact(6, 1), "2^{-1/2} * e^{i*6*pi/4}"),
    (Exact(0, 2), "2^{-1}"), (Exact(2, 3), "2^{-3/2} * e^{i*2*pi/4}"),
])
def test_str(value, text):
    assert str(value) == text


@pytest.mark.parametrize("value, text", [
    (Exact(6, 1), "0-0.707106781187i"), (ONE, "1+0i"), (ZERO, "0+0i"), (Exact(4), "-1+0i"),
])
def test_format_complex(value, text):
    assert format_complex(value) == text

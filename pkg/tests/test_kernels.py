from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subsums.kernels import (as_sequence, maxplus_conv, mcsp_naive, minplus_conv,
                             parse_sequence)

from .oracles import all_window_sums

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_mcsp_example_maxima():
    assert mcsp_naive([3, 0, 5, 0, 2, 4]).maxima == (5, 6, 8, 11, 11, 14)


def test_mcsp_example_positions():
    # a_3 = 5 is the unique largest element, so p_1 = 3; the rest follow by window scan
    assert mcsp_naive([3, 0, 5, 0, 2, 4]).positions == (3, 5, 1, 3, 2, 1)


def test_mcsp_constant_sequence_takes_smallest_index():
    prof = mcsp_naive([1, 1, 1])
    assert prof.maxima == (1, 2, 3)
    assert prof.positions == (1, 1, 1)


def test_mcsp_rejects_empty():
    with pytest.raises(ValueError):
        mcsp_naive([])


@pytest.mark.parametrize("x, y, z", [
    ((0, 0), (0, 0), (0, 0, 0)),
    ((1, 2), (3, 4), (4, 5, 6)),
    ((5,), (7,), (12,)),
])
def test_minplus_examples(x, y, z):
    assert minplus_conv(x, y).z == z


def test_maxplus_examples():
    # z_1 = max(1 + 4, 2 + 3) = 5
    assert maxplus_conv((1, 2), (3, 4)).z == (4, 5, 6)
    assert maxplus_conv((0,), (0,)).z == (0,)
    assert maxplus_conv((1, 5), (3, 4)).z == (4, 8, 9)
    neg = minplus_conv((-1, -2), (-3, -4)).z
    assert tuple(-v for v in neg) == maxplus_conv((1, 2), (3, 4)).z


def test_conv_length_mismatch():
    with pytest.raises(ValueError):
        minplus_conv((1, 2), (3,))
    with pytest.raises(ValueError):
        maxplus_conv((1, 2), (3,))


@given(st.lists(rationals, min_size=1, max_size=24))
def test_profile_dominates_every_window(a):
    prof = mcsp_naive(a)
    n = len(a)
    for length in range(1, n + 1):
        sums = all_window_sums(as_sequence(a), length)
        p = prof.positions[length - 1]
        assert 1 <= p <= n - length + 1
        assert prof.maxima[length - 1] == sums[p - 1] == max(sums)
        assert p - 1 == sums.index(max(sums))


@given(st.integers(0, 12).flatmap(
    lambda n: st.tuples(st.lists(rationals, min_size=n + 1, max_size=n + 1),
                        st.lists(rationals, min_size=n + 1, max_size=n + 1))))
def test_minplus_symmetric(xy):
    x, y = xy
    assert minplus_conv(x, y) == minplus_conv(y, x)


@given(st.integers(0, 12).flatmap(
    lambda n: st.tuples(st.lists(rationals, min_size=n + 1, max_size=n + 1),
                        st.lists(rationals, min_size=n + 1, max_size=n + 1))),
       rationals)
def test_minplus_shift(xy, c):
    x, y = xy
    base = minplus_conv(x, y).z
    shifted = minplus_conv([v + c for v in x], y).z
    assert shifted == tuple(v + c for v in base)


@given(st.integers(0, 10).flatmap(
    lambda n: st.tuples(st.lists(rationals, min_size=n + 1, max_size=n + 1),
                        st.lists(rationals, min_size=n + 1, max_size=n + 1))))
def test_minplus_matches_pair_enumeration(xy):
    x, y = xy
    n = len(x) - 1
    expected = [None] * (2 * n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            v = Fraction(x[i]) + Fraction(y[j])
            if expected[i + j] is None or v < expected[i + j]:
                expected[i + j] = v
    assert minplus_conv(x, y).z == tuple(expected)


def test_parse_sequence_formats():
    text = "# header\n1/3\n\n-2\n0.25  # a comment\n6/4\n"
    assert parse_sequence(text) == (Fraction(1, 3), -2, Fraction(1, 4), Fraction(3, 2))


def test_parse_sequence_errors():
    with pytest.raises(ValueError, match="line 2"):
        parse_sequence("1\nabc\n")
    with pytest.raises(ValueError):
        parse_sequence("# nothing\n")


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_sequence([0.1])


def test_exact_sums_reproduce():
    a = parse_sequence("1/3\n1/6\n-1/7\n")
    prof = mcsp_naive(a)
    assert prof.maxima[1] == Fraction(1, 3) + Fraction(1, 6)
    assert prof.maxima[2].denominator == 14

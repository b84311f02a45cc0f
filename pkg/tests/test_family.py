from fractions import Fraction

import pytest

from subsums.configurations import Configuration, output_configurations
from subsums.family import gen_instance, sign_checks, subsets, verify_family


def test_empty_subset():
    inst = gen_instance(5)
    assert inst.a == tuple(map(Fraction, (0, 2, 20, 3, 3)))
    assert inst.p == Configuration((3, 3, 3, 2, 1))


def test_singleton_subset():
    inst = gen_instance(5, {4})
    assert inst.a == tuple(map(Fraction, (0, 2, 20, 1, 3)))
    assert inst.p == Configuration((3, 2, 3, 2, 1))


def test_tail_positions():
    for S in subsets(7):
        p = gen_instance(7, S).p.p
        assert p[-1] == 1 and p[-2] == 2


def test_argument_checks():
    with pytest.raises(ValueError):
        gen_instance(4)
    with pytest.raises(ValueError):
        gen_instance(6, {3})
    with pytest.raises(ValueError):
        gen_instance(6, {7})
    with pytest.raises(ValueError):
        verify_family(21)


def test_distinctness_from_any_differing_member():
    a = gen_instance(8, {4, 6}).p.p
    b = gen_instance(8, {4}).p.p
    assert a[6 - 3] == 2 and b[6 - 3] == 3


@pytest.mark.parametrize("n", range(5, 10))
def test_sign_checks_and_output(n):
    for S in subsets(n):
        inst = gen_instance(n, S)
        assert sign_checks(inst)
        assert output_configurations(inst.a) == {inst.p}


def test_sign_check_catches_wrong_membership():
    inst = gen_instance(6, {5})
    wrong = type(inst)(inst.n, frozenset({4}), inst.a, inst.p)
    assert not sign_checks(wrong)


@pytest.mark.parametrize("n,count", [(5, 4), (8, 32)])
def test_verify_family(n, count):
    rep = verify_family(n)
    assert rep.ok and rep.instances == rep.distinct == count
    assert rep.to_dict(timing=False)["expected"] == count

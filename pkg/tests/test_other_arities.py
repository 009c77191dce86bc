"""The engine is arity-generic; the bundled families are all ternary, so
exercise the binary and quaternary paths explicitly."""

import pytest

from ngamma.core import (
    FiniteAddMonoid, NaryGammaSemiring, binary_specialization, f2_semiring,
    neutral_words, trivial_gamma, validate_semiring, zmod_semiring,
)
from ngamma.homology import balance_check, bar_complex, ext_via_bar, homology
from ngamma.ideals import spectrum
from ngamma.modules import (
    hom_gamma, regular_bimodule, tensor_positional, validate_module,
)


@pytest.fixture(scope="module")
def f2_binary():
    return binary_specialization(f2_semiring())


@pytest.fixture(scope="module")
def f2_quaternary():
    t = FiniteAddMonoid(2, (0, 1, 1, 0))
    mu = tuple((w * x * y * z) % 2
               for w in range(2) for x in range(2)
               for y in range(2) for z in range(2))
    return NaryGammaSemiring(4, t, trivial_gamma(), mu, name="f2_quaternary")


def test_binary_pipeline(f2_binary):
    s = f2_binary
    assert validate_semiring(s).ok
    assert neutral_words(s) == [(1, (0,))]
    assert [p.sorted_members() for p in spectrum(s).primes] == [[0]]
    reg = regular_bimodule(s)
    assert validate_module(reg).ok
    bar = bar_complex(s, reg, 1, 0, depth=3)
    assert [g.invariant_factors() for g in bar.chain.groups] == [(2,)] * 4
    assert bar.diffs[1].mat == [[0]] and bar.diffs[2].mat == [[1]]
    assert homology(bar.chain)[0].invariant_factors() == (2,)
    assert ext_via_bar(s, reg, reg, 1, 0, 2).factors() == [(2,), (), ()]
    assert balance_check(s, reg, reg, 2, 1, 0).balanced


def test_binary_z4_pipeline():
    s = binary_specialization(zmod_semiring(4))
    reg = regular_bimodule(s)
    assert ext_via_bar(s, reg, reg, 1, 0, 2).factors() == [(4,), (), ()]
    assert balance_check(s, reg, reg, 2, 1, 0).balanced


def test_quaternary_pipeline(f2_quaternary):
    s = f2_quaternary
    assert validate_semiring(s).ok
    assert neutral_words(s) == [(1, (0, 0, 0))]
    assert [p.sorted_members() for p in spectrum(s).primes] == [[0]]
    reg = regular_bimodule(s)
    assert validate_module(reg).ok
    bar = bar_complex(s, reg, 3, 0, depth=3)
    assert [g.invariant_factors() for g in bar.chain.groups] == [(2,)] * 4
    assert ext_via_bar(s, reg, reg, 3, 0, 2).factors() == [(2,), (), ()]
    assert balance_check(s, reg, reg, 2, 3, 0).balanced
    assert hom_gamma(reg, reg, 3, 0).module.M.size == 2
    assert tensor_positional(reg, reg, 3, 0).module.M.size == 2

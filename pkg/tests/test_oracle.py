import random

import pytest

from ngamma.core import (
    BoundExceeded, NaryGammaSemiring, bundled_semirings, validate_semiring,
)
from ngamma.ideals import GammaIdeal, all_ideals, spectrum
from ngamma.modules import (
    hom_gamma, ideal_submodule, quotient_module, regular_bimodule,
    tensor_positional,
)
from ngamma.completion import equivariant_hom_group, linearize_module
from ngamma.homology import bar_complex, homology
from ngamma import oracle


def test_naive_axioms_agree_on_bundled():
    for name, s in bundled_semirings().items():
        assert validate_semiring(s).ok
        assert oracle.naive_axiom_failures(s) == [], name


def test_naive_axioms_catch_breakage():
    s = bundled_semirings()["f2_ternary"]
    bad = list(s.mu_table)
    bad[0] = 1  # mu(0,0,0) = 1
    broken = NaryGammaSemiring(3, s.T, s.gamma, tuple(bad))
    assert oracle.naive_axiom_failures(broken)
    assert not validate_semiring(broken).ok


def test_subset_scans_agree():
    for name, s in bundled_semirings().items():
        assert sorted(i.bitmask for i in all_ideals(s)) == \
            oracle.subset_scan_ideals(s), name
        assert sorted(p.bitmask for p in spectrum(s).primes) == \
            oracle.subset_scan_primes(s), name


def test_hom_enumeration_agrees():
    z4 = bundled_semirings()["z4_ternary"]
    reg = regular_bimodule(z4)
    sub = ideal_submodule(z4, GammaIdeal(z4, frozenset({0, 2})))
    for m, n in [(reg, reg), (reg, sub), (sub, reg), (sub, sub)]:
        assert sorted(hom_gamma(m, n).maps) == sorted(oracle.all_maps_hom(m, n))


def test_hom_group_bruteforce_agrees():
    z4 = bundled_semirings()["z4_ternary"]
    reg = linearize_module(regular_bimodule(z4))
    sub = linearize_module(ideal_submodule(z4, GammaIdeal(z4, frozenset({0, 2}))))
    for x, y in [(reg, reg), (sub, reg), (reg, sub)]:
        assert equivariant_hom_group(x, y).group.invariant_factors() == \
            oracle.hom_group_bruteforce(x, y)


def test_invariants_from_orders():
    # Z/6 as pairs modulo (2, 3).
    elems = [(a, b) for a in range(2) for b in range(3)]
    add = lambda u, v: ((u[0] + v[0]) % 2, (u[1] + v[1]) % 3)
    assert oracle.invariants_from_orders(elems, add, (0, 0)) == (6,)
    # Z/2 x Z/4 vs Z/8 are distinguished.
    elems24 = [(a, b) for a in range(2) for b in range(4)]
    add24 = lambda u, v: ((u[0] + v[0]) % 2, (u[1] + v[1]) % 4)
    assert oracle.invariants_from_orders(elems24, add24, (0, 0)) == (2, 4)
    elems8 = list(range(8))
    assert oracle.invariants_from_orders(elems8, lambda a, b: (a + b) % 8, 0) == (8,)


def test_tensor_class_count_agrees():
    for name, s in bundled_semirings().items():
        reg = regular_bimodule(s)
        if s.T.size == 2:
            assert oracle.tensor_class_count(reg, reg, 2, 0) == \
                tensor_positional(reg, reg, 2, 0).module.M.size
    z4 = bundled_semirings()["z4_ternary"]
    reg = regular_bimodule(z4)
    sub = ideal_submodule(z4, GammaIdeal(z4, frozenset({0, 2})))
    quo = quotient_module(z4, GammaIdeal(z4, frozenset({0, 2})))
    for m, n in [(reg, sub), (sub, reg), (sub, sub), (quo, sub), (quo, quo)]:
        assert oracle.tensor_class_count(m, n, 2, 0) == \
            tensor_positional(m, n, 2, 0).module.M.size


def test_tensor_oracle_bound_is_enforced():
    z4 = bundled_semirings()["z4_ternary"]
    reg = regular_bimodule(z4)
    with pytest.raises(BoundExceeded):
        oracle.tensor_class_count(reg, reg, 2, 0)


def test_homology_bruteforce_agrees():
    for name, s in bundled_semirings().items():
        bar = bar_complex(s, regular_bimodule(s), 2, 0, depth=3)
        hs = homology(bar.chain)
        for r in range(4):
            assert hs[r].invariant_factors() == \
                oracle.homology_orders_bruteforce(bar.chain, r), (name, r)


def test_mutations_are_single_entry():
    rng = random.Random(5)
    s = bundled_semirings()["z4_ternary"]
    for _ in range(50):
        mut = oracle.mutate_semiring(s, rng)
        diffs = sum(a != b for a, b in zip(mut.mu_table, s.mu_table))
        diffs += sum(a != b for a, b in zip(mut.T.add_table, s.T.add_table))
        diffs += sum(a != b for a, b in zip(mut.gamma.add_table, s.gamma.add_table))
        assert diffs == 1

"""Randomized cross-checks of the exact kernels against brute force."""

import random
from itertools import product

from hypothesis import given, settings, strategies as st

from ngamma import oracle
from ngamma.abgroups import AbGroup, GroupMap
from ngamma.core import FiniteAddMonoid
from ngamma.homology import ChainComplexAb, homology
from ngamma.modules import _Coordinate, _index_period, _orbit


@given(st.integers(2, 4), st.integers(1, 3), st.integers(1, 3), st.integers(1, 2),
       st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_homology_vs_bruteforce_on_random_complexes(m, a, b, c, rnd):
    g0 = AbGroup((m,) * a)
    g1 = AbGroup((m,) * b)
    g2 = AbGroup((m,) * c)
    d1 = GroupMap(g1, g0, [[rnd.randrange(m) for _ in range(b)] for _ in range(a)],
                  check=False)
    # Columns of d2 come from the kernel of d1 mod m, so d1 . d2 = 0.
    kernel_vecs = [v for v in product(range(m), repeat=b)
                   if d1(v) == g0.zero()]
    cols = [list(rnd.choice(kernel_vecs)) for _ in range(c)]
    d2 = GroupMap(g2, g1, [[cols[j][i] for j in range(c)] for i in range(b)],
                  check=False)
    chain = ChainComplexAb([g0, g1, g2], {1: d1, 2: d2})
    hs = homology(chain)
    for r in range(3):
        assert hs[r].invariant_factors() == \
            oracle.homology_orders_bruteforce(chain, r)


def _monoid_pool(size):
    pool = [FiniteAddMonoid(size, tuple((x + y) % size
                                        for x in range(size) for y in range(size))),
            FiniteAddMonoid(size, tuple(min(x + y, size - 1)
                                        for x in range(size) for y in range(size)))]
    if size == 4:
        elems = list(product(range(2), repeat=2))
        idx = {e: i for i, e in enumerate(elems)}
        pool.append(FiniteAddMonoid(4, tuple(
            idx[((p[0] + q[0]) % 2, (p[1] + q[1]) % 2)]
            for p in elems for q in elems)))
        pool.append(FiniteAddMonoid(4, tuple(
            idx[((p[0] + q[0]) % 2, min(p[1] + q[1], 1))]
            for p in elems for q in elems)))
    return pool


def test_coordinate_arithmetic_matches_counter_semantics():
    rng = random.Random(3)
    for _ in range(120):
        ma = rng.choice(_monoid_pool(rng.randrange(2, 5)))
        mb = rng.choice(_monoid_pool(rng.randrange(2, 5)))
        a = rng.randrange(ma.size)
        b = rng.randrange(mb.size)
        window = 2 * (ma.size * mb.size) + 2
        oa, ob = _orbit(ma, a, window), _orbit(mb, b, window)
        coord = _Coordinate(oa, ob)
        idx0, per = _index_period(list(zip(oa, ob)))
        wsize = idx0 + per

        def wrap(r):
            return r if r < wsize else idx0 + (r - idx0) % per

        for r1 in range(2 * wsize):
            for r2 in range(wsize):
                assert coord.class_of[wrap(r1 + r2)] == \
                    coord.add(coord.class_of[wrap(r1)], coord.class_of[wrap(r2)])
        for r1 in range(wsize):
            for r2 in range(wsize):
                if oa[r1] == oa[r2] or ob[r1] == ob[r2]:
                    assert coord.class_of[r1] == coord.class_of[r2]


def test_group_order_statistics_on_random_orders():
    rng = random.Random(17)
    for _ in range(40):
        orders = tuple(rng.choice((2, 3, 4, 6, 8))
                       for _ in range(rng.randrange(1, 3)))
        g = AbGroup(orders)
        elems = list(g.elements())
        got = oracle.invariants_from_orders(elems, g.add, g.zero())
        assert got == g.invariant_factors()

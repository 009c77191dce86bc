"""Ideals, quotients, and the prime spectrum of a finite n-ary semiring.

An ideal is an additive submonoid closed under inserting any of its elements
into any multiplication slot.  Quotients use the standard semiring congruence
(x ~ y when x+i = y+j for ideal elements i, j), since cosets of a submonoid
need not partition the carrier.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abgroups import SoundnessError
from .core import (
    AxiomCheck, BoundExceeded, FiniteAddMonoid, GammaSemiringMorphism,
    NaryGammaSemiring, StructuralError,
)

DEFAULT_SIZE_BOUND = 16


@dataclass(frozen=True)
class GammaIdeal:
    parent: NaryGammaSemiring
    members: frozenset[int]

    @property
    def bitmask(self) -> int:
        return sum(1 << e for e in self.members)

    def is_proper(self) -> bool:
        return len(self.members) < self.parent.T.size

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def __str__(self):
        return "{" + ",".join(map(str, self.sorted_members())) + "}"


def check_ideal(s: NaryGammaSemiring, members) -> AxiomCheck:
    """Both ideal conditions against an explicit subset."""
    mem = set(members)
    if s.T.zero not in mem:
        return AxiomCheck("ideal", False, ("missing zero",))
    for a in mem:
        for b in mem:
            if s.T.add(a, b) not in mem:
                return AxiomCheck("ideal", False, ("add", a, b))
    n = s.n
    for y in sorted(mem):
        for j in range(n):
            for rest in s.t_tuples(n - 1):
                for gs in s.g_tuples(n - 1):
                    xs = rest[:j] + (y,) + rest[j:]
                    if s.mu(xs, gs) not in mem:
                        return AxiomCheck("ideal", False, ("insert", j + 1, y, rest, gs))
    return AxiomCheck("ideal", True)


def generate_ideal(s: NaryGammaSemiring, seed) -> GammaIdeal:
    """Smallest ideal containing the seed; a worklist closure."""
    members = {s.T.zero}
    frontier = [x for x in sorted(set(seed))]
    n = s.n
    while frontier:
        y = frontier.pop()
        if y in members:
            continue
        members.add(y)
        new = set()
        # Every pair lands here eventually: each element on entry is summed
        # against everything already present, itself included.
        for a in members:
            new.add(s.T.add(a, y))
        for j in range(n):
            for rest in s.t_tuples(n - 1):
                for gs in s.g_tuples(n - 1):
                    new.add(s.mu(rest[:j] + (y,) + rest[j:], gs))
        frontier.extend(sorted(v for v in new if v not in members))
    return GammaIdeal(s, frozenset(members))


def all_ideals(s: NaryGammaSemiring, bound: int = DEFAULT_SIZE_BOUND) -> list[GammaIdeal]:
    """Every ideal, in ascending bitmask order; refuses oversized carriers."""
    size = s.T.size
    if size > bound:
        raise BoundExceeded(f"carrier size {size} exceeds the bound {bound}")
    zero = s.T.zero
    out = []
    for mask in range(1 << size):
        if not mask >> zero & 1:
            continue
        members = [e for e in range(size) if mask >> e & 1]
        memset = set(members)
        # Additive closure first: it prunes most subsets cheaply.
        ok = True
        for a in members:
            for b in members:
                if s.T.add(a, b) not in memset:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if check_ideal(s, memset).ok:
            out.append(GammaIdeal(s, frozenset(memset)))
    return out


def bourne_classes(s: NaryGammaSemiring, ideal: GammaIdeal) -> list[int]:
    """class index per element for x ~ y iff x+i = y+j with i, j in the ideal."""
    size = s.T.size
    cosets = []
    for x in range(size):
        cosets.append({s.T.add(x, i) for i in ideal.members})
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(size):
        for y in range(x + 1, size):
            if cosets[x] & cosets[y]:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    roots = sorted({find(x) for x in range(size)})
    root_index = {r: i for i, r in enumerate(roots)}
    return [root_index[find(x)] for x in range(size)]


def quotient(s: NaryGammaSemiring, ideal: GammaIdeal):
    """(quotient semiring, projection morphism)."""
    if ideal.parent is not s and ideal.parent != s:
        raise StructuralError("ideal belongs to a different semiring")
    cls = bourne_classes(s, ideal)
    nclasses = max(cls) + 1
    reps = [cls.index(c) for c in range(nclasses)]
    # Soundness: the induced operations must be constant on classes.
    for x in range(s.T.size):
        for y in range(s.T.size):
            if cls[x] == cls[y]:
                for z in range(s.T.size):
                    if cls[s.T.add(x, z)] != cls[s.T.add(y, z)]:
                        raise SoundnessError(f"addition not constant on classes: {(x, y, z)}")
    n = s.n
    for j in range(n):
        for x in range(s.T.size):
            for y in range(s.T.size):
                if cls[x] != cls[y]:
                    continue
                for rest in s.t_tuples(n - 1):
                    for gs in s.g_tuples(n - 1):
                        a = s.mu(rest[:j] + (x,) + rest[j:], gs)
                        b = s.mu(rest[:j] + (y,) + rest[j:], gs)
                        if cls[a] != cls[b]:
                            raise SoundnessError(
                                f"multiplication not constant on classes: {(j + 1, x, y, rest, gs)}")
    add_table = tuple(cls[s.T.add(reps[a], reps[b])]
                      for a in range(nclasses) for b in range(nclasses))
    t = FiniteAddMonoid(nclasses, add_table, cls[s.T.zero])
    mu = []
    for xs in product(range(nclasses), repeat=n):
        for gs in s.g_tuples(n - 1):
            mu.append(cls[s.mu(tuple(reps[x] for x in xs), gs)])
    q = NaryGammaSemiring(n, t, s.gamma, tuple(mu),
                          name=f"{s.name}/{GammaIdeal(s, ideal.members)}")
    proj = GammaSemiringMorphism(s, q, tuple(cls))
    return q, proj


def is_prime(s: NaryGammaSemiring, p: GammaIdeal) -> AxiomCheck:
    """Exhaustive primality test; failure carries the violating tuple."""
    if not p.is_proper():
        raise StructuralError("primality requires a proper ideal")
    for xs in s.t_tuples(s.n):
        for gs in s.g_tuples(s.n - 1):
            if s.mu(xs, gs) in p.members and not any(x in p.members for x in xs):
                return AxiomCheck("prime", False, (xs, gs))
    return AxiomCheck("prime", True)


@dataclass(frozen=True)
class SpectrumData:
    semiring: NaryGammaSemiring
    ideals: tuple[GammaIdeal, ...]
    primes: tuple[GammaIdeal, ...]
    closed_sets: tuple[tuple[int, tuple[int, ...]], ...]
    """Pairs (ideal bitmask, indices into primes of V(I))."""

    def closed_set_of(self, ideal: GammaIdeal) -> tuple[int, ...]:
        for mask, v in self.closed_sets:
            if mask == ideal.bitmask:
                return v
        raise KeyError(ideal.bitmask)


def spectrum(s: NaryGammaSemiring, bound: int = DEFAULT_SIZE_BOUND) -> SpectrumData:
    ideals = all_ideals(s, bound)
    primes = tuple(i for i in ideals if i.is_proper() and is_prime(s, i).ok)
    closed = []
    for ideal in ideals:
        v = tuple(k for k, p in enumerate(primes)
                  if ideal.members <= p.members)
        closed.append((ideal.bitmask, v))
    return SpectrumData(s, tuple(ideals), primes, tuple(closed))


def topology_report(data: SpectrumData) -> list[str]:
    """Observed topology facts; computed extensionally, never assumed."""
    facts = []
    by_mask = dict(data.closed_sets)
    zero_mask = 1 << data.semiring.T.zero
    full = tuple(range(len(data.primes)))
    facts.append(f"V(zero ideal) = all primes: {by_mask.get(zero_mask) == full}")
    top_mask = (1 << data.semiring.T.size) - 1
    if top_mask in by_mask:
        facts.append(f"V(T) empty: {by_mask[top_mask] == ()}")
    ok_union = True
    ok_inter = True
    masks = [m for m, _ in data.closed_sets]
    for m1 in masks:
        for m2 in masks:
            inter = m1 & m2
            if inter in by_mask:
                u = set(by_mask[m1]) | set(by_mask[m2])
                if not u <= set(by_mask[inter]):
                    ok_union = False
    facts.append(f"V(I and J) contains V(I) union V(J): {ok_union}")
    for m1 in masks:
        for m2 in masks:
            join_members = {e for e in range(data.semiring.T.size) if (m1 | m2) >> e & 1}
            join = generate_ideal(data.semiring, join_members)
            if join.bitmask in by_mask:
                want = set(by_mask[m1]) & set(by_mask[m2])
                if set(by_mask[join.bitmask]) != want:
                    ok_inter = False
    facts.append(f"V(I+J) = V(I) intersect V(J): {ok_inter}")
    return facts

"""Finite n-ary parameterized semirings as explicit tables.

The central object couples a finite additive commutative monoid T, a finite
commutative parameter semigroup G, and a total multiplication table

    mu : T^n x G^(n-1) -> T

All tables are dense and flattened row-major with the leftmost argument
slowest and the last parameter fastest; element identity is the integer index
into the table.  Structures are immutable after construction, so they can be
shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class StructuralError(ValueError):
    """Malformed table data (wrong dimensions, out-of-range indices).

    Distinct from an axiom violation: a structurally broken input cannot even
    be checked against the axioms.
    """


class BoundExceeded(RuntimeError):
    """An enumeration was refused because an instance exceeds its size bound."""


def flatten_index(indices, sizes) -> int:
    idx = 0
    for i, s in zip(indices, sizes):
        idx = idx * s + i
    return idx


def unflatten_index(idx: int, sizes) -> tuple[int, ...]:
    out = []
    for s in reversed(sizes):
        out.append(idx % s)
        idx //= s
    return tuple(reversed(out))


@dataclass(frozen=True)
class FiniteAddMonoid:
    """Commutative additive monoid given by a dense addition table."""

    size: int
    add_table: tuple[int, ...]
    zero: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise StructuralError("monoid must be nonempty")
        if len(self.add_table) != self.size * self.size:
            raise StructuralError("addition table has wrong dimensions")
        if any(not (0 <= v < self.size) for v in self.add_table):
            raise StructuralError("addition table entry out of range")
        if not (0 <= self.zero < self.size):
            raise StructuralError("zero index out of range")

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.size + b]

    def sum(self, items) -> int:
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def elements(self) -> range:
        return range(self.size)

    def validate(self) -> list[tuple[str, tuple]]:
        """Violations of commutativity, associativity, or the zero law."""
        bad = []
        for a in range(self.size):
            for b in range(self.size):
                if self.add(a, b) != self.add(b, a):
                    bad.append(("add-commutativity", (a, b)))
        for a in range(self.size):
            for b in range(self.size):
                for c in range(self.size):
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                        bad.append(("add-associativity", (a, b, c)))
        for a in range(self.size):
            if self.add(self.zero, a) != a:
                bad.append(("add-zero", (a,)))
        return bad

    def additive_closure(self, items) -> set[int]:
        closed = {self.zero, *items}
        frontier = list(closed)
        while frontier:
            a = frontier.pop()
            for b in list(closed):
                for c in (self.add(a, b), self.add(b, a)):
                    if c not in closed:
                        closed.add(c)
                        frontier.append(c)
        return closed

    def additive_generators(self) -> list[int]:
        """A small generating set, greedily chosen in index order."""
        gens: list[int] = []
        closure = {self.zero}
        for x in range(self.size):
            if x in closure:
                continue
            gens.append(x)
            closure = self.additive_closure(gens)
        return gens


@dataclass(frozen=True)
class GammaSemigroup:
    """Commutative parameter semigroup; a zero is optional and flagged."""

    size: int
    add_table: tuple[int, ...]
    has_zero: bool = False
    zero: int | None = None

    def __post_init__(self):
        if self.size < 1:
            raise StructuralError("parameter semigroup must be nonempty")
        if len(self.add_table) != self.size * self.size:
            raise StructuralError("parameter addition table has wrong dimensions")
        if any(not (0 <= v < self.size) for v in self.add_table):
            raise StructuralError("parameter addition entry out of range")
        if self.has_zero and (self.zero is None or not 0 <= self.zero < self.size):
            raise StructuralError("flagged zero is missing or out of range")

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.size + b]

    def elements(self) -> range:
        return range(self.size)

    def validate(self) -> list[tuple[str, tuple]]:
        bad = []
        for a in range(self.size):
            for b in range(self.size):
                if self.add(a, b) != self.add(b, a):
                    bad.append(("gamma-commutativity", (a, b)))
                for c in range(self.size):
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                        bad.append(("gamma-associativity", (a, b, c)))
        if self.has_zero:
            for a in range(self.size):
                if self.add(self.zero, a) != a:
                    bad.append(("gamma-zero", (a,)))
        return bad


@dataclass(frozen=True)
class NaryGammaSemiring:
    """T, G and the full multiplication table mu : T^n x G^(n-1) -> T."""

    n: int
    T: FiniteAddMonoid
    gamma: GammaSemigroup
    mu_table: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.n < 2:
            raise StructuralError("arity must be at least 2")
        expected = self.T.size ** self.n * self.gamma.size ** (self.n - 1)
        if len(self.mu_table) != expected:
            raise StructuralError(
                f"mu table has {len(self.mu_table)} entries, expected {expected}")
        if any(not (0 <= v < self.T.size) for v in self.mu_table):
            raise StructuralError("mu table entry out of range")

    @property
    def sizes(self) -> list[int]:
        return [self.T.size] * self.n + [self.gamma.size] * (self.n - 1)

    def mu(self, xs, gs) -> int:
        if len(xs) != self.n or len(gs) != self.n - 1:
            raise StructuralError("mu argument tuple has wrong length")
        return self.mu_table[flatten_index(tuple(xs) + tuple(gs), self.sizes)]

    def t_tuples(self, length: int):
        return product(self.T.elements(), repeat=length)

    def g_tuples(self, length: int):
        return product(self.gamma.elements(), repeat=length)


def mu_eval(s: NaryGammaSemiring, xs, gs) -> int:
    """Table lookup for [x_1,...,x_n] with the given parameter tuple."""
    for x in xs:
        if not 0 <= x < s.T.size:
            raise StructuralError(f"element index {x} out of range")
    for g in gs:
        if not 0 <= g < s.gamma.size:
            raise StructuralError(f"parameter index {g} out of range")
    return s.mu(xs, gs)


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    ok: bool
    witness: tuple | None = None
    note: str = ""


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.ok]

    def __str__(self):
        lines = []
        for c in self.checks:
            state = "pass" if c.ok else f"FAIL witness={c.witness}"
            lines.append(f"{c.axiom}: {state}")
        return "\n".join(lines)


def _skip_gamma_pair(g: GammaSemigroup, a: int, b: int) -> bool:
    # A one-element (or idempotent-bearing) parameter semigroup forces g+g=g;
    # requiring the slot-additivity identity on such self-sums would force the
    # image of mu to be additively idempotent, contradicting the intended
    # embedding of plain semirings.  Those degenerate instances are exempt.
    return a == b and g.add(a, b) == a


def check_slot_additivity(s: NaryGammaSemiring) -> AxiomCheck:
    """Additivity of mu in every T slot."""
    n = s.n
    for j in range(n):
        for rest in s.t_tuples(n - 1):
            for gs in s.g_tuples(n - 1):
                for x in s.T.elements():
                    for y in s.T.elements():
                        left = rest[:j] + (s.T.add(x, y),) + rest[j:]
                        a = rest[:j] + (x,) + rest[j:]
                        b = rest[:j] + (y,) + rest[j:]
                        want = s.T.add(s.mu(a, gs), s.mu(b, gs))
                        if s.mu(left, gs) != want:
                            return AxiomCheck("T-slot additivity", False,
                                              (j + 1, x, y, rest, gs))
    return AxiomCheck("T-slot additivity", True)


def check_parameter_additivity(s: NaryGammaSemiring) -> AxiomCheck:
    """Additivity in every parameter slot, idempotent self-sums exempt."""
    n = s.n
    for k in range(n - 1):
        for grest in s.g_tuples(n - 2):
            for xs in s.t_tuples(n):
                for a in s.gamma.elements():
                    for b in s.gamma.elements():
                        if _skip_gamma_pair(s.gamma, a, b):
                            continue
                        gsum = grest[:k] + (s.gamma.add(a, b),) + grest[k:]
                        ga = grest[:k] + (a,) + grest[k:]
                        gb = grest[:k] + (b,) + grest[k:]
                        want = s.T.add(s.mu(xs, ga), s.mu(xs, gb))
                        if s.mu(xs, gsum) != want:
                            return AxiomCheck("parameter-slot additivity", False,
                                              (k + 1, a, b, xs, grest))
    return AxiomCheck("parameter-slot additivity", True)


def check_zero_absorption(s: NaryGammaSemiring) -> AxiomCheck:
    n = s.n
    z = s.T.zero
    for j in range(n):
        for rest in s.t_tuples(n - 1):
            for gs in s.g_tuples(n - 1):
                xs = rest[:j] + (z,) + rest[j:]
                if s.mu(xs, gs) != z:
                    return AxiomCheck("zero absorption", False, (j + 1, rest, gs))
    if s.gamma.has_zero:
        gz = s.gamma.zero
        for k in range(n - 1):
            for grest in s.g_tuples(n - 2):
                for xs in s.t_tuples(n):
                    gs = grest[:k] + (gz,) + grest[k:]
                    if s.mu(xs, gs) != z:
                        return AxiomCheck("zero absorption", False,
                                          ("gamma", k + 1, xs, grest))
    return AxiomCheck("zero absorption", True)


def _bracketing_values(s: NaryGammaSemiring, xs, gs):
    """Values of one inner-window substitution per admissible position."""
    n = s.n
    out = []
    for i in range(len(xs) - n + 1):
        inner = s.mu(xs[i:i + n], gs[i:i + n - 1])
        outer_xs = xs[:i] + (inner,) + xs[i + n:]
        outer_gs = gs[:i] + gs[i + n - 1:]
        if len(outer_xs) == n:
            out.append((i, s.mu(outer_xs, outer_gs)))
        else:
            out.append((i, word_product(s, outer_xs, outer_gs)))
    return out


def check_flattened_associativity(s: NaryGammaSemiring,
                                  generators_only: bool = True) -> AxiomCheck:
    """All bracketings of length-(2n-1) words agree.

    When slot additivity holds, both sides of every instance are multiadditive
    in each T slot, so checking T entries over a generating set is equivalent
    to the full check; the caller passes ``generators_only=False`` when slot
    additivity failed.
    """
    n = s.n
    gens = s.T.additive_generators() if generators_only else list(s.T.elements())
    if not gens:
        gens = [s.T.zero]
    wlen = 2 * n - 1
    for xs in product(gens, repeat=wlen):
        for gs in s.g_tuples(wlen - 1):
            vals = _bracketing_values(s, xs, gs)
            base = vals[0][1]
            for i, v in vals[1:]:
                if v != base:
                    return AxiomCheck("flattened associativity", False,
                                      (xs, gs, vals[0][0], i, base, v))
    return AxiomCheck("flattened associativity", True)


def validate_semiring(s: NaryGammaSemiring) -> AxiomReport:
    """Exhaustive axiom check; each failure carries a concrete witness."""
    checks = []
    t_issues = s.T.validate()
    checks.append(AxiomCheck("additive monoid laws", not t_issues,
                             t_issues[0] if t_issues else None))
    g_issues = s.gamma.validate()
    checks.append(AxiomCheck("parameter semigroup laws", not g_issues,
                             g_issues[0] if g_issues else None))
    a1 = check_slot_additivity(s)
    checks.append(a1)
    checks.append(check_parameter_additivity(s))
    checks.append(check_flattened_associativity(s, generators_only=a1.ok and not t_issues))
    checks.append(check_zero_absorption(s))
    return AxiomReport(tuple(checks))


def word_product(s: NaryGammaSemiring, xs, gs, check_bracketings: bool = False) -> int:
    """Product of an alternating word x_1 g_1 x_2 ... x_m, left-normalized.

    m must be n + k(n-1) for some k >= 0 and len(gs) == m - 1.  With
    ``check_bracketings`` every admissible bracketing is evaluated and any
    disagreement raises, which turns this into the associativity debug probe.
    """
    xs = tuple(xs)
    gs = tuple(gs)
    n = s.n
    if len(xs) < n or (len(xs) - n) % (n - 1) != 0:
        raise StructuralError(f"word length {len(xs)} is not n + k(n-1)")
    if len(gs) != len(xs) - 1:
        raise StructuralError("parameter word length must be one less")
    if check_bracketings:
        vals = _all_bracketing_values(s, xs, gs)
        if len(set(vals)) > 1:
            from .abgroups import SoundnessError
            raise SoundnessError(f"word {xs} has bracket-dependent values {sorted(set(vals))}")
        return vals[0]
    val = s.mu(xs[:n], gs[:n - 1])
    pos = n
    while pos < len(xs):
        head = (val,) + xs[pos:pos + n - 1]
        val = s.mu(head, gs[pos - 1:pos + n - 2])
        pos += n - 1
    return val


def _all_bracketing_values(s, xs, gs):
    n = s.n
    if len(xs) == n:
        return [s.mu(xs, gs)]
    vals = []
    for i in range(len(xs) - n + 1):
        inner = s.mu(xs[i:i + n], gs[i:i + n - 1])
        vals.extend(_all_bracketing_values(
            s, xs[:i] + (inner,) + xs[i + n:], gs[:i] + gs[i + n - 1:]))
    return vals


def neutral_words(s: NaryGammaSemiring) -> list[tuple[int, tuple[int, ...]]]:
    """Pairs (e, gs) with mu(e,..,x,..,e; gs) = x for every slot and x."""
    out = []
    for e in s.T.elements():
        for gs in s.g_tuples(s.n - 1):
            ok = True
            for j in range(s.n):
                for x in s.T.elements():
                    xs = (e,) * j + (x,) + (e,) * (s.n - 1 - j)
                    if s.mu(xs, gs) != x:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append((e, gs))
    return out


@dataclass(frozen=True)
class GammaSemiringMorphism:
    source: NaryGammaSemiring
    target: NaryGammaSemiring
    map: tuple[int, ...]

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise StructuralError("morphism endpoints have different arities")
        if self.source.gamma != self.target.gamma:
            raise StructuralError("morphism endpoints have different parameter semigroups")
        if len(self.map) != self.source.T.size:
            raise StructuralError("morphism table has wrong size")
        if any(not (0 <= v < self.target.T.size) for v in self.map):
            raise StructuralError("morphism value out of range")

    def __call__(self, x: int) -> int:
        return self.map[x]


def validate_morphism(f: GammaSemiringMorphism) -> AxiomReport:
    s, t = f.source, f.target
    checks = []
    wit = None
    for a in s.T.elements():
        for b in s.T.elements():
            if f(s.T.add(a, b)) != t.T.add(f(a), f(b)):
                wit = (a, b)
                break
        if wit:
            break
    if f(s.T.zero) != t.T.zero:
        wit = wit or ("zero",)
    checks.append(AxiomCheck("morphism additivity", wit is None, wit))
    wit = None
    for xs in s.t_tuples(s.n):
        for gs in s.g_tuples(s.n - 1):
            if f(s.mu(xs, gs)) != t.mu(tuple(f(x) for x in xs), gs):
                wit = (xs, gs)
                break
        if wit:
            break
    checks.append(AxiomCheck("morphism multiplicativity", wit is None, wit))
    return AxiomReport(tuple(checks))


def identity_morphism(s: NaryGammaSemiring) -> GammaSemiringMorphism:
    return GammaSemiringMorphism(s, s, tuple(range(s.T.size)))


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinarySemiring:
    """Plain finite semiring used as the scalar base of the matrix family."""

    size: int
    add_table: tuple[int, ...]
    mul_table: tuple[int, ...]
    zero: int = 0
    one: int = 1
    name: str = ""

    def __post_init__(self):
        if len(self.add_table) != self.size ** 2 or len(self.mul_table) != self.size ** 2:
            raise StructuralError("semiring tables have wrong dimensions")

    def add(self, a, b):
        return self.add_table[a * self.size + b]

    def mul(self, a, b):
        return self.mul_table[a * self.size + b]

    def validate(self) -> list[tuple[str, tuple]]:
        bad = FiniteAddMonoid(self.size, self.add_table, self.zero).validate()
        r = range(self.size)
        for a in r:
            for b in r:
                for c in r:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        bad.append(("mul-associativity", (a, b, c)))
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                        bad.append(("left-distributivity", (a, b, c)))
                    if self.mul(self.add(b, c), a) != self.add(self.mul(b, a), self.mul(c, a)):
                        bad.append(("right-distributivity", (a, b, c)))
        for a in r:
            if self.mul(self.zero, a) != self.zero or self.mul(a, self.zero) != self.zero:
                bad.append(("mul-zero", (a,)))
            if self.mul(self.one, a) != a or self.mul(a, self.one) != a:
                bad.append(("mul-one", (a,)))
        return bad


def trivial_gamma() -> GammaSemigroup:
    return GammaSemigroup(1, (0,), has_zero=False, zero=None)


def boolean_semiring() -> BinarySemiring:
    return BinarySemiring(2, (0, 1, 1, 1), (0, 0, 0, 1), name="boolean")


def f2_semiring() -> BinarySemiring:
    return BinarySemiring(2, (0, 1, 1, 0), (0, 0, 0, 1), name="f2")


def zmod_semiring(m: int) -> BinarySemiring:
    add = tuple((a + b) % m for a in range(m) for b in range(m))
    mul = tuple((a * b) % m for a in range(m) for b in range(m))
    return BinarySemiring(m, add, mul, name=f"z{m}")


def truncated_nat_semiring(cap: int = 2) -> BinarySemiring:
    size = cap + 1
    add = tuple(min(a + b, cap) for a in range(size) for b in range(size))
    mul = tuple(min(a * b, cap) for a in range(size) for b in range(size))
    return BinarySemiring(size, add, mul, name=f"nat-cap{cap}")


def make_matrix_family(base: BinarySemiring, m: int, arity: int,
                       gamma: GammaSemigroup | None = None,
                       gamma_scalars: tuple[int, ...] | None = None,
                       name: str = "") -> NaryGammaSemiring:
    """Square matrices over a base semiring with scalar-interleaved products.

    Each parameter acts as a scalar from the base semiring; by default the
    parameter semigroup is the one-element one acting by the unit scalar.
    The entry for (A_1..A_n; g_1..g_{n-1}) is g_1(A_1 A_2) then g_2(.. A_3)
    and so on, folding left.
    """
    if gamma is None:
        gamma = trivial_gamma()
        gamma_scalars = (base.one,)
    if gamma_scalars is None or len(gamma_scalars) != gamma.size:
        raise StructuralError("one scalar per parameter element is required")
    for a in range(gamma.size):
        for b in range(gamma.size):
            lhs = gamma_scalars[gamma.add(a, b)]
            rhs = base.add(gamma_scalars[a], gamma_scalars[b])
            if not _skip_gamma_pair(gamma, a, b) and lhs != rhs:
                raise StructuralError(
                    f"scalar action is not additive on parameters ({a},{b})")
    mm = m * m
    size = base.size ** mm
    sizes = [base.size] * mm

    def entries(idx):
        return unflatten_index(idx, sizes)

    def pack(es):
        return flatten_index(es, sizes)

    def mat_add(x, y):
        ex, ey = entries(x), entries(y)
        return pack([base.add(a, b) for a, b in zip(ex, ey)])

    def mat_mul(x, y):
        ex, ey = entries(x), entries(y)
        out = []
        for i in range(m):
            for j in range(m):
                acc = base.zero
                for k in range(m):
                    acc = base.add(acc, base.mul(ex[i * m + k], ey[k * m + j]))
                out.append(acc)
        return pack(out)

    def scalar(c, x):
        return pack([base.mul(c, e) for e in entries(x)])

    add_table = tuple(mat_add(a, b) for a in range(size) for b in range(size))
    t = FiniteAddMonoid(size, add_table, pack([base.zero] * mm))
    mu = []
    for xs in product(range(size), repeat=arity):
        for gs in product(range(gamma.size), repeat=arity - 1):
            acc = scalar(gamma_scalars[gs[0]], mat_mul(xs[0], xs[1]))
            for i in range(2, arity):
                acc = scalar(gamma_scalars[gs[i - 1]], mat_mul(acc, xs[i]))
            mu.append(acc)
    return NaryGammaSemiring(arity, t, gamma, tuple(mu),
                             name=name or f"mat{m}({base.name})^{arity}")


def enumerate_endomorphisms(monoid: FiniteAddMonoid) -> list[tuple[int, ...]]:
    """All additive self-maps of a finite monoid, lexicographically ordered."""
    out = []
    for vals in product(range(monoid.size), repeat=monoid.size):
        if vals[monoid.zero] != monoid.zero:
            continue
        if all(vals[monoid.add(a, b)] == monoid.add(vals[a], vals[b])
               for a in range(monoid.size) for b in range(monoid.size)):
            out.append(vals)
    return out


def make_endomorphism_family(monoid: FiniteAddMonoid, arity: int,
                             gamma: GammaSemigroup | None = None,
                             comp=None, name: str = "") -> NaryGammaSemiring:
    """Additive endomorphisms under parameterized composition.

    ``comp(f, g, gparam)`` must return an additive endomorphism given as a
    value tuple; the default ignores the parameter and composes.
    """
    if gamma is None:
        gamma = trivial_gamma()
    ends = enumerate_endomorphisms(monoid)
    index = {f: i for i, f in enumerate(ends)}
    if comp is None:
        def comp(f, g, _):
            return tuple(f[g[x]] for x in range(monoid.size))
    size = len(ends)
    add_table = []
    for f in ends:
        for g in ends:
            h = tuple(monoid.add(a, b) for a, b in zip(f, g))
            if h not in index:
                raise StructuralError("pointwise sum left the endomorphism set")
            add_table.append(index[h])
    zero_map = tuple(monoid.zero for _ in range(monoid.size))
    t = FiniteAddMonoid(size, tuple(add_table), index[zero_map])
    mu = []
    for xs in product(range(size), repeat=arity):
        for gs in product(range(gamma.size), repeat=arity - 1):
            acc = ends[xs[0]]
            for i in range(1, arity):
                acc = comp(acc, ends[xs[i]], gs[i - 1])
                if acc not in index:
                    raise StructuralError("composition left the endomorphism set")
            mu.append(index[acc])
    return NaryGammaSemiring(arity, t, gamma, tuple(mu),
                             name=name or f"end({monoid.size})^{arity}")


def binary_specialization(base: BinarySemiring, name: str = "") -> NaryGammaSemiring:
    """A plain semiring as the arity-2, trivially parameterized structure."""
    issues = base.validate()
    if issues:
        raise StructuralError(f"input is not a semiring: {issues[0]}")
    t = FiniteAddMonoid(base.size, base.add_table, base.zero)
    mu = tuple(base.mul(x, y) for x in range(base.size) for y in range(base.size))
    return NaryGammaSemiring(2, t, trivial_gamma(), mu, name=name or base.name)


def ternary_from_semiring(base: BinarySemiring, name: str = "") -> NaryGammaSemiring:
    """mu(x,y,z) = xyz in a commutative base, with a trivial parameter."""
    t = FiniteAddMonoid(base.size, base.add_table, base.zero)
    mu = tuple(base.mul(base.mul(x, y), z)
               for x in range(base.size) for y in range(base.size)
               for z in range(base.size))
    return NaryGammaSemiring(3, t, trivial_gamma(), mu, name=name or f"{base.name}^3")


def f2_ternary() -> NaryGammaSemiring:
    return ternary_from_semiring(f2_semiring(), name="f2_ternary")


def boolean_ternary() -> NaryGammaSemiring:
    return ternary_from_semiring(boolean_semiring(), name="boolean_ternary")


def z4_ternary() -> NaryGammaSemiring:
    return ternary_from_semiring(zmod_semiring(4), name="z4_ternary")


def bundled_semirings() -> dict[str, NaryGammaSemiring]:
    return {
        "f2_ternary": f2_ternary(),
        "boolean_ternary": boolean_ternary(),
        "z4_ternary": z4_ternary(),
    }

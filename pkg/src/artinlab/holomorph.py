"""Finite skew braces and regular subgroups of the holomorph, for cross-checking.

Elements of a finite group are 0..n-1 and a group is given by its Cayley
table.  A regular subgroup of Hol(G) = L_G x| Aut(G) contains exactly one
map x -> h f_h(x) for every h, so it is the same thing as a function
h -> f_h in Aut(G); the brace it defines is h o k = h + f_h(k).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Perm = tuple[int, ...]


class NotAGroupError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, table, name: str = ""):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.n = n = len(self.table)
        self.name = name
        if n == 0 or any(len(row) != n for row in self.table):
            raise NotAGroupError("table must be a non-empty square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise NotAGroupError("table entries out of range")
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ids:
            raise NotAGroupError("no identity element")
        self.e = ids[0]
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise NotAGroupError(f"not associative at ({a}, {b}, {c})")
        self.inv = []
        for a in range(n):
            row = [b for b in range(n) if t[a][b] == self.e]
            if len(row) != 1:
                raise NotAGroupError(f"element {a} has no unique inverse")
            self.inv.append(row[0])

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.n})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.n) for b in range(a))

    def center(self) -> set[int]:
        return {a for a in range(self.n) if all(self.table[a][b] == self.table[b][a] for b in range(self.n))}

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily."""
        gens: list[int] = []
        span = {self.e}
        for a in range(self.n):
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
        return gens

    def closure(self, gens) -> set[int]:
        span = {self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span

    def automorphisms(self) -> list[Perm]:
        """Aut(G) by backtracking over generator images."""
        gens = self.generators()
        # every element as a word in the generators, found by BFS
        words = {self.e: ()}
        frontier = [self.e]
        while frontier:
            nxt = []
            for x in frontier:
                for k, g in enumerate(gens):
                    y = self.table[x][g]
                    if y not in words:
                        words[y] = words[x] + (k,)
                        nxt.append(y)
            frontier = nxt
        out = []
        for images in itertools.product(range(self.n), repeat=len(gens)):
            f = [0] * self.n
            for x, w in words.items():
                y = self.e
                for k in w:
                    y = self.table[y][images[k]]
                f[x] = y
            if len(set(f)) != self.n:
                continue
            t = self.table
            if all(f[t[a][b]] == t[f[a]][f[b]] for a in range(self.n) for b in range(self.n)):
                out.append(tuple(f))
        return sorted(out)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], f"Z_{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(g.n) for b in range(h.n)]
    idx = {p: i for i, p in enumerate(pairs)}
    table = [[idx[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    return FiniteGroup(table, f"{g.name}x{h.name}")


def symmetric_group(k: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[idx[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return FiniteGroup(table, f"S_{k}")


def klein_group() -> FiniteGroup:
    g = direct_product(cyclic_group(2), cyclic_group(2))
    g.name = "Z_2^2"
    return g


def parse_group_table(text: str) -> FiniteGroup:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                rows.append([int(t) for t in line.split()])
            except ValueError as exc:
                raise NotAGroupError(f"non-integer entry in {line!r}") from exc
    return FiniteGroup(rows)


# -- finite skew braces ----------------------------------------------------------------


class FiniteBrace:
    """(B, +, o) from two Cayley tables on the same carrier."""

    def __init__(self, add: FiniteGroup, circ_table):
        self.add = add
        self.circ_group = FiniteGroup(circ_table)
        self.n = add.n
        if self.circ_group.e != add.e:
            raise ValueError("the two operations must share the identity")

    @property
    def circ_table(self):
        return self.circ_group.table

    def circ(self, a: int, b: int) -> int:
        return self.circ_group.table[a][b]

    def lam(self, a: int, b: int) -> int:
        return self.add.mul(self.add.inv[a], self.circ(a, b))

    def is_skew_brace(self) -> bool:
        A, n = self.add, self.n
        for a in range(n):
            for b in range(n):
                ab = self.circ(a, b)
                left = A.mul(ab, A.inv[a])
                for c in range(n):
                    if self.circ(a, A.mul(b, c)) != A.mul(left, self.circ(a, c)):
                        return False
        return True

    def is_trivial(self) -> bool:
        return self.circ_table == self.add.table

    def kernel_lambda(self) -> set[int]:
        return {a for a in range(self.n) if all(self.lam(a, b) == b for b in range(self.n))}

    def socle(self) -> set[int]:
        """ker(lambda) intersected with the additive centre, an ideal in every case."""
        return self.kernel_lambda() & self.add.center()

    def quotient(self, ideal: set[int]) -> FiniteBrace:
        """B / I, with cosets a + I numbered by their least element."""
        cosets: dict[int, int] = {}
        reps = []
        for a in range(self.n):
            if a in cosets:
                continue
            k = len(reps)
            reps.append(a)
            for i in ideal:
                cosets[self.add.mul(a, i)] = k
        add = [[cosets[self.add.mul(a, b)] for b in reps] for a in reps]
        circ = [[cosets[self.circ(a, b)] for b in reps] for a in reps]
        return FiniteBrace(FiniteGroup(add), circ)

    def retraction_series(self) -> list[int]:
        """Sizes of B, B^(1), B^(2), ... until the size stops changing."""
        sizes = [self.n]
        b = self
        while True:
            b = b.quotient(b.socle())
            if b.n == sizes[-1]:
                return sizes
            sizes.append(b.n)

    def right_nilpotency_degree(self) -> int | None:
        """Least k with B^(k) of size 1, or None if the series stalls."""
        sizes = self.retraction_series()
        return sizes.index(1) if 1 in sizes else None


# -- holomorph correspondence ---------------------------------------------------------


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[x] for x in q)


def holomorph_element(g: FiniteGroup, h: int, f: Perm) -> Perm:
    """x -> h + f(x)."""
    return tuple(g.mul(h, f[x]) for x in range(g.n))


def regular_subgroups(g: FiniteGroup, auts: list[Perm] | None = None) -> list[frozenset[Perm]]:
    """All regular subgroups of L_G x| A, where A defaults to Aut(G).

    A choice h -> f_h closes up to a subgroup iff f_{h + f_h(k)} = f_h f_k for all
    h, k; the search assigns f_h element by element and propagates this rule.
    """
    auts = g.automorphisms() if auts is None else auts
    ident = tuple(range(g.n))
    n = g.n
    found: list[frozenset[Perm]] = []

    def propagate(f: dict[int, Perm]) -> dict[int, Perm] | None:
        f = dict(f)
        changed = True
        while changed:
            changed = False
            for h, fh in list(f.items()):
                for k, fk in list(f.items()):
                    target = g.mul(h, fh[k])
                    val = compose(fh, fk)
                    cur = f.get(target)
                    if cur is None:
                        f[target] = val
                        changed = True
                    elif cur != val:
                        return None
        return f

    def search(f: dict[int, Perm]) -> None:
        f = propagate(f)
        if f is None:
            return
        free = [h for h in range(n) if h not in f]
        if not free:
            found.append(frozenset(holomorph_element(g, h, f[h]) for h in range(n)))
            return
        h = free[0]
        for a in auts:
            search({**f, h: a})

    search({g.e: ident})
    return sorted(set(found), key=lambda s: sorted(s))


def brace_from_subgroup(g: FiniteGroup, sub: frozenset[Perm]) -> FiniteBrace:
    """pi(eta) o pi(eta') = pi(eta eta') with pi(eta) = eta(e)."""
    by_image = {eta[g.e]: eta for eta in sub}
    if len(by_image) != g.n:
        raise ValueError("subgroup is not regular")
    circ = [[compose(by_image[a], by_image[b])[g.e] for b in range(g.n)] for a in range(g.n)]
    return FiniteBrace(g, circ)


def subgroup_from_brace(b: FiniteBrace) -> frozenset[Perm]:
    """Left translations of (B, o)."""
    return frozenset(tuple(b.circ(a, x) for x in range(b.n)) for a in range(b.n))


@dataclass
class HolomorphReport:
    group: str
    order: int
    automorphisms: int
    braces: list[FiniteBrace]
    roundtrip_subgroups: bool
    roundtrip_braces: bool
    all_skew_braces: bool
    trivial_present: bool

    @property
    def passed(self) -> bool:
        return (
            self.roundtrip_subgroups
            and self.roundtrip_braces
            and self.all_skew_braces
            and self.trivial_present
        )


def finite_holomorph_roundtrip(g: FiniteGroup, max_order: int = 24) -> HolomorphReport:
    if g.n > max_order:
        raise ValueError(f"carrier of size {g.n} exceeds {max_order}")
    auts = g.automorphisms()
    subs = regular_subgroups(g, auts)
    braces = [brace_from_subgroup(g, s) for s in subs]
    rt_subs = all(subgroup_from_brace(b) == s for b, s in zip(braces, subs))
    rt_braces = all(brace_from_subgroup(g, subgroup_from_brace(b)).circ_table == b.circ_table for b in braces)
    ok = all(b.is_skew_brace() for b in braces)
    left = frozenset(tuple(g.mul(h, x) for x in range(g.n)) for h in range(g.n))
    return HolomorphReport(
        g.name or f"order {g.n}", g.n, len(auts), braces, rt_subs, rt_braces, ok, left in subs
    )

"""Spherical Artin-Tits monoids and groups via left-weighted Garside normal forms.

Simple elements (the divisors of the Garside element) are the elements of the
finite Coxeter group W, referenced by their index in a shared ``GroupTable``.
A positive element is a tuple of non-trivial simples in which every adjacent
pair (s, t) is left-weighted: the right descents of s contain the left
descents of t.  A group element is Delta^p times a positive element whose
first factor is not Delta.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import (
    DEFAULT_BOUND,
    CoxeterMatrix,
    CoxeterType,
    DiagramSymmetry,
    GroupTable,
    coxeter_group,
    named_matrix,
)


@dataclass(frozen=True)
class MonoidElement:
    factors: tuple[int, ...] = ()


@dataclass(frozen=True)
class GroupElement:
    dpow: int = 0
    factors: tuple[int, ...] = ()


_TOKEN = re.compile(r"^(s(\d+)|D|e)(\^(-?\d+))?$")


class ArtinGroup:
    """Garside structure of the Artin-Tits group of a spherical Coxeter matrix."""

    def __init__(self, matrix: CoxeterMatrix, bound: int = DEFAULT_BOUND):
        self.matrix = matrix
        self.n = matrix.n
        self.table: GroupTable = coxeter_group(matrix, bound)
        t = self.table
        self.e = 0
        self.delta = t.w0
        self.delta_length = t.length[t.w0]
        self.atoms = [t.gen(i) for i in range(self.n)]
        self.full_mask = (1 << self.n) - 1
        # right complement: s * complement[s] = Delta
        self.complement = [t.mul(t.inverse[s], t.w0) for s in range(t.order)]
        self.tau_table = [t.mul(t.mul(t.w0, s), t.w0) for s in range(t.order)]
        self._meet: dict[tuple[int, int], int] = {}
        self._renorm: dict[tuple[int, int], tuple[int, int]] = {}
        self._sym_cache: dict[tuple[tuple[int, ...], int], int] = {}

    def __repr__(self) -> str:
        return f"ArtinGroup(rank={self.n}, |W|={self.table.order})"

    # -- simples ---------------------------------------------------------------

    def simple_mul(self, u: int, v: int) -> int:
        return self.table.mul(u, v)

    def simple_ldiv(self, u: int, v: int) -> int:
        """u^-1 v in W."""
        return self.table.mul(self.table.inverse[u], v)

    def simple_from_word(self, word: Iterable[int]) -> int:
        return self.table.from_word(word)

    def meet_simples(self, u: int, v: int) -> int:
        """Left gcd of two simples by stripping common left descents."""
        key = (u, v) if u <= v else (v, u)
        hit = self._meet.get(key)
        if hit is not None:
            return hit
        t = self.table
        result = self.e
        a, b = u, v
        while common := t.ldesc[a] & t.ldesc[b]:
            i = (common & -common).bit_length() - 1
            result = t.right[i][result]
            a = t.left[i][a]
            b = t.left[i][b]
        self._meet[key] = result
        return result

    def right_meet_simples(self, u: int, v: int) -> int:
        """Right gcd of two simples by stripping common right descents."""
        t = self.table
        result = self.e
        a, b = u, v
        while common := t.rdesc[a] & t.rdesc[b]:
            i = (common & -common).bit_length() - 1
            result = t.left[i][result]
            a = t.right[i][a]
            b = t.right[i][b]
        return result

    def join_simples(self, u: int, v: int) -> int:
        """Left lcm, through the order-reversing bijection w -> w^-1 w0."""
        t = self.table
        z = self.right_meet_simples(self.complement[u], self.complement[v])
        return t.mul(t.w0, t.inverse[z])

    def left_weighted(self, s: int, t: int) -> bool:
        return not (self.table.ldesc[t] & ~self.table.rdesc[s])

    def tau_simple(self, s: int) -> int:
        return self.tau_table[s]

    # -- positive elements -----------------------------------------------------

    def _slide(self, s: int, t: int) -> tuple[int, int]:
        key = (s, t)
        hit = self._renorm.get(key)
        if hit is None:
            u = self.meet_simples(self.complement[s], t)
            if u == self.e:
                hit = key
            else:
                hit = (self.simple_mul(s, u), self.simple_ldiv(u, t))
            self._renorm[key] = hit
        return hit

    def normalize(self, factors: Sequence[int]) -> MonoidElement:
        """Left-weighted normal form of a product of simples, by sliding to a fixpoint."""
        e = self.e
        f = [x for x in factors if x != e]
        changed = True
        while changed:
            changed = False
            for k in range(len(f) - 1):
                s2, t2 = self._slide(f[k], f[k + 1])
                if s2 != f[k]:
                    f[k], f[k + 1] = s2, t2
                    changed = True
            if changed:
                f = [x for x in f if x != e]
        return MonoidElement(tuple(f))

    def monoid(self, word: Iterable[int]) -> MonoidElement:
        """Positive element from a word in generator indices (0-based)."""
        return self.normalize([self.atoms[i] for i in word])

    def multiply_monoid(self, a: MonoidElement, b: MonoidElement) -> MonoidElement:
        if not a.factors or not b.factors:
            return a if b.factors == () else b
        if self.left_weighted(a.factors[-1], b.factors[0]):
            return MonoidElement(a.factors + b.factors)
        return self.normalize(a.factors + b.factors)

    def height(self, a: MonoidElement | GroupElement) -> int:
        h = sum(self.table.length[s] for s in a.factors)
        if isinstance(a, GroupElement):
            if a.dpow < 0:
                raise ValueError("height is defined on positive elements only")
            h += a.dpow * self.delta_length
        return h

    def simple_divides(self, s: int, a: MonoidElement) -> bool:
        """Whether the simple s left-divides a (equivalently, divides its head)."""
        if s == self.e:
            return True
        return bool(a.factors) and self.meet_simples(s, a.factors[0]) == s

    def ldiv_simple(self, s: int, a: MonoidElement) -> MonoidElement:
        """s^-1 a for a simple s dividing a."""
        if s == self.e:
            return a
        if not self.simple_divides(s, a):
            raise ValueError("simple does not left-divide the element")
        head = self.simple_ldiv(s, a.factors[0])
        return self.normalize((head,) + a.factors[1:])

    def ldiv_monoid(self, c: MonoidElement, a: MonoidElement) -> MonoidElement:
        """c^-1 a for c left-dividing a."""
        for s in c.factors:
            a = self.ldiv_simple(s, a)
        return a

    def delta_power(self, k: int) -> MonoidElement:
        return MonoidElement((self.delta,) * k)

    def gcd_monoid(self, a: MonoidElement, b: MonoidElement) -> MonoidElement:
        """Greatest common left divisor."""
        out = []
        while a.factors and b.factors:
            s = self.meet_simples(a.factors[0], b.factors[0])
            if s == self.e:
                break
            out.append(s)
            a = self.ldiv_simple(s, a)
            b = self.ldiv_simple(s, b)
        return self.normalize(out)

    def rev(self, a: MonoidElement) -> MonoidElement:
        """Image under the word-reversing anti-automorphism."""
        inv = self.table.inverse
        return self.normalize([inv[s] for s in reversed(a.factors)])

    def tau(self, a: MonoidElement, power: int = 1) -> MonoidElement:
        """x -> Delta^-1 x Delta (so x Delta = Delta tau(x)); tau is an involution."""
        if power % 2 == 0:
            return a
        return MonoidElement(tuple(self.tau_table[s] for s in a.factors))

    def right_gcd_monoid(self, a: MonoidElement, b: MonoidElement) -> MonoidElement:
        return self.rev(self.gcd_monoid(self.rev(a), self.rev(b)))

    def complement_in_delta_power(self, a: MonoidElement, k: int) -> MonoidElement:
        """a^-1 Delta^k for a left-dividing Delta^k."""
        return self.ldiv_monoid(a, self.delta_power(k))

    def join_monoid(self, a: MonoidElement, b: MonoidElement) -> MonoidElement:
        """Least common right multiple, via right gcd of complements in Delta^k."""
        k = max(len(a.factors), len(b.factors))
        if k == 0:
            return MonoidElement()
        rg = self.right_gcd_monoid(
            self.complement_in_delta_power(a, k), self.complement_in_delta_power(b, k)
        )
        # Delta^k rg^-1 = rev(rev(rg)^-1 Delta^k)
        return self.rev(self.ldiv_monoid(self.rev(rg), self.delta_power(k)))

    def monoid_divides(self, a: MonoidElement, b: MonoidElement) -> bool:
        return self.gcd_monoid(a, b) == a

    # -- group elements --------------------------------------------------------

    def group(self, a: MonoidElement | Sequence[int], dpow: int = 0) -> GroupElement:
        """Delta^dpow * a, normalized with leading Deltas absorbed into the power."""
        factors = a.factors if isinstance(a, MonoidElement) else tuple(a)
        f = self.normalize(factors).factors
        k = 0
        while k < len(f) and f[k] == self.delta:
            k += 1
        return GroupElement(dpow + k, f[k:])

    def positive_part(self, g: GroupElement) -> MonoidElement:
        if g.dpow < 0:
            raise ValueError("element is not positive")
        return MonoidElement((self.delta,) * g.dpow + g.factors)

    def identity(self) -> GroupElement:
        return GroupElement()

    def atom(self, i: int) -> GroupElement:
        return GroupElement(0, (self.atoms[i],))

    def delta_element(self, p: int = 1) -> GroupElement:
        return GroupElement(p, ())

    def simple_element(self, s: int) -> GroupElement:
        return self.group((s,))

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        x = self.tau(MonoidElement(g.factors), h.dpow).factors
        if not x or not h.factors or self.left_weighted(x[-1], h.factors[0]):
            if not x or x[0] != self.delta:
                return GroupElement(g.dpow + h.dpow, x + h.factors)
        return self.group(x + h.factors, g.dpow + h.dpow)

    def inv(self, g: GroupElement) -> GroupElement:
        k = len(g.factors)
        y = self.complement_in_delta_power(MonoidElement(g.factors), k)
        p = -g.dpow - k
        return self.group(self.tau(y, p), p)

    def power(self, g: GroupElement, k: int) -> GroupElement:
        base = g if k >= 0 else self.inv(g)
        out = self.identity()
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def is_positive(self, g: GroupElement) -> bool:
        return g.dpow >= 0

    def leq(self, g: GroupElement, h: GroupElement) -> bool:
        """g <= h iff g^-1 h lies in the positive cone."""
        return self.is_positive(self.mul(self.inv(g), h))

    def _lift(self, *elems: GroupElement) -> int:
        return max([0] + [-g.dpow for g in elems])

    def meet(self, g: GroupElement, h: GroupElement) -> GroupElement:
        n = self._lift(g, h)
        a = self.positive_part(GroupElement(g.dpow + n, g.factors))
        b = self.positive_part(GroupElement(h.dpow + n, h.factors))
        return self.group(self.gcd_monoid(a, b), -n)

    def join(self, g: GroupElement, h: GroupElement) -> GroupElement:
        n = self._lift(g, h)
        a = self.positive_part(GroupElement(g.dpow + n, g.factors))
        b = self.positive_part(GroupElement(h.dpow + n, h.factors))
        return self.group(self.join_monoid(a, b), -n)

    def relative_height(self, g: GroupElement, h: GroupElement) -> int:
        q = self.mul(self.inv(g), h)
        if q.dpow < 0:
            raise ValueError("relative height needs g <= h")
        return self.height(q)

    def braid_term(self, x: GroupElement, y: GroupElement, k: int) -> GroupElement:
        """Alternating product x y x ... with k factors."""
        out = self.identity()
        for j in range(k):
            out = self.mul(out, x if j % 2 == 0 else y)
        return out

    def group_ops(self, g: GroupElement, h: GroupElement | None, op: str):
        if op == "mul":
            return self.mul(g, h)
        if op == "inv":
            return self.inv(g)
        if op == "leq":
            return self.leq(g, h)
        if op == "meet":
            return self.meet(g, h)
        if op == "join":
            return self.join(g, h)
        raise ValueError(f"unknown group operation {op!r}")

    # -- diagram symmetries ----------------------------------------------------

    def apply_symmetry_simple(self, phi: DiagramSymmetry, s: int) -> int:
        key = (phi.perm, s)
        hit = self._sym_cache.get(key)
        if hit is None:
            hit = self.table.from_word(phi(i) for i in self.table.words[s])
            self._sym_cache[key] = hit
        return hit

    def apply_symmetry(self, phi: DiagramSymmetry, g: GroupElement) -> GroupElement:
        """delta_phi(g): relabel each factor, then renormalize."""
        factors = [self.apply_symmetry_simple(phi, s) for s in g.factors]
        return self.group(factors, g.dpow)

    # -- words and rendering ---------------------------------------------------

    def word(self, g: GroupElement) -> list[tuple[int, int]]:
        """A word representing g as (generator, +1/-1) letters."""
        t = self.table
        dw = t.words[self.delta]
        out: list[tuple[int, int]] = []
        if g.dpow >= 0:
            out += [(i, 1) for _ in range(g.dpow) for i in dw]
        else:
            out += [(i, -1) for _ in range(-g.dpow) for i in reversed(dw)]
        for s in g.factors:
            out += [(i, 1) for i in t.words[s]]
        return out

    def render_word(self, g: GroupElement) -> str:
        letters = self.word(g)
        if not letters:
            return "e"
        return ".".join(f"s{i + 1}" if sign > 0 else f"s{i + 1}^-1" for i, sign in letters)

    def render_simple(self, s: int) -> str:
        return "[" + " ".join(f"s{i + 1}" for i in self.table.words[s]) + "]"

    def render_normal_form(self, g: GroupElement | MonoidElement) -> str:
        parts = []
        if isinstance(g, GroupElement) and g.dpow:
            parts.append(f"D^{g.dpow}")
        if g.factors:
            parts.append("".join(self.render_simple(s) for s in g.factors))
        return " ".join(parts) or "e"

    def parse(self, text: str) -> GroupElement:
        """Parse words such as ``s1.s2^-1.D^2`` or rendered normal forms ``D^-1 [s1 s2][s1]``."""
        tokens = re.sub(r"[\[\].*]", " ", text).split()
        if not tokens:
            raise ValueError("empty word")
        g = self.identity()
        for tok in tokens:
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad token {tok!r}")
            k = int(m.group(4)) if m.group(4) is not None else 1
            if m.group(1) == "e":
                continue
            if m.group(1) == "D":
                x = self.delta_element(1)
            else:
                i = int(m.group(2)) - 1
                if not 0 <= i < self.n:
                    raise ValueError(f"generator {tok!r} out of range 1..{self.n}")
                x = self.atom(i)
            g = self.mul(g, self.power(x, k))
        return g


@functools.lru_cache(maxsize=None)
def artin_group(spec: str | CoxeterMatrix, bound: int = DEFAULT_BOUND) -> ArtinGroup:
    """Shared ArtinGroup for a type name such as ``"A_3"`` or a Coxeter matrix."""
    if isinstance(spec, str):
        t = CoxeterType.parse(spec)
        spec = named_matrix(t.family, t.index)
    return ArtinGroup(spec, bound)

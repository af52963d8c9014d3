"""Skew braces (G, +, o) on spherical Artin-Tits groups with g o h = g + alpha_g(h).

Here + is the group multiplication of G and alpha is a homomorphism from
(G, +) to the diagram symmetries, given by its values on the generators.
"""

from __future__ import annotations

import functools
import itertools
import random
import re
from dataclasses import dataclass, field

from .coxeter import (
    CoxeterMatrix,
    CoxeterType,
    DiagramSymmetry,
    classify_component,
    classify_spherical,
    diagram_symmetries,
    matrix_isomorphisms,
    named_matrix,
)
from .garside import ArtinGroup, GroupElement, artin_group
from .order import build_ball


class InvalidSpecError(ValueError):
    pass


@dataclass(frozen=True)
class BraceSpec:
    """Values alpha(s_i) of the generator assignment, indexed from 0."""

    matrix: CoxeterMatrix
    assign: tuple[DiagramSymmetry, ...]
    type_name: str = ""

    @property
    def n(self) -> int:
        return self.matrix.n

    def is_trivial(self) -> bool:
        return all(a.is_identity() for a in self.assign)

    def render(self) -> str:
        head = f"type {self.type_name.replace('_', ' ')}" if self.type_name else "matrix"
        body = " ".join(f"{i + 1}:{a.cycles()}" for i, a in enumerate(self.assign))
        return f"{head} / alpha {body}"

    def __str__(self) -> str:
        return self.render()


def constant_spec(matrix: CoxeterMatrix, phi: DiagramSymmetry, type_name: str = "") -> BraceSpec:
    return BraceSpec(matrix, (phi,) * matrix.n, type_name)


def parse_brace_spec(text: str, matrix: CoxeterMatrix | None = None) -> BraceSpec:
    """Parse ``type D 4 / alpha 1:(1 2) 2:(1 2) 3:(1 2) 4:(2 3)``.

    Generators that are not listed map to the identity.  When ``matrix`` is given
    the type part may be omitted (``alpha 1:(1 2) 2:(1 2)``).
    """
    head, sep, tail = text.partition("/")
    if not sep:
        head, tail = "", head
    head, tail = head.strip(), tail.strip()
    type_name = ""
    if head:
        m = re.fullmatch(r"type\s+([A-Za-z])\s*_?\s*(\d+)", head)
        if not m:
            raise ValueError(f"bad type clause {head!r}")
        t = CoxeterType(m.group(1).upper(), int(m.group(2)))
        matrix = named_matrix(t.family, t.index)
        type_name = str(t)
    if matrix is None:
        raise ValueError("brace spec needs a type or a matrix")
    if not tail.startswith("alpha"):
        raise ValueError("expected 'alpha' clause")
    assign = [DiagramSymmetry.identity(matrix.n) for _ in range(matrix.n)]
    seen = set()
    for gen, cyc in re.findall(r"(\d+)\s*:\s*((?:\([^)]*\))+)", tail):
        i = int(gen) - 1
        if not 0 <= i < matrix.n or i in seen:
            raise ValueError(f"bad or repeated generator {gen}")
        seen.add(i)
        assign[i] = DiagramSymmetry.from_cycles(cyc, matrix.n)
    rest = re.sub(r"(\d+)\s*:\s*((?:\([^)]*\))+)", "", tail[len("alpha"):]).strip()
    if rest:
        raise ValueError(f"unparsed text {rest!r}")
    return BraceSpec(matrix, tuple(assign), type_name)


# -- validation -----------------------------------------------------------------


def braid_perm(x: DiagramSymmetry, y: DiagramSymmetry, k: int) -> DiagramSymmetry:
    out = DiagramSymmetry.identity(len(x.perm))
    for j in range(k):
        out = out * (x if j % 2 == 0 else y)
    return out


def generated_subgroup(gens) -> list[DiagramSymmetry]:
    gens = list(gens)
    if not gens:
        return []
    elems = {DiagramSymmetry.identity(len(gens[0].perm))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(elems)


@dataclass
class SpecReport:
    valid: bool
    errors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def validate_brace_spec(spec: BraceSpec) -> SpecReport:
    m = spec.matrix
    n = spec.n
    errors: list[str] = []
    notes: list[str] = []
    if len(spec.assign) != n:
        return SpecReport(False, [f"expected {n} assigned symmetries, got {len(spec.assign)}"])
    for i, a in enumerate(spec.assign):
        if len(a.perm) != n or not a.preserves(m):
            errors.append(f"alpha({i + 1}) = {a} is not a diagram symmetry")
    if errors:
        return SpecReport(False, errors)
    for i in range(n):
        for j in range(i + 1, n):
            k = m[i, j]
            x, y = spec.assign[i], spec.assign[j]
            if braid_perm(x, y, k) != braid_perm(y, x, k):
                errors.append(f"homomorphism fails for (i, j) = ({i + 1}, {j + 1}), m = {k}")
    image = generated_subgroup(spec.assign)
    for phi in image:
        for i in range(n):
            if spec.assign[phi(i)] != spec.assign[i]:
                errors.append(f"invariance fails for phi = {phi} at i = {i + 1}")
                break
    abelian = all(x * y == y * x for x in image for y in image)
    if m.is_oddly_laced() and abelian:
        for comp in m.components():
            if len({spec.assign[i] for i in comp}) > 1:
                errors.append(
                    "oddly laced with abelian image but alpha is not constant on component "
                    + "{" + ", ".join(str(i + 1) for i in comp) + "}"
                )
    types = classify_spherical(m)
    if types == ["A_2"] and not spec.is_trivial():
        notes.append("A_2 sits below the A_n (n >= 3) row of the table but passes every check")
    return SpecReport(not errors, errors, notes)


# -- catalog and enumeration ------------------------------------------------------


def _reversal(n: int) -> DiagramSymmetry:
    return DiagramSymmetry(tuple(n - 1 - i for i in range(n)))


def _named_catalog(t: CoxeterType) -> list[BraceSpec]:
    m = named_matrix(t.family, t.index)
    name = str(t)
    cyc = lambda text: DiagramSymmetry.from_cycles(text, m.n)  # noqa: E731
    fam, k = t.family, t.index
    if fam == "A" and k >= 2:
        return [constant_spec(m, _reversal(k), name)]
    if fam == "D" and k >= 5:
        return [constant_spec(m, cyc("(1 2)"), name)]
    if fam == "D" and k == 4:
        specs = [constant_spec(m, cyc(c), name) for c in ("(1 2)", "(1 3)", "(2 3)")]
        specs += [constant_spec(m, cyc(c), name) for c in ("(1 2 3)", "(1 3 2)")]
        transpositions = ["(1 2)", "(1 3)", "(2 3)"]
        for first, second in itertools.permutations(transpositions, 2):
            a, b = cyc(first), cyc(second)
            specs.append(BraceSpec(m, (a, a, a, b), name))
        return specs
    if fam == "E" and k == 6:
        return [constant_spec(m, cyc("(1 5)(2 4)"), name)]
    if fam == "F" and k == 4:
        return [constant_spec(m, cyc("(1 4)(2 3)"), name)]
    if fam == "I" and k >= 4:
        return [constant_spec(m, cyc("(1 2)"), name)]
    return []


def catalog(matrix: CoxeterMatrix) -> list[BraceSpec]:
    """Non-trivial generator assignments from the classification table.

    The table is stated in the standard vertex numbering; for other numberings
    the rows are transported along an isomorphism to the standard matrix.
    """
    comps = matrix.components()
    if len(comps) != 1:
        raise ValueError("catalog needs an irreducible type")
    t = classify_component(matrix)
    if t is None:
        raise ValueError("matrix is not of spherical type")
    std = named_matrix(t.family, t.index)
    if matrix == std:
        p = tuple(range(matrix.n))
    else:
        p = next(matrix_isomorphisms(std, matrix))
    q = [0] * len(p)
    for i, pi in enumerate(p):
        q[pi] = i
    out = []
    for spec in _named_catalog(t):
        # conjugate: new alpha at p(i) is p o alpha_i o p^-1
        assign = [None] * matrix.n
        for i, a in enumerate(spec.assign):
            assign[p[i]] = DiagramSymmetry(tuple(p[a(q[j])] for j in range(matrix.n)))
        out.append(BraceSpec(matrix, tuple(assign), str(t)))
    return out


def catalog_for_type(name: str) -> list[BraceSpec]:
    t = CoxeterType.parse(name)
    return catalog(named_matrix(t.family, t.index))


def enumerate_brace_specs(matrix: CoxeterMatrix, max_assignments: int = 10**6) -> list[BraceSpec]:
    """All valid non-trivial assignments, by brute force over every generator map."""
    syms = diagram_symmetries(matrix)
    if len(syms) ** matrix.n > max_assignments:
        raise ValueError("too many assignments to enumerate")
    types = classify_spherical(matrix)
    name = types[0] if types and len(types) == 1 else ""
    out = []
    for assign in itertools.product(syms, repeat=matrix.n):
        spec = BraceSpec(matrix, tuple(assign), name)
        if spec.is_trivial():
            continue
        if validate_brace_spec(spec).valid:
            out.append(spec)
    return out


def spec_key(spec: BraceSpec) -> tuple:
    return tuple(a.perm for a in spec.assign)


# -- the brace ----------------------------------------------------------------------


class ArtinBrace:
    """(G, +, o) for a spec; ``force`` builds it even when the spec is invalid."""

    def __init__(self, spec: BraceSpec, artin: ArtinGroup | None = None, force: bool = False):
        report = validate_brace_spec(spec)
        if not report.valid and not force:
            raise InvalidSpecError("; ".join(report.errors))
        for a in spec.assign:
            if not a.preserves(spec.matrix):
                raise InvalidSpecError(f"{a} is not a diagram symmetry")
        self.spec = spec
        self.report = report
        self.G = artin if artin is not None else artin_group(spec.matrix)
        self.identity_sym = DiagramSymmetry.identity(spec.n)
        self._simple_alpha: dict[int, DiagramSymmetry] = {}
        self.alpha_delta = self.alpha_simple(self.G.delta)
        self.alpha_delta_inv = self.alpha_delta.inverse()

    def alpha_simple(self, s: int) -> DiagramSymmetry:
        hit = self._simple_alpha.get(s)
        if hit is None:
            hit = self.identity_sym
            for i in self.G.table.words[s]:
                hit = hit * self.spec.assign[i]
            self._simple_alpha[s] = hit
        return hit

    def alpha(self, g: GroupElement) -> DiagramSymmetry:
        """alpha_g along the normal-form word of g."""
        out = (self.alpha_delta if g.dpow >= 0 else self.alpha_delta_inv) ** abs(g.dpow)
        for s in g.factors:
            out = out * self.alpha_simple(s)
        return out

    def act(self, phi: DiagramSymmetry, g: GroupElement) -> GroupElement:
        if phi.is_identity():
            return g
        return self.G.apply_symmetry(phi, g)

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.G.mul(g, h)

    def neg(self, g: GroupElement) -> GroupElement:
        return self.G.inv(g)

    def circ(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.G.mul(g, self.act(self.alpha(g), h))

    def circ_inv(self, g: GroupElement) -> GroupElement:
        return self.act(self.alpha(g).inverse(), self.G.inv(g))

    def lam(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """lambda_g(h) = -g + g o h."""
        return self.G.mul(self.G.inv(g), self.circ(g, h))

    def circ_power(self, g: GroupElement, k: int) -> GroupElement:
        out = self.G.identity()
        for _ in range(k):
            out = self.circ(out, g)
        return out


def alpha_of(spec: BraceSpec, g: GroupElement) -> DiagramSymmetry:
    return ArtinBrace(spec).alpha(g)


def circ(spec: BraceSpec, g: GroupElement, h: GroupElement | None, op: str = "circ") -> GroupElement:
    b = ArtinBrace(spec)
    if op == "circ":
        return b.circ(g, h)
    if op == "circ_inv":
        return b.circ_inv(g)
    raise ValueError(f"unknown operation {op!r}")


# -- sampling and verification --------------------------------------------------------


@functools.lru_cache(maxsize=32)
def _sample_pool(artin: ArtinGroup, height: int) -> tuple[GroupElement, ...]:
    ball = build_ball(artin, height)
    return tuple(artin.group(m) for m in ball.nodes)


def sample_elements(
    artin: ArtinGroup, rng: random.Random, count: int, height: int = 4
) -> list[GroupElement]:
    """Seeded draws from the ball of the given height, each inverted with probability 1/2."""
    pool = _sample_pool(artin, height)
    out = []
    for _ in range(count):
        g = rng.choice(pool)
        if rng.random() < 0.5:
            g = artin.inv(g)
        out.append(g)
    return out


CHECKS = ("brace_identity", "lambda_is_alpha", "degree_two", "associativity", "socle", "identity")


@dataclass
class BraceVerification:
    spec: str
    samples: int
    seed: int
    failures: dict[str, int]
    witnesses: dict[str, str]
    nontrivial_pairs: int

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    @property
    def nontrivial(self) -> bool:
        return self.nontrivial_pairs > 0


def verify_brace_identity(
    spec: BraceSpec, samples: int = 1000, seed: int = 0, height: int = 4, force: bool = False
) -> BraceVerification:
    b = ArtinBrace(spec, force=force)
    G = b.G
    rng = random.Random(seed)
    failures = {c: 0 for c in CHECKS}
    witnesses: dict[str, str] = {}
    nontrivial = 0
    e = G.identity()
    gens = [G.atom(i) for i in range(G.n)]

    def fail(check: str, *elems: GroupElement) -> None:
        failures[check] += 1
        if check not in witnesses:
            witnesses[check] = " | ".join(G.render_normal_form(x) for x in elems)

    for _ in range(samples):
        a, x, y = sample_elements(G, rng, 3, height)
        ax = b.circ(a, x)
        if ax != G.mul(a, x):
            nontrivial += 1
        # a o (x + y) = a o x - a + a o y
        lhs = b.circ(a, G.mul(x, y))
        rhs = G.mul(G.mul(ax, G.inv(a)), b.circ(a, y))
        if lhs != rhs:
            fail("brace_identity", a, x, y)
        lam = G.mul(G.inv(a), ax)
        if lam != b.act(b.alpha(a), x):
            fail("lambda_is_alpha", a, x)
        # lambda_{lambda_a(x)} = lambda_x, compared pointwise on y and on the generators
        if b.lam(lam, y) != b.lam(x, y) or b.alpha(lam) != b.alpha(x):
            fail("degree_two", a, x, y)
        if b.circ(ax, y) != b.circ(a, b.circ(x, y)):
            fail("associativity", a, x, y)
        in_kernel = all(b.lam(a, s) == s for s in gens)
        if in_kernel != b.alpha(a).is_identity():
            fail("socle", a)
        if b.circ(e, a) != a or b.circ(a, e) != a or b.circ(a, b.circ_inv(a)) != e:
            fail("identity", a)
    return BraceVerification(spec.render(), samples, seed, failures, witnesses, nontrivial)


@dataclass
class TorusReport:
    n: int
    equal_at: list[int]
    top_is_delta: bool

    @property
    def passed(self) -> bool:
        return self.equal_at == [self.n] and self.top_is_delta


def torus_relation_check(n: int) -> TorusReport:
    """Iterated o-powers of the two atoms for the I_n catalog spec."""
    if n < 4:
        raise ValueError("torus check needs n >= 4")
    spec = catalog(named_matrix("I", n))[0]
    b = ArtinBrace(spec)
    G = b.G
    x, y = G.atom(0), G.atom(1)
    px, py = G.identity(), G.identity()
    equal_at = []
    for k in range(1, n + 1):
        px, py = b.circ(px, x), b.circ(py, y)
        if px == py:
            equal_at.append(k)
    delta = G.delta_element()
    return TorusReport(n, equal_at, px == delta and py == delta)


@dataclass
class CenterReport:
    k: int | None
    checked: int
    circ_central: bool

    @property
    def passed(self) -> bool:
        return self.k is not None and self.circ_central


def delta_center_check(
    spec: BraceSpec, k_max: int = 8, samples: int = 100, seed: int = 0
) -> CenterReport:
    """Least k with Delta^k additively central and alpha(Delta^k) = id, then o-centrality."""
    b = ArtinBrace(spec)
    G = b.G
    gens = [G.atom(i) for i in range(G.n)]
    for k in range(1, k_max + 1):
        d = G.delta_element(k)
        central = all(G.mul(d, s) == G.mul(s, d) for s in gens)
        if central and b.alpha(d).is_identity():
            rng = random.Random(seed)
            ok = all(b.circ(d, g) == b.circ(g, d) for g in sample_elements(G, rng, samples))
            return CenterReport(k, samples, ok)
    return CenterReport(None, 0, False)

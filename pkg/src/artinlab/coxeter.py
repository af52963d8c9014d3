"""Coxeter matrices, diagram symmetries, classification and finite Coxeter groups.

Vertices are numbered 1..n in all user-facing text and 0..n-1 internally.
Named types follow the vertex numbering of the diagram table used throughout
this package: D_n has its branch node n joined to 1, 2 and 3 with the tail
3 - 4 - ... - (n-1); E_6 is the path 1-2-3-4-5 with 6 attached to 3; F_4 is
1 - 2 =4= 3 - 4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .exact import ExactReal, FieldContext, context_for_labels, embed_two_cos

DEFAULT_BOUND = 10**6


class CoxeterParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotFiniteError(RuntimeError):
    """Group closure exceeded the enumeration bound."""


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j, m in enumerate(row):
                if i == j and m != 1:
                    raise ValueError(f"diagonal entry m[{i + 1}][{i + 1}] = {m}, expected 1")
                if i != j and m < 2:
                    raise ValueError(f"off-diagonal entry m[{i + 1}][{j + 1}] = {m} < 2")
                if m != self.entries[j][i]:
                    raise ValueError(f"asymmetric: m[{i + 1}][{j + 1}] != m[{j + 1}][{i + 1}]")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def labels(self) -> set[int]:
        return {m for row in self.entries for m in row}

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and self.entries[i][j] >= 3]

    def components(self) -> list[list[int]]:
        """Connected components of the Coxeter graph, sorted."""
        seen: set[int] = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbours(v):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def restrict(self, vertices: Sequence[int]) -> CoxeterMatrix:
        return CoxeterMatrix(tuple(tuple(self.entries[i][j] for j in vertices) for i in vertices))

    def is_oddly_laced(self) -> bool:
        return all(m == 2 or m % 2 for row in self.entries for m in row if m != 1)

    def render(self) -> str:
        lines = [f"rank {self.n}"]
        lines += [" ".join(str(m) for m in row) for row in self.entries]
        return "\n".join(lines)


@dataclass(frozen=True)
class CoxeterType:
    """An irreducible type; ``index`` is the rank except for I_m where it is the label."""

    family: str
    index: int

    def __str__(self) -> str:
        return f"{self.family}_{self.index}"

    @classmethod
    def parse(cls, text: str) -> CoxeterType:
        m = re.fullmatch(r"\s*([A-Za-z])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Coxeter type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def matrix(self) -> CoxeterMatrix:
        return named_matrix(self.family, self.index)


def _from_edges(n: int, edges: dict[tuple[int, int], int]) -> CoxeterMatrix:
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (a, b), m in edges.items():
        rows[a - 1][b - 1] = rows[b - 1][a - 1] = m
    return CoxeterMatrix(tuple(tuple(r) for r in rows))


def named_matrix(family: str, k: int) -> CoxeterMatrix:
    family = family.upper()
    path = lambda n: {(i, i + 1): 3 for i in range(1, n)}  # noqa: E731
    if family == "A" and k >= 1:
        return _from_edges(k, path(k))
    if family in ("B", "C") and k >= 2:
        edges = path(k)
        edges[(k - 1, k)] = 4
        return _from_edges(k, edges)
    if family == "D" and k >= 4:
        edges = {(1, k): 3, (2, k): 3, (3, k): 3}
        edges.update({(i, i + 1): 3 for i in range(3, k - 1)})
        return _from_edges(k, edges)
    if family == "E" and k in (6, 7, 8):
        edges = {(i, i + 1): 3 for i in range(1, k - 1)}
        edges[(3, k)] = 3
        return _from_edges(k, edges)
    if family == "F" and k == 4:
        return _from_edges(4, {(1, 2): 3, (2, 3): 4, (3, 4): 3})
    if family == "G" and k == 2:
        return _from_edges(2, {(1, 2): 6})
    if family == "H" and k in (2, 3, 4):
        edges = {(i, i + 1): 3 for i in range(1, k)}
        edges[(1, 2)] = 5
        return _from_edges(k, edges)
    if family == "I" and k >= 2:
        return _from_edges(2, {(1, 2): k})
    raise ValueError(f"unknown Coxeter type {family}_{k}")


def parse_coxeter(text: str) -> CoxeterMatrix:
    """Parse ``rank n`` plus n rows of integers, or ``type X k``; ``#`` starts a comment."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if not lines:
        raise CoxeterParseError("empty input", 1, 1)
    lineno, head = lines[0]
    tokens = head.split()
    col = head.index(tokens[0]) + 1
    if tokens[0] == "type":
        if len(tokens) != 3 or not tokens[2].isdigit() or len(lines) > 1:
            raise CoxeterParseError("expected 'type <letter> <k>'", lineno, col)
        try:
            return named_matrix(tokens[1], int(tokens[2]))
        except ValueError as exc:
            raise CoxeterParseError(str(exc), lineno, head.index(tokens[1]) + 1) from None
    if tokens[0] != "rank" or len(tokens) != 2 or not tokens[1].isdigit():
        raise CoxeterParseError("expected 'rank <n>' or 'type <letter> <k>'", lineno, col)
    n = int(tokens[1])
    if n < 1:
        raise CoxeterParseError("rank must be positive", lineno, head.index(tokens[1]) + 1)
    if len(lines) - 1 != n:
        where = lines[-1][0] if len(lines) > 1 else lineno
        raise CoxeterParseError(f"expected {n} matrix rows, found {len(lines) - 1}", where, 1)
    rows = []
    for lineno, body in lines[1:]:
        row = []
        for m in re.finditer(r"\S+", body):
            if not re.fullmatch(r"\d+", m.group()):
                raise CoxeterParseError(f"not an integer: {m.group()!r}", lineno, m.start() + 1)
            row.append(int(m.group()))
        if len(row) != n:
            raise CoxeterParseError(f"expected {n} entries, found {len(row)}", lineno, 1)
        rows.append((lineno, row))
    for i, (lineno, row) in enumerate(rows):
        for j, m in enumerate(row):
            col = _column_of(lines[i + 1][1], j)
            if i == j and m != 1:
                raise CoxeterParseError(f"diagonal entry must be 1, got {m}", lineno, col)
            if i != j and m < 2:
                raise CoxeterParseError(f"off-diagonal entry must be >= 2, got {m}", lineno, col)
            if m != rows[j][1][i]:
                raise CoxeterParseError(
                    f"asymmetric entry: m[{i + 1}][{j + 1}]={m} but m[{j + 1}][{i + 1}]={rows[j][1][i]}",
                    lineno,
                    col,
                )
    return CoxeterMatrix(tuple(tuple(r) for _, r in rows))


def _column_of(body: str, k: int) -> int:
    return list(re.finditer(r"\S+", body))[k].start() + 1


# -- diagram symmetries -------------------------------------------------------


@dataclass(frozen=True, order=True)
class DiagramSymmetry:
    """A label-preserving permutation; ``perm[i]`` is the image of vertex i (0-based)."""

    perm: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> DiagramSymmetry:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> DiagramSymmetry:
        """Parse 1-based cycle notation such as ``(1 4)(2 3)``; ``()`` is the identity."""
        perm = list(range(n))
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+\s*)*\))+", text):
            raise ValueError(f"bad cycle notation {text!r}")
        seen: set[int] = set()
        for cyc in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) - 1 for t in cyc.split()]
            for p in pts:
                if not 0 <= p < n or p in seen:
                    raise ValueError(f"bad point {p + 1} in {text!r}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                perm[a] = b
        return cls(tuple(perm))

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def __mul__(self, other: DiagramSymmetry) -> DiagramSymmetry:
        """Composition: (self * other)(i) = self(other(i))."""
        return DiagramSymmetry(tuple(self.perm[j] for j in other.perm))

    def inverse(self) -> DiagramSymmetry:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return DiagramSymmetry(tuple(inv))

    def __pow__(self, k: int) -> DiagramSymmetry:
        base = self if k >= 0 else self.inverse()
        out = DiagramSymmetry.identity(len(self.perm))
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def preserves(self, m: CoxeterMatrix) -> bool:
        p = self.perm
        return all(m[p[i], p[j]] == m[i, j] for i in range(m.n) for j in range(m.n))

    def cycles(self) -> str:
        seen, parts = set(), []
        for start in range(len(self.perm)):
            if start in seen or self.perm[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(str(i + 1))
                i = self.perm[i]
            parts.append("(" + " ".join(cyc) + ")")
        return "".join(parts) or "()"

    def __str__(self) -> str:
        return self.cycles()


def _profile(m: CoxeterMatrix, i: int) -> tuple[int, ...]:
    return tuple(sorted(m[i, j] for j in range(m.n) if j != i))


def matrix_isomorphisms(a: CoxeterMatrix, b: CoxeterMatrix) -> Iterator[tuple[int, ...]]:
    """All bijections p with b[p(i), p(j)] == a[i, j], by pruned backtracking."""
    n = a.n
    if b.n != n:
        return
    prof_a = [_profile(a, i) for i in range(n)]
    prof_b = [_profile(b, i) for i in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return
    # assign high-degree vertices first: they prune hardest
    order = sorted(range(n), key=lambda i: (-len(a.neighbours(i)), i))
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(image)
            return
        i = order[k]
        for j in range(n):
            if used[j] or prof_b[j] != prof_a[i]:
                continue
            if all(b[j, image[p]] == a[i, p] for p in order[:k]):
                image[i], used[j] = j, True
                yield from extend(k + 1)
                image[i], used[j] = -1, False

    yield from extend(0)


def diagram_symmetries(m: CoxeterMatrix) -> list[DiagramSymmetry]:
    """The group of all label-preserving vertex permutations, sorted."""
    syms = sorted(DiagramSymmetry(p) for p in matrix_isomorphisms(m, m))
    as_set = set(syms)
    for x in syms:
        assert x.inverse() in as_set
        for y in syms:
            assert x * y in as_set
    return syms


# -- classification -----------------------------------------------------------


def _catalog_of_rank(r: int, m: CoxeterMatrix) -> list[CoxeterType]:
    if r == 1:
        return [CoxeterType("A", 1)]
    if r == 2:
        label = m[0, 1]
        return [CoxeterType("A", 2)] if label == 3 else [CoxeterType("I", label)]
    out = [CoxeterType("A", r), CoxeterType("B", r)]
    if r >= 4:
        out.append(CoxeterType("D", r))
    if r in (6, 7, 8):
        out.append(CoxeterType("E", r))
    if r == 4:
        out.append(CoxeterType("F", 4))
    if r in (3, 4):
        out.append(CoxeterType("H", r))
    return out


def classify_component(m: CoxeterMatrix) -> CoxeterType | None:
    """Type of a connected matrix, or None if it is not spherical."""
    for t in _catalog_of_rank(m.n, m):
        if next(matrix_isomorphisms(m, t.matrix()), None) is not None:
            return t
    return None


def classify_spherical(m: CoxeterMatrix) -> list[str] | None:
    """Component type names in vertex order, or None when some component is not spherical."""
    names = []
    for comp in m.components():
        t = classify_component(m.restrict(comp))
        if t is None:
            return None
        names.append(str(t))
    return names


# -- geometric representation and group enumeration ---------------------------

Matrix = tuple[tuple[ExactReal, ...], ...]


@dataclass(frozen=True)
class CoxElement:
    matrix: Matrix
    length: int
    word: tuple[int, ...]


def bilinear_form(m: CoxeterMatrix, ctx: FieldContext) -> Matrix:
    half = ctx(1) / 2
    return tuple(
        tuple(ctx(1) if i == j else -(embed_two_cos(m[i, j], ctx) * half) for j in range(m.n))
        for i in range(m.n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    zero = a[0][0] * 0
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def preserves_form(g: Matrix, form: Matrix) -> bool:
    return mat_mul(mat_mul(transpose(g), form), g) == form


def identity_matrix(n: int, ctx: FieldContext) -> Matrix:
    return tuple(tuple(ctx(1) if i == j else ctx(0) for j in range(n)) for i in range(n))


def geometric_generators(m: CoxeterMatrix, ctx: FieldContext | None = None) -> list[CoxElement]:
    """s_i(e_i) = -e_i and s_i(e_j) = e_j + 2cos(pi/m_ij) e_i; columns are images."""
    if ctx is None:
        ctx = context_for_labels(m.labels())
    for lab in m.labels():
        if ctx.L % lab:
            raise ValueError(f"label {lab} does not divide L={ctx.L}")
    gens = []
    ident = identity_matrix(m.n, ctx)
    for i in range(m.n):
        rows = [list(r) for r in ident]
        for j in range(m.n):
            rows[i][j] = ctx(-1) if i == j else embed_two_cos(m[i, j], ctx)
        gens.append(CoxElement(tuple(tuple(r) for r in rows), 1, (i,)))
    return gens


def _bit_list(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass
class GroupTable:
    """A finite Coxeter group enumerated from its geometric representation.

    Elements are integers 0..order-1 in breadth-first order, so element 0 is
    the identity and ``length`` is non-decreasing.  ``right[i][w]`` is w*s_i
    and ``left[i][w]`` is s_i*w.
    """

    n: int
    elements: list[CoxElement]
    index: dict[Matrix, int] = field(repr=False)
    right: list[list[int]] = field(repr=False)
    left: list[list[int]] = field(repr=False)
    length: list[int] = field(repr=False)
    words: list[tuple[int, ...]] = field(repr=False)
    inverse: list[int] = field(repr=False)
    ldesc: list[int] = field(repr=False)
    rdesc: list[int] = field(repr=False)
    w0: int = -1

    @property
    def order(self) -> int:
        return len(self.words)

    def gen(self, i: int) -> int:
        return self.right[i][0]

    def mul(self, u: int, v: int) -> int:
        for i in self.words[v]:
            u = self.right[i][u]
        return u

    def from_word(self, word: Sequence[int]) -> int:
        w = 0
        for i in word:
            w = self.right[i][w]
        return w

    def left_descents(self, w: int) -> set[int]:
        return set(_bit_list(self.ldesc[w]))

    def right_descents(self, w: int) -> set[int]:
        return set(_bit_list(self.rdesc[w]))


def _raw_ops(ctx: FieldContext):
    """Integer-coefficient fast path: entries of the geometric representation are
    algebraic integers, so closure can run on plain ints (degree 1) or int tuples."""
    d = ctx.degree
    if d == 1:
        def scalar(c):
            k = int(c.coeffs[0])
            return lambda x: x * k

        to_raw = lambda x: int(x.coeffs[0])  # noqa: E731
        return to_raw, scalar, int.__add__, int.__neg__, ctx

    def mul_by(c):
        # column l of the matrix of "multiply by c" is coeffs(c * theta^l)
        cols = []
        for l in range(d):
            e = ExactReal.from_poly(ctx, [0] * l + [1])
            cols.append(tuple(int(v) for v in (c * e).coeffs))
        rows = tuple(tuple(cols[l][k] for l in range(d)) for k in range(d))
        return lambda x: tuple(sum(a * b for a, b in zip(row, x)) for row in rows)

    def to_raw(x):
        assert all(v.denominator == 1 for v in x.coeffs), "non-integral entry"
        return tuple(int(v) for v in x.coeffs)

    add = lambda x, y: tuple(a + b for a, b in zip(x, y))  # noqa: E731
    neg = lambda x: tuple(-a for a in x)  # noqa: E731
    return to_raw, mul_by, add, neg, (lambda r: ExactReal.from_poly(ctx, r))


def enumerate_group(gens: Sequence[CoxElement], bound: int = DEFAULT_BOUND) -> GroupTable:
    """Breadth-first closure under right multiplication by the generators."""
    n = len(gens)
    mats = [g.matrix for g in gens]
    size = len(mats[0])
    ctx = mats[0][0][0].ctx
    to_raw, mul_by, add, neg, to_exact = _raw_ops(ctx)
    # right multiplication by s_i only touches columns j with s_i[i][j] != 0
    touched = []
    for i, s in enumerate(mats):
        touched.append([(j, mul_by(s[i][j])) for j in range(size) if j != i and s[i][j]])
    zero = to_raw(ctx(0))

    ident = tuple(tuple(to_raw(x) for x in row) for row in identity_matrix(size, ctx))
    matrices = [ident]
    index = {ident: 0}
    lengths = [0]
    words: list[tuple[int, ...]] = [()]
    parent = [-1]
    last = [-1]
    right = [[-1] for _ in range(n)]
    w = 0
    while w < len(matrices):
        mat = matrices[w]
        for i in range(n):
            if right[i][w] != -1:
                continue
            rows = [list(r) for r in mat]
            for r in rows:
                ci = r[i]
                if ci != zero:
                    for j, times_c in touched[i]:
                        r[j] = add(r[j], times_c(ci))
                    r[i] = neg(ci)
            key = tuple(tuple(r) for r in rows)
            v = index.get(key)
            if v is None:
                v = len(matrices)
                if v >= bound:
                    raise NotFiniteError(f"group not finite within bound {bound}")
                index[key] = v
                matrices.append(key)
                lengths.append(lengths[w] + 1)
                words.append(words[w] + (i,))
                parent.append(w)
                last.append(i)
                for col in right:
                    col.append(-1)
            right[i][w] = v
            right[i][v] = w  # s_i is an involution
        w += 1

    # back to exact field elements, sharing equal entries
    intern: dict = {}

    def exact(raw):
        x = intern.get(raw)
        if x is None:
            x = intern[raw] = to_exact(raw)
        return x

    matrices = [tuple(tuple(exact(x) for x in row) for row in mat) for mat in matrices]
    index = {mat: v for v, mat in enumerate(matrices)}

    order = len(matrices)
    # s*w = (s*p)*t when w = p*t; parents precede children in BFS order
    left = [[-1] * order for _ in range(n)]
    inverse = [0] * order
    for i in range(n):
        left[i][0] = right[i][0]
    for v in range(1, order):
        p, t = parent[v], last[v]
        for i in range(n):
            left[i][v] = right[t][left[i][p]]
        inverse[v] = left[t][inverse[p]]
    rdesc = [0] * order
    ldesc = [0] * order
    for v in range(order):
        lv = lengths[v]
        for i in range(n):
            if lengths[right[i][v]] < lv:
                rdesc[v] |= 1 << i
            if lengths[left[i][v]] < lv:
                ldesc[v] |= 1 << i
    top = max(lengths)
    tops = [v for v in range(order) if lengths[v] == top]
    if len(tops) != 1:
        raise AssertionError("maximal-length element is not unique")
    elements = [CoxElement(matrices[v], lengths[v], words[v]) for v in range(order)]
    return GroupTable(
        n=n,
        elements=elements,
        index=index,
        right=right,
        left=left,
        length=lengths,
        words=words,
        inverse=inverse,
        ldesc=ldesc,
        rdesc=rdesc,
        w0=tops[0],
    )


def coxeter_group(m: CoxeterMatrix, bound: int = DEFAULT_BOUND) -> GroupTable:
    return enumerate_group(geometric_generators(m), bound)


def group_queries(w: int, table: GroupTable) -> tuple[set[int], set[int], int]:
    """(left descents, right descents, length) of element ``w``."""
    if not 0 <= w < table.order:
        raise KeyError(f"element {w} not in table")
    return table.left_descents(w), table.right_descents(w), table.length[w]

"""Finite truncations of the left-divisibility order and checks run on them."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .coxeter import DiagramSymmetry
from .garside import ArtinGroup, GroupElement, MonoidElement

DEFAULT_MAX_NODES = 5_000_000


class BallOverflowError(RuntimeError):
    pass


@dataclass
class PosetBall:
    """Positive elements of height <= h with their labeled cover edges (g, i, g*s_i)."""

    h: int
    nodes: list[MonoidElement]
    heights: list[int]
    edges: list[tuple[int, int, int]]
    index: dict[MonoidElement, int] = field(repr=False)
    up: list[list[int]] = field(repr=False)
    down: list[list[int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def level(self, k: int) -> list[int]:
        return [v for v, hv in enumerate(self.heights) if hv == k]

    def level_sizes(self) -> list[int]:
        c = Counter(self.heights)
        return [c[k] for k in range(self.h + 1)]

    def below(self, v: int) -> set[int]:
        """All ball nodes left-dividing node v (v included)."""
        seen = {v}
        stack = [v]
        while stack:
            for u in self.down[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    def above(self, v: int) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            for u in self.up[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen


def build_ball(artin: ArtinGroup, h: int, max_nodes: int = DEFAULT_MAX_NODES) -> PosetBall:
    """BFS from e by right multiplication with atoms, deduplicated by normal form."""
    if h < 0:
        raise ValueError("height bound must be non-negative")
    e = MonoidElement()
    nodes = [e]
    heights = [0]
    index = {e: 0}
    edges: list[tuple[int, int, int]] = []
    frontier = [0]
    atoms = [MonoidElement((a,)) for a in artin.atoms]
    for k in range(h):
        nxt = []
        for v in frontier:
            for i, a in enumerate(atoms):
                w = artin.multiply_monoid(nodes[v], a)
                j = index.get(w)
                if j is None:
                    j = len(nodes)
                    if j >= max_nodes:
                        raise BallOverflowError(f"ball exceeds {max_nodes} nodes")
                    index[w] = j
                    nodes.append(w)
                    heights.append(k + 1)
                    nxt.append(j)
                edges.append((v, i, j))
        frontier = nxt
    up: list[list[int]] = [[] for _ in nodes]
    down: list[list[int]] = [[] for _ in nodes]
    for s, _, t in edges:
        up[s].append(t)
        down[t].append(s)
    return PosetBall(h, nodes, heights, edges, index, up, down)


def interval(artin: ArtinGroup, a: MonoidElement, b: MonoidElement) -> list[MonoidElement]:
    """All x with a <= x <= b, as a times the left divisors of a^-1 b."""
    if not artin.monoid_divides(a, b):
        raise ValueError("interval needs a <= b")
    c = artin.ldiv_monoid(a, b)
    atoms = artin.atoms
    seen = {MonoidElement(): c}
    frontier = [MonoidElement()]
    while frontier:
        nxt = []
        for x in frontier:
            q = seen[x]
            for s in atoms:
                if artin.simple_divides(s, q):
                    y = artin.multiply_monoid(x, MonoidElement((s,)))
                    if y not in seen:
                        seen[y] = artin.ldiv_simple(s, q)
                        nxt.append(y)
        frontier = nxt
    return sorted(
        (artin.multiply_monoid(a, x) for x in seen),
        key=lambda m: (artin.height(m), m.factors),
    )


# -- rigidity -------------------------------------------------------------------


@dataclass
class RigidityReport:
    type_name: str
    dual: bool
    condition1_failures: list[tuple[int, int, int]]  # (x, y, number of z)
    condition2_failures: list[tuple[int, int]]  # (x, number of z)

    @property
    def passed(self) -> bool:
        return not self.condition1_failures and not self.condition2_failures


def check_rigidity(artin: ArtinGroup, dual: bool = False, type_name: str = "") -> RigidityReport:
    """Check both rigidity conditions on the atoms.

    With ``dual`` the same conditions are evaluated in the opposite ordered group:
    its atoms are the dual atoms s_i^-1, its join is the meet and its order is reversed.
    """
    n = artin.n
    if dual:
        atoms = [artin.inv(artin.atom(i)) for i in range(n)]

        def vee(x: GroupElement, y: GroupElement) -> GroupElement:
            return artin.meet(x, y)

        def below(x: GroupElement, y: GroupElement) -> bool:
            return artin.leq(y, x)

    else:
        atoms = [artin.atom(i) for i in range(n)]
        vee = artin.join
        below = artin.leq
    joins = {(i, j): vee(atoms[i], atoms[j]) for i in range(n) for j in range(n)}
    prods = {(i, k): artin.mul(atoms[i], atoms[k]) for i in range(n) for k in range(n)}
    c1 = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            count = sum(below(prods[i, k], joins[i, j]) for k in range(n))
            if count != 1:
                c1.append((i + 1, j + 1, count))
    c2 = []
    for i in range(n):
        count = sum(
            all(not below(prods[i, k], joins[i, j]) for j in range(n)) for k in range(n)
        )
        if count > 1:
            c2.append((i + 1, count))
    return RigidityReport(type_name, dual, c1, c2)


# -- automorphisms ----------------------------------------------------------------


def _refine_colors(ball: PosetBall) -> list[int]:
    """Stable colouring of the Hasse diagram from heights and neighbour colours."""
    colors = list(ball.heights)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[u] for u in ball.down[v])),
                tuple(sorted(colors[u] for u in ball.up[v])),
            )
            for v in range(len(ball))
        ]
        palette = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == ncolors:
            return new
        colors, ncolors = new, len(palette)


def default_core_height(ball: PosetBall, max_label: int) -> int:
    """Heights on which ball automorphisms are forced by their action on atoms.

    Fixing a node of height H from the nodes below it uses joins of height
    H - 2 + m, so inside a ball of height h the argument reaches H = h - m + 2.
    """
    return max(min(ball.h, 1), min(ball.h, ball.h - max_label + 2))


def poset_automorphisms(
    ball: PosetBall, fix_identity: bool = True, core_height: int | None = None
) -> list[tuple[int, ...]]:
    """Order automorphisms of the ball, one for each distinct restriction to the core.

    Near the top of a truncated ball, sibling branches whose continuations are cut
    off can be swapped freely, so the raw automorphism group grows with h.  The
    search runs over the nodes of height <= ``core_height`` (all nodes when None),
    keeps the maps that extend to the whole ball, and returns each with the first
    extension found.  The identity is the unique minimum, so ``fix_identity`` is
    always satisfied.
    """
    core = ball.h if core_height is None else max(0, min(core_height, ball.h))
    colors = _refine_colors(ball)
    top = ball.h
    order = sorted(range(len(ball)), key=lambda v: (ball.heights[v], v))
    ncore = sum(1 for v in order if ball.heights[v] <= core)
    nlow = sum(1 for v in order if ball.heights[v] < top)
    by_lower: dict[int, dict[frozenset, list[int]]] = defaultdict(lambda: defaultdict(list))
    for v in range(len(ball)):
        by_lower[ball.heights[v]][frozenset(ball.down[v])].append(v)
    top_nodes = ball.level(top)
    phi = [-1] * len(ball)
    used = [False] * len(ball)

    def close_top() -> bool:
        # top nodes have no upper covers: match lower-cover images as multisets
        targets = by_lower[top]
        claimed: dict[frozenset, int] = defaultdict(int)
        assigned = []
        for v in top_nodes:
            key = frozenset(phi[u] for u in ball.down[v])
            pool = [w for w in targets.get(key, ()) if colors[w] == colors[v]]
            k = claimed[key]
            if k >= len(pool):
                for u in assigned:
                    phi[u] = -1
                return False
            claimed[key] = k + 1
            phi[v] = pool[k]
            assigned.append(v)
        return True

    def candidates(v: int) -> list[int]:
        if ball.heights[v] == 0:
            return [v]
        key = frozenset(phi[u] for u in ball.down[v])
        return [
            w for w in by_lower[ball.heights[v]].get(key, ()) if not used[w] and colors[w] == colors[v]
        ]

    def extend(pos: int) -> bool:
        if pos == nlow:
            return top > core and close_top() or top <= core
        v = order[pos]
        for w in candidates(v):
            phi[v], used[w] = w, True
            if extend(pos + 1):
                return True
            phi[v], used[w] = -1, False
        return False

    results: list[tuple[int, ...]] = []

    def search(pos: int) -> None:
        if pos == ncore:
            saved = list(phi), list(used)
            if pos >= nlow:
                ok = top > core and close_top() or top <= core
            else:
                ok = extend(pos)
            if ok:
                results.append(tuple(phi))
            phi[:], used[:] = saved
            return
        v = order[pos]
        for w in candidates(v):
            phi[v], used[w] = w, True
            search(pos + 1)
            phi[v], used[w] = -1, False

    search(0)
    return sorted(results)


def atom_permutation(ball: PosetBall, auto: tuple[int, ...]) -> DiagramSymmetry:
    """Permutation of generator indices induced by an automorphism on the atoms."""
    # BFS order puts atom i at node i + 1
    n = len(ball.level(1))
    return DiagramSymmetry(tuple(auto[i + 1] - 1 for i in range(n)))


def symmetry_on_ball(artin: ArtinGroup, ball: PosetBall, phi: DiagramSymmetry) -> tuple[int, ...]:
    """The node map induced by a diagram symmetry."""
    out = []
    for m in ball.nodes:
        g = artin.apply_symmetry(phi, GroupElement(0, m.factors))
        out.append(ball.index[artin.positive_part(g)])
    return tuple(out)


def is_ball_automorphism(ball: PosetBall, auto: tuple[int, ...]) -> bool:
    if sorted(auto) != list(range(len(ball))):
        return False
    edges = {(s, t) for s, _, t in ball.edges}
    return all((auto[s], auto[t]) in edges for s, t in edges)


# -- export -----------------------------------------------------------------------


def export_dot(artin: ArtinGroup, ball: PosetBall, name: str = "ball") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v, m in enumerate(ball.nodes):
        lines.append(f'  n{v} [label="{artin.render_normal_form(m)}"];')
    for s, i, t in ball.edges:
        lines.append(f'  n{s} -> n{t} [label="{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

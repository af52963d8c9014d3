import itertools

import pytest

from artinlab.coxeter import diagram_symmetries
from artinlab.garside import MonoidElement, artin_group
from artinlab.order import (
    BallOverflowError,
    atom_permutation,
    build_ball,
    check_rigidity,
    default_core_height,
    export_dot,
    interval,
    is_ball_automorphism,
    poset_automorphisms,
    symmetry_on_ball,
)
from oracles import HasseOracle


def test_ball_sizes():
    G = artin_group("A_2")
    assert len(build_ball(G, 0)) == 1
    assert len(build_ball(G, 1)) == 3
    assert len(build_ball(G, 2)) == 7
    with pytest.raises(ValueError):
        build_ball(G, -1)
    with pytest.raises(BallOverflowError):
        build_ball(G, 6, max_nodes=20)


@pytest.mark.parametrize("name,h", [("A_2", 6), ("A_3", 5), ("I_5", 7), ("B_3", 5)])
def test_ball_matches_oracle(name, h):
    G = artin_group(name)
    ball = build_ball(G, h)
    oracle = HasseOracle(G.matrix.entries, h)
    assert ball.level_sizes() == [len(level) for level in oracle.levels]
    for s, _, t in ball.edges:
        assert ball.heights[t] == ball.heights[s] + 1


def test_ball_contains_top_interval():
    G = artin_group("I_5")
    ball = build_ball(G, 5)
    top = interval(G, MonoidElement(), MonoidElement((G.delta,)))
    assert len(top) == 10
    assert all(x in ball.index for x in top)


def test_interval_examples():
    G = artin_group("A_2")
    a = G.monoid([0, 1])
    assert interval(G, a, a) == [a]
    assert len(interval(G, MonoidElement(), MonoidElement((G.delta,)))) == 6
    F = artin_group("F_4")
    j = F.join_monoid(F.monoid([1]), F.monoid([2]))
    assert len(interval(F, MonoidElement(), j)) == 8
    with pytest.raises(ValueError):
        interval(G, G.monoid([0]), G.monoid([1]))


def test_interval_translates():
    G = artin_group("A_3")
    a, b = G.monoid([0, 2]), G.monoid([1, 0])
    ab = G.multiply_monoid(a, b)
    inner = interval(G, MonoidElement(), b)
    assert sorted(interval(G, a, ab), key=lambda m: m.factors) == sorted(
        (G.multiply_monoid(a, x) for x in inner), key=lambda m: m.factors
    )


@pytest.mark.parametrize("name", ["A_2", "A_3", "B_3", "D_4", "F_4", "I_5", "I_7"])
def test_interval_size_law(name):
    G = artin_group(name)
    for i, j in itertools.combinations(range(G.n), 2):
        top = G.join_monoid(G.monoid([i]), G.monoid([j]))
        assert len(interval(G, MonoidElement(), top)) == 2 * G.matrix[i, j]


@pytest.mark.parametrize("name", ["A_2", "A_3", "A_4", "B_3", "D_4", "I_4", "I_7", "I_8", "H_3"])
@pytest.mark.parametrize("dual", [False, True])
def test_rigidity(name, dual):
    report = check_rigidity(artin_group(name), dual=dual, type_name=name)
    assert report.passed, report


def test_unique_height():
    G = artin_group("B_3")
    ball = build_ball(G, 5)
    # every maximal chain has the same length: longest and shortest paths agree
    longest = [0] * len(ball)
    shortest = [0] * len(ball)
    for v in sorted(range(len(ball)), key=lambda v: ball.heights[v])[1:]:
        longest[v] = 1 + max(longest[u] for u in ball.down[v])
        shortest[v] = 1 + min(shortest[u] for u in ball.down[v])
    assert longest == shortest == ball.heights


@pytest.mark.parametrize(
    "name,h,count",
    [("A_2", 4, 2), ("D_4", 4, 6), ("A_2", 5, 2), ("A_3", 5, 2), ("I_5", 7, 2), ("F_4", 6, 2)],
)
def test_ball_automorphisms(name, h, count):
    G = artin_group(name)
    ball = build_ball(G, h)
    autos = poset_automorphisms(ball, core_height=default_core_height(ball, max(G.matrix.labels())))
    assert len(autos) == count
    syms = set(diagram_symmetries(G.matrix))
    assert {atom_permutation(ball, a) for a in autos} == syms
    for a in autos:
        assert a[0] == 0
        assert is_ball_automorphism(ball, a)


def test_full_ball_automorphisms_grow():
    # near the top, cut-off branches swap freely; the core restriction does not
    G = artin_group("A_2")
    ball = build_ball(G, 3)
    full = poset_automorphisms(ball)
    assert len(full) > 2
    assert all(is_ball_automorphism(ball, a) for a in full)
    assert {atom_permutation(ball, a) for a in full} == set(diagram_symmetries(G.matrix))


@pytest.mark.parametrize("name,h", [("D_4", 3), ("A_4", 4), ("E_6", 2)])
def test_symmetries_act_on_balls(name, h):
    G = artin_group(name)
    ball = build_ball(G, h)
    for phi in diagram_symmetries(G.matrix):
        auto = symmetry_on_ball(G, ball, phi)
        assert is_ball_automorphism(ball, auto)
        assert atom_permutation(ball, auto) == phi


def test_is_ball_automorphism_rejects():
    ball = build_ball(artin_group("A_2"), 2)
    assert not is_ball_automorphism(ball, tuple(range(len(ball) - 1)))
    swap = list(range(len(ball)))
    swap[0], swap[1] = 1, 0
    assert not is_ball_automorphism(ball, tuple(swap))


def test_export_dot():
    G = artin_group("A_2")
    ball = build_ball(G, 1)
    dot = export_dot(G, ball)
    assert dot.count("[label=") == 3 + 2
    assert dot.count("->") == 2
    assert dot == export_dot(G, build_ball(G, 1))
    big = build_ball(G, 4)
    assert export_dot(G, big).count(" [label=\"") - export_dot(G, big).count("->") == len(big)


def test_dot_top_interval_is_two_chains():
    G = artin_group("I_4")
    ball = build_ball(G, 4)
    top = set(interval(G, MonoidElement(), MonoidElement((G.delta,))))
    nodes = {ball.index[x] for x in top}
    sub = [(s, t) for s, _, t in ball.edges if s in nodes and t in nodes]
    assert len(nodes) == 8 and len(sub) == 8
    e, d = ball.index[MonoidElement()], ball.index[MonoidElement((G.delta,))]
    inner = nodes - {e, d}
    # each inner node has one lower and one upper neighbour inside the interval
    for v in inner:
        assert sum(1 for s, t in sub if t == v) == 1
        assert sum(1 for s, t in sub if s == v) == 1
    # removing e and Delta leaves two chains of three nodes each
    adj = {v: set() for v in inner}
    for s, t in sub:
        if s in inner and t in inner:
            adj[s].add(t)
            adj[t].add(s)
    comps = []
    seen: set[int] = set()
    for v in inner:
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            x = stack.pop()
            if x not in comp:
                comp.add(x)
                stack.extend(adj[x])
        seen |= comp
        comps.append(len(comp))
    assert sorted(comps) == [3, 3]
    dot = export_dot(G, ball)
    for v in nodes:
        assert f"  n{v} [label=" in dot


@pytest.mark.parametrize("name,h", [("A_3", 4), ("I_5", 5)])
def test_engine_meet_join_match_ball_order(name, h):
    G = artin_group(name)
    ball = build_ball(G, h)
    below = [ball.below(v) for v in range(len(ball))]
    nodes = range(0, len(ball), max(1, len(ball) // 40))
    for u, v in itertools.product(nodes, repeat=2):
        common = below[u] & below[v]
        # the meet is the unique common lower bound above all others
        (m,) = [w for w in common if common <= below[w]]
        assert ball.nodes[m] == G.gcd_monoid(ball.nodes[u], ball.nodes[v])
        upper = [w for w in range(len(ball)) if u in below[w] and v in below[w]]
        j = G.join_monoid(ball.nodes[u], ball.nodes[v])
        if j in ball.index:
            assert ball.index[j] in upper
            assert all(ball.index[j] in below[w] for w in upper)
        else:
            assert not upper

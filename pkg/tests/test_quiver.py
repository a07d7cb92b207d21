import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compmachine import CyclicQuiver, NotComposable, Path, Quiver, concatenate, enumerate_paths, is_acyclic, subquiver
from compmachine.errors import QuiverError, UnknownArrow

from oracles import count_paths_matrix, dfs_paths, random_dag

EX31 = Quiver.from_arrows(
    [f"x{i}" for i in range(1, 9)],
    [("a1", "x1", "x2"), ("a2", "x2", "x3"), ("a3", "x3", "x4"),
     ("a4", "x1", "x5"), ("a5", "x6", "x7"), ("a6", "x7", "x8")],
)

SEC5 = Quiver.from_arrows(
    [f"x{i}" for i in range(1, 14)],
    [(f"a{i}", f"x{i}", f"x{i + 1}") for i in range(1, 7)]
    + [("a7", "x8", "x9")]
    + [(f"a{i}", f"x{i + 2}", f"x{i + 3}") for i in range(8, 11)],
)


def test_quiver_rejects_bad_structure():
    with pytest.raises(QuiverError):
        Quiver.from_arrows(["x"], [("a", "x", "y")])
    with pytest.raises(QuiverError):
        Quiver.from_arrows(["x", "x"], [])
    with pytest.raises(QuiverError):
        Quiver.from_arrows(["x", "1y"], [])


def test_is_acyclic():
    assert is_acyclic(SEC5)
    assert is_acyclic(Quiver.empty())
    assert not is_acyclic(Quiver.from_arrows(["x", "y"], [("a", "x", "y"), ("b", "y", "x")]))
    assert not is_acyclic(Quiver.from_arrows(["x"], [("loop", "x", "x")]))


def test_enumerate_example31_non_trivial():
    got = [p.arrows for p in enumerate_paths(EX31, 1)]
    assert got == [
        ("a1",), ("a2",), ("a3",), ("a4",), ("a5",), ("a6",),
        ("a1", "a2"), ("a2", "a3"), ("a5", "a6"),
        ("a1", "a2", "a3"),
    ]


def test_enumerate_example31_with_trivial():
    paths = enumerate_paths(EX31, 0)
    assert len(paths) == 18
    assert [p.source for p in paths[:8]] == [f"x{i}" for i in range(1, 9)]
    assert all(p.is_trivial for p in paths[:8])


def test_enumerate_single_arrow():
    q = Quiver.from_arrows(["x", "y"], [("a", "x", "y")])
    assert enumerate_paths(q, 0) == [Path.trivial("x"), Path.trivial("y"), Path(("a",), "x", "y")]


def test_enumerate_min_length_filters():
    assert [p.arrows for p in enumerate_paths(EX31, 3)] == [("a1", "a2", "a3")]
    assert enumerate_paths(EX31, 4) == []


def test_enumerate_rejects_cycles():
    with pytest.raises(CyclicQuiver):
        enumerate_paths(Quiver.from_arrows(["x", "y"], [("a", "x", "y"), ("b", "y", "x")]))


def test_concatenate():
    p1 = Path.of(EX31, ["a1"])
    p23 = Path.of(EX31, ["a2", "a3"])
    assert concatenate(p1, p23).arrows == ("a1", "a2", "a3")
    q = Quiver.from_arrows(["x", "y"], [("a", "x", "y")])
    pa = Path.of(q, ["a"])
    assert concatenate(Path.trivial("x"), pa) == pa
    with pytest.raises(NotComposable):
        concatenate(Path.of(EX31, ["a1"]), Path.of(EX31, ["a5"]))


def test_path_of_checks_chain():
    with pytest.raises(QuiverError):
        Path.of(EX31, ["a1", "a3"])
    with pytest.raises(UnknownArrow):
        Path.of(EX31, ["nope"])


def test_subquiver():
    sub = subquiver(SEC5, {"a1", "a2", "a4", "a5", "a7", "a10"})
    assert sub.vertices == ("x1", "x2", "x3", "x4", "x5", "x6", "x8", "x9", "x12", "x13")
    assert sub.arrows == ("a1", "a2", "a4", "a5", "a7", "a10")
    assert subquiver(SEC5, set()) == Quiver.empty()
    full = subquiver(SEC5, SEC5.arrows)
    assert len(full.vertices) == 13 and len(full.arrows) == 10
    with pytest.raises(UnknownArrow):
        subquiver(SEC5, {"a99"})


@pytest.mark.parametrize("seed", range(50))
def test_path_count_matches_oracles(seed):
    vertices, arrows = random_dag(random.Random(seed))
    q = Quiver.from_arrows(vertices, arrows)
    got = enumerate_paths(q, 1)
    brute = dfs_paths(vertices, arrows)
    assert len(got) == len(brute) == count_paths_matrix(vertices, arrows)
    assert sorted(p.arrows for p in got) == sorted(brute)
    assert len(enumerate_paths(q, 0)) == len(brute) + len(vertices)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_enumerated_paths_are_chains_and_ordered(seed):
    vertices, arrows = random_dag(random.Random(seed))
    q = Quiver.from_arrows(vertices, arrows)
    paths = enumerate_paths(q, 0)
    for p in paths:
        if p.arrows:
            assert p.source == q.source[p.arrows[0]] and p.target == q.target[p.arrows[-1]]
        for a, b in zip(p.arrows, p.arrows[1:]):
            assert q.target[a] == q.source[b]
    keys = [(p.length, [q.arrow_index[a] for a in p.arrows]) for p in paths if p.arrows]
    assert keys == sorted(keys)
    assert len(set(paths)) == len(paths)


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_concatenation_associative_and_unital(seed):
    vertices, arrows = random_dag(random.Random(seed), max_arrows=8)
    q = Quiver.from_arrows(vertices, arrows)
    paths = enumerate_paths(q, 0)
    by_source = {}
    for p in paths:
        by_source.setdefault(p.source, []).append(p)
    for p in paths:
        assert concatenate(Path.trivial(p.source), p) == p
        assert concatenate(p, Path.trivial(p.target)) == p
        for p2 in by_source.get(p.target, []):
            for p3 in by_source.get(p2.target, []):
                assert concatenate(concatenate(p, p2), p3) == concatenate(p, concatenate(p2, p3))

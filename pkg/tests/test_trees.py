import itertools

import pytest
from hypothesis import given, strategies as st

from treedom.trees import (
    Disconnected,
    DuplicateEdge,
    OutOfRange,
    SelfLoop,
    TreeError,
    WrongEdgeCount,
    all_labeled_trees,
    all_unlabeled_trees,
    canonical_form,
    build_t_k,
    induced_subtree,
    is_descendant,
    path_tree,
    prufer_code,
    random_tree,
    random_trees,
    root_at,
    star_tree,
    tree_from_edges,
    tree_from_prufer,
)


def test_single_vertex():
    t = tree_from_edges(1, [])
    assert t.n == 1 and t.edges == () and t.adjacency == ((),)


def test_path_construction():
    t = tree_from_edges(3, [(0, 1), (1, 2)])
    assert t.adjacency == ((1,), (0, 2), (1,))


@pytest.mark.parametrize("n, edges, err", [
    (4, [(0, 1), (1, 2), (2, 0)], (WrongEdgeCount, Disconnected)),
    (4, [(0, 1), (1, 2)], WrongEdgeCount),
    (3, [(0, 0), (1, 2)], SelfLoop),
    (3, [(0, 1), (1, 0)], DuplicateEdge),
    (3, [(0, 1), (1, 5)], OutOfRange),
    (0, [], TreeError),
])
def test_invalid_edge_lists(n, edges, err):
    with pytest.raises(err):
        tree_from_edges(n, edges)


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        tree_from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)])


def test_adjacency_symmetric_and_sorted():
    t = tree_from_edges(5, [(3, 0), (0, 4), (4, 1), (2, 4)])
    for v in range(t.n):
        assert list(t.adjacency[v]) == sorted(t.adjacency[v])
        for w in t.adjacency[v]:
            assert v in t.adjacency[w]


def test_root_at_depths():
    p3 = path_tree(3)
    assert root_at(p3, 1).depth == (1, 0, 1)
    assert root_at(p3, 0).depth == (0, 1, 2)
    with pytest.raises(OutOfRange):
        root_at(p3, 3)


def test_root_tables_consistent():
    t = random_tree(30, 5)
    rt = root_at(t, 7)
    assert rt.parent[7] is None and rt.depth[7] == 0
    kids = sorted(c for cs in rt.children for c in cs)
    assert kids == sorted(set(range(30)) - {7})
    for v in range(30):
        if v != 7:
            assert v in rt.children[rt.parent[v]]
            assert rt.depth[v] == rt.depth[rt.parent[v]] + 1
    assert rt == root_at(t, 7)
    assert rt.order[0] == 7 and sorted(rt.order) == list(range(30))


def test_is_descendant():
    rt = root_at(path_tree(3), 0)
    assert is_descendant(rt, 2, 1)
    assert not is_descendant(rt, 1, 2)
    assert not is_descendant(rt, 1, 1)
    for x in range(1, 3):
        assert not is_descendant(rt, 0, x)
    assert is_descendant(rt, 2, 0)


def test_path_and_star():
    assert path_tree(2).edges == star_tree(2).edges
    assert star_tree(4).degrees() == [3, 1, 1, 1]
    assert path_tree(4).degrees() == [1, 2, 2, 1]
    assert path_tree(1).n == 1


def test_prufer_small_cases():
    assert tree_from_prufer([]).edges == ((0, 1),)
    star = tree_from_prufer([1, 1])
    assert star.degrees() == [1, 3, 1, 1]
    trees = {tree_from_prufer(s).edges for s in itertools.product(range(4), repeat=2)}
    assert len(trees) == 16
    with pytest.raises(OutOfRange):
        tree_from_prufer([4, 0])


@pytest.mark.parametrize("n", range(2, 9))
def test_prufer_round_trip_exhaustive(n):
    for seq in itertools.product(range(n), repeat=n - 2):
        assert tuple(prufer_code(tree_from_prufer(seq))) == seq


def test_labeled_tree_counts():
    assert [sum(1 for _ in all_labeled_trees(n)) for n in range(1, 7)] == [1, 1, 3, 16, 125, 1296]


def test_random_tree_deterministic():
    assert random_tree(5, 7).edges == random_tree(5, 7).edges
    assert random_tree(2, 123).edges == ((0, 1),)


def test_random_tree_sweep_valid():
    for seed in range(1000):
        t = random_tree(10, seed)
        # re-run the validator on the produced edges
        assert tree_from_edges(10, t.edges) == t


def test_random_trees_orders():
    ts = list(random_trees(50, 3, 9, seed=1))
    assert all(3 <= t.n <= 9 for t in ts)
    assert [t.edges for t in ts] == [t.edges for t in random_trees(50, 3, 9, seed=1)]


@pytest.mark.parametrize("k, n", [(1, 13), (2, 22), (4, 40)])
def test_t_k_order(k, n):
    t, labels = build_t_k(k)
    assert t.n == n == 9 * k + 4
    assert len(labels) == n


def test_t_k_shape():
    t, lab = build_t_k(2)
    for i in (1, 2, 3):
        assert t.degree(lab[f"v{i}"]) == 3
    rt = root_at(t, lab["v0"])
    assert max(rt.depth) == 4
    for i in (1, 2, 3):
        for j in (1, 2):
            assert rt.depth[lab[f"x{i}_{j}"]] == 2
            assert rt.depth[lab[f"y{i}_{j}"]] == 3
            assert rt.depth[lab[f"z{i}_{j}"]] == 4
            assert is_descendant(rt, lab[f"z{i}_{j}"], lab[f"v{i}"])
    # ids follow BFS order from v0
    assert list(rt.order) == list(range(t.n))
    assert max(root_at(build_t_k(1)[0], 0).depth) == 4
    with pytest.raises(TreeError):
        build_t_k(0)


def test_induced_subtree():
    t = path_tree(6)
    sub, l2g = induced_subtree(t, [2, 3, 4])
    assert l2g == [2, 3, 4] and sub.edges == ((0, 1), (1, 2))


@given(st.integers(2, 12).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)))
def test_prufer_decode_valid(seq):
    t = tree_from_prufer(seq)
    assert len(t.edges) == t.n - 1
    assert prufer_code(t) == list(seq)


def test_unlabeled_counts():
    counts = [len(all_unlabeled_trees(n)) for n in range(1, 13)]
    assert counts == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


@pytest.mark.parametrize("n", range(1, 8))
def test_unlabeled_classes_cover_labeled(n):
    reps = {canonical_form(t) for t in all_unlabeled_trees(n)}
    assert {canonical_form(t) for t in all_labeled_trees(n)} == reps
    assert len(reps) == len(all_unlabeled_trees(n))


@given(st.integers(2, 12).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)),
    st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(seq, rnd):
    t = tree_from_prufer(seq)
    perm = list(range(t.n))
    rnd.shuffle(perm)
    u = tree_from_edges(t.n, [(perm[a], perm[b]) for a, b in t.edges])
    assert canonical_form(u) == canonical_form(t)
    assert canonical_form(t) != canonical_form(path_tree(t.n)) or t.degrees().count(1) == 2

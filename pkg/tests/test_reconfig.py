import itertools
import random

import pytest

from treedom.critical import NotMinimal, decompose
from treedom.domination import (
    NotDominating,
    enumerate_dominating_sets,
    enumerate_minimal_dominating_sets,
    is_dominating,
    is_minimal_dominating,
    upper_domination_number,
)
from treedom.io import load_fixture
from treedom.reconfig import (
    NotConnectedSubtree,
    NotInA1,
    PreconditionViolated,
    XNotIndependent,
    XNotInN2,
    check_a2_preconditions,
    check_algterm_preconditions,
    find_larger_minimal,
    hall_violations,
    make_minimal,
    reconfigure_a1,
    reconfigure_a2_subset,
)
from treedom.trees import (
    all_labeled_trees,
    is_descendant,
    path_tree,
    random_trees,
    root_at,
    star_tree,
)


def check_trace_steps(rt, trace):
    """Per-swap invariants of a MakeMinimal trace on rooted tree ``rt``."""
    t = rt.tree
    prev = trace.start
    last_depth = -1
    for step in trace.steps:
        assert step.result == (prev - step.removed) | step.added
        assert is_dominating(t, step.result)
        assert len(step.result) >= len(prev)
        assert rt.depth[step.u] >= last_depth
        last_depth = rt.depth[step.u]
        before = decompose(t, prev)
        assert step.removed <= before.a1
        assert len({rt.depth[a] for a in step.removed}) <= 1
        # every descendant of A is dominated afterwards
        for w in range(t.n):
            if w in step.removed or any(is_descendant(rt, w, a) for a in step.removed):
                assert any(z in step.result for z in (w, *t.adjacency[w]))
        if all(rt.parent[v] in step.removed for v in step.added):
            after = decompose(t, step.result)
            for v in step.added:
                assert not any(w in step.result for w in t.adjacency[v])
                assert v in after.a
            for x in before.a & after.supported:
                assert rt.parent[x] not in step.result
                gp = rt.parent[rt.parent[x]] if rt.parent[x] is not None else None
                assert gp in step.added
        prev = step.result
    assert prev == trace.output_set


def test_precondition_examples():
    rt = root_at(path_tree(4), 0)
    rep = check_algterm_preconditions(rt, {0, 1, 2})
    assert not rep.condition_a and rep.witness_a == 1
    assert not rep.ok
    with pytest.raises(PreconditionViolated) as exc:
        make_minimal(rt, {0, 1, 2})
    assert exc.value.report == rep
    assert check_algterm_preconditions(rt, {1, 3}).ok
    with pytest.raises(NotDominating):
        check_algterm_preconditions(rt, {0})


def test_precondition_witnesses_are_genuine():
    for t in random_trees(30, 2, 9, seed=2):
        rt = root_at(t, 0)
        for s in enumerate_dominating_sets(t):
            rep = check_algterm_preconditions(rt, s)
            sup = decompose(t, s).supported
            if rep.witness_a is not None:
                assert rep.witness_a in sup and rt.parent[rep.witness_a] in s
            else:
                assert all(rt.parent[v] not in s for v in sup)
            if rep.witness_b is not None:
                x, y = rep.witness_b
                assert {x, y} <= sup and is_descendant(rt, x, y)
            else:
                assert not any(is_descendant(rt, x, y) for x in sup for y in sup)


def test_minimal_input_takes_no_steps():
    rt = root_at(path_tree(5), 0)
    tr = make_minimal(rt, {1, 3})
    assert tr.terminated and tr.steps == [] and tr.output_set == {1, 3}


def test_forced_run_is_untrusted():
    rt = root_at(path_tree(4), 0)
    tr = make_minimal(rt, {0, 1, 2}, force=True)
    assert not tr.trusted
    assert tr.terminated or tr.step_cap_hit


def _valid_pairs(count, n_max, seed):
    rnd = random.Random(seed)
    out = []
    for t in random_trees(10 * count, 3, n_max, seed):
        rt = root_at(t, rnd.randrange(t.n))
        cands = [s for s in enumerate_dominating_sets(t)
                 if check_algterm_preconditions(rt, s).ok]
        if cands:
            out.append((rt, rnd.choice(cands)))
        if len(out) == count:
            break
    return out


def test_make_minimal_random_valid_inputs():
    pairs = _valid_pairs(200, 14, seed=17)
    assert len(pairs) == 200
    nontrivial = 0
    for rt, m0 in pairs:
        tr = make_minimal(rt, m0)
        assert tr.terminated and not tr.step_cap_hit and tr.trusted
        assert is_minimal_dominating(rt.tree, tr.output_set)
        assert len(tr.output_set) >= len(m0)
        assert len(tr.steps) <= rt.tree.n
        check_trace_steps(rt, tr)
        nontrivial += bool(tr.steps)
    assert nontrivial > 20


def test_makeminimal_fixture_trace():
    t, _, sets = load_fixture("makeminimal_example")
    rt = root_at(t, 0)
    tr = make_minimal(rt, sets["m0"])
    assert tr.terminated and len(tr.steps) == 2
    assert [(s.u, sorted(s.removed), sorted(s.added)) for s in tr.steps] == [
        (1, [2], [3, 13]), (5, [6, 8], [7, 9])]
    assert len(tr.output_set) == len(sets["m0"]) + 1
    assert is_minimal_dominating(t, tr.output_set)
    check_trace_steps(rt, tr)


@pytest.mark.parametrize("t, m, v, expected", [
    (path_tree(3), {1}, 1, {0, 2}),
    (star_tree(4), {0}, 0, {1, 2, 3}),
])
def test_reconfigure_a1_examples(t, m, v, expected):
    tr = reconfigure_a1(t, m, v)
    assert tr.output_set == expected and tr.terminated


def test_reconfigure_a1_errors():
    with pytest.raises(NotMinimal):
        reconfigure_a1(path_tree(3), {0, 1}, 1)
    with pytest.raises(NotInA1):
        reconfigure_a1(path_tree(4), {1, 3}, 3)


def test_reconfigure_a1_properties():
    for t in random_trees(60, 3, 11, seed=9):
        for m in enumerate_minimal_dominating_sets(t):
            d = decompose(t, m)
            for v in d.a1:
                tr = reconfigure_a1(t, m, v)
                assert tr.terminated and is_minimal_dominating(t, tr.output_set)
                assert len(tr.output_set) >= tr.size_bound >= len(m)
                if sum(w in d.n1 for w in t.adjacency[v]) >= 2:
                    assert len(tr.output_set) > len(m)
                check_trace_steps(root_at(t, v), tr)


def test_a2_fixture_trace():
    t, _, sets = load_fixture("a2_subset_example")
    m, x = sets["m"], sets["x"]
    tr = reconfigure_a2_subset(t, m, x)
    assert tr.terminated and is_minimal_dominating(t, tr.output_set)
    assert tr.size_bound == len(m) + 1
    assert len(tr.output_set) >= tr.size_bound
    assert [r.iterations for r in tr.subtrees] == [1, 0, 0]
    assert {s.subtree_root for s in tr.steps} == {min(x)}
    # T_x are vertex-disjoint
    seen = set()
    for r in tr.subtrees:
        assert not seen & r.vertices
        seen |= r.vertices


def _valid_xs(t, m, max_size=3):
    n2 = sorted(decompose(t, m).n2)
    for k in range(1, min(max_size, len(n2)) + 1):
        for xs in itertools.combinations(n2, k):
            try:
                check_a2_preconditions(t, m, frozenset(xs))
            except (XNotIndependent, NotConnectedSubtree):
                continue
            yield frozenset(xs)


def _check_a2_runs(trees):
    runs = 0
    for t in trees:
        for m in enumerate_minimal_dominating_sets(t):
            for x in _valid_xs(t, m):
                tr = reconfigure_a2_subset(t, m, x)
                assert tr.terminated and tr.trusted
                assert is_minimal_dominating(t, tr.output_set)
                assert len(tr.output_set) >= tr.size_bound
                for step in tr.steps:
                    assert is_dominating(t, step.result)
                runs += 1
    return runs


@pytest.mark.parametrize("n", range(3, 7))
def test_a2_exhaustive_small(n):
    assert _check_a2_runs(all_labeled_trees(n)) > 0


def test_a2_random_up_to_12():
    assert _check_a2_runs(random_trees(100, 7, 12, seed=31)) > 100


def test_a2_errors():
    p4 = path_tree(4)
    with pytest.raises(NotMinimal):
        reconfigure_a2_subset(p4, {0, 1, 3}, {2})
    with pytest.raises(XNotInN2):
        reconfigure_a2_subset(p4, {1, 3}, {0})
    with pytest.raises(XNotInN2):
        reconfigure_a2_subset(p4, {1, 3}, set())
    p7 = path_tree(7)
    m = {0, 2, 4, 6}
    d = decompose(p7, m)
    assert {1, 3, 5} <= d.n2
    with pytest.raises(NotConnectedSubtree):
        reconfigure_a2_subset(p7, m, {1, 5})


def test_a2_dependent_x_rejected():
    for t in random_trees(200, 4, 10, seed=6):
        for m in enumerate_minimal_dominating_sets(t):
            n2 = decompose(t, m).n2
            pair = next(((u, v) for u, v in t.edges if u in n2 and v in n2), None)
            if pair:
                with pytest.raises(XNotIndependent):
                    reconfigure_a2_subset(t, m, set(pair))
                return
    pytest.fail("no minimal set with adjacent n2 vertices found")


def test_find_larger_minimal_examples():
    assert find_larger_minimal(path_tree(3), {1}) == {0, 2}
    with pytest.raises(NotMinimal):
        find_larger_minimal(path_tree(3), {0, 1})
    for t in random_trees(40, 2, 10, seed=12):
        G = upper_domination_number(t)
        for m in enumerate_minimal_dominating_sets(t):
            nxt = find_larger_minimal(t, m)
            if len(m) == G:
                assert nxt is None
            else:
                assert nxt is not None
                assert is_minimal_dominating(t, nxt) and len(nxt) > len(m)


@pytest.mark.parametrize("n", range(1, 7))
def test_closure_reaches_gamma(n):
    for t in all_labeled_trees(n):
        G = upper_domination_number(t)
        for m in enumerate_minimal_dominating_sets(t):
            cur, steps = m, 0
            while (nxt := find_larger_minimal(t, cur)) is not None:
                cur, steps = nxt, steps + 1
            assert len(cur) == G and steps <= n


def test_hall_violations_smallest_first():
    t = star_tree(4)
    m = frozenset({1, 2, 3})
    assert decompose(t, m).n2 == {0}
    assert list(hall_violations(t, m)) == []
    found = 0
    for t in random_trees(40, 4, 10, seed=3):
        for m in enumerate_minimal_dominating_sets(t):
            d = decompose(t, m)
            xs = list(hall_violations(t, m))
            assert [len(x) for x in xs] == sorted(len(x) for x in xs)
            for x in xs:
                assert x <= d.n2
                nb = {w for v in x for w in t.adjacency[v]}
                assert len(x) > len(nb & d.a2)
            found += bool(xs)
    assert found


def test_trace_json_keys():
    t, _, sets = load_fixture("a2_subset_example")
    js = reconfigure_a2_subset(t, sets["m"], sets["x"]).to_json()
    assert {"steps", "input", "output", "terminated", "step_cap_hit"} <= set(js)
    assert set(js["steps"][0]) == {"i", "u", "A", "N", "M", "x"}

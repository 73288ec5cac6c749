from collections import Counter

import pytest

from src import automorphism as aut
from src import finite_subgroup as fs
from src import spine as sp
from src import word_core as wc
from src.errors import IllegalCollapse, OriginIsLeaf, OriginNotLabeled, RankMismatch, UnsupportedRank
from src.spine import GraphShape, StarClass


def _zero_star_shape(n, center=0):
    leaves = [v for v in range(n + 1) if v != center]
    return GraphShape(n, n + 1, tuple((center, v) for v in leaves), frozenset(leaves))


def _f_star_shape(n):
    return GraphShape(n, n, tuple((0, i) for i in range(1, n)), frozenset(range(n)))


def _f_star_slots(n):
    slots = {0: n}
    slots.update({i: i for i in range(1, n)})
    return slots


# --- shapes ---

def test_rank_two_has_one_shape():
    shapes = sp.enumerate_shapes(2)
    assert len(shapes) == 1
    assert shapes[0].order == 2
    assert sp.twist_kernel_rank(shapes[0]) == 0


def test_rank_three_shapes():
    shapes = sp.enumerate_shapes(3)
    assert sorted(sp.classify_star(s).value for s in shapes) == ["FStar", "ZeroStar"]


def test_rank_four_shapes():
    shapes = sp.enumerate_shapes(4)
    assert len(shapes) == 5
    classes = Counter(sp.classify_star(s) for s in shapes)
    assert classes[StarClass.ZERO_STAR] == 1
    assert classes[StarClass.F_STAR] == 1
    assert sorted(sp.twist_kernel_rank(s) for s in shapes) == [0, 0, 1, 2, 2]
    assert all(not sp.shape_violations(s) for s in shapes)


def test_enumeration_rank_guard():
    with pytest.raises(UnsupportedRank):
        sp.enumerate_shapes(7)
    with pytest.raises(UnsupportedRank):
        sp.enumerate_shapes(1)


def test_pointed_f_star_reaches_rank_n_minus_one():
    shape = GraphShape(4, 4, _f_star_shape(4).edges, frozenset(range(4)), base=0)
    assert sp.twist_kernel_rank(shape) == 3
    assert sp.classify_star(shape) == StarClass.F_STAR


def test_pointed_star_based_at_leaf_is_other():
    shape = GraphShape(4, 4, _f_star_shape(4).edges, frozenset(range(4)), base=2)
    assert sp.classify_star(shape) == StarClass.OTHER


def test_shape_violations():
    bad = GraphShape(3, 3, ((0, 1), (1, 2)), frozenset({0, 2}))
    problems = sp.shape_violations(bad)
    assert "2 labeled vertices, expected 3" in problems
    assert "trivial vertex 1 has degree 2" in problems
    cycle = GraphShape(3, 3, ((0, 1), (1, 2), (0, 2)), frozenset({0, 1, 2}))
    assert "underlying graph is not a tree" in sp.shape_violations(cycle)


def test_canonical_form_ignores_numbering():
    assert sp.shape_code(_zero_star_shape(4, center=4)) == sp.shape_code(_zero_star_shape(4))
    assert sp.shape_code(_zero_star_shape(4)) != sp.shape_code(_f_star_shape(4))


def test_canonical_form_mapping_is_a_bijection():
    shape = _zero_star_shape(4, center=3)
    canon, mapping = sp.canonical_form(shape)
    assert sorted(mapping) == sorted(mapping.values()) == list(range(5))
    assert mapping[3] not in canon.labeled


def test_shape_automorphism_counts():
    assert sp.shape_automorphism_count(_zero_star_shape(4)) == 24
    assert sp.shape_automorphism_count(_f_star_shape(4)) == 6


def test_stabilizer_bound():
    assert sp.stabilizer_bound(4) == 24
    assert sp.stabilizer_bound(5) == 192


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_shape_bounds(n):
    result = sp.verify_shape_bounds(n)
    assert result["shapes"] == len(sp.enumerate_shapes(n))


# --- marked graphs ---

def test_marked_graph_checks_slots():
    with pytest.raises(ValueError):
        sp.MarkedGraph(_f_star_shape(4), ((0, 1), (1, 1), (2, 2), (3, 3)), aut.identity(4))
    with pytest.raises(RankMismatch):
        sp.MarkedGraph(_f_star_shape(4), tuple(_f_star_slots(4).items()), aut.identity(3))


def test_standard_stars():
    zero = sp.standard_zero_star(4)
    f_star = sp.standard_f_star(4)
    assert sp.classify_star(zero.shape) == StarClass.ZERO_STAR
    assert sp.classify_star(f_star.shape) == StarClass.F_STAR
    assert sorted(str(w) for w in zero.labels().values()) == ["1", "2", "3", "4"]
    center = f_star.graph.vertex_of_slot(4)
    assert str(f_star.graph.label(center)) == "4"
    with pytest.raises(UnsupportedRank):
        sp.standard_zero_star(2)


def test_canonicalize_absorbs_inner_markings():
    x = wc.GroupWord.parse("1 2 3", 4)
    shape = _zero_star_shape(4)
    slots = {i: i for i in range(1, 5)}
    assert sp.marked_graph(shape, slots, aut.ad(x)) == sp.standard_zero_star(4)


def test_canonicalize_absorbs_renumbering():
    shape = _zero_star_shape(4, center=2)
    slots = {0: 3, 1: 1, 3: 4, 4: 2}
    assert sp.marked_graph(shape, slots) == sp.standard_zero_star(4)


def test_canonicalize_absorbs_twists():
    marking = aut.sigma(2, 4, 4)
    assert sp.marked_graph(_f_star_shape(4), _f_star_slots(4), marking) == sp.standard_f_star(4)


def test_canonicalize_separates_markings():
    marking = aut.sigma(1, 4, 4)
    slots = {i: i for i in range(1, 5)}
    assert sp.marked_graph(_zero_star_shape(4), slots, marking) != sp.standard_zero_star(4)


# --- action ---

def test_symmetric_classes_fix_zero_star():
    zero = sp.standard_zero_star(4)
    for c in fs.generators_a(4):
        assert sp.stabilizes(c, zero)
    assert not sp.stabilizes(aut.outer(aut.sigma(1, 4, 4)), zero)


def test_f_star_stabilizer():
    f_star = sp.standard_f_star(4)
    assert sp.stabilizes(aut.outer(aut.sigma(1, 4, 4)), f_star)
    assert sp.stabilizes(aut.outer(aut.tau(1, 4)), f_star)
    assert not sp.stabilizes(aut.outer(aut.tau(3, 4)), f_star)


def test_act_accepts_automorphisms_and_checks_rank():
    zero = sp.standard_zero_star(4)
    moved = sp.act(aut.sigma(1, 4, 4), zero)
    assert moved == sp.act(aut.outer(aut.sigma(1, 4, 4)), zero)
    with pytest.raises(RankMismatch):
        sp.act(aut.tau(1, 3), zero)


def test_act_is_an_action():
    zero = sp.standard_zero_star(4)
    a = aut.sigma(1, 4, 4)
    b = aut.compose(aut.tau(2, 4), aut.sigma(3, 1, 4))
    assert sp.act(a, sp.act(b, zero)) == sp.act(aut.compose(a, b), zero)


# --- twists and collapses ---

def test_f_star_twist_is_sigma():
    v = sp.standard_f_star(4)
    center = v.graph.vertex_of_slot(4)
    leaf = v.graph.vertex_of_slot(1)
    t = sp.twist(v, (center, leaf), v.graph.label(center))
    assert aut.outer(t) == aut.outer(aut.sigma(1, 4, 4))
    assert aut.compose(t, t).is_identity


def test_twist_by_identity():
    v = sp.standard_f_star(4)
    center = v.graph.vertex_of_slot(4)
    leaf = v.graph.vertex_of_slot(2)
    assert sp.twist(v, (center, leaf), wc.GroupWord.identity(4)).is_identity


def test_twist_errors():
    f_star = sp.standard_f_star(4)
    center = f_star.graph.vertex_of_slot(4)
    leaf = f_star.graph.vertex_of_slot(1)
    other = f_star.graph.vertex_of_slot(2)
    with pytest.raises(OriginIsLeaf):
        sp.twist(f_star, (leaf, center), f_star.graph.label(leaf))
    with pytest.raises(ValueError):
        sp.twist(f_star, (leaf, other), f_star.graph.label(leaf))
    with pytest.raises(ValueError):
        sp.twist(f_star, (center, leaf), wc.generator(1, 4))

    zero = sp.standard_zero_star(4)
    hub = zero.shape.trivial_vertices()[0]
    spoke = zero.graph.vertex_of_slot(1)
    with pytest.raises(OriginNotLabeled):
        sp.twist(zero, (hub, spoke), wc.generator(1, 4))


def test_f_star_twists_generate_twist_group():
    result = sp.verify_twist_structure(4)
    assert result == {"n": 4, "out_order": 4, "aut_order": 8, "joined": 24}


def test_collapse_leaf_edge_gives_f_star():
    zero = sp.standard_zero_star(4)
    collapsed = sp.blow_down(zero, 4)
    assert sp.classify_star(collapsed.shape) == StarClass.F_STAR
    assert collapsed == sp.standard_f_star(4)


def test_collapse_empty_forest():
    zero = sp.standard_zero_star(4)
    assert sp.collapse(zero, []) == zero


def test_collapse_rejects_labeled_edges():
    f_star = sp.standard_f_star(4)
    with pytest.raises(IllegalCollapse):
        sp.collapse(f_star, [f_star.shape.edges[0]])


def test_collapse_rejects_merging_labels():
    zero = sp.standard_zero_star(4)
    hub = zero.shape.trivial_vertices()[0]
    a, b = zero.graph.vertex_of_slot(1), zero.graph.vertex_of_slot(2)
    with pytest.raises(IllegalCollapse):
        sp.collapse(zero, [(hub, a), (hub, b)])


# --- stars adjacent to the F-star ---

def test_adjacent_family_n4():
    family = sp.adjacent_zero_star_family(4)
    assert len(family) == 8
    assert len({item.vertex for item in family}) == 4


def test_adjacent_zero_stars_collapse_to_f_star():
    target = sp.standard_f_star(4)
    for v in sp.zero_stars_adjacent_to_f_star(4):
        assert sp.blow_down(v, 4) == target


@pytest.mark.parametrize("n", [4, 5])
def test_star_adjacency(n):
    result = sp.verify_star_adjacency(n)
    assert result["distinct"] == 2 ** (n - 2)
    assert result["b_fixed"] == 1


def test_star_adjacency_rank_three():
    result = sp.verify_star_adjacency(3)
    assert result["distinct"] == 2
    assert result["b_fixed"] == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_star_stabilizers(n):
    assert sp.verify_star_stabilizers(n)["n"] == n

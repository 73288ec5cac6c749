"""
Spine vertices of the outer space of W_n at small n, as marked trees.

A shape is a finite tree with n labeled vertices (each carrying a copy of
Z/2) such that every leaf is labeled and every unlabeled vertex has degree
at least 3. A marked graph puts an involution y_v on each labeled vertex;
here y_v = M(x_slot(v)) for an automorphism M, so the labels always form a
free-product basis. Two marked graphs are the same spine vertex when they
differ by a shape isomorphism, a simultaneous conjugation and twists.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from math import factorial
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from . import automorphism as aut
from . import finite_subgroup as fs
from . import word_core as wc
from .automorphism import CoxAutomorphism, OuterClass
from .errors import (
    IllegalCollapse,
    OriginIsLeaf,
    OriginNotLabeled,
    RankMismatch,
    UnsupportedRank,
    require,
)
from .word_core import GroupWord

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class StarClass(Enum):
    ZERO_STAR = "ZeroStar"
    F_STAR = "FStar"
    OTHER = "Other"


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class GraphShape:
    n: int
    order: int
    edges: Tuple[Edge, ...]
    labeled: FrozenSet[int]
    base: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(_edge(u, v) for u, v in self.edges)))
        object.__setattr__(self, "labeled", frozenset(self.labeled))

    @property
    def vertices(self) -> range:
        return range(self.order)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for v in self.vertices:
            g.add_node(v, labeled=v in self.labeled, base=v == self.base)
        g.add_edges_from(self.edges)
        return g

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in self.vertices]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def leaves(self) -> List[int]:
        return [v for v in self.vertices if self.degree(v) == 1]

    def trivial_vertices(self) -> List[int]:
        return [v for v in self.vertices if v not in self.labeled]

    @property
    def key(self) -> Tuple:
        return (self.order, self.edges, tuple(sorted(self.labeled)), self.base)


def shape_violations(s: GraphShape) -> List[str]:
    problems: List[str] = []
    g = s.graph()
    if s.order == 0 or not nx.is_tree(g):
        problems.append("underlying graph is not a tree")
    if len(s.labeled) != s.n:
        problems.append(f"{len(s.labeled)} labeled vertices, expected {s.n}")
    for v in s.vertices:
        d = g.degree(v)
        if d <= 1 and s.order > 1 and v not in s.labeled:
            problems.append(f"leaf {v} is unlabeled")
        if v not in s.labeled and d < 3:
            problems.append(f"trivial vertex {v} has degree {d}")
    if s.base is not None and s.base not in s.vertices:
        problems.append(f"base {s.base} is not a vertex")
    return problems


# --- canonical numbering (AHU codes on colored trees) ---

def _tree_centers(adj: Sequence[Sequence[int]]) -> List[int]:
    size = len(adj)
    if size <= 2:
        return list(range(size))
    deg = [len(a) for a in adj]
    leaves = [i for i, d in enumerate(deg) if d <= 1]
    removed = len(leaves)
    while removed < size:
        new_leaves: List[int] = []
        for u in leaves:
            deg[u] = 0
            for v in adj[u]:
                if deg[v] > 0:
                    deg[v] -= 1
                    if deg[v] == 1:
                        new_leaves.append(v)
        removed += len(new_leaves)
        leaves = new_leaves
    return leaves


def _rooted_code(
    root: int, parent: int, adj: Sequence[Sequence[int]], colors: Sequence[int], cache: Dict[int, Tuple]
) -> Tuple:
    children = [v for v in adj[root] if v != parent]
    codes = sorted(_rooted_code(v, root, adj, colors, cache) for v in children)
    code = (colors[root], tuple(codes))
    cache[root] = code
    return code


def _colors(s: GraphShape) -> List[int]:
    return [(1 if v in s.labeled else 0) + (2 if v == s.base else 0) for v in s.vertices]


def canonical_form(s: GraphShape) -> Tuple[GraphShape, Dict[int, int]]:
    """Canonically renumbered copy of the shape and the old -> new vertex map."""
    adj = s.adjacency()
    colors = _colors(s)
    roots = [s.base] if s.base is not None else _tree_centers(adj)
    best_code: Optional[Tuple] = None
    best_root = roots[0]
    best_cache: Dict[int, Tuple] = {}
    for r in roots:
        cache: Dict[int, Tuple] = {}
        code = _rooted_code(r, -1, adj, colors, cache)
        if best_code is None or code < best_code:
            best_code, best_root, best_cache = code, r, cache
    order: List[int] = []
    queue = deque([(best_root, -1)])
    while queue:
        u, parent = queue.popleft()
        order.append(u)
        children = sorted((v for v in adj[u] if v != parent), key=lambda x: best_cache[x])
        queue.extend((v, u) for v in children)
    mapping = {old: new for new, old in enumerate(order)}
    shape = GraphShape(
        s.n,
        s.order,
        tuple(_edge(mapping[u], mapping[v]) for u, v in s.edges),
        frozenset(mapping[v] for v in s.labeled),
        None if s.base is None else mapping[s.base],
    )
    return shape, mapping


def shape_code(s: GraphShape) -> Tuple:
    return canonical_form(s)[0].key


# --- enumeration and measurements ---

def enumerate_shapes(n: int, pointed: bool = False) -> List[GraphShape]:
    """All shapes for rank n up to isomorphism (base-preserving when pointed)."""
    if n < 2 or n > 6:
        raise UnsupportedRank(f"shape enumeration supports 2 <= n <= 6, got {n}")
    found: Dict[Tuple, GraphShape] = {}
    # at most n - 2 unlabeled vertices
    for order in range(n, 2 * n - 1):
        for tree in nx.nonisomorphic_trees(order):
            degree = dict(tree.degree())
            forced = [v for v in tree.nodes if degree[v] <= 2]
            free = [v for v in tree.nodes if degree[v] >= 3]
            need = n - len(forced)
            if need < 0 or need > len(free):
                continue
            edges = tuple(_edge(u, v) for u, v in tree.edges)
            for extra in combinations(free, need):
                labeled = frozenset(forced) | frozenset(extra)
                bases: Iterable[Optional[int]] = range(order) if pointed else [None]
                for b in bases:
                    canon, _ = canonical_form(GraphShape(n, order, edges, labeled, b))
                    found.setdefault(canon.key, canon)
    shapes = sorted(found.values(), key=lambda s: s.key)
    logger.debug("n=%d pointed=%s: %d shapes", n, pointed, len(shapes))
    return shapes


def _star_center(s: GraphShape) -> Optional[int]:
    if s.order < 3:
        return None
    for v in s.vertices:
        if s.degree(v) == s.order - 1:
            return v
    return None


def classify_star(s: GraphShape) -> StarClass:
    center = _star_center(s)
    if center is None:
        return StarClass.OTHER
    if s.base is not None and s.base != center:
        return StarClass.OTHER
    leaves = len(s.leaves())
    if s.order == s.n + 1 and leaves == s.n and center not in s.labeled:
        return StarClass.ZERO_STAR
    if s.order == s.n and leaves == s.n - 1 and center in s.labeled:
        return StarClass.F_STAR
    return StarClass.OTHER


def twist_kernel_rank(s: GraphShape) -> int:
    rank = sum(s.degree(v) - 1 for v in s.labeled)
    if s.base is not None and s.base in s.labeled:
        rank += 1
    return rank


def _node_match(a: Dict[str, Any], b: Dict[str, Any]) -> bool:
    return a["labeled"] == b["labeled"] and a["base"] == b["base"]


def shape_automorphisms(s: GraphShape) -> List[Dict[int, int]]:
    g = s.graph()
    return [dict(m) for m in GraphMatcher(g, g, node_match=_node_match).isomorphisms_iter()]


def shape_automorphism_count(s: GraphShape) -> int:
    return len(shape_automorphisms(s))


def stabilizer_bound(n: int) -> int:
    return 2 ** (n - 2) * factorial(n - 1)


def verify_shape_bounds(n: int) -> Dict[str, Any]:
    """Twist-rank bounds on every shape, plus the stabilizer counting bound for n >= 4."""
    unpointed = enumerate_shapes(n)
    pointed = enumerate_shapes(n, pointed=True)
    for s in unpointed:
        k = twist_kernel_rank(s)
        require(k <= n - 2, "rank-bound", f"twist rank {k} > n - 2", shape=s.key)
        require((k == n - 2) == (s.order == n), "rank-equality", "equality case mismatch", shape=s.key)
        if n >= 4:
            size = 2 ** k * shape_automorphism_count(s)
            require(size <= stabilizer_bound(n), "stabilizer-bound", f"{size} > bound", shape=s.key)
    for s in pointed:
        k = twist_kernel_rank(s)
        require(k <= n - 1, "pointed-rank-bound", f"twist rank {k} > n - 1", shape=s.key)
        require(
            (k == n - 1) == (s.order == n), "pointed-rank-equality", "equality case mismatch", shape=s.key
        )
    return {"n": n, "shapes": len(unpointed), "pointed_shapes": len(pointed)}


# --- marked graphs ---

@dataclass(frozen=True)
class MarkedGraph:
    shape: GraphShape
    slots: Tuple[Tuple[int, int], ...]
    marking: CoxAutomorphism

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", tuple(sorted(self.slots)))
        if self.marking.rank != self.shape.n:
            raise RankMismatch(self.shape.n, self.marking.rank)
        vertices = {v for v, _ in self.slots}
        indices = sorted(i for _, i in self.slots)
        if vertices != set(self.shape.labeled) or indices != list(range(1, self.shape.n + 1)):
            raise ValueError("slots must match labeled vertices with generators 1..n")

    @property
    def rank(self) -> int:
        return self.shape.n

    def slot(self, v: int) -> int:
        return dict(self.slots)[v]

    def vertex_of_slot(self, index: int) -> int:
        return {i: v for v, i in self.slots}[index]

    def label(self, v: int) -> GroupWord:
        return self.marking.image(self.slot(v))

    def labels(self) -> Dict[int, GroupWord]:
        return {v: self.marking.image(i) for v, i in self.slots}


@dataclass(frozen=True)
class SpineVertex:
    key: Tuple
    graph: MarkedGraph = field(compare=False)

    @property
    def rank(self) -> int:
        return self.graph.rank

    @property
    def shape(self) -> GraphShape:
        return self.graph.shape

    def labels(self) -> Dict[int, GroupWord]:
        return self.graph.labels()


def _children(shape: GraphShape, root: int) -> Dict[int, List[int]]:
    adj = shape.adjacency()
    kids: Dict[int, List[int]] = {v: [] for v in shape.vertices}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                kids[u].append(v)
                queue.append(v)
    return kids


def _subtree(kids: Dict[int, List[int]], top: int) -> List[int]:
    out = [top]
    stack = [top]
    while stack:
        u = stack.pop()
        for v in kids[u]:
            out.append(v)
            stack.append(v)
    return sorted(out)


def _serialize(labels: Dict[int, GroupWord], vertices: Iterable[int]) -> Tuple:
    return tuple((v, labels[v].sort_key) for v in sorted(vertices) if v in labels)


def _normalize_below(
    v: int,
    labels: Dict[int, GroupWord],
    kids: Dict[int, List[int]],
    labeled: FrozenSet[int],
) -> Tuple[Dict[int, GroupWord], List[Edge]]:
    """Fix the edge-side conjugations below v, top-down, choosing the smaller option."""
    result: Dict[int, GroupWord] = {}
    if v in labels:
        result[v] = labels[v]
    chosen: List[Edge] = []
    for c in kids[v]:
        sub = _subtree(kids, c)
        sub_labels = {u: labels[u] for u in sub if u in labels}
        plain, plain_edges = _normalize_below(c, sub_labels, kids, labeled)
        best, best_edges = plain, plain_edges
        if v in labeled:
            y = labels[v]
            twisted_in = {u: wc.conjugate(w, y) for u, w in sub_labels.items()}
            twisted, twisted_edges = _normalize_below(c, twisted_in, kids, labeled)
            if _serialize(twisted, sub) < _serialize(plain, sub):
                best, best_edges = twisted, [(v, c)] + twisted_edges
        result.update(best)
        chosen.extend(best_edges)
    return result, chosen


def _edge_twist(slots: Dict[int, int], kids: Dict[int, List[int]], edge: Edge, rank: int) -> CoxAutomorphism:
    """Conjugate the generators on the child side of edge by the parent's generator."""
    parent, child = edge
    factors = [
        aut.sigma(slots[u], slots[parent], rank) for u in _subtree(kids, child) if u in slots
    ]
    return aut.compose(*factors) if factors else aut.identity(rank)


def canonicalize(graph: MarkedGraph) -> SpineVertex:
    """Canonical representative of the marked graph's class."""
    shape, mapping = canonical_form(graph.shape)
    rank = shape.n
    base_slots = {mapping[v]: i for v, i in graph.slots}
    base_labels = {mapping[v]: w for v, w in graph.labels().items()}
    root = min(shape.labeled)
    kids = _children(shape, root)

    best: Optional[Tuple] = None
    best_data: Any = None
    for phi in shape_automorphisms(shape):
        slots = {phi[v]: i for v, i in base_slots.items()}
        labels = {phi[v]: w for v, w in base_labels.items()}
        w, _ = wc.involution_decompose(labels[root])
        g = wc.invert(w)
        labels = {v: wc.conjugate(y, g) for v, y in labels.items()}
        normalized, edges = _normalize_below(root, labels, kids, shape.labeled)
        key = shape.key + (_serialize(normalized, shape.labeled),)
        if best is None or key < best:
            best = key
            best_data = (slots, g, edges)

    slots, g, edges = best_data
    marking = aut.compose(
        aut.ad(g), graph.marking, *(_edge_twist(slots, kids, e, rank) for e in edges)
    )
    canonical = MarkedGraph(shape, tuple(slots.items()), marking)
    return SpineVertex(best, canonical)


def marked_graph(shape: GraphShape, slots: Dict[int, int], marking: Optional[CoxAutomorphism] = None) -> SpineVertex:
    marking = marking if marking is not None else aut.identity(shape.n)
    return canonicalize(MarkedGraph(shape, tuple(slots.items()), marking))


def standard_zero_star(n: int) -> SpineVertex:
    """Unlabeled center 0 with leaves 1..n labeled x_1..x_n."""
    if n < 3:
        raise UnsupportedRank(f"stars need n >= 3, got {n}")
    shape = GraphShape(n, n + 1, tuple((0, i) for i in range(1, n + 1)), frozenset(range(1, n + 1)))
    return marked_graph(shape, {i: i for i in range(1, n + 1)})


def standard_f_star(n: int) -> SpineVertex:
    """Center labeled x_n with leaves labeled x_1..x_{n-1}."""
    if n < 3:
        raise UnsupportedRank(f"stars need n >= 3, got {n}")
    shape = GraphShape(n, n, tuple((0, i) for i in range(1, n)), frozenset(range(n)))
    slots = {0: n}
    slots.update({i: i for i in range(1, n)})
    return marked_graph(shape, slots)


def act(c: OuterClass, v: SpineVertex) -> SpineVertex:
    """Push the marking forward by a representative of c."""
    a = c.canonical if isinstance(c, OuterClass) else c
    if a.rank != v.rank:
        raise RankMismatch(a.rank, v.rank)
    g = v.graph
    return canonicalize(MarkedGraph(g.shape, g.slots, aut.compose(a, g.marking)))


def stabilizes(c: OuterClass, v: SpineVertex) -> bool:
    return act(c, v) == v


def _far_side(shape: GraphShape, origin: int, target: int) -> List[int]:
    g = shape.graph()
    g.remove_edge(origin, target)
    return sorted(nx.node_connected_component(g, target))


def twist(v: SpineVertex, edge: Edge, z: GroupWord) -> CoxAutomorphism:
    """Conjugate every label beyond the edge (origin, target) by z, an element of the origin's group."""
    origin, target = edge
    shape = v.shape
    if _edge(origin, target) not in shape.edges:
        raise ValueError(f"{edge} is not an edge of the shape")
    if origin not in shape.labeled:
        raise OriginNotLabeled(f"origin {origin} carries the trivial group")
    if shape.degree(origin) == 1:
        raise OriginIsLeaf(f"origin {origin} is a leaf")
    graph = v.graph
    rank = graph.rank
    if z.is_identity:
        return aut.identity(rank)
    if z != graph.label(origin):
        raise ValueError(f"{z} is not in the group of vertex {origin}")
    slots = dict(graph.slots)
    far = [u for u in _far_side(shape, origin, target) if u in slots]
    d = aut.compose(*(aut.sigma(slots[u], slots[origin], rank) for u in far))
    m = graph.marking
    return aut.compose(m, d, aut.invert(m))


def collapse(v: SpineVertex, forest: Iterable[Edge]) -> SpineVertex:
    """Contract the given edges and return the class of the resulting marked graph."""
    forest = {_edge(a, b) for a, b in forest}
    if not forest:
        return v
    shape = v.shape
    for e in forest:
        if e not in shape.edges:
            raise IllegalCollapse(f"{e} is not an edge")
        if e[0] in shape.labeled and e[1] in shape.labeled:
            raise IllegalCollapse(f"edge {e} joins two labeled vertices")
    g = nx.Graph()
    g.add_nodes_from(shape.vertices)
    g.add_edges_from(forest)
    components = [sorted(c) for c in nx.connected_components(g)]
    components.sort()
    where = {u: k for k, comp in enumerate(components) for u in comp}
    slots = dict(v.graph.slots)
    new_slots: Dict[int, int] = {}
    for k, comp in enumerate(components):
        owned = [u for u in comp if u in slots]
        if len(owned) > 1:
            raise IllegalCollapse(f"collapse merges labeled vertices {owned}")
        if owned:
            new_slots[k] = slots[owned[0]]
    new_edges = tuple(
        _edge(where[a], where[b]) for a, b in shape.edges if (a, b) not in forest
    )
    new_shape = GraphShape(shape.n, len(components), new_edges, frozenset(new_slots))
    problems = shape_violations(new_shape)
    if problems:
        raise IllegalCollapse("; ".join(problems))
    return canonicalize(MarkedGraph(new_shape, tuple(new_slots.items()), v.graph.marking))


# --- stars around the standard F-star ---

@dataclass(frozen=True)
class AdjacentStar:
    alphas: Tuple[int, ...]
    vertex: SpineVertex


def adjacent_zero_star_family(n: int) -> List[AdjacentStar]:
    """The 2^(n-1) zero-stars with leaf labels x_n^a x_i x_n^a and x_n."""
    if n < 3 or n > 6:
        raise UnsupportedRank(f"adjacency supports 3 <= n <= 6, got {n}")
    shape = GraphShape(n, n + 1, tuple((0, i) for i in range(1, n + 1)), frozenset(range(1, n + 1)))
    slots = {i: i for i in range(1, n + 1)}
    out: List[AdjacentStar] = []
    for alphas in product((0, 1), repeat=n - 1):
        factors = [aut.sigma(i, n, n) for i, a in enumerate(alphas, start=1) if a]
        marking = aut.compose(*factors) if factors else aut.identity(n)
        out.append(AdjacentStar(tuple(alphas), marked_graph(shape, slots, marking)))
    return out


def blow_down(v: SpineVertex, index: int) -> SpineVertex:
    """Collapse the edge at the vertex carrying generator slot `index`."""
    u = v.graph.vertex_of_slot(index)
    nbr = next(b if a == u else a for a, b in v.shape.edges if u in (a, b))
    return collapse(v, [(u, nbr)])


def zero_stars_adjacent_to_f_star(n: int) -> List[SpineVertex]:
    """Distinct zero-star classes of the family, each checked to collapse onto the standard F-star."""
    target = standard_f_star(n)
    distinct: Dict[Tuple, SpineVertex] = {}
    for item in adjacent_zero_star_family(n):
        require(
            blow_down(item.vertex, n) == target,
            "adjacent",
            f"alphas {item.alphas} do not collapse onto the standard F-star",
        )
        distinct.setdefault(item.vertex.key, item.vertex)
    return sorted(distinct.values(), key=lambda s: s.key)


def _outer_gens(gens: Sequence[Any]) -> List[OuterClass]:
    return [g if isinstance(g, OuterClass) else aut.outer(g) for g in gens]


def verify_star_stabilizers(n: int) -> Dict[str, Any]:
    zero = standard_zero_star(n)
    f_star = standard_f_star(n)
    require(classify_star(zero.shape) == StarClass.ZERO_STAR, "zero-star-shape", "not a zero-star")
    require(classify_star(f_star.shape) == StarClass.F_STAR, "f-star-shape", "not an F-star")
    for c in fs.generators_a(n):
        require(stabilizes(c, zero), "A-stabilizes-zero-star", f"{c} moves the zero-star")
    for c in fs.generators_u(n):
        require(stabilizes(c, f_star), "U-stabilizes-f-star", f"{c} moves the F-star")
    s1n = aut.outer(aut.sigma(1, n, n))
    require(not stabilizes(s1n, zero), "sigma-moves-zero-star", "[sigma_1n] fixes the zero-star")
    return {"n": n, "A_generators": n - 1, "U_generators": n - 1}


def verify_star_adjacency(n: int) -> Dict[str, Any]:
    family = adjacent_zero_star_family(n)
    stars = zero_stars_adjacent_to_f_star(n)
    require(len(family) == 2 ** (n - 1), "family-size", f"{len(family)} candidates")
    require(len(stars) == 2 ** (n - 2), "distinct-classes", f"{len(stars)} distinct zero-stars")
    b_gens = fs.generators_b(n)
    fixed = [s for s in stars if all(stabilizes(c, s) for c in b_gens)]
    require(standard_zero_star(n) in fixed, "B-fixes-standard", "standard zero-star is not fixed by B_n")
    # at n = 3 tau_1 fixes both classes
    if n >= 4:
        require(len(fixed) == 1, "unique-B-fixed", f"{len(fixed)} zero-stars fixed by B_{n}")
    return {"n": n, "candidates": len(family), "distinct": len(stars), "b_fixed": len(fixed)}


def f_star_twists(n: int) -> List[CoxAutomorphism]:
    v = standard_f_star(n)
    center = v.graph.vertex_of_slot(n)
    y = v.graph.label(center)
    return [twist(v, (center, leaf), y) for leaf in v.shape.leaves()]


def verify_twist_structure(n: int) -> Dict[str, Any]:
    v = standard_f_star(n)
    twists = f_star_twists(n)
    T_aut = fs.closure(twists)
    T_out = fs.closure(_outer_gens(twists))
    require(T_out.order == 2 ** (n - 2), "out-order", f"twists generate {T_out.order} outer classes")
    require(T_aut.order == 2 ** (n - 1), "aut-order", f"twists generate {T_aut.order} automorphisms")
    require(T_aut.is_abelian(), "abelian", "twists do not commute")
    for t in twists:
        require(aut.compose(t, t).is_identity, "involution", "a twist does not square to 1")
        require(stabilizes(aut.outer(t), v), "stabilizes", "a twist moves the F-star")
    joined = fs.closure(fs.generators_b(n) + _outer_gens(twists))
    require(joined == fs.subgroup_u(n), "generates-U", "twists and B_n do not generate U_n")
    require(
        fs.twist_product(n) == aut.ad(wc.generator(n, n)), "product-inner", "product of twists is not ad(x_n)"
    )
    return {"n": n, "out_order": T_out.order, "aut_order": T_aut.order, "joined": joined.order}

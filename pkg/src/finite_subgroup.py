"""
Finite subgroups of Aut(W_n), Out(W_n) and symmetric groups, enumerated
element by element.

Elements are OuterClass, CoxAutomorphism or sympy Permutation values; one
subgroup never mixes them. Products apply the right factor first for all
three kinds.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from . import automorphism as aut
from . import word_core as wc
from .automorphism import CoxAutomorphism, OuterClass
from .config import get_settings
from .errors import CapExceeded, NotNormalizing, OrderExceedsBound, UnsupportedRank, require
from .permutations import (
    compose_perm,
    format_perm,
    perm_from_cycles,
    perm_key,
    symmetric_elements,
)

logger = logging.getLogger(__name__)

GroupElement = Union[OuterClass, CoxAutomorphism, Permutation]

# traces longer than this are compacted while enumerating
_TRACE_LIMIT = 48


def element_key(g: GroupElement) -> Tuple:
    if isinstance(g, Permutation):
        return perm_key(g)
    return g.key


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    """a o b."""
    if isinstance(a, Permutation):
        return compose_perm(a, b)
    if isinstance(a, OuterClass):
        return a * b
    return aut.compose(a, b)


def inverse(a: GroupElement) -> GroupElement:
    if isinstance(a, Permutation):
        return ~a
    if isinstance(a, OuterClass):
        return a.inverse()
    return aut.invert(a)


def is_identity(a: GroupElement) -> bool:
    if isinstance(a, Permutation):
        return a.is_Identity
    return a.is_identity


def conjugate(g: GroupElement, h: GroupElement, g_inv: Optional[GroupElement] = None) -> GroupElement:
    """g h g^-1."""
    if g_inv is None:
        g_inv = inverse(g)
    return multiply(multiply(g, h), g_inv)


def format_element(g: GroupElement) -> str:
    if isinstance(g, Permutation):
        return format_perm(g)
    if isinstance(g, OuterClass):
        return str(g)
    return str(g)


def _ambient_of(g: GroupElement) -> str:
    if isinstance(g, Permutation):
        return f"Sym({g.size})"
    if isinstance(g, OuterClass):
        return f"Out(W_{g.rank})"
    return f"Aut(W_{g.rank})"


def _compacted(g: GroupElement) -> GroupElement:
    if isinstance(g, OuterClass) and len(g.canonical.trace) > _TRACE_LIMIT:
        return OuterClass(aut.compact(g.canonical))
    if isinstance(g, CoxAutomorphism) and len(g.trace) > _TRACE_LIMIT:
        return aut.compact(g)
    return g


def element_order(g: GroupElement, bound: Optional[int] = None) -> int:
    if bound is None:
        bound = get_settings().order_bound
    power = g
    for k in range(1, bound + 1):
        if is_identity(power):
            return k
        power = _compacted(multiply(power, g))
    raise OrderExceedsBound(bound)


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


@dataclass(frozen=True, eq=False)
class FiniteSubgroup:
    generators: Tuple[GroupElement, ...]
    elements: Tuple[GroupElement, ...]
    ambient: str
    _index: Dict[Tuple, GroupElement] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {element_key(e): e for e in self.elements})

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return element_key(g) in self._index

    def __iter__(self):
        return iter(self.elements)

    @property
    def keys(self) -> FrozenSet[Tuple]:
        return frozenset(self._index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSubgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.keys == other.keys

    def __hash__(self) -> int:
        return hash((self.ambient, self.keys))

    @property
    def identity(self) -> GroupElement:
        for e in self.elements:
            if is_identity(e):
                return e
        raise ValueError("subgroup has no identity element")

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            element_key(multiply(a, b)) == element_key(multiply(b, a)) for a in gens for b in gens
        )


def _from_elements(
    generators: Sequence[GroupElement], elements: Iterable[GroupElement], ambient: str
) -> FiniteSubgroup:
    ordered = sorted(elements, key=element_key)
    return FiniteSubgroup(tuple(generators), tuple(ordered), ambient)


def closure(
    generators: Sequence[GroupElement],
    cap: Optional[int] = None,
    ambient: Optional[str] = None,
) -> FiniteSubgroup:
    """Breadth-first product closure of the generators."""
    gens = [_compacted(g) for g in generators]
    if not gens:
        raise ValueError("closure needs at least one generator")
    if cap is None:
        cap = get_settings().max_closure
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ambient = ambient or _ambient_of(gens[0])
    unit = multiply(gens[0], inverse(gens[0]))
    seen: Dict[Tuple, GroupElement] = {element_key(unit): unit}
    queue = deque([unit])
    while queue:
        e = queue.popleft()
        for g in gens:
            h = multiply(e, g)
            k = element_key(h)
            if k in seen:
                continue
            if len(seen) >= cap:
                raise CapExceeded(cap)
            h = _compacted(h)
            seen[k] = h
            queue.append(h)
    logger.debug("closure in %s: %d generators, order %d", ambient, len(gens), len(seen))
    return _from_elements(gens, seen.values(), ambient)


def center(G: FiniteSubgroup) -> FiniteSubgroup:
    central = [
        h
        for h in G.elements
        if all(element_key(multiply(h, g)) == element_key(multiply(g, h)) for g in G.generators)
    ]
    return _from_elements(central, central, G.ambient)


def fixed_set(g: GroupElement, G: FiniteSubgroup) -> FiniteSubgroup:
    """Elements of G fixed by conjugation with g."""
    g_inv = inverse(g)
    for h in G.generators:
        if conjugate(g, h, g_inv) not in G:
            raise NotNormalizing(f"{format_element(g)} does not normalize the subgroup")
    fixed = [h for h in G.elements if element_key(conjugate(g, h, g_inv)) == element_key(h)]
    return _from_elements(fixed, fixed, G.ambient)


def is_normal(H: FiniteSubgroup, G: FiniteSubgroup) -> bool:
    for g in G.generators:
        g_inv = inverse(g)
        for h in H.generators:
            if conjugate(g, h, g_inv) not in H:
                return False
    return True


def normal_closure(
    elements: Sequence[GroupElement], G: FiniteSubgroup, cap: Optional[int] = None
) -> FiniteSubgroup:
    """Smallest subgroup of G normalized by G and containing the elements."""
    gens = list(elements)
    conjugators = [(g, inverse(g)) for g in G.generators]
    while True:
        H = closure(gens, cap=cap, ambient=G.ambient)
        fresh: Dict[Tuple, GroupElement] = {}
        for g, g_inv in conjugators:
            for h in H.generators:
                c = conjugate(g, h, g_inv)
                if c not in H:
                    fresh.setdefault(element_key(c), c)
        if not fresh:
            return H
        gens.extend(fresh.values())


def derived_subgroup(G: FiniteSubgroup) -> FiniteSubgroup:
    inverses = [inverse(g) for g in G.generators]
    commutators = []
    for a, a_inv in zip(G.generators, inverses):
        for b, b_inv in zip(G.generators, inverses):
            commutators.append(multiply(multiply(a, b), multiply(a_inv, b_inv)))
    return normal_closure(commutators, G)


def normal_two_subgroups(G: FiniteSubgroup) -> List[FiniteSubgroup]:
    """Nontrivial normal subgroups of 2-power order, smallest first."""
    found: Dict[FrozenSet[Tuple], FiniteSubgroup] = {}
    for e in G.elements:
        if is_identity(e) or not _is_power_of_two(element_order(e)):
            continue
        N = normal_closure([e], G)
        if _is_power_of_two(N.order):
            found.setdefault(N.keys, N)
    # joins of normal 2-subgroups stay normal; keep the 2-power ones
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for i, A in enumerate(current):
            for B in current[i + 1:]:
                J = normal_closure(list(A.generators) + list(B.generators), G)
                if _is_power_of_two(J.order) and J.keys not in found:
                    found[J.keys] = J
                    changed = True
    return sorted(found.values(), key=lambda N: (N.order, sorted(N.keys)))


# --- named subgroups ---

def _maybe_outer(a: CoxAutomorphism, outer: bool) -> GroupElement:
    return aut.outer(a) if outer else a


def generators_a(n: int, outer: bool = True) -> List[GroupElement]:
    return [_maybe_outer(aut.tau(i, n), outer) for i in range(1, n)]


def generators_b(n: int, outer: bool = True) -> List[GroupElement]:
    return [_maybe_outer(aut.tau(i, n), outer) for i in range(1, n - 1)]


def generators_u(n: int, outer: bool = True) -> List[GroupElement]:
    return generators_b(n, outer) + [_maybe_outer(aut.sigma(1, n, n), outer)]


def generators_twists(n: int, outer: bool = True) -> List[GroupElement]:
    return [_maybe_outer(aut.sigma(i, n, n), outer) for i in range(1, n)]


def klein_generators() -> List[OuterClass]:
    """[1 2][3 4] and [1 3][2 4] in Out(W_4)."""
    return [
        aut.outer(aut.permutation_automorphism([2, 1, 4, 3], 4)),
        aut.outer(aut.permutation_automorphism([3, 4, 1, 2], 4)),
    ]


def subgroup_a(n: int, outer: bool = True, cap: Optional[int] = None) -> FiniteSubgroup:
    return closure(generators_a(n, outer), cap)


def subgroup_b(n: int, outer: bool = True, cap: Optional[int] = None) -> FiniteSubgroup:
    return closure(generators_b(n, outer), cap)


def subgroup_u(n: int, outer: bool = True, cap: Optional[int] = None) -> FiniteSubgroup:
    return closure(generators_u(n, outer), cap)


def twist_group(n: int, outer: bool = True, cap: Optional[int] = None) -> FiniteSubgroup:
    return closure(generators_twists(n, outer), cap)


def twist_product(n: int) -> CoxAutomorphism:
    """sigma_{1,n} o ... o sigma_{n-1,n}."""
    return aut.compose(*(aut.sigma(i, n, n) for i in range(1, n)))


# --- checks ---

def verify_subgroup_orders(n: int, cap: Optional[int] = None) -> Dict[str, Any]:
    if n < 3:
        raise UnsupportedRank(f"subgroup orders need n >= 3, got {n}")
    A = subgroup_a(n, cap=cap)
    B = subgroup_b(n, cap=cap)
    U = subgroup_u(n, cap=cap)
    U_aut = subgroup_u(n, outer=False, cap=cap)
    require(A.order == factorial(n), "order-A", f"|A_{n}| = {A.order}, expected {factorial(n)}")
    require(B.order == factorial(n - 1), "order-B", f"|B_{n}| = {B.order}")
    expected_u = 2 ** (n - 2) * factorial(n - 1)
    require(U.order == expected_u, "order-U", f"|U_{n}| = {U.order}, expected {expected_u}")
    expected_u_aut = 2 ** (n - 1) * factorial(n - 1)
    require(U_aut.order == expected_u_aut, "order-U-aut", f"|U~_{n}| = {U_aut.order}")

    product = twist_product(n)
    require(product == aut.ad(wc.generator(n, n)), "twist-product", "prod sigma_{i,n} != ad(x_n)")
    require(aut.outer(product).is_identity, "twist-product-outer", "prod [sigma_{i,n}] != 1")

    Z = center(U_aut)
    expected_center = {element_key(aut.identity(n)), element_key(product)}
    require(Z.keys == expected_center, "center-U-aut", f"centre of U~_{n} has order {Z.order}")

    T = twist_group(n, cap=cap)
    require(T.order == 2 ** (n - 2), "twist-order", f"twist image has order {T.order}")
    require(is_normal(T, U), "twist-normal", "twist image is not normal in U_n")
    require(U.order // T.order == factorial(n - 1), "twist-index", "wrong index of the twist image")
    return {
        "n": n,
        "order_A": A.order,
        "order_B": B.order,
        "order_U": U.order,
        "order_U_aut": U_aut.order,
        "center_U_aut": Z.order,
        "twist_order": T.order,
    }


def hypothetical_twist_image(k: int, j: int, n: int) -> CoxAutomorphism:
    """sigma_{k,j} -> product of sigma_{i,j} over i != j, k."""
    return aut.compose(*(aut.sigma(i, j, n) for i in range(1, n + 1) if i not in (j, k)))


def verify_aut_rigidity(n: int, cap: Optional[int] = None) -> Dict[str, Any]:
    if n < 4:
        raise UnsupportedRank(f"needs n >= 4, got {n}")
    T = twist_group(n, outer=False, cap=cap)
    require(T.order == 2 ** (n - 1), "twist-order-aut", f"|twists| = {T.order}")

    # cycle (2 3 ... n-1), fixing 1 and n
    images = [1] + list(range(3, n)) + [2, n]
    g = aut.permutation_automorphism(images, n)
    fix = fixed_set(g, T)
    sig = {i: aut.sigma(i, n, n) for i in range(1, n)}
    expected = {
        element_key(aut.identity(n)),
        element_key(sig[1]),
        element_key(aut.compose(*(sig[i] for i in range(2, n)))),
        element_key(twist_product(n)),
    }
    require(fix.keys == expected, "fixed-set", f"fixed set has {fix.order} elements")

    Z = center(subgroup_u(n, outer=False, cap=cap))
    require(
        Z.keys == {element_key(aut.identity(n)), element_key(twist_product(n))},
        "center",
        f"centre has order {Z.order}",
    )

    x1 = wc.generator(1, n)
    h12 = hypothetical_twist_image(1, 2, n)
    h34 = hypothetical_twist_image(3, 4, n)
    left = aut.apply(aut.compose(h12, h34), x1)
    right = aut.apply(aut.compose(h34, h12), x1)
    require(str(left) == "2 4 2 1 2 4 2", "left-word", f"got {left}")
    require(str(right) == "4 1 4", "right-word", f"got {right}")
    require(left != right, "non-commuting", "images commute")
    return {"n": n, "fixed_set": fix.order, "left": str(left), "right": str(right)}


S6_EXCEPTIONAL_CYCLES = (
    ((1, 2), (3, 4), (5, 6)),
    ((1, 6), (2, 4), (3, 5)),
    ((1, 4), (2, 3), (5, 6)),
    ((1, 6), (2, 5), (3, 4)),
)


def s6_exceptional_generators() -> List[Permutation]:
    return [perm_from_cycles(cycles, 6) for cycles in S6_EXCEPTIONAL_CYCLES]


def verify_s6_exceptional(generators: Optional[Sequence[Permutation]] = None) -> Dict[str, Any]:
    """Check that the generators give a transitive copy of S_5 inside Sym(6)."""
    gens = list(generators) if generators is not None else s6_exceptional_generators()
    H = closure(gens, cap=720)
    require(H.order == 120, "order", f"|H| = {H.order}, expected 120")
    orbit = {g.array_form[0] + 1 for g in H.elements}
    require(orbit == set(range(1, 7)), "transitive", f"orbit of 1 is {sorted(orbit)}")
    common = [p for p in range(6) if all(g.array_form[p] == p for g in gens)]
    require(not common, "no-fixed-point", f"fixed points {[p + 1 for p in common]}")
    require(center(H).order == 1, "trivial-center", "H has a nontrivial centre")
    D = derived_subgroup(H)
    require(D.order == 60, "derived-order", f"|[H,H]| = {D.order}")
    for d in D.elements:
        if is_identity(d):
            continue
        require(
            normal_closure([d], D).order == 60,
            "derived-simple",
            f"{format_perm(d)} generates a proper normal subgroup",
        )
    return {"order": H.order, "derived_order": D.order, "generators": [format_perm(g) for g in gens]}


def _power(p: Permutation, k: int) -> Permutation:
    result = Permutation(list(range(p.size)))
    base = p if k >= 0 else ~p
    for _ in range(abs(k)):
        result = compose_perm(result, base)
    return result


def _product(*factors: Permutation) -> Permutation:
    result = Permutation(list(range(factors[0].size)))
    for f in factors:
        result = compose_perm(result, f)
    return result


def satisfies_symmetric_relations(s: Permutation, c: Permutation, m: int) -> bool:
    """Relations of S_m in the transposition (1 2) and the m-cycle (1 ... m)."""
    c_inv = ~c
    relators = [
        _product(s, s),
        _power(c, m),
        _power(_product(s, c), m - 1),
        _power(_product(s, c_inv, s, c), 3),
    ]
    for j in range(2, m - 1):
        relators.append(_power(_product(s, _power(c, -j), s, _power(c, j)), 2))
    return all(r.is_Identity for r in relators)


def symmetric_subgroups(n: int, m: int) -> List[FiniteSubgroup]:
    """Subgroups of Sym(n) isomorphic to S_m, found from generating pairs."""
    elements = symmetric_elements(n)
    involutions = [p for p in elements if p.order() == 2]
    cycles = [p for p in elements if p.order() == m]
    found: Dict[FrozenSet[Tuple], FiniteSubgroup] = {}
    for s in involutions:
        for c in cycles:
            if not satisfies_symmetric_relations(s, c, m):
                continue
            try:
                G = closure([s, c], cap=factorial(m))
            except CapExceeded:
                continue
            if G.order == factorial(m):
                found.setdefault(G.keys, G)
    return sorted(found.values(), key=lambda G: sorted(G.keys))


def verify_point_stabilizers(n: int) -> Dict[str, Any]:
    """Every S_{n-1} inside Sym(n) is a point stabilizer (n = 4, 5)."""
    if n not in (4, 5):
        raise UnsupportedRank(f"point-stabilizer check runs for n = 4, 5 only, got {n}")
    subgroups = symmetric_subgroups(n, n - 1)
    stabilized: List[int] = []
    for G in subgroups:
        points = [p + 1 for p in range(n) if all(g.array_form[p] == p for g in G.generators)]
        require(len(points) == 1, "point-stabilizer", f"subgroup fixes points {points}")
        stabilized.append(points[0])
    require(len(subgroups) == n, "count", f"found {len(subgroups)} subgroups, expected {n}")
    return {"n": n, "subgroups": len(subgroups), "fixed_points": sorted(stabilized)}

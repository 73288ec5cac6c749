import pytest
from sympy.combinatorics import Permutation

from src import automorphism as aut
from src import word_core as wc
from src.automorphism import OuterClass
from src.errors import (
    EqualIndices,
    IndexOutOfRank,
    NotInverse,
    NotInvolution,
    OrderExceedsBound,
    ParseError,
    PermutationNotBijective,
    RankMismatch,
)
from src.word_core import GroupWord


def w(text, n=4):
    return GroupWord.parse(text, n)


def test_sigma_images():
    s = aut.sigma(1, 2, 3)
    assert [str(x) for x in s.images()] == ["2 1 2", "2", "3"]


def test_tau_swaps_neighbours():
    t = aut.tau(2, 4)
    assert t.perm == (1, 3, 2, 4)
    assert aut.apply(t, w("1 2 3")) == w("1 3 2")


def test_constructor_errors():
    with pytest.raises(EqualIndices):
        aut.sigma(2, 2, 3)
    with pytest.raises(IndexOutOfRank):
        aut.sigma(1, 4, 3)
    with pytest.raises(IndexOutOfRank):
        aut.tau(3, 3)


def test_compose_applies_right_factor_first():
    a = aut.compose(aut.tau(1, 3), aut.sigma(1, 2, 3))
    assert a.image(1) == wc.reduce((1, 2, 1), 3)
    b = aut.compose(aut.sigma(1, 2, 3), aut.tau(1, 3))
    assert b.image(1) == wc.generator(2, 3)


def test_compose_is_map_composition(rng):
    for _ in range(50):
        a = aut.random_automorphism(4, rng.randint(0, 4), rng)
        b = aut.random_automorphism(4, rng.randint(0, 4), rng)
        u = wc.random_word(4, rng.randint(0, 6), rng)
        assert aut.apply(aut.compose(a, b), u) == aut.apply(a, aut.apply(b, u))


def test_conjugators_are_normalized():
    a = aut.ad(w("2 1"))
    assert a.conjugators[0] == w("2")
    assert a.image(1) == w("2 1 2")


def test_equality_ignores_trace():
    direct = aut.sigma(1, 2, 4)
    assert aut.sigma_from_generators(1, 2, 4) == direct
    assert aut.sigma_from_generators(3, 1, 4) == aut.sigma(3, 1, 4)


def test_invert_round_trip(rng):
    for _ in range(50):
        a = aut.random_automorphism(4, rng.randint(0, 6), rng)
        inv = aut.invert(a)
        assert aut.compose(a, inv).is_identity
        assert aut.compose(inv, a).is_identity


def test_invert_detects_a_forged_trace():
    forged = aut.CoxAutomorphism(3, (1, 2, 3), aut.sigma(1, 2, 3).conjugators, (aut.Tau(1),))
    with pytest.raises(NotInverse):
        aut.invert(forged)


def test_trace_replays(rng):
    for _ in range(30):
        a = aut.random_automorphism(3, rng.randint(0, 6), rng)
        assert aut.trace_consistent(a)


def test_compact_keeps_the_map(rng):
    a = aut.random_automorphism(4, 8, rng)
    c = aut.compact(a)
    assert c == a
    assert len(c.trace) == 1
    assert aut.compose(c, aut.invert(c)).is_identity


def test_from_images_accepts_a_certified_pair():
    s = aut.sigma(1, 3, 3)
    a = aut.from_images(s.images(), s.images())
    assert a == s


def test_from_images_errors():
    x = [wc.generator(i, 3) for i in (1, 2, 3)]
    with pytest.raises(NotInvolution):
        aut.from_images([w("1 2", 3), x[1], x[2]], x)
    with pytest.raises(PermutationNotBijective):
        aut.from_images([x[0], x[0], x[2]], x)
    with pytest.raises(NotInverse):
        aut.from_images([w("2 1 2", 3), x[1], x[2]], x)
    with pytest.raises(RankMismatch):
        aut.from_images(x, x[:2])


def test_permutation_automorphism():
    a = aut.permutation_automorphism([2, 3, 1], 3)
    assert a.images() == (wc.generator(2, 3), wc.generator(3, 3), wc.generator(1, 3))
    assert all(isinstance(t, aut.Tau) for t in a.trace)
    with pytest.raises(PermutationNotBijective):
        aut.permutation_automorphism([1, 1, 2], 3)


def test_transposition_is_a_tau_word():
    p = aut.transposition(1, 4, 4)
    assert p.perm == (4, 2, 3, 1)
    assert aut.trace_consistent(p)


def test_parse_automorphism():
    a = aut.parse_automorphism("s3,2;s4,2", 4)
    assert a == aut.compose(aut.sigma(3, 2, 4), aut.sigma(4, 2, 4))
    assert aut.apply(a, w("1")) == w("1")
    assert aut.apply(a, w("3")) == w("2 3 2")
    assert aut.parse_automorphism("e", 4).is_identity
    assert aut.parse_automorphism("ad(2 1)", 4) == aut.ad(w("2 1"))
    assert aut.parse_automorphism("p1,2", 4) == aut.tau(1, 4)


@pytest.mark.parametrize("text", ["", "x1", "s1", "t", "s1,1"])
def test_parse_automorphism_errors(text):
    with pytest.raises((ParseError, EqualIndices)):
        aut.parse_automorphism(text, 4)


def test_inner_automorphisms_have_trivial_outer_class(rng):
    for _ in range(30):
        g = wc.random_word(4, rng.randint(0, 6), rng)
        assert aut.outer(aut.ad(g)).is_identity
    assert aut.outer_equal(aut.ad(w("4")), aut.identity(4))


def test_outer_class_ignores_inner_factor(rng):
    for _ in range(30):
        a = aut.random_automorphism(4, rng.randint(0, 4), rng)
        g = wc.random_word(4, rng.randint(0, 5), rng)
        assert aut.outer(aut.compose(aut.ad(g), a)) == aut.outer(a)
        assert aut.outer(aut.compose(a, aut.ad(g))) == aut.outer(a)


def test_outer_classes_that_differ():
    assert not aut.outer_equal(aut.sigma(1, 2, 3), aut.identity(3))
    assert not aut.outer_equal(aut.tau(1, 3), aut.tau(2, 3))


def test_product_of_twists_is_inner():
    prod = aut.compose(*(aut.sigma(i, 4, 4) for i in range(1, 4)))
    assert prod == aut.ad(wc.generator(4, 4))
    assert aut.outer(prod).is_identity


def test_outer_class_arithmetic():
    c = aut.outer(aut.tau(1, 4))
    d = aut.outer(aut.tau(2, 4))
    assert (c * c).is_identity
    assert c.inverse() == c
    assert (c * d) ** 3 == OuterClass.identity(4)
    assert (c * d) ** -1 == d * c


def test_order_of():
    assert aut.order_of(aut.outer(aut.tau(1, 4))) == 2
    assert aut.order_of(aut.outer(aut.compose(aut.tau(1, 4), aut.tau(2, 4)))) == 3
    assert aut.order_of(aut.outer(aut.sigma(1, 2, 4))) == 2
    assert aut.order_of(OuterClass.identity(4)) == 1


def test_order_bound():
    # sigma_12 o sigma_21 has infinite order
    c = aut.outer(aut.compose(aut.sigma(1, 2, 3), aut.sigma(2, 1, 3)))
    with pytest.raises(OrderExceedsBound):
        aut.order_of(c, bound=20)


def test_class_permutation():
    assert aut.class_permutation(aut.outer(aut.sigma(3, 4, 4))).is_Identity
    p = aut.class_permutation(aut.outer(aut.transposition(1, 2, 4)))
    assert p == Permutation([1, 0, 2, 3])


def test_string_forms():
    s = aut.sigma(1, 2, 3)
    assert str(s) == "x1 -> 2 1 2; x2 -> 2; x3 -> 3"
    assert s.format_trace() == "s1,2"
    assert aut.identity(3).format_trace() == "e"

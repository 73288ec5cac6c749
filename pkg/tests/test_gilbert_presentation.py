import pytest

from src import automorphism as aut
from src import gilbert_presentation as gp
from src.errors import ClaimFailed, EqualIndices, IndexOutOfRank, ParseError, UnsupportedRank
from src.gilbert_presentation import Sig, Trans


def _counts(n):
    counts = {}
    for r in gp.enumerate_relators(n):
        counts[r.kind] = counts.get(r.kind, 0) + 1
    return counts


def test_relator_counts_n3():
    assert _counts(3) == {"a": 3, "b": 36, "c": 6, "d": 6, "f": 36, "g": 6}


def test_relator_counts_n4():
    counts = _counts(4)
    assert counts == {"a": 4, "b": 144, "c": 24, "d": 12, "e": 24, "f": 144, "g": 24}
    assert sum(counts.values()) == 376


def test_enumerate_needs_rank_three():
    with pytest.raises(UnsupportedRank):
        gp.enumerate_relators(2)


def test_family_filter():
    rels = gp.enumerate_relators(4, families=["d"])
    assert {r.kind for r in rels} == {"d"}
    assert str(rels[0]) == "s1,2 s1,2"


def test_trans_is_unordered():
    assert Trans(3, 1) == Trans(1, 3)
    assert str(Trans(3, 1)) == "p1,3"
    with pytest.raises(EqualIndices):
        Sig(2, 2)


def test_parse_symbol():
    assert gp.parse_symbol("p2,4") == Trans(2, 4)
    assert gp.parse_symbol(" s4,1 ") == Sig(4, 1)
    with pytest.raises(ParseError):
        gp.parse_symbol("q1,2")
    with pytest.raises(ParseError):
        gp.parse_symbol("s12")


def test_relator_word_is_lhs_times_inverse_rhs():
    r = gp.RelatorInstance("c", (Sig(1, 3), Sig(2, 3)), (Sig(2, 3), Sig(1, 3)), (1, 3, 2))
    assert gp.format_word(r.word) == "s1,3 s2,3 s1,3^-1 s2,3^-1"


def test_interpret():
    assert gp.interpret(Trans(1, 2), 3) == aut.outer(aut.tau(1, 3))
    assert gp.interpret(Sig(2, 1), 3) == aut.outer(aut.sigma(2, 1, 3))
    with pytest.raises(IndexOutOfRank):
        gp.interpret(Sig(1, 5), 4)


def test_evaluate_empty_word():
    assert gp.evaluate((), 4).is_identity


@pytest.mark.parametrize("n", [3, 4])
def test_presentation_holds(n):
    result = gp.verify_presentation(n)
    assert result["total"] == sum(_counts(n).values())


def test_presentation_rank_guard():
    with pytest.raises(UnsupportedRank):
        gp.verify_presentation(7)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_mutated_relator_fails(n):
    r = gp.mutated_relator(n)
    assert r.kind == "a"
    assert len(r.lhs) == n - 2
    assert not gp.relator_holds(r, n)


def test_relator_dump_lines():
    text = gp.relator_dump(3)
    lines = text.strip().splitlines()
    assert len(lines) == 93
    assert lines[0] == "(a) s2,1 s3,1"


def test_identity_assignment_extends():
    result = gp.check_assignment_extends(gp.identity_assignment(3))
    assert result["relators"] == 93


def test_assignment_must_cover_all_symbols():
    words = dict(gp.identity_assignment(4).words)
    del words[Sig(1, 4)]
    with pytest.raises(ValueError):
        gp.GeneratorAssignment(4, words)


def test_mismatched_twist_assignment_is_rejected():
    with pytest.raises(ClaimFailed) as info:
        gp.check_assignment_extends(gp.mismatched_twist_assignment())
    assert info.value.clause == "relators-preserved"
    assert info.value.details["violated"]


def test_reflected_twist_assignment_is_identity_on_out():
    asg = gp.reflected_twist_assignment(4)
    for s in gp.symbols(4):
        assert asg.image(s) == gp.interpret(s, 4)
    assert gp.check_assignment_extends(asg)["relators"] == 376


def test_exceptional_w4_assignment():
    result = gp.verify_exceptional_w4()
    assert result["relators"] == 376
    assert result["class_permutation_before"] == [0, 1, 2, 3]
    assert result["class_permutation_after"] == [1, 0, 3, 2]
    assert result["order_alpha_V"] == 4
    assert result["normal_two_subgroups"] == 1


def test_exceptional_assignment_swaps_named_generators():
    asg = gp.exceptional_w4_assignment()
    assert asg.image(Trans(1, 2)) == gp.interpret(Trans(1, 2), 4)
    assert asg.image_word(Sig(1, 4)) == gp.word_of(Trans(2, 3), Trans(1, 4))

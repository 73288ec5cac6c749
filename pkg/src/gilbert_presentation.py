"""
A finite presentation of Out(W_n) and checks run against it.

Generators are the transposition classes [i j] (Trans) and the classes
[sigma_{i,j}] (Sig). Relators are evaluated in Out(W_n) through canonical
outer forms, so the automorphism model acts as the oracle for the
presentation. Symbol words multiply left to right as group products, which
for automorphisms means the rightmost symbol is applied first.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from . import automorphism as aut
from . import finite_subgroup as fs
from .automorphism import OuterClass
from .errors import ClaimFailed, EqualIndices, IndexOutOfRank, ParseError, UnsupportedRank, require

logger = logging.getLogger(__name__)

FAMILIES = ("a", "b", "c", "d", "e", "f", "g")


@dataclass(frozen=True, order=True)
class Trans:
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise EqualIndices(f"[{self.i} {self.j}] needs distinct indices")
        if self.i > self.j:
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    def __str__(self) -> str:
        return f"p{self.i},{self.j}"


@dataclass(frozen=True, order=True)
class Sig:
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise EqualIndices(f"sigma_{{{self.i},{self.j}}} needs distinct indices")

    def __str__(self) -> str:
        return f"s{self.i},{self.j}"


GeneratorSymbol = Union[Trans, Sig]
# (symbol, +1 or -1)
SymbolWord = Tuple[Tuple[GeneratorSymbol, int], ...]


def word_of(*symbols: GeneratorSymbol) -> SymbolWord:
    return tuple((s, 1) for s in symbols)


def invert_word(word: SymbolWord) -> SymbolWord:
    return tuple((s, -e) for s, e in reversed(word))


def format_word(word: SymbolWord) -> str:
    if not word:
        return "1"
    return " ".join(str(s) if e == 1 else f"{s}^-1" for s, e in word)


def parse_symbol(text: str) -> GeneratorSymbol:
    text = text.strip()
    try:
        i, j = (int(x) for x in text[1:].split(","))
    except ValueError as exc:
        raise ParseError(f"cannot parse symbol {text!r}") from exc
    if text.startswith("p"):
        return Trans(i, j)
    if text.startswith("s"):
        return Sig(i, j)
    raise ParseError(f"cannot parse symbol {text!r}")


def symbols(n: int) -> List[GeneratorSymbol]:
    trans = [Trans(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    sigs = [Sig(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return trans + sigs


@dataclass(frozen=True)
class RelatorInstance:
    kind: str
    lhs: Tuple[GeneratorSymbol, ...]
    rhs: Tuple[GeneratorSymbol, ...]
    indices: Tuple[int, ...]

    @property
    def word(self) -> SymbolWord:
        """lhs * rhs^-1."""
        return word_of(*self.lhs) + invert_word(word_of(*self.rhs))

    def __str__(self) -> str:
        return format_word(self.word)


def _swap(t: Tuple[int, int], k: int) -> int:
    i, j = t
    if k == i:
        return j
    if k == j:
        return i
    return k


def enumerate_relators(n: int, families: Optional[Iterable[str]] = None) -> List[RelatorInstance]:
    if n < 3:
        raise UnsupportedRank(f"the presentation needs n >= 3, got {n}")
    wanted = set(families) if families is not None else set(FAMILIES)
    idx = range(1, n + 1)
    pairs = [(i, j) for i in idx for j in idx if i != j]
    out: List[RelatorInstance] = []

    if "a" in wanted:
        for i in idx:
            lhs = tuple(Sig(j, i) for j in idx if j != i)
            out.append(RelatorInstance("a", lhs, (), (i,)))
    if "b" in wanted:
        for i, j in pairs:
            for k, l in pairs:
                t = (i, j)
                out.append(
                    RelatorInstance(
                        "b",
                        (Trans(i, j), Trans(k, l)),
                        (Trans(_swap(t, k), _swap(t, l)), Trans(i, j)),
                        (i, j, k, l),
                    )
                )
    if "c" in wanted:
        for j in idx:
            for i, k in pairs:
                if j in (i, k):
                    continue
                out.append(RelatorInstance("c", (Sig(i, j), Sig(k, j)), (Sig(k, j), Sig(i, j)), (i, j, k)))
    if "d" in wanted:
        for i, j in pairs:
            out.append(RelatorInstance("d", (Sig(i, j), Sig(i, j)), (), (i, j)))
    if "e" in wanted:
        for i, j, k, l in permutations(idx, 4):
            out.append(
                RelatorInstance("e", (Sig(i, j), Sig(k, l)), (Sig(k, l), Sig(i, j)), (i, j, k, l))
            )
    if "f" in wanted:
        for i, j in pairs:
            for k, l in pairs:
                t = (i, j)
                out.append(
                    RelatorInstance(
                        "f",
                        (Trans(i, j), Sig(k, l)),
                        (Sig(_swap(t, k), _swap(t, l)), Trans(i, j)),
                        (i, j, k, l),
                    )
                )
    if "g" in wanted:
        for i, j, k in permutations(idx, 3):
            out.append(
                RelatorInstance(
                    "g",
                    (Sig(j, i), Sig(i, k), Sig(j, k)),
                    (Sig(j, k), Sig(i, k), Sig(j, i)),
                    (i, j, k),
                )
            )
    return out


def relator_dump(n: int) -> str:
    lines = [f"({r.kind}) {format_word(r.word)}" for r in enumerate_relators(n)]
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def interpret(sym: GeneratorSymbol, n: int) -> OuterClass:
    for k in (sym.i, sym.j):
        if k < 1 or k > n:
            raise IndexOutOfRank(k, n)
    if isinstance(sym, Trans):
        return aut.outer(aut.transposition(sym.i, sym.j, n))
    return aut.outer(aut.sigma(sym.i, sym.j, n))


def evaluate(word: SymbolWord, n: int, images: Optional[Mapping[GeneratorSymbol, OuterClass]] = None) -> OuterClass:
    """Product of the word's letters in Out(W_n), letters mapped through images if given."""
    result = OuterClass.identity(n)
    for sym, e in word:
        value = images[sym] if images is not None else interpret(sym, n)
        result = result * (value if e == 1 else value.inverse())
    return result


def verify_presentation(n: int, families: Optional[Iterable[str]] = None) -> Dict[str, Any]:
    if n > 6:
        raise UnsupportedRank(f"presentation check is limited to n <= 6, got {n}")
    counts: Dict[str, int] = {}
    failures: List[str] = []
    for r in enumerate_relators(n, families):
        counts[r.kind] = counts.get(r.kind, 0) + 1
        if not evaluate(r.word, n).is_identity:
            failures.append(f"({r.kind}) {r.indices}: {r}")
    if failures:
        raise ClaimFailed("relators", f"{len(failures)} relators fail at n = {n}", {"failures": failures})
    logger.debug("n=%d relator counts %s", n, counts)
    return {"n": n, "counts": counts, "total": sum(counts.values())}


def relator_holds(r: RelatorInstance, n: int) -> bool:
    return evaluate(r.word, n).is_identity


def mutated_relator(n: int) -> RelatorInstance:
    """Family (a) at i = n with its first factor dropped."""
    full = enumerate_relators(n, families=["a"])[-1]
    return RelatorInstance("a", full.lhs[1:], (), full.indices)


@dataclass(frozen=True)
class GeneratorAssignment:
    """Candidate endomorphism of Out(W_n), given on every generator symbol."""
    n: int
    words: Dict[GeneratorSymbol, SymbolWord] = field(hash=False)

    def __post_init__(self) -> None:
        missing = [s for s in symbols(self.n) if s not in self.words]
        if missing:
            raise ValueError(f"assignment misses {', '.join(str(s) for s in missing)}")

    def image_word(self, sym: GeneratorSymbol) -> SymbolWord:
        return self.words[sym]

    def image(self, sym: GeneratorSymbol) -> OuterClass:
        return evaluate(self.words[sym], self.n)

    def images(self) -> Dict[GeneratorSymbol, OuterClass]:
        return {s: self.image(s) for s in symbols(self.n)}

    def apply_word(self, word: SymbolWord) -> SymbolWord:
        out: List[Tuple[GeneratorSymbol, int]] = []
        for sym, e in word:
            img = self.words[sym]
            out.extend(img if e == 1 else invert_word(img))
        return tuple(out)


def identity_assignment(n: int) -> GeneratorAssignment:
    return GeneratorAssignment(n, {s: word_of(s) for s in symbols(n)})


def check_assignment_extends(asg: GeneratorAssignment, n: Optional[int] = None) -> Dict[str, Any]:
    """Substitute the assignment into every relator; all must evaluate to 1."""
    n = asg.n if n is None else n
    images = asg.images()
    violated: List[str] = []
    counts: Dict[str, int] = {}
    for r in enumerate_relators(n):
        counts[r.kind] = counts.get(r.kind, 0) + 1
        if not evaluate(r.word, n, images).is_identity:
            violated.append(f"({r.kind}) {r.indices}: {r}")
    if violated:
        families = sorted({v[1] for v in violated})
        raise ClaimFailed(
            "relators-preserved",
            f"{len(violated)} relators violated (families {', '.join(families)})",
            {"violated": violated},
        )
    return {"n": n, "relators": sum(counts.values()), "counts": counts}


def exceptional_w4_assignment() -> GeneratorAssignment:
    words: Dict[GeneratorSymbol, SymbolWord] = {}
    for i in range(1, 4):
        for j in range(i + 1, 4):
            words[Trans(i, j)] = word_of(Trans(i, j))
    for i in range(1, 4):
        j, k = [x for x in (1, 2, 3) if x != i]
        words[Trans(i, 4)] = word_of(Trans(j, k), Sig(i, 4))
        words[Sig(i, 4)] = word_of(Trans(j, k), Trans(i, 4))
    for i in range(1, 5):
        for j in range(1, 4):
            if i == j:
                continue
            k, l = [x for x in (1, 2, 3, 4) if x not in (i, j)]
            words[Sig(i, j)] = word_of(Sig(j, 4), Trans(i, j), Trans(k, l), Sig(j, 4))
    return GeneratorAssignment(4, words)


def reflected_twist_assignment(n: int = 4) -> GeneratorAssignment:
    """[sigma_{k,j}] -> product of [sigma_{i,j}] over i != j, k; transpositions fixed."""
    words: Dict[GeneratorSymbol, SymbolWord] = {}
    for s in symbols(n):
        if isinstance(s, Trans):
            words[s] = word_of(s)
        else:
            k, j = s.i, s.j
            words[s] = word_of(*(Sig(i, j) for i in range(1, n + 1) if i not in (j, k)))
    return GeneratorAssignment(n, words)


def mismatched_twist_assignment() -> GeneratorAssignment:
    """[sigma_{1,4}] -> [sigma_{2,4}], every other symbol fixed."""
    words = dict(identity_assignment(4).words)
    words[Sig(1, 4)] = word_of(Sig(2, 4))
    return GeneratorAssignment(4, words)


A4_SYMBOLS = (Trans(1, 2), Trans(2, 3), Trans(3, 4))
U4_SYMBOLS = (Trans(1, 2), Trans(2, 3), Sig(1, 4))
KLEIN_SYMBOL_WORDS = (
    word_of(Trans(1, 2), Trans(3, 4)),
    word_of(Trans(1, 3), Trans(2, 4)),
)


def verify_exceptional_w4() -> Dict[str, Any]:
    n = 4
    asg = exceptional_w4_assignment()

    # (i) relators preserved
    extends = check_assignment_extends(asg)

    # (ii) involution on every symbol
    for s in symbols(n):
        twice = evaluate(asg.apply_word(asg.image_word(s)), n)
        require(twice == interpret(s, n), "involution", f"alpha(alpha({s})) != {s}")

    # (iii) not inner
    s34 = interpret(Sig(3, 4), n)
    image_s34 = asg.image(Sig(3, 4))
    before = aut.class_permutation(s34)
    after = aut.class_permutation(image_s34)
    require(before.is_Identity, "not-inner", "class permutation of [sigma_34] is not trivial")
    require(
        after.array_form == [1, 0, 3, 2],
        "not-inner",
        f"class permutation of the image is {after.array_form}",
    )
    A = fs.closure([interpret(s, n) for s in A4_SYMBOLS])
    U = fs.closure([interpret(s, n) for s in U4_SYMBOLS])
    for g in list(A.elements) + list(U.elements):
        moved = fs.conjugate(g, s34)
        require(
            aut.class_permutation(moved).is_Identity,
            "not-inner-stable",
            "conjugation moves the class permutation of [sigma_34] off the identity",
        )

    # (iv) A_4 and U_4 exchanged
    alpha_A = fs.closure([asg.image(s) for s in A4_SYMBOLS])
    alpha_U = fs.closure([asg.image(s) for s in U4_SYMBOLS])
    require(A.order == 24 and U.order == 24, "exchange", "A_4 or U_4 has the wrong order")
    require(alpha_A == U, "exchange", "alpha(A_4) != U_4")
    require(alpha_U == A, "exchange", "alpha(U_4) != A_4")

    V_image = fs.closure([evaluate(asg.apply_word(w), n) for w in KLEIN_SYMBOL_WORDS])
    twists = fs.closure([interpret(Sig(i, 4), n) for i in range(1, 4)])
    require(V_image == twists and V_image.order == 4, "klein-image", "alpha(V) is not the twist image")
    normal = fs.normal_two_subgroups(U)
    require(normal == [V_image], "unique-normal-2-subgroup",
            f"U_4 has {len(normal)} nontrivial normal 2-subgroups, expected alpha(V) only")
    return {
        "relators": extends["relators"],
        "class_permutation_before": before.array_form,
        "class_permutation_after": after.array_form,
        "order_A": A.order,
        "order_U": U.order,
        "order_alpha_V": V_image.order,
        "normal_two_subgroups": len(normal),
    }

from hypothesis import given, strategies as st

from qcat.presentation import (
    GroupPresentation,
    cyclic_reduce,
    free_reduce,
    invert_word,
)


def w(text):
    """'a b- a' -> ((a,1),(b,-1),(a,1)), a compact spelling for tests."""
    out = []
    for tok in text.split():
        if tok.endswith("-"):
            out.append((tok[:-1], -1))
        else:
            out.append((tok, 1))
    return tuple(out)


def test_free_and_cyclic_reduce():
    assert free_reduce(w("a a- b")) == w("b")
    assert free_reduce(w("a b b- a-")) == ()
    assert cyclic_reduce(w("a b a-")) == w("b")
    assert cyclic_reduce(w("a b")) == w("a b")
    assert invert_word(w("a b-")) == w("b a-")


def test_abelianization_known_groups():
    klein = GroupPresentation.build("ab", [w("a b a b-")])
    assert klein.abelianization() == (1, [2])

    trefoil = GroupPresentation.build("ab", [w("a b a b- a- b-")])
    assert trefoil.abelianization() == (1, [])

    cyclic2 = GroupPresentation.build("g", [w("g g")])
    assert cyclic2.abelianization() == (0, [2])

    free2 = GroupPresentation.build("ab", [])
    assert free2.abelianization() == (2, [])


def test_simplified_eliminates_single_occurrence_generator():
    p = GroupPresentation.build("ab", [w("b a- a-")])
    q = p.simplified()
    assert q.generators == ("a",)
    assert q.relators == ()


def test_simplified_detects_trivial_group():
    p = GroupPresentation.build("ab", [w("a b"), w("a")])
    assert p.is_recognizably_trivial()

    # Z/2 must not collapse
    p2 = GroupPresentation.build("a", [w("a a")])
    q2 = p2.simplified()
    assert q2.generators == ("a",)
    assert not p2.is_recognizably_trivial()


def test_relator_tidying_drops_duplicates_and_empties():
    p = GroupPresentation.build("ab", [w("a b"), w("b a"), w("b- a-"), w("a a-")])
    assert len(p.relators) == 1


gen_strategy = st.sampled_from("xyz")
letter = st.tuples(gen_strategy, st.sampled_from([1, -1]))
word_strategy = st.lists(letter, max_size=8).map(tuple)


@given(st.lists(word_strategy, max_size=5))
def test_simplification_preserves_abelianization(relators):
    p = GroupPresentation.build(("x", "y", "z"), relators)
    assert p.simplified().abelianization() == p.abelianization()

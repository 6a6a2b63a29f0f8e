import pytest
from hypothesis import given, settings, strategies as st

from formality_lab.geography import (
    CITATIONS,
    CONTACT,
    IMPOSSIBLE,
    OUT_OF_SCOPE,
    REALIZED,
    SYMPLECTIC,
    GeographyQuery,
    contact_recipe,
    nonformal_manifold_exists,
    realize,
    replay,
    sweep,
    symplectic_recipe,
)
from formality_lab.recipe import Recipe


def _exists_by_table(m, b):
    # written out case by case rather than as one boolean formula
    if m <= 2:
        return False
    if m in (3, 4):
        return b >= 2
    if m in (5, 6):
        return b >= 1
    return True


@pytest.mark.parametrize("m", range(1, 14))
@pytest.mark.parametrize("b", range(0, 9))
def test_existence_conditions(m, b):
    assert nonformal_manifold_exists(m, b) == _exists_by_table(m, b)


def test_spec_examples():
    v = realize((6, 4, SYMPLECTIC))
    assert v.status == REALIZED and str(v.recipe) == "MPQ(1,1)"
    assert [str(c.representative) for c in v.certificate.classes] == ["b", "a1", "a1"]

    v = realize((5, 2, CONTACT))
    assert v.status == REALIZED and str(v.recipe) == "S1_BUNDLE(FGG(2), ω)"

    assert realize((2, 5, SYMPLECTIC)).status == IMPOSSIBLE

    v = realize((4, 4, SYMPLECTIC))
    assert v.status == OUT_OF_SCOPE and v.citation == "donaldson-b-ge-4"

    v = realize((7, 4, CONTACT))
    assert v.status == REALIZED and str(v.recipe) == "S1_BUNDLE(FGG(2), ω) ⊗ T2"

    v = realize((9, 3, CONTACT))
    assert str(v.recipe) == "S1_BUNDLE(FGG(3) ⊗ S2^2, ω)"


def test_parity_mismatch_is_impossible():
    assert realize((7, 4, SYMPLECTIC)).citation == "symplectic-parity"
    assert realize((6, 4, CONTACT)).citation == "contact-parity"


@pytest.mark.parametrize("q,cite", [
    ((6, 1, SYMPLECTIC), "b1-equals-1"),
    ((8, 0, SYMPLECTIC), "simply-connected-8"),
    ((3, 4, CONTACT), "contact-low-dimension"),
    ((7, 1, CONTACT), "contact-small-b"),
    ((6, 5, SYMPLECTIC), "donaldson-b-ge-4"),
])
def test_out_of_scope_citations(q, cite):
    v = realize(q)
    assert v.status == OUT_OF_SCOPE
    assert v.citation == cite
    assert v.citation_text == CITATIONS[cite]


def test_symplectic_recipe_choice_of_p_q():
    assert str(symplectic_recipe(8, 5)) == "MPQ(2,1)"
    assert str(symplectic_recipe(10, 4)) == "MPQ(1,1) ⊗ S2^2"
    assert symplectic_recipe(6, 5) is None
    assert symplectic_recipe(7, 4) is None


def test_contact_recipe_prefers_sphere_padding():
    r = contact_recipe(11, 4)
    assert str(r) == "S1_BUNDLE(FGG(2) ⊗ S2^2, ω) ⊗ T2"
    assert contact_recipe(5, 5) is None


def test_query_validation():
    with pytest.raises(ValueError):
        GeographyQuery(0, 2)
    with pytest.raises(ValueError):
        GeographyQuery(5, -1)
    with pytest.raises(ValueError):
        GeographyQuery(5, 2, "kaehler")


def test_sweep_frontier_and_replays():
    verdicts = sweep()
    assert len(verdicts) == 13 * 9
    realized = 0
    for v in verdicts:
        q = v.query
        assert (v.status == IMPOSSIBLE) == (not _exists_by_table(q.m, q.b))
        if v.status == REALIZED:
            realized += 1
            assert v.recipe is not None and v.certificate is not None
            assert replay(v).matches(q)
        else:
            assert v.recipe is None and v.certificate is None
    assert realized > 0


def test_replay_rejects_unrealized():
    with pytest.raises(ValueError):
        replay(realize((2, 5)))


@settings(max_examples=25, deadline=None)
@given(m=st.integers(1, 13), b=st.integers(0, 8), flavor=st.sampled_from([SYMPLECTIC, CONTACT]))
def test_realized_recipes_reproduce_query(m, b, flavor):
    v = realize(GeographyQuery(m, b, flavor))
    assert v.status in (REALIZED, OUT_OF_SCOPE, IMPOSSIBLE)
    if v.status == REALIZED:
        model = Recipe.from_dict(v.recipe.to_dict()).build()
        assert model.dimension == m
        assert model.dga.betti_number(1) == b

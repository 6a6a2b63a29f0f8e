import random

import pytest

from formality_lab.constructions import (
    circle_bundle,
    circle_bundle_model,
    gysin_report,
    pullback_massey,
    tensor,
    tensor_models,
)
from formality_lab.dsl import parse_model, parse_polynomial
from formality_lab.massey import NON_VANISHING, VANISHES
from formality_lab.zoo import fgg, m_pq, sphere2, sphere2_model, torus

from fixtures import HEISENBERG
from oracles import kunneth


def test_tensor_renames_clashes_and_adds_dimensions():
    A, B = fgg(2), fgg(3)
    T = tensor_models(A, B)
    assert T.dimension == 8
    assert T.dga.names == ("a", "b", "c", "e", "a_2", "b_2", "c_2", "e_2")
    assert T.dga.differential_of("c_2") == parse_polynomial("a_2*b_2", T.dga.algebra)
    assert T.symplectic_defects() == []
    assert T.witness == ("b", "b", "a")


def test_tensor_keeps_validity():
    assert tensor(fgg(2).dga, sphere2()).validate() == []


SUITE = [m_pq(1, 1).dga, fgg(2).dga, fgg(3).dga, torus(1), sphere2(), parse_model(HEISENBERG)]


@pytest.mark.parametrize("seed", range(10))
def test_kunneth(seed):
    rng = random.Random(seed)
    A, B = rng.choice(SUITE), rng.choice(SUITE)
    na, nb = A.algebra.max_degree(), B.algebra.max_degree()
    expected = kunneth(list(A.betti(na)), list(B.betti(nb)))
    assert list(tensor(A, B).betti(na + nb)) == expected


def test_heisenberg_as_circle_bundle_over_torus():
    T = torus(1)
    w = parse_polynomial("x1*y1", T.algebra)
    cb = circle_bundle(T, w)
    assert cb.total.betti(3) == (1, 2, 2, 1)
    rep = gysin_report(cb)
    assert rep.euler_class_nonzero and rep.h1_iso and rep.consistent


def test_trivial_bundle_is_product():
    T = torus(1)
    cb = circle_bundle(T, T.algebra.zero())
    assert cb.total.betti(3) == (1, 3, 3, 1)
    rep = gysin_report(cb)
    assert not rep.euler_class_nonzero and not rep.h1_iso
    assert rep.h1_claim_holds and rep.consistent


def test_circle_bundle_rejects_bad_classes():
    D = fgg(2).dga
    with pytest.raises(ValueError):
        circle_bundle(D, parse_polynomial("c*e", D.algebra))  # not closed
    with pytest.raises(ValueError):
        circle_bundle(D, parse_polynomial("a", D.algebra))  # wrong degree


@pytest.mark.parametrize("b", [2, 3])
def test_gysin_over_fgg(b):
    total, cb = circle_bundle_model(fgg(b))
    rep = gysin_report(cb)
    assert rep.h1_iso and rep.euler_class_nonzero
    assert len(rep.h2_kernel) == 1 and rep.h2_kernel_is_euler_span
    assert rep.consistent
    assert total.dimension == 5
    assert cb.total.validate() == []


def _h1(cb):
    return {str(c.representative): c for c in cb.base.cohomology(1)}


def test_pullback_massey_over_fgg2():
    _, cb = circle_bundle_model(fgg(2))
    cls = _h1(cb)
    res = pullback_massey(cb, cls["b"], cls["b"], cls["a"])
    assert res.base.verdict == NON_VANISHING
    assert res.predicted == NON_VANISHING
    assert res.total.verdict == NON_VANISHING
    assert res.agrees


def test_pullback_over_fgg3_bbA_dies_without_blowup():
    # [w] = [ae] + [bc] and [ae] lies in the indeterminacy, so -[bc] is killed
    _, cb = circle_bundle_model(fgg(3))
    cls = _h1(cb)
    res = pullback_massey(cb, cls["b"], cls["b"], cls["a"])
    assert res.base.verdict == NON_VANISHING
    assert res.predicted == VANISHES
    assert res.total.verdict == VANISHES
    assert res.agrees


def test_pullback_over_fgg3_aab_survives():
    _, cb = circle_bundle_model(fgg(3))
    cls = _h1(cb)
    res = pullback_massey(cb, cls["a"], cls["a"], cls["b"])
    assert res.total.verdict == NON_VANISHING
    assert res.agrees


def test_pullback_massey_over_padded_base():
    base = tensor_models(fgg(3), sphere2_model())
    _, cb = circle_bundle_model(base)
    H = cb.base.cohomology(1)
    cls = {str(c.representative): c for c in H}
    res = pullback_massey(cb, cls["b"], cls["b"], cls["a"])
    assert res.agrees and res.total.verdict == NON_VANISHING


def test_pullback_requires_degree_one():
    _, cb = circle_bundle_model(fgg(2))
    h2 = cb.base.cohomology(2)[0]
    with pytest.raises(ValueError):
        pullback_massey(cb, h2, h2, h2)

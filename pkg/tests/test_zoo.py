import pytest

from formality_lab.dga import span_rank
from formality_lab.dsl import parse_polynomial
from formality_lab.zoo import M80_BETTI, fgg, from_spec, m_pq, sphere2, torus, torus_model, unit_dga

from mpq_lists import h1_list, h2_dimension, h2_list

GRID = [(p, q) for p in range(1, 4) for q in range(1, 4)]


def el(D, text):
    return parse_polynomial(text, D.algebra)


def test_mpq_structure():
    M = m_pq(2, 1)
    D = M.dga
    assert M.dimension == 8 == len(D.generators)
    assert all(g.degree == 1 for g in D.generators)
    assert D.differential_of("c2") == el(D, "-a2*b")
    assert D.differential_of("tc1") == el(D, "-ta1*tb")
    assert not D.differential_of("b")
    assert M.roles["tb"] == "beta~"
    with pytest.raises(ValueError):
        m_pq(0, 1)


@pytest.mark.parametrize("p, q", GRID)
def test_mpq_symplectic(p, q):
    M = m_pq(p, q)
    assert M.symplectic_defects() == []
    assert M.dga.betti_number(1) == p + q + 2


def test_mpq_top_power_is_multiple_of_volume():
    M = m_pq(1, 2)
    top = M.symplectic_form ** 4
    assert len(top) == 1
    (mono, coeff), = top.items()
    assert len(mono) == 8 and coeff != 0


@pytest.mark.parametrize("b", [2, 3])
def test_fgg(b):
    M = fgg(b)
    assert M.dga.betti_number(1) == b
    assert M.symplectic_defects() == []
    assert not M.dga.d(M.symplectic_form)
    assert M.symplectic_form ** 2
    with pytest.raises(ValueError):
        fgg(4)


def test_fgg2_d_squared_on_e():
    D = fgg(2).dga
    assert not D.d(D.differential_of("e"))


def test_sphere_and_torus():
    assert sphere2().betti(2) == (1, 0, 1)
    assert torus(1).betti(2) == (1, 2, 1)
    assert torus(2).betti_number(1) == 4
    assert torus_model(3).symplectic_defects() == []
    assert unit_dga().betti(0) == (1,)


@pytest.mark.parametrize("p, q", GRID)
def test_nilmanifolds_are_minimal(p, q):
    assert m_pq(p, q).dga.is_minimal()


@pytest.mark.parametrize("b", [2, 3])
def test_fgg_is_minimal(b):
    assert fgg(b).dga.is_minimal()


@pytest.mark.parametrize("p, q", GRID)
def test_low_degree_cohomology_lists(p, q):
    D = m_pq(p, q).dga
    h1 = D.cohomology(1)
    assert [str(c.representative) for c in h1] == h1_list(p, q)
    h2 = D.cohomology(2)
    listed = [el(D, s) for s in h2_list(p, q)]
    assert len(listed) == h2_dimension(p, q) == h2.dimension
    assert all(not D.d(u) for u in listed)
    assert span_rank(h2, listed) == h2.dimension


def test_literal_mixed_gamma_products_are_not_cocycles():
    D = m_pq(2, 1).dga
    assert D.d(el(D, "a1*c2")) == el(D, "a1*a2*b")


def test_m80_betti_constant_is_palindromic():
    assert M80_BETTI == M80_BETTI[::-1]
    assert sum((-1) ** k * b for k, b in enumerate(M80_BETTI)) == 1 + 256 * 2 + 269 + 1


def test_from_spec(tmp_path):
    assert from_spec("mpq:2,1").dga == m_pq(2, 1).dga
    assert from_spec("fgg:3").dga == fgg(3).dga
    assert from_spec("torus:2").dga == torus(2)
    assert from_spec("s2").dga == sphere2()
    path = tmp_path / "h.dga"
    path.write_text("gen x 1\ngen y 1\ngen z 1\nd z = x*y\n")
    M = from_spec(f"file:{path}")
    assert M.dimension == 3 and M.dga.betti_number(1) == 2
    with pytest.raises(ValueError):
        from_spec("klein:1")


@pytest.mark.parametrize("model", [m_pq(1, 1), m_pq(1, 2), fgg(2), fgg(3)], ids=lambda m: m.name)
def test_poincare_duality_and_euler_characteristic(model):
    betti = model.dga.betti(model.dimension)
    assert betti == betti[::-1]
    assert sum((-1) ** k * b for k, b in enumerate(betti)) == 0

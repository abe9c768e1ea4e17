import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alcove.lattice import LatticeQuotient, identity, matmul, smith_normal_form
from alcove.rootsys import (RootSystemError, RootSystemSpec, build, cartan_matrix, format_weight,
                            parse_weight)

ALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4),
             ("E", 6), ("E", 7), ("E", 8)]
EXPECTED = {  # (h, |Φ⁺|, |X/ℤΦ|)
    ("A", 1): (2, 1, 2), ("A", 2): (3, 3, 3), ("A", 3): (4, 6, 4), ("B", 2): (4, 4, 2),
    ("B", 3): (6, 9, 2), ("C", 3): (6, 9, 2), ("D", 4): (6, 12, 4), ("G", 2): (6, 6, 1),
    ("F", 4): (12, 24, 1), ("E", 6): (12, 36, 3), ("E", 7): (18, 63, 2), ("E", 8): (30, 120, 1),
}


def det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_normal_form_properties(a):
    u, d, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = [d[i][i] for i in range(3)]
    assert all(d[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else y % x == 0
    assert abs(det(a)) == diag[0] * diag[1] * diag[2]


def test_lattice_quotient_labels():
    q = LatticeQuotient(cartan_matrix(RootSystemSpec("A", 2)))
    assert q.order == 3
    assert q.contains((2, -1)) and q.contains((0, 0)) and not q.contains((1, 0))
    assert q.label((1, 0)) != q.label((0, 1))
    assert q.label((1, 0)) == q.label((0, 2))  # ϖ₁ ≡ −ϖ₂
    assert identity(2) == [[1, 0], [0, 1]]


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_build_invariants(family, rank):
    rs = build(family, rank)
    h, npos, f = EXPECTED[(family, rank)]
    assert (rs.coxeter_number, rs.num_positive_roots, rs.fundamental_group_order) == (h, npos, f)
    assert npos * 2 == rank * h
    total = tuple(sum(col) for col in zip(*rs.positive_roots))
    assert total == tuple(2 * x for x in rs.rho)  # Σ α = 2ρ
    assert rs.root_lattice_quotient.order == f


def test_rank_validation():
    with pytest.raises(RootSystemError):
        RootSystemSpec("G", 3)
    with pytest.raises(RootSystemError):
        RootSystemSpec("Q", 2)
    with pytest.raises(RootSystemError):
        RootSystemSpec("D", 2)


def test_a2_pairings_and_roots():
    rs = build("A", 2)
    assert rs.highest_root == (1, 1)
    assert rs.pair(rs.rho, rs.highest_root_index) == 2
    assert all(rs.pair((0, 0), k) == 0 for k in range(3))
    assert rs.pair((2, 0), rs.root_index((2, -1))) == 2
    with pytest.raises(IndexError):
        rs.pair((0, 0), 7)


def test_dominant_representative_examples():
    rs = build("A", 2)
    dom, w = rs.dominant_representative((-1, 2))
    assert dom == (1, 1) and w == rs.simple_reflections[0]
    dom, w = rs.dominant_representative((2, 3))
    assert dom == (2, 3) and w.is_identity()
    a1 = build("A", 1)
    dom, w = a1.dominant_representative((-3,))
    assert dom == (3,) and w.det == -1
    assert rs.w0_image((1, 0)) == (0, -1)
    assert rs.w0_image((0, 0)) == (0, 0)
    assert a1.w0_image((5,)) == (-5,)


@settings(max_examples=60)
@given(st.sampled_from(ALL_TYPES[:8]), st.data())
def test_dominant_representative_property(t, data):
    rs = build(*t)
    weight = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=rs.rank, max_size=rs.rank)))
    dom, w = rs.dominant_representative(weight)
    assert rs.is_dominant(dom)
    assert w(weight) == dom
    assert dom in rs.orbit(dom) and weight in rs.orbit(dom)


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("G", 2), ("B", 3)])
def test_orbits_and_longest_element(family, rank):
    rs = build(family, rank)
    w0 = rs.longest_element
    assert rs.inversion_count(w0) == rs.num_positive_roots
    assert sorted(w0(r) for r in rs.positive_roots) == sorted(tuple(-x for x in r) for r in rs.positive_roots)
    group = rs.weyl_group()
    assert len(group) * 1 == len(rs.orbit(rs.rho))  # regular orbit is free


def test_weight_text_round_trip():
    assert parse_weight("1, -2,3") == (1, -2, 3)
    assert format_weight((1, -2, 3)) == "1,-2,3"
    with pytest.raises(ValueError):
        parse_weight("1,2", rank=3)
    for w in itertools.product(range(-2, 3), repeat=2):
        assert parse_weight(format_weight(w)) == w

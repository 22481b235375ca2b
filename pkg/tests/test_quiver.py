import pytest

from hhglue.quiver import (Arrow, Quiver, betti_number, connected_components, disjoint_union,
                           is_crown, reduced_quiver)


def Q(vs, arrows):
    return Quiver(vs, [Arrow(n, s, t) for n, s, t in arrows])


def test_paths_and_rendering():
    q = Q(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")])
    p = q.path_from_names(["a", "b"])
    assert (p.start, p.end) == (0, 2)
    assert q.render(p) == "a.b"
    assert q.render(p, rtl=True) == "b a"
    assert len(q.paths_of_length(2)) == 2
    assert q.concat(q.arrow_path(0), q.arrow_path(1)) == p
    assert q.concat(q.arrow_path(1), q.arrow_path(0)) is None
    with pytest.raises(ValueError):
        q.path_from_names(["b", "a"])


def test_construction_errors():
    with pytest.raises(ValueError):
        Q(["1", "1"], [])
    with pytest.raises(ValueError):
        Q(["1"], [("a", "1", "2")])
    with pytest.raises(ValueError):
        Q(["1"], [("a", "1", "1"), ("a", "1", "1")])


def test_vertex_kinds_and_components():
    q = Q(["s", "m", "t", "x"], [("a", "s", "m"), ("b", "m", "t")])
    assert [q.vertex_kind(v) for v in q.vertices] == ["source", "internal", "sink", "isolated"]
    assert len(connected_components(q)) == 2


def test_betti_and_reduced_quiver():
    kron = Q(["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")])
    assert betti_number(kron) == 2
    assert betti_number(reduced_quiver(kron)) == 0
    square = Q(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "4", "3"), ("d", "1", "4")])
    assert betti_number(square) == 1


def test_crowns():
    assert is_crown(Q(["e"], [("x", "e", "e")])) == 1
    assert is_crown(Q(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])) == 3
    assert is_crown(Q(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])) is None
    two = Q(["1", "2"], [("a", "1", "1"), ("b", "2", "2")])
    assert is_crown(two) is None


def test_disjoint_union_counts():
    a = Q(["1"], [("x", "1", "1")])
    b = Q(["2", "3"], [("y", "2", "3")])
    u = disjoint_union([a, b])
    assert (u.n_vertices, u.n_arrows) == (3, 2)
    assert len(connected_components(u)) == 2

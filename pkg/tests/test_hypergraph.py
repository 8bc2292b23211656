"""PartiteHypergraph construction rules, predicates, and .rhg round trips."""

import pytest

from ryser.errors import (
    DuplicateEdgeError,
    EmptyHypergraphError,
    ParseError,
    PartitenessError,
    UniformityError,
)
from ryser.gf import FiniteField
from ryser.hypergraph import (
    PartiteHypergraph,
    degree_stats,
    dumps_rhg,
    intersection_size_profile,
    is_intersecting,
    loads_rhg,
    read_rhg,
    write_rhg,
)
from ryser.plane import build_plane, truncate


@pytest.fixture(scope="module")
def t4():
    return truncate(build_plane(FiniteField(3)))


def test_constructor_validation():
    sides = [["a", "b"], ["c", "d"]]
    with pytest.raises(PartitenessError):
        PartiteHypergraph(sides, [[(0, 0), (0, 1)]])
    with pytest.raises(DuplicateEdgeError):
        PartiteHypergraph(sides, [[(0, 0), (1, 0)], [(1, 0), (0, 0)]])
    with pytest.raises(UniformityError):
        PartiteHypergraph([["a"], ["b"], ["c"]], [[(0, 0)], [(0, 0), (1, 0), (2, 0)]])
    with pytest.raises(ValueError):
        PartiteHypergraph(sides, [[(0, 0), (2, 0)]])
    # mixed consecutive sizes are fine
    h = PartiteHypergraph(sides, [[(0, 0)], [(0, 1), (1, 0)]])
    assert h.uniformity is None


def test_gid_vid_roundtrip(t4):
    for v in t4.vertices():
        assert t4.vid(t4.gid(v)) == v


def test_is_intersecting(t4):
    ok, wit = is_intersecting(t4)
    assert ok and wit is None
    h = PartiteHypergraph([["a", "b"], ["c", "d"]], [[(0, 0)], [(0, 1)]])
    ok, wit = is_intersecting(h)
    assert not ok and wit == (0, 1)
    with pytest.raises(EmptyHypergraphError):
        is_intersecting(PartiteHypergraph([["a"]], []))


def test_single_edge_profile_empty():
    h = PartiteHypergraph([["a"], ["b"]], [[(0, 0), (1, 0)]])
    assert intersection_size_profile(h) == {}
    ok, _ = is_intersecting(h)
    assert ok


def test_t4_profile_all_ones(t4):
    prof = intersection_size_profile(t4)
    assert prof == {1: 36}


@pytest.mark.parametrize("q,p,k", [(2, 2, 1), (3, 3, 1), (4, 2, 2), (5, 5, 1)])
def test_truncated_plane_profiles_all_ones(q, p, k):
    t = truncate(build_plane(FiniteField(p, k)))
    prof = intersection_size_profile(t)
    m = q * q
    assert prof == {1: m * (m - 1) // 2}


def test_degree_sum_equals_edge_size_sum(t4):
    for h in (t4, t4.without_edge(0)):
        st = degree_stats(h)
        assert sum(st.degrees) == sum(len(e) for e in h.edges)


def test_degree_stats(t4):
    st = degree_stats(t4)
    assert st.degrees == (3,) * 12
    assert all(side == (3, 3, 3) for side in st.side_degrees)
    empty = PartiteHypergraph([["a", "b"], ["c"]], [])
    st2 = degree_stats(empty)
    assert st2.degrees == (0, 0, 0)
    assert st2.nonzero(0) == ()


def test_rhg_roundtrip_structure(t4, tmp_path):
    p = tmp_path / "t4.rhg"
    write_rhg(t4, p)
    back = read_rhg(p)
    assert back == t4
    # canonical files round-trip byte-exactly
    assert dumps_rhg(back) == p.read_text()


def test_rhg_labels_roundtrip():
    h = PartiteHypergraph(
        [["a", "b"], ["c"]],
        [[(0, 0), (1, 0)], [(0, 1), (1, 0)]],
        edge_labels=["E2(1)", None],
    )
    back = loads_rhg(dumps_rhg(h))
    assert back == h
    assert back.edge_labels == ("E2(1)", None)


def test_rhg_comments_and_spacing():
    text = """# leading comment
rhg 1 2
s 0 a b   # inline comment
s 1 c
e "with # inside" 0.0 1.0
e 0.1   1.0
"""
    h = loads_rhg(text)
    assert h.edge_labels[0] == "with # inside"
    assert h.num_edges == 2


def test_rhg_parse_errors():
    with pytest.raises(ParseError):
        loads_rhg("")
    with pytest.raises(ParseError):
        loads_rhg("rhg 2 1\ns 0 a\n")
    with pytest.raises(ParseError):
        loads_rhg("rhg 1 2\ns 0 a\ns 1 b\ne 0.0 5.0\n")
    with pytest.raises(ParseError):
        loads_rhg('rhg 1 1\ns 0 a\ne "unterminated 0.0\n')
    with pytest.raises(ParseError):
        loads_rhg("rhg 1 2\ns 1 a\n")
    with pytest.raises(ParseError):
        loads_rhg("rhg 1 1\ns 0 a\nx 0.0\n")
    with pytest.raises(ParseError) as ei:
        loads_rhg("rhg 1 2\ns 0 a\ns 1 b\ne 0.0 zz\n")
    assert "line 4" in str(ei.value)


def test_rhg_partiteness_and_duplicates():
    with pytest.raises(PartitenessError):
        loads_rhg("rhg 1 2\ns 0 a b\ns 1 c\ne 0.0 0.1\n")
    with pytest.raises(DuplicateEdgeError):
        loads_rhg("rhg 1 2\ns 0 a\ns 1 b\ne 0.0 1.0\ne 1.0 0.0\n")


def test_without_and_with_edge(t4):
    h = t4.without_edge(0)
    assert h.num_edges == 8
    assert h.edges == t4.edges[1:]
    h2 = h.with_edge(t4.edges[0], label="back")
    assert h2.num_edges == 9
    assert h2.edge_labels[-1] == "back"

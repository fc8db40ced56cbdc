import pytest

from npocert.canon import is_isomorphic
from npocert.constructions import (
    G4_SPECTRUM,
    G5_SPECTRUM,
    G6_SPECTRUM,
    attach_pendants,
    clebsch,
    complete,
    complete_bipartite,
    construct,
    cycle,
    find_g6,
    g4,
    g5,
    h_seed,
    kneser,
    paley9,
    path,
    petersen,
    spectrum_matches,
    star,
    w5_pendants,
    w_graph,
)
from npocert.graph import GraphError, complement, degrees, independence_number
from npocert.linalg import float_spectrum, nonpositive_count


def test_basic_families():
    assert complete(5).edge_count == 10
    assert cycle(7).edge_count == 7 and degrees(cycle(7)) == [2] * 7
    assert path(4).edge_count == 3
    assert degrees(star(5)) == [4, 1, 1, 1, 1]
    assert complete_bipartite(2, 3).edge_count == 6


def test_kneser_and_petersen():
    assert is_isomorphic(kneser(5, 2), petersen())
    assert degrees(petersen()) == [3] * 10 and petersen().edge_count == 15
    assert independence_number(petersen()) == 4


def test_paley9():
    g = paley9()
    assert degrees(g) == [4] * 9
    assert is_isomorphic(g, complement(g))


def test_clebsch():
    g = clebsch()
    assert g.n == 16 and degrees(g) == [5] * 16
    assert not any(g.has_edge(u, w) for u, v in g.edges() for w in g.neighbors(v) if w != u)
    # eigenvalues 5, 1^10, -3^5
    vals = sorted(float_spectrum(g).values)
    assert spectrum_matches(vals, [-3] * 5 + [1] * 10 + [5])


@pytest.mark.parametrize("k", range(5, 11))
def test_w_graph(k):
    g = w_graph(k)
    assert g.n == k * (k + 1) // 2
    assert nonpositive_count(g) == k - 1


def test_w_graph_small_k_breaks():
    assert nonpositive_count(w_graph(4)) == 4


def test_g4_g5_spectra():
    assert spectrum_matches(float_spectrum(g4()).values, G4_SPECTRUM)
    assert spectrum_matches(float_spectrum(g5()).values, G5_SPECTRUM)
    assert not is_isomorphic(g4(), g5())
    assert nonpositive_count(g4()) == nonpositive_count(g5()) == 4


def test_find_g6():
    g = find_g6()
    assert g.n == 21
    assert nonpositive_count(g) == 5
    assert spectrum_matches(float_spectrum(g).values, G6_SPECTRUM)


def test_h_seed():
    g = h_seed()
    assert g.n == 7 and g.edge_count == 8
    assert degrees(g) == [6, 3, 2, 2, 1, 1, 1]


def test_pendants():
    g = w5_pendants()
    assert g.n == 45 and g.edge_count == w_graph(5).edge_count + 30
    with pytest.raises(GraphError):
        attach_pendants(complete(3), [(5, 1)])
    with pytest.raises(GraphError):
        attach_pendants(complete(60), [(0, 5)])


def test_construct_registry():
    assert construct("petersen") == petersen()
    assert construct("w_graph", [6]) == w_graph(6)
    with pytest.raises(GraphError):
        construct("petersen", [1])
    with pytest.raises(GraphError):
        construct("cycle")
    with pytest.raises(GraphError):
        construct("nope")

import itertools

import numpy as np
import pytest

from hexwalk import COLORS, HexLattice


@pytest.mark.parametrize("n,expected", [(2, 8), (64, 8192)])
def test_vertex_count(n, expected):
    assert HexLattice(n).N == expected


@pytest.mark.parametrize("bad", [3, 0, -2, 1, 7])
def test_odd_or_nonpositive_n_rejected(bad):
    with pytest.raises(ValueError):
        HexLattice(bad)


def test_flat_index_layout():
    lat = HexLattice(2)
    assert lat.flat_index((0, 0, 0)) == 0
    assert lat.flat_index((1, 0, 1)) == 5  # s*n^2 + y*n + x = 4 + 0 + 1


def test_flat_index_out_of_range():
    lat = HexLattice(2)
    with pytest.raises(ValueError):
        lat.flat_index((0, 2, 0))
    with pytest.raises(ValueError):
        lat.flat_index((-1, 0, 0))
    with pytest.raises(ValueError):
        lat.flat_index((0, 0, 2))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_flat_index_bijection(n):
    lat = HexLattice(n)
    for i in range(lat.N):
        assert lat.flat_index(lat.label_of(i)) == i


def test_label_of_range_check():
    lat = HexLattice(2)
    with pytest.raises(ValueError):
        lat.label_of(8)
    with pytest.raises(ValueError):
        lat.label_of(-1)


def test_blue_tessellation_n2():
    cells = HexLattice(2).tessellation("blue")
    assert len(cells) == 4
    assert ((0, 0, 0), (0, 0, 1)) in cells


def test_red_tessellation_wraparound():
    cells = [frozenset(c) for c in HexLattice(2).tessellation("red")]
    assert frozenset({(1, 0, 1), (0, 0, 0)}) in cells


def test_unknown_color_rejected():
    lat = HexLattice(4)
    with pytest.raises(ValueError):
        lat.tessellation("purple")
    with pytest.raises(ValueError):
        lat.swap_permutation("purple")


@pytest.mark.parametrize("n", [2, 4, 6])
@pytest.mark.parametrize("color", COLORS)
def test_tessellation_partitions_vertices(n, color):
    lat = HexLattice(n)
    cells = lat.tessellation(color)
    assert len(cells) == n * n
    seen = [v for cell in cells for v in cell]
    assert len(seen) == lat.N
    assert len(set(seen)) == lat.N


@pytest.mark.parametrize("n", [2, 4, 6])
def test_three_tessellations_cover_all_edges_once(n):
    lat = HexLattice(n)
    edges = [frozenset(cell) for color in COLORS for cell in lat.tessellation(color)]
    assert len(edges) == 3 * n * n
    assert len(set(edges)) == 3 * n * n


def test_positions_of_origin_cell():
    lat = HexLattice(4)
    assert np.allclose(lat.position((0, 0, 0)), [0.0, 0.0])
    assert np.allclose(lat.position((0, 0, 1)), [np.sqrt(3) / 2, 0.5])


def test_sublattice_offset_has_unit_length():
    lat = HexLattice(4)
    for x, y in itertools.product(range(2), range(2)):
        d = lat.position((x, y, 1)) - lat.position((x, y, 0))
        assert np.linalg.norm(d) == pytest.approx(1.0)


@pytest.mark.parametrize("color", COLORS)
def test_cells_are_unit_edges_away_from_wrap(color):
    # interior cells only: the geometric embedding ignores periodicity
    lat = HexLattice(8)
    for (u, v) in lat.tessellation(color):
        if max(u[0], v[0], u[1], v[1]) >= lat.n - 1:
            continue
        d = np.linalg.norm(lat.position(u) - lat.position(v))
        assert d == pytest.approx(1.0, abs=1e-12)


def test_positions_array_matches_scalar():
    lat = HexLattice(4)
    pos = lat.positions
    for i in range(lat.N):
        assert np.allclose(pos[i], lat.position(lat.label_of(i)))


def test_neighbors_examples():
    lat = HexLattice(4)
    assert lat.neighbors((0, 0, 0)) == ((3, 0, 1), (0, 3, 1), (0, 0, 1))
    assert lat.neighbors((0, 0, 1)) == ((1, 0, 0), (0, 1, 0), (0, 0, 0))


def test_neighbor_relation_symmetric():
    lat = HexLattice(4)
    for i in range(lat.N):
        v = lat.label_of(i)
        for w in lat.neighbors(v):
            assert v in lat.neighbors(w)


@pytest.mark.parametrize("color", COLORS)
def test_swap_permutation_is_cell_pairing(color):
    lat = HexLattice(4)
    perm = lat.swap_permutation(color)
    assert np.array_equal(perm[perm], np.arange(lat.N))  # involution
    pairing = {frozenset((i, int(perm[i]))) for i in range(lat.N)}
    cells = {frozenset((lat.flat_index(u), lat.flat_index(v)))
             for u, v in lat.tessellation(color)}
    assert pairing == cells


def test_translate_wraps():
    lat = HexLattice(4)
    assert lat.translate((3, 2, 1), (2, 3)) == (1, 1, 1)

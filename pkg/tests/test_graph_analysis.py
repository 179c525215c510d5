from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from conftest import cfg, shapes
from hexpivot.configuration import Configuration, canonical_path, components, corners, is_corner
from hexpivot.graph_analysis import (
    Crew,
    Flower,
    adjacent_two_cuts_at,
    biconnected,
    block_tree,
    child_2split,
    crew_valid,
    cut_vertices,
    find_non_cut_corner,
    flower_valid,
    is_2free,
    two_cut,
    two_cuts_of,
)
from hexpivot.hexgrid import Cell, neighbors

TRI = cfg((0, 0), (0, 1), (1, 0))


def _graph(c):
    g = nx.Graph()
    g.add_nodes_from(c.cells)
    g.add_edges_from(c.contact_edges())
    return g


def test_block_tree_examples(ring6):
    bt = block_tree(TRI)
    assert len(bt.blocks) == 1 and not bt.cut_vertices
    bt = block_tree(canonical_path(3))
    assert len(bt.blocks) == 2 and bt.cut_vertices == {Cell(0, 1)}
    assert all(bt.is_trivial(i) for i in range(2))
    tail = Configuration(set(ring6.cells) | {Cell(0, -2)})
    bt = block_tree(tail)
    assert sorted(len(b) for b in bt.blocks) == [2, 6]
    assert bt.cut_vertices == {Cell(0, -1)}


@given(shapes(1, 30))
def test_blocks_match_networkx(c):
    blocks, cuts = biconnected(c.cells)
    g = _graph(c)
    if len(c) == 1:
        assert blocks == [frozenset(c.cells)]
        return
    assert {frozenset(b) for b in nx.biconnected_components(g)} == set(blocks)
    assert set(nx.articulation_points(g)) == cuts


@given(shapes(2, 30))
def test_block_tree_structure(c):
    bt = block_tree(c)
    edges = {frozenset(e) for e in c.contact_edges()}
    covered = {frozenset((a, b)) for blk in bt.blocks for a, b in combinations(blk, 2) if frozenset((a, b)) in edges}
    assert covered == edges
    for v in bt.cut_vertices:
        assert len(bt.blocks_of(v)) >= 2
    assert bt.root in bt.blocks[bt.root_block]
    # a tree: blocks + cuts nodes, one edge per (block, cut) incidence
    assert len(bt.edges()) == bt.node_count - 1


def _naive_two_cuts(block):
    out = set()
    base = len(components(block))
    for a, b in combinations(sorted(block), 2):
        if len(components(set(block) - {a, b})) > base:
            out.add(frozenset((a, b)))
    return out


@given(shapes(4, 9))
def test_two_cuts_match_naive(c):
    for blk in biconnected(c.cells)[0]:
        if len(blk) >= 4:
            assert {tc.pair for tc in two_cuts_of(blk)} == _naive_two_cuts(blk)


def test_two_free_examples(ring6):
    assert all(is_2free(TRI, TRI.cells, m) for m in TRI.cells)
    assert not any(is_2free(ring6, ring6.cells, m) for m in ring6.cells)
    line = canonical_path(3)
    assert not is_2free(line, {Cell(0, 0), Cell(0, 1)}, Cell(0, 1))


def test_adjacent_two_cuts():
    assert adjacent_two_cuts_at(TRI, Cell(0, 0)) == []
    diamond = cfg((0, 0), (0, 1), (1, 0), (-1, 1))
    # the shared edge of two triangles separates the two tips
    cuts = adjacent_two_cuts_at(diamond, Cell(0, 0))
    assert [tc.pair for tc in cuts] == [frozenset({Cell(0, 0), Cell(0, 1)})]
    assert all(len(ch) == 3 for ch in child_2split(cuts[0])) and cuts[0].trivial


def test_two_rings_sharing_an_edge():
    a = set(neighbors(Cell(0, 0)))
    b = set(neighbors(Cell(2, -1)))
    c = Configuration(a | b)
    shared = sorted(a & b)
    assert len(shared) == 2
    tc = two_cut(c.cells, *shared)
    assert tc is not None and tc.adjacent and not tc.trivial
    assert len(tc.children) == 2
    m = shared[0]
    found = adjacent_two_cuts_at(c, m)
    assert frozenset(shared) in {t.pair for t in found}


def test_find_non_cut_corner_examples(ring6):
    assert find_non_cut_corner(canonical_path(3)) in {Cell(0, 0), Cell(0, 2)}
    tail = Configuration(set(ring6.cells) | {Cell(0, -2)})
    x = find_non_cut_corner(tail)
    assert x != Cell(0, -1) and is_corner(tail.cells, x)


@given(shapes(1, 30))
def test_non_cut_corner_property(c):
    x = find_non_cut_corner(c)
    assert x in corners(c)
    assert len(c) == 1 or x not in cut_vertices(c)


def test_flower_valid_examples():
    f = Flower(Cell(0, 0))
    crew = [Cell(0, 0), Cell(0, -1), Cell(1, -1)]
    ell = {Cell(0, -3), Cell(1, -3), Cell(0, -2)}
    # (0,-2) touches the rim of the flower
    occ = set(crew) | ell
    assert flower_valid(occ, ell, crew, f)
    assert not flower_valid(occ | {Cell(0, 1)}, ell, crew, f)
    far = {Cell(0, -5), Cell(1, -5)}
    assert not flower_valid(set(crew) | far, far, crew, f)


def test_crew_peel():
    assert crew_valid(TRI, TRI.cells, Crew((Cell(0, 0), Cell(0, 1))))
    # the last module alone has nothing to pivot about
    assert not crew_valid(TRI, TRI.cells, Crew((Cell(0, 0), Cell(0, 1), Cell(1, 0))))
    line = canonical_path(3)
    assert not crew_valid(line, line.cells, [Cell(0, 1)])


def test_two_cut_rejects_non_cut():
    assert two_cut(TRI.cells, Cell(0, 0), Cell(0, 1)) is None
    with pytest.raises(TypeError):
        two_cut(TRI.cells, Cell(0, 0))

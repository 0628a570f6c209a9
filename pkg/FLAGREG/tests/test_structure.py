import random
from itertools import combinations_with_replacement

import pytest

from FLAGREG.services.util.catalog import (
    CATALOG, cone, cross_polytope_boundary, cycle, generate_expression, icosahedron, path, rp2_6,
    simplex, simplex_boundary, suspension
)
from FLAGREG.services.util.complex import (
    SimplicialComplex, f_vector, from_facets, join, one_skeleton
)
from FLAGREG.services.util.errors import (
    NoOrientationError, NotPseudomanifoldError, NotPureError, PreconditionError, VoidComplexError
)
from FLAGREG.services.util.fields import FieldSpec
from FLAGREG.services.util.homology import chain_boundary, reduced_betti
from FLAGREG.services.util.structure import (
    collapse_2d, core_decompose, free_ridges, induced_square, is_closed_pseudomanifold,
    is_flag_no_square, is_gorenstein, is_gorenstein_star, is_homology_manifold, orientation,
    parity_orientable, top_cycle_check
)


def free_edges(delta):
    """Edges lying in exactly one triangle and in no other facet."""
    counts = {}
    for facet in delta.facets:
        if len(facet) == 3:
            for i in range(3):
                edge = facet[:i] + facet[i + 1:]
                counts[edge] = counts.get(edge, 0) + 1
    return sorted(edge for edge, count in counts.items() if count == 1)


def test_flag_no_square():
    assert is_flag_no_square(icosahedron())
    assert is_flag_no_square(cycle(5))
    square = is_flag_no_square(cycle(4))
    assert not square
    assert square.witness == [0, 1, 2, 3]
    octahedron = is_flag_no_square(cross_polytope_boundary(3))
    assert octahedron.witness == [0, 2, 1, 3]
    assert octahedron.reason == "induced 4-cycle"
    tetra = is_flag_no_square(simplex_boundary(3))
    assert tetra.reason == "not flag" and tetra.witness == (0, 1, 2, 3)
    void = is_flag_no_square(SimplicialComplex(n=2, facets=()))
    assert not void and void.reason == "void complex"
    assert induced_square(one_skeleton(icosahedron())) is None


def test_free_ridges():
    assert free_ridges(path(3)) == [(0,), (2,)]
    assert free_ridges(icosahedron()) == []
    assert free_ridges(simplex(2)) == [(0, 1), (0, 2), (1, 2)]
    with pytest.raises(NotPureError):
        free_ridges(from_facets(4, [(0, 1, 2), (2, 3)]))


def test_closed_pseudomanifold():
    assert is_closed_pseudomanifold(icosahedron())
    assert is_closed_pseudomanifold(rp2_6())
    assert is_closed_pseudomanifold(from_facets(2, [(0,), (1,)]))
    boundary = is_closed_pseudomanifold(path(3))
    assert not boundary and boundary.witness == (0,)
    two_triangles = from_facets(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert is_closed_pseudomanifold(two_triangles).reason == "not strongly connected"
    assert is_closed_pseudomanifold(from_facets(4, [(0, 1, 2), (2, 3)])).reason == "not pure"
    assert not is_closed_pseudomanifold(SimplicialComplex(n=1, facets=((),)))
    with pytest.raises(VoidComplexError):
        is_closed_pseudomanifold(SimplicialComplex(n=1, facets=()))


def test_parity_orientable_depends_on_labels():
    assert not parity_orientable(cross_polytope_boundary(3))
    assert orientation(cross_polytope_boundary(3)) is not None
    with pytest.raises(NotPseudomanifoldError):
        parity_orientable(path(3))


def test_parity_orientable_is_all_ones_cycle():
    for delta in (cross_polytope_boundary(3), icosahedron(), cycle(5), rp2_6(), simplex_boundary(3),
                  suspension(cycle(5))):
        all_ones = {facet: 1 for facet in delta.facets}
        is_cycle = not chain_boundary(delta, all_ones, FieldSpec.rational())
        assert bool(parity_orientable(delta)) == is_cycle


def test_orientation():
    oriented = orientation(icosahedron())
    assert oriented is not None
    assert len(oriented.signs) == 20
    assert not chain_boundary(icosahedron(), oriented.signs, FieldSpec.rational())
    assert orientation(rp2_6()) is None
    sphere = orientation(from_facets(2, [(0,), (1,)]))
    assert sphere.signs == {(0,): 1, (1,): -1}


def test_top_cycle_check():
    verdict = top_cycle_check(icosahedron(), FieldSpec.rational())
    assert verdict and verdict.witness == 1
    assert top_cycle_check(rp2_6(), FieldSpec.gf2())
    assert reduced_betti(rp2_6(), FieldSpec.gf2())[2] == 1
    with pytest.raises(NoOrientationError):
        top_cycle_check(rp2_6(), FieldSpec.rational())
    with pytest.raises(NotPseudomanifoldError):
        top_cycle_check(path(3), FieldSpec.gf2())


def test_core_decompose():
    decomposition = core_decompose(cone(cycle(5)))
    assert decomposition.cone_vertices == (5,)
    assert f_vector(decomposition.core).entries == (1, 5, 5)
    shared = core_decompose(from_facets(4, [(0, 1, 2), (1, 2, 3)]))
    assert shared.cone_vertices == (1, 2)
    assert f_vector(shared.core).entries == (1, 2)
    assert core_decompose(icosahedron()).core == icosahedron()


@pytest.mark.parametrize('field_spec', [FieldSpec.gf2(), FieldSpec.rational()], ids=str)
def test_gorenstein_star(field_spec):
    assert is_gorenstein_star(icosahedron(), field_spec)
    assert is_gorenstein_star(cross_polytope_boundary(3), field_spec)
    assert is_gorenstein_star(cycle(5), field_spec)
    broken = is_gorenstein_star(path(3), field_spec)
    assert not broken and broken.witness == (2,)
    assert path(3).labels[2] == '3'
    assert not is_gorenstein_star(cone(cycle(5)), field_spec)


def test_gorenstein_star_over_projective_plane():
    assert is_gorenstein_star(rp2_6(), FieldSpec.gf2())
    assert not is_gorenstein_star(rp2_6(), FieldSpec.rational())


def test_gorenstein():
    assert is_gorenstein(from_facets(4, [(0, 1, 2), (1, 2, 3)]))
    assert is_gorenstein(cone(cycle(5)))
    assert is_gorenstein(join(cycle(4), simplex(1)))
    assert not is_gorenstein(path(4))
    pendant = is_gorenstein(from_facets(4, [(0, 1, 2), (2, 3)]))
    assert not pendant
    assert 2 in pendant.witness


def test_homology_manifold():
    assert is_homology_manifold(icosahedron())
    assert is_homology_manifold(rp2_6(), FieldSpec.gf2())
    assert not is_homology_manifold(path(3))


def test_collapse_2d():
    fan = cone(path(3))
    collapsed = collapse_2d(fan, (0, 1))
    assert collapsed.facets == ((0, 3), (1, 2, 3))
    assert collapse_2d(simplex(2), (0, 1)).facets == ((0, 2), (1, 2))


def test_collapse_2d_preconditions():
    with pytest.raises(PreconditionError):
        collapse_2d(cycle(5), (0, 1))
    with pytest.raises(PreconditionError):
        collapse_2d(simplex_boundary(3), (0, 1))
    with pytest.raises(PreconditionError):
        collapse_2d(icosahedron(), (0, 1))
    with pytest.raises(PreconditionError):
        collapse_2d(cone(cycle(5)), (0, 2))


@pytest.mark.parametrize('base', [cycle(5), cycle(6), cycle(7), path(5)], ids=['c5', 'c6', 'c7', 'p5'])
def test_collapses_preserve_flag_no_square(base):
    rng = random.Random(len(base.facets))
    delta = cone(base)
    assert is_flag_no_square(delta)
    while delta.dim == 2:
        candidates = free_edges(delta)
        if not candidates:
            break
        delta = collapse_2d(delta, rng.choice(candidates))
        assert is_flag_no_square(delta)


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_orientation_matches_top_rational_homology(name):
    delta = generate_expression(name)
    if not is_closed_pseudomanifold(delta):
        return
    top = reduced_betti(delta, FieldSpec.rational())[delta.dim]
    assert (orientation(delta) is not None) == (top == 1)
    assert top_cycle_check(delta, FieldSpec.gf2())


@pytest.mark.parametrize('left, right', list(combinations_with_replacement(
    ['c4', 'c5', 'path3', 'triangle', 'tetrahedron_boundary'], 2)))
def test_gorenstein_is_multiplicative_under_join(left, right):
    delta, gamma = generate_expression(CATALOG[left]), generate_expression(CATALOG[right])
    expected = bool(is_gorenstein(delta)) and bool(is_gorenstein(gamma))
    assert bool(is_gorenstein(join(delta, gamma))) == expected


def test_gorenstein_witness_with_unused_ground_vertex():
    # two disjoint edges around the unused vertex 2; a vertex link is a single point
    delta = from_facets(5, [(0, 1), (3, 4)])
    decomposition = core_decompose(delta)
    assert decomposition.cone_vertices == ()
    assert decomposition.core == delta
    assert decomposition.lift((1, 4)) == (1, 4)
    verdict = is_gorenstein(delta)
    assert not verdict and verdict.witness == (4,)

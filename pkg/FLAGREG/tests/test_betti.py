import random

import pytest

from FLAGREG.services.util.betti import (
    hochster_table, induced_cycle_order, induced_cycles_bruteforce, krull_dim, linear_strand_length,
    np_via_betti, np_via_cycles, regularity, shortest_induced_cycle, systole, systole_bruteforce
)
from FLAGREG.services.util.catalog import (
    CATALOG, cross_polytope_boundary, cycle, generate_expression, icosahedron, path, random_flag,
    simplex, simplex_boundary
)
from FLAGREG.services.util.complex import SimplicialComplex, from_facets, minimal_nonfaces, one_skeleton
from FLAGREG.services.util.errors import (
    LimitExceededError, NotFlagError, PreconditionError, VoidComplexError
)
from FLAGREG.services.util.fields import FieldSpec
from FLAGREG.services.util.homology import reduced_betti
from FLAGREG.services.util.structure import is_gorenstein_star

FIELDS = [FieldSpec.gf2(), FieldSpec.gfp(3), FieldSpec.rational()]


def without_origin(table):
    return {key: value for key, value in table.entries.items() if key != (0, 0)}


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_cycle_tables(field_spec):
    c4 = hochster_table(cycle(4), field_spec)
    assert without_origin(c4) == {(1, 2): 2, (2, 4): 1}
    assert c4[(0, 0)] == 1
    c5 = hochster_table(cycle(5), field_spec)
    assert without_origin(c5) == {(1, 2): 5, (2, 3): 5, (3, 5): 1}
    assert c5.regularity == 2
    assert c5.projective_dimension == 3


def test_simplex_and_path_tables():
    assert hochster_table(simplex(3)).entries == {(0, 0): 1}
    assert regularity(simplex(3)) == 0
    table = hochster_table(path(3))
    assert table.entries == {(0, 0): 1, (1, 2): 1}
    assert regularity(path(3)) == 1


def test_table_layout():
    table = hochster_table(cycle(5))
    assert table.as_array().tolist() == [[1, 0, 0, 0], [0, 5, 5, 0], [0, 0, 0, 1]]
    rendered = str(table).splitlines()
    assert rendered[1].split() == ['total:', '1', '5', '5', '1']
    assert rendered[3].split() == ['1:', '.', '5', '5', '.']


def test_worker_count_does_not_change_the_table(monkeypatch):
    delta = random_flag(9, 0.45, 4)
    serial = hochster_table(delta, workers=1)
    assert hochster_table(delta, workers=4) == serial
    monkeypatch.setenv('FLAGREG_WORKERS', '3')
    assert hochster_table(delta) == serial


def test_limit(monkeypatch):
    with pytest.raises(LimitExceededError):
        hochster_table(cycle(5), limit=4)
    with pytest.raises(LimitExceededError):
        regularity(cycle(5), limit=4)
    monkeypatch.setenv('HOCHSTER_LIMIT', '4')
    with pytest.raises(LimitExceededError):
        hochster_table(cycle(5))


def test_regularity_agrees_with_table():
    rng = random.Random(8)
    for _ in range(25):
        delta = random_flag(rng.randint(3, 8), rng.uniform(0.2, 0.8), rng.randrange(10 ** 6))
        assert regularity(delta) == hochster_table(delta).regularity


def test_regularity_of_spheres():
    assert regularity(cross_polytope_boundary(3)) == 3
    assert regularity(simplex_boundary(3)) == 3
    assert regularity(cycle(7), FieldSpec.rational()) == 2


def test_shortest_induced_cycle():
    assert shortest_induced_cycle(one_skeleton(cycle(5))) == [0, 1, 2, 3, 4]
    assert shortest_induced_cycle(one_skeleton(cycle(4))) == [0, 1, 2, 3]
    assert shortest_induced_cycle(one_skeleton(simplex(4))) is None
    assert systole(cycle(6)) == 6
    assert systole(icosahedron()) == 5
    assert systole(cross_polytope_boundary(3)) == 4
    assert systole(path(4)) is None
    with pytest.raises(NotFlagError):
        systole(simplex_boundary(3))


def test_systole_matches_bruteforce():
    for seed in range(40):
        delta = random_flag(8, 0.35, seed)
        assert systole(delta) == systole_bruteforce(one_skeleton(delta))


def test_induced_cycle_order():
    graph = one_skeleton(cycle(6))
    assert induced_cycles_bruteforce(graph, 6) == [(0, 1, 2, 3, 4, 5)]
    assert induced_cycles_bruteforce(graph, 4) == []
    assert induced_cycle_order(graph, (0, 1, 2)) is None
    ico = one_skeleton(icosahedron())
    assert induced_cycle_order(ico, (1, 2, 3, 4, 5)) == [1, 2, 3, 4, 5]


def test_np_via_cycles():
    assert np_via_cycles(cycle(5), 2)
    failing = np_via_cycles(cycle(5), 3)
    assert not failing and failing.witness == [0, 1, 2, 3, 4]
    square = np_via_cycles(cycle(4), 2)
    assert not square and square.witness == [0, 1, 2, 3]
    # only cycles of length exactly p + 2 count in the literal reading
    assert np_via_cycles(cycle(4), 3, cumulative=False)
    assert not np_via_cycles(cycle(4), 3)
    with pytest.raises(PreconditionError):
        np_via_cycles(cycle(5), 1)
    with pytest.raises(NotFlagError):
        np_via_cycles(simplex_boundary(2), 2)


def test_np_via_betti():
    assert np_via_betti(cycle(5), 2)
    failing = np_via_betti(cycle(5), 3)
    assert not failing and failing.witness == (3, 5)
    square = np_via_betti(cycle(4), 2)
    assert not square and square.witness == (2, 4)
    assert not np_via_betti(simplex_boundary(2), 1)
    with pytest.raises(PreconditionError):
        np_via_betti(cycle(5), 0)


def test_linear_strand_length():
    assert linear_strand_length(hochster_table(cycle(5))) == 2
    assert linear_strand_length(hochster_table(cycle(4))) == 1
    assert linear_strand_length(hochster_table(simplex_boundary(2))) == 0
    assert linear_strand_length(hochster_table(path(3))) is None


@pytest.mark.parametrize('field_spec', [FieldSpec.gf2(), FieldSpec.rational()], ids=str)
def test_np_criteria_agree(field_spec):
    rng = random.Random(21)
    for _ in range(20):
        delta = random_flag(rng.randint(4, 7), rng.uniform(0.25, 0.7), rng.randrange(10 ** 6))
        table = hochster_table(delta, field_spec)
        for p in (2, 3):
            assert np_via_cycles(delta, p).satisfied == np_via_betti(delta, p, table=table).satisfied


def test_unused_ground_vertex_fails_np():
    # vertex 5 lies in no facet, so x_5 is a linear generator of the ideal
    delta = from_facets(6, [(v, (v + 1) % 5) for v in range(5)])
    by_cycles = np_via_cycles(delta, 2)
    assert not by_cycles and by_cycles.witness == (5,)
    assert not np_via_cycles(delta, 3, cumulative=False)
    by_table = np_via_betti(delta, 2)
    assert not by_table and by_table.witness == (1, 1)
    assert np_via_cycles(cycle(5), 2)


def test_krull_dim():
    assert krull_dim(icosahedron()) == 3
    assert krull_dim(cycle(5)) == 2
    assert krull_dim(SimplicialComplex(n=0, facets=((),))) == 0
    assert krull_dim(from_facets(6, [(0, 1)])) == 2
    with pytest.raises(VoidComplexError):
        krull_dim(SimplicialComplex(n=3, facets=()))


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_quadratic_generators_are_the_nonedges(name):
    delta = generate_expression(name)
    nonedges = [face for face in minimal_nonfaces(delta, max_size=2) if len(face) == 2]
    assert hochster_table(delta)[(1, 2)] == len(nonedges)


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_regularity_exceeds_top_homology(name):
    delta = generate_expression(name)
    top = reduced_betti(delta).top_nonvanishing()
    if top is not None:
        assert regularity(delta) >= top + 1


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_gorenstein_star_regularity_is_krull_dim(name):
    delta = generate_expression(name)
    if is_gorenstein_star(delta, FieldSpec.rational()):
        assert regularity(delta, FieldSpec.rational()) == krull_dim(delta)

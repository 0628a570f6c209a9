import random

import pytest

from FLAGREG.services.util.catalog import (
    CATALOG, cone, cycle, generate_expression, icosahedron, random_flag, rp2_6, simplex,
    simplex_boundary, suspension
)
from FLAGREG.services.util.complex import SimplicialComplex, f_vector, from_facets
from FLAGREG.services.util.errors import DegreeRangeError, FlagregError, VoidComplexError
from FLAGREG.services.util.fields import FieldSpec, parse_field
from FLAGREG.services.util.fields.gf2_backend import GF2Backend
from FLAGREG.services.util.fields.prime_backend import PrimeFieldBackend
from FLAGREG.services.util.fields.rational_backend import RationalBackend, largest_primes_below
from FLAGREG.services.util.homology import (
    SparseMatrix, boundary_matrix, chain_boundary, rank, reduced_betti
)

FIELDS = [FieldSpec.gf2(), FieldSpec.gfp(3), FieldSpec.rational()]


@pytest.fixture
def sample_complexes():
    complexes = [cycle(5), icosahedron(), rp2_6(), simplex_boundary(3), cone(cycle(4))]
    complexes += [random_flag(7, 0.5, seed) for seed in range(5)]
    return complexes


def test_parse_field():
    assert parse_field('GF2') == FieldSpec.gf2()
    assert parse_field('gf3') == FieldSpec.gfp(3)
    assert parse_field('qq') == FieldSpec.rational()
    assert parse_field('gf2').characteristic == 2
    assert parse_field('q').characteristic == 0
    with pytest.raises(FlagregError):
        parse_field('gf4')
    with pytest.raises(FlagregError):
        parse_field('reals')


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_boundary_squares_to_zero(field_spec, sample_complexes):
    for delta in sample_complexes:
        for k in range(0, delta.dim + 1):
            lower = boundary_matrix(delta, k, field_spec)
            upper = boundary_matrix(delta, k + 1, field_spec)
            assert lower.compose(upper, field_spec).is_zero


def test_boundary_signs():
    edge = simplex(1)
    over_q = boundary_matrix(edge, 1, FieldSpec.rational())
    assert dict(over_q.entries) == {(1, 0): 1, (0, 0): -1}
    over_gf3 = boundary_matrix(edge, 1, FieldSpec.gfp(3))
    assert dict(over_gf3.entries) == {(1, 0): 1, (0, 0): 2}
    augmentation = boundary_matrix(cycle(5), 0, FieldSpec.rational())
    assert (augmentation.rows, augmentation.cols) == (1, 5)
    assert set(augmentation.entries.values()) == {1}


def test_boundary_degree_range():
    with pytest.raises(DegreeRangeError):
        boundary_matrix(cycle(4), 3)
    with pytest.raises(DegreeRangeError):
        boundary_matrix(cycle(4), -2)
    with pytest.raises(VoidComplexError):
        boundary_matrix(SimplicialComplex(n=2, facets=()), 0)


def test_sparse_matrix_rejects_explicit_zero():
    with pytest.raises(FlagregError):
        SparseMatrix(2, 2, {(0, 0): 0})
    with pytest.raises(FlagregError):
        SparseMatrix(2, 2, {(2, 0): 1})


def test_rank_backends():
    # [[1, 1], [1, -1]] has rank 2 except in characteristic 2
    matrix = SparseMatrix(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1})
    assert GF2Backend().rank(matrix) == 1
    assert PrimeFieldBackend(3).rank(matrix) == 2
    assert RationalBackend().rank(matrix) == 2
    assert rank(SparseMatrix(3, 0), FieldSpec.rational()) == 0


def test_largest_primes_below():
    primes = largest_primes_below(1 << 16, 3)
    assert primes[0] == 65521
    assert primes == sorted(primes, reverse=True)
    assert all(p < 1 << 16 for p in primes)


def test_modular_fastpath_matches_exact_rank(sample_complexes):
    exact, modular = RationalBackend(), RationalBackend(modular_fastpath=True, prime_count=2)
    for delta in sample_complexes:
        for k in range(0, delta.dim + 1):
            matrix = boundary_matrix(delta, k, FieldSpec.rational())
            assert modular.rank(matrix) == exact.rank(matrix)


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_reduced_betti_of_spheres(field_spec):
    assert reduced_betti(cycle(5), field_spec).dims == (0, 0, 1)
    assert reduced_betti(icosahedron(), field_spec).dims == (0, 0, 0, 1)
    assert reduced_betti(simplex(3), field_spec).dims == (0, 0, 0, 0, 0)
    assert reduced_betti(SimplicialComplex(n=0, facets=((),)), field_spec).dims == (1,)
    two_points = from_facets(2, [(0,), (1,)])
    assert reduced_betti(two_points, field_spec)[0] == 1
    assert reduced_betti(suspension(cycle(4)), field_spec).is_sphere_like(2)


def test_projective_plane_depends_on_characteristic():
    assert reduced_betti(rp2_6(), FieldSpec.gf2()).dims == (0, 0, 1, 1)
    assert reduced_betti(rp2_6(), FieldSpec.gfp(3)).dims == (0, 0, 0, 0)
    assert reduced_betti(rp2_6(), FieldSpec.rational()).dims == (0, 0, 0, 0)


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_euler_characteristic_matches_f_vector(field_spec):
    rng = random.Random(3)
    for _ in range(15):
        delta = random_flag(rng.randint(3, 8), rng.uniform(0.2, 0.8), rng.randrange(10 ** 6))
        betti = reduced_betti(delta, field_spec)
        assert betti.euler_characteristic() == f_vector(delta).reduced_euler_characteristic()


def test_cones_are_acyclic():
    for seed in range(8):
        inner = random_flag(6, 0.5, seed)
        assert reduced_betti(cone(inner), FieldSpec.rational()).nonvanishing() == []


def test_chain_boundary_of_sphere_is_zero_mod_two():
    ico = icosahedron()
    assert chain_boundary(ico, {facet: 1 for facet in ico.facets}, FieldSpec.gf2()) == {}
    assert chain_boundary(ico, {(0, 1, 2): 1}, FieldSpec.rational()) == {(1, 2): 1, (0, 2): -1, (0, 1): 1}


@pytest.mark.parametrize('name', sorted(set(CATALOG) - {'rp2_6'}))
def test_fields_agree_without_torsion(name):
    delta = generate_expression(name)
    answers = {reduced_betti(delta, field_spec).dims for field_spec in FIELDS + [FieldSpec.gfp(5)]}
    assert len(answers) == 1

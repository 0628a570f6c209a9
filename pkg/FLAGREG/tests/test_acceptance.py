"""End-to-end checks on the reference complexes and on seeded random flag complexes."""
import random

import pytest

from FLAGREG.services.util.betti import (
    hochster_table, np_via_betti, np_via_cycles, regularity
)
from FLAGREG.services.util.bounds import (
    averaging_witness, dehn_sommerville, dhs_bound, face_average_A, js_lower_bounds,
    lemma3_check, smallest_s1_witnesses, thm1_verdict, thm2_verdict, thm4_verdict
)
from FLAGREG.services.util.catalog import (
    CATALOG, cone, cycle, generate_expression, icosahedron, random_flag, rp2_6, simplex_boundary
)
from FLAGREG.services.util.complex import f_vector, h_vector, is_flag, join
from FLAGREG.services.util.errors import NotFlagError
from FLAGREG.services.util.fields import FieldSpec
from FLAGREG.services.util.homology import reduced_betti
from FLAGREG.services.util.report import AnalysisOptions, analyze, has_violation
from FLAGREG.services.util.structure import (
    is_flag_no_square, is_gorenstein_star, orientation, top_cycle_check
)

FIELDS = [FieldSpec.gf2(), FieldSpec.gfp(3), FieldSpec.rational()]


def random_instances(count, seed, max_vertices=8):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_flag(rng.randint(4, max_vertices), rng.uniform(0.2, 0.7), rng.randrange(10 ** 6))


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_icosahedron_regularity(field_spec):
    ico = icosahedron()
    assert is_flag_no_square(ico)
    assert regularity(ico, field_spec) == 3


def test_icosahedron_table():
    table = hochster_table(icosahedron(), FieldSpec.gf2())
    assert table.regularity == 3
    assert table.projective_dimension == 9
    assert table[(9, 12)] == 1
    assert table[(1, 2)] == 66 - 30


@pytest.mark.parametrize('p', [2, 3])
def test_logarithmic_bound_on_random_flag_complexes(p):
    checked = 0
    for delta in random_instances(200, seed=p - 1):
        if not np_via_cycles(delta, p):
            continue
        assert regularity(delta) < dhs_bound(delta.n, p)
        checked += 1
    assert checked > 0


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_np_criteria_agree_on_random_flag_complexes(field_spec):
    for delta in random_instances(200, seed=2):
        table = hochster_table(delta, field_spec, workers=1)
        for p in (2, 3, 4):
            assert np_via_cycles(delta, p).satisfied == np_via_betti(delta, p, table=table).satisfied


@pytest.mark.parametrize('p', [2, 3])
def test_thm1_never_violated_on_random_flag_complexes(p):
    for delta in random_instances(200, seed=3):
        assert not thm1_verdict(delta, p).violated


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_thm2_never_violated_on_catalog(name):
    delta = generate_expression(name)
    if not is_flag(delta):
        with pytest.raises(NotFlagError):
            thm2_verdict(delta)
        return
    report = thm2_verdict(delta, FieldSpec.rational())
    assert not report.violated
    if report.asserted:
        assert report.observed_value <= report.bound_value


@pytest.mark.parametrize('field_spec', FIELDS, ids=str)
def test_cycle_tables(field_spec):
    assert hochster_table(cycle(4), field_spec).sorted_entries()[1:] == [(1, 2, 2), (2, 4, 1)]
    assert hochster_table(cycle(5), field_spec).sorted_entries()[1:] == [(1, 2, 5), (2, 3, 5), (3, 5, 1)]


def test_product_inequality():
    assert [(lemma3_check(k).observed_value, lemma3_check(k).bound_value) for k in (3, 4, 5)] == \
        [(3, 12), (36, 144), (6480, 20736)]


def test_top_face_bounds():
    report = thm4_verdict(icosahedron())
    assert report.asserted and report.holds
    assert all(js_lower_bounds(d).recursion_value == js_lower_bounds(d).closed_form for d in range(2, 11))
    search = smallest_s1_witnesses(5)
    assert search.min_facets == 5
    assert [f_vector(w).entries for w in search.witnesses] == [(1, 5, 5)]


def test_orientation_and_top_homology():
    ico = icosahedron()
    assert orientation(ico) is not None
    assert top_cycle_check(ico, FieldSpec.rational()).witness == 1
    assert reduced_betti(ico, FieldSpec.rational())[2] == 1
    assert orientation(rp2_6()) is None
    assert top_cycle_check(rp2_6(), FieldSpec.gf2())
    assert reduced_betti(rp2_6(), FieldSpec.gf2())[2] == 1
    assert reduced_betti(rp2_6(), FieldSpec.rational())[2] == 0
    assert regularity(ico) == ico.dim + 1


def test_averaging_on_icosahedron():
    ico = icosahedron()
    assert face_average_A(ico) == 5
    found = averaging_witness(ico)
    assert len(found.face) == 1
    assert len(found.cycle) == 5


def test_regularity_is_additive_under_join():
    assert regularity(join(cycle(4), cycle(5))) == 4
    assert regularity(join(cycle(4), simplex_boundary(2))) == 4
    rng = random.Random(4)
    for _ in range(10):
        left = random_flag(rng.randint(2, 5), rng.uniform(0.3, 0.7), rng.randrange(10 ** 6))
        right = random_flag(rng.randint(2, 5), rng.uniform(0.3, 0.7), rng.randrange(10 ** 6))
        assert regularity(join(left, right)) == regularity(left) + regularity(right)


def test_cone_does_not_change_regularity():
    for delta in random_instances(10, seed=5, max_vertices=7):
        assert regularity(cone(delta)) == regularity(delta)


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_gorenstein_star_implies_symmetric_h_vector(name):
    delta = generate_expression(name)
    if is_gorenstein_star(delta, FieldSpec.rational()):
        assert dehn_sommerville(h_vector(f_vector(delta)))


def test_full_analysis_of_icosahedron():
    report = analyze(icosahedron(), AnalysisOptions.from_strings(['gf2'], ['all']))
    assert not has_violation(report)
    section = report.fields[0]
    assert section.regularity == 3
    assert section.gorenstein.holds
    assert {bound.name for bound in report.bounds} >= {'thm1', 'thm2', 'thm4', 'twelve_vertex'}

"""Numeric bounds on regularity and face numbers, and their verification on concrete complexes.

Every comparison except the logarithmic bound is exact (integers and
Fractions). A report is `asserted` when the hypotheses of the bound hold
on the complex; an asserted report that does not hold is `violated`.
"""
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

import networkx as nx

from FLAGREG.services.config import config
from FLAGREG.services.util.betti import (
    hochster_table, induced_cycle_order, krull_dim, np_via_betti, np_via_cycles, regularity
)
from FLAGREG.services.util.complex import (
    Face, Graph, HVector, SimplicialComplex, Verdict, clique_complex, f_from_h, f_vector,
    is_flag, link_vertices, one_skeleton
)
from FLAGREG.services.util.errors import (
    NotFlagError, NotPureError, PreconditionError, TheoremViolation
)
from FLAGREG.services.util.fields import FieldSpec, default_field
from FLAGREG.services.util.logutil import LoggingUtil
from FLAGREG.services.util.structure import (
    cached_link, core_decompose, free_ridges, is_flag_no_square, is_gorenstein,
    is_homology_manifold
)

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )

Number = Union[int, float, Fraction]

GROWTH_BASE = Fraction(25, 12)


@dataclass
class BoundReport:
    name: str
    hypotheses_checked: List[Tuple[str, bool]]
    bound_value: Optional[Number]
    observed_value: Optional[Number]
    holds: bool
    asserted: bool = False
    witness: Any = None
    inconclusive: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(value for _, value in self.hypotheses_checked)

    @property
    def violated(self) -> bool:
        return self.asserted and not self.holds

    def enforce(self) -> 'BoundReport':
        """Raise TheoremViolation if an asserted comparison failed."""
        if self.violated:
            logger.error(f"{self.name}: observed {self.observed_value} against bound {self.bound_value} "
                         f"with hypotheses {self.hypotheses_checked}")
            raise TheoremViolation(f"{self.name} violated: observed {self.observed_value}, bound {self.bound_value}")
        return self


@dataclass(frozen=True)
class HHatVector:
    """ĥ_0 .. ĥ_δ, δ = ⌊d/2⌋, with the middle entry halved when d is even."""
    entries: Tuple[Fraction, ...]
    d: int

    def f_top(self) -> Fraction:
        """f_{d-1} = 2 Σ ĥ_i."""
        return 2 * sum(self.entries, Fraction(0))

    def f_codim2(self) -> Fraction:
        """f_{d-3} = Σ (C(d-i, 2) + C(i, 2)) ĥ_i."""
        return sum(((math.comb(self.d - i, 2) + math.comb(i, 2)) * value
                    for i, value in enumerate(self.entries)), Fraction(0))


class JsBounds(NamedTuple):
    recursion_value: Fraction
    closed_form: Fraction
    simplified: Fraction


@dataclass(frozen=True)
class AveragingWitness:
    average: Fraction
    bound: Fraction
    face: Optional[Face]
    cycle: Optional[List[int]]


@dataclass(frozen=True)
class PhiMap:
    vertex: int
    mapping: Dict[Face, int]
    injective: bool


@dataclass(frozen=True)
class S1Search:
    min_facets: Optional[int]
    witnesses: List[SimplicialComplex]
    examined: int


def dhs_bound(n: int, p: int) -> float:
    """log_{(p+3)/2}(2n/p) + 2."""
    if n < 1 or p < 2:
        raise PreconditionError(f"dhs_bound needs n ≥ 1 and p ≥ 2, got n={n}, p={p}")
    return math.log(2 * n / p) / math.log((p + 3) / 2) + 2


def aci_bound(n: int, p: int) -> int:
    if n < 1 or p < 1:
        raise PreconditionError(f"aci_bound needs n ≥ 1 and p ≥ 1, got n={n}, p={p}")
    return 2 * (n // (p + 1)) + 1


def dehn_sommerville(h: HVector) -> Verdict:
    for i in range(h.d + 1):
        if h[i] != h[h.d - i]:
            return Verdict(False, witness=i, reason=f"h_{i} = {h[i]} but h_{h.d - i} = {h[h.d - i]}")
    return Verdict(True)


def hhat(h: HVector, d: Optional[int] = None) -> HHatVector:
    d = h.d if d is None else d
    if d != h.d:
        raise PreconditionError(f"h-vector of length {h.d + 1} does not match d = {d}")
    symmetric = dehn_sommerville(h)
    if not symmetric:
        raise PreconditionError(f"Dehn-Sommerville equations fail: {symmetric.reason}")
    delta = d // 2
    entries = tuple(Fraction(h[i], 2) if 2 * i == d else Fraction(h[i]) for i in range(delta + 1))
    result = HHatVector(entries=entries, d=d)
    f = f_from_h(h)
    if result.f_top() != f.f(d - 1):
        raise TheoremViolation(f"2 Σ ĥ = {result.f_top()} differs from f_{d - 1} = {f.f(d - 1)}")
    if d >= 2 and result.f_codim2() != f.f(d - 3):
        raise TheoremViolation(f"Σ (C(d-i,2)+C(i,2)) ĥ = {result.f_codim2()} differs from f_{d - 3} = {f.f(d - 3)}")
    return result


def face_average_A(delta: SimplicialComplex) -> Fraction:
    """Average number of facets containing a (d-3)-face, d = dim + 1."""
    if not delta.is_pure:
        raise NotPureError("the facet average needs a pure complex")
    d = delta.dim + 1
    if d < 3:
        raise PreconditionError(f"the facet average needs d ≥ 3, got d = {d}")
    f = f_vector(delta)
    average = Fraction(f.f(d - 1) * math.comb(d, 2), f.f(d - 3))
    containing: Counter = Counter()
    for facet in delta.facets:
        containing.update(combinations(facet, d - 2))
    counted = Fraction(sum(containing.values()), len(delta.faces_by_dim[d - 3]))
    if counted != average:
        raise TheoremViolation(f"facet average {average} disagrees with direct count {counted}")
    return average


def average_bound(d: int) -> Fraction:
    if d < 3:
        raise PreconditionError(f"average_bound needs d ≥ 3, got {d}")
    if d % 2 == 0:
        return Fraction(4 * (d - 1), d - 2)
    return Fraction(4 * d, d - 1)


def average_bound_generic(d: int) -> Fraction:
    """2 C(d,2) / (C(d-δ,2) + C(δ,2)); agrees with `average_bound`."""
    if d < 3:
        raise PreconditionError(f"average_bound needs d ≥ 3, got {d}")
    delta = d // 2
    return Fraction(2 * math.comb(d, 2), math.comb(d - delta, 2) + math.comb(delta, 2))


def averaging_witness(delta: SimplicialComplex) -> AveragingWitness:
    """Locate a (d-3)-face whose link is an induced 4- or 5-cycle.

    For a flag Gorenstein* complex with d ≥ 3 the average A is below 6, so
    such a face exists; for d > 4 the average is below 5 and a 4-cycle link
    exists. Faces are scanned in canonical order.
    """
    d = delta.dim + 1
    average, bound = face_average_A(delta), average_bound(d)
    if average >= bound:
        raise TheoremViolation(f"facet average {average} is not below {bound}")
    graph = one_skeleton(delta)
    full = graph.to_networkx()
    longest = 4 if d > 4 else 5
    for sigma in delta.faces_by_dim[d - 3]:
        vertices = link_vertices(delta, sigma)
        if len(vertices) > longest:
            continue
        cycle = induced_cycle_order(graph, vertices, full)
        if cycle is not None and len(cycle) >= 4:
            logger.debug(f"face {sigma} has the induced {len(cycle)}-cycle {cycle} as link")
            return AveragingWitness(average=average, bound=bound, face=sigma, cycle=cycle)
    logger.error(f"no (d-3)-face with a short cycle link although A = {average} < {bound}")
    raise TheoremViolation("averaging argument found no short cycle link")


def _require_flag(delta: SimplicialComplex) -> None:
    verdict = is_flag(delta)
    if not verdict:
        raise NotFlagError(f"complex is not flag; minimal nonface {verdict.witness}")


def thm1_verdict(delta: SimplicialComplex, p: int = 2, field_spec: Optional[FieldSpec] = None,
                 limit: Optional[int] = None) -> BoundReport:
    """reg < log_{(p+3)/2}(2n/p) + 2 whenever N_p holds, p ≥ 2.

    The ACI bound 2⌊n/(p+1)⌋ + 1 is reported alongside. A regularity within
    `dhs_inconclusive_margin` of the logarithmic bound is flagged and not asserted.
    """
    field_spec = field_spec or default_field()
    bound = dhs_bound(delta.n, p)
    table = hochster_table(delta, field_spec, limit=limit)
    np_holds = np_via_betti(delta, p, table=table)
    reg = table.regularity
    margin = config.get_float('dhs_inconclusive_margin', 1e-9)
    inconclusive = abs(bound - reg) < margin
    if inconclusive:
        logger.warning(f"regularity {reg} within {margin} of the bound {bound}; no verdict")
    aci = aci_bound(delta.n, p)
    return BoundReport(
        name="thm1",
        hypotheses_checked=[(f"N_{p}", np_holds.satisfied)],
        bound_value=bound,
        observed_value=reg,
        holds=reg < bound,
        asserted=np_holds.satisfied and not inconclusive,
        witness=None if np_holds else np_holds.witness,
        inconclusive=inconclusive,
        details={'field': str(field_spec), 'aci_bound': aci, 'aci_holds': reg <= aci},
    )


def thm2_verdict(delta: SimplicialComplex, field_spec: Optional[FieldSpec] = None,
                 limit: Optional[int] = None) -> BoundReport:
    """Gorenstein with N_2 gives reg ≤ 4; Gorenstein with N_3 gives reg ≤ 2."""
    _require_flag(delta)
    field_spec = field_spec or default_field()
    gorenstein = is_gorenstein(delta, field_spec)
    n2 = np_via_cycles(delta, 2)
    n3 = np_via_cycles(delta, 3)
    reg = regularity(delta, field_spec, limit=limit)
    bound = 2 if n3 else 4
    details: Dict[str, Any] = {'field': str(field_spec)}
    witness = None
    if not n3:
        witness = n3.witness
    if gorenstein:
        decomposition = core_decompose(delta)
        core = decomposition.core
        d = core.dim + 1
        details['core_d'] = d
        if d >= 3:
            found = averaging_witness(core)
            # back to the vertex numbering of Δ
            face = decomposition.lift(found.face)
            cycle = list(decomposition.lift(found.cycle))
            details.update({'face_average': found.average, 'average_bound': found.bound,
                            'short_link_face': face, 'short_link_cycle': cycle})
            if n3:
                logger.error(f"N_3 holds but the link of {face} is the induced cycle {cycle}")
                raise TheoremViolation("N_3 contradicts the short cycle link")
            if witness is None or len(cycle) <= len(witness):
                witness = {'face': face, 'cycle': cycle}
    return BoundReport(
        name="thm2",
        hypotheses_checked=[("gorenstein", gorenstein.holds), ("N_2", n2.satisfied), ("N_3", n3.satisfied)],
        bound_value=bound,
        observed_value=reg,
        holds=reg <= bound,
        asserted=gorenstein.holds and n2.satisfied,
        witness=witness,
        details=details,
    )


def lemma3_check(k: int) -> BoundReport:
    """∏_{i=0}^{k-3} (k-i)^{2^i} < 12^{2^{k-3}} in exact integers."""
    if k < 3:
        raise PreconditionError(f"lemma3_check needs k ≥ 3, got {k}")
    product = 1
    for i in range(k - 2):
        product *= (k - i) ** (2 ** i)
    power = 12 ** (2 ** (k - 3))
    return BoundReport(name="lemma3", hypotheses_checked=[("k >= 3", True)],
                       bound_value=power, observed_value=product,
                       holds=product < power, asserted=True, details={'k': k})


def js_lower_bounds(d: int) -> JsBounds:
    """Lower bounds for the number of top faces of a d-dimensional flag-no-square complex without free ridges."""
    if d < 2:
        raise PreconditionError(f"js_lower_bounds needs d ≥ 2, got {d}")
    value = Fraction(5)
    for step in range(2, d + 1):
        value = value ** 2 / (step + 1)
    denominator = 1
    for i in range(d - 1):
        denominator *= (d + 1 - i) ** (2 ** i)
    closed = Fraction(5 ** (2 ** (d - 1)), denominator)
    simplified = GROWTH_BASE ** (2 ** (d - 2))
    if value != closed:
        raise TheoremViolation(f"recursion {value} differs from closed form {closed}")
    if closed < simplified:
        raise TheoremViolation(f"closed form {closed} below {simplified}")
    return JsBounds(recursion_value=value, closed_form=closed, simplified=simplified)


def _free_top_ridges(delta: SimplicialComplex) -> List[Face]:
    if delta.is_pure:
        return free_ridges(delta)
    counts = Counter(f[:i] + f[i + 1:] for f in delta.facets if len(f) == delta.dim + 1 for i in range(len(f)))
    return sorted((r for r, c in counts.items() if c == 1), key=lambda r: (len(r), r))


def thm4_verdict(delta: SimplicialComplex) -> BoundReport:
    """f_d > (25/12)^{2^{d-2}} and f_0 > (25/12)^{2^{d-3}} for flag-no-square complexes without free ridges."""
    d = delta.dim
    if d < 2:
        raise PreconditionError(f"thm4_verdict needs dimension ≥ 2, got {d}")
    fns = is_flag_no_square(delta)
    free = _free_top_ridges(delta)
    f = f_vector(delta)
    f_top, f_0 = f.f(d), f.f(0)
    top_bound = GROWTH_BASE ** (2 ** (d - 2))
    if d == 2:
        # exponent 1/2: compare squares
        vertex_holds = f_0 ** 2 > GROWTH_BASE
        vertex_bound = math.sqrt(GROWTH_BASE)
    else:
        vertex_bound = GROWTH_BASE ** (2 ** (d - 3))
        vertex_holds = f_0 > vertex_bound
    js = js_lower_bounds(d)
    previous = js_lower_bounds(d - 1).closed_form if d > 2 else Fraction(5)
    return BoundReport(
        name="thm4",
        hypotheses_checked=[("flag_no_square", fns.holds), ("no_free_ridges", not free)],
        bound_value=top_bound,
        observed_value=f_top,
        holds=f_top > top_bound and vertex_holds,
        asserted=fns.holds and not free,
        witness=free[0] if free else (fns.witness if not fns else None),
        details={
            'd': d,
            'f_0': f_0,
            'f_0_bound': vertex_bound,
            'f_0_holds': vertex_holds,
            'closed_form': js.closed_form,
            'closed_form_holds': f_top > js.closed_form,
            'f_0_closed_form': previous,
            'f_0_closed_form_holds': f_0 > previous,
        },
    )


def phi_map(delta: SimplicialComplex, v: int) -> PhiMap:
    """Send each facet τ of lk v to the vertex w ≠ v with τ ∪ {w} a facet.

    On a flag-no-square complex without free ridges w lies outside the star
    of v and the map is injective, so f_0 ≥ f_{d-1}(lk v) + f_0(lk v) + 1.
    """
    if not is_flag_no_square(delta):
        raise PreconditionError("phi_map needs a flag-no-square complex")
    free = free_ridges(delta)
    if free:
        raise PreconditionError(f"phi_map needs no free ridges, found {free[0]}")
    if v not in delta.vertices:
        raise PreconditionError(f"{v} is not a vertex")
    d = delta.dim
    neighbours = set(link_vertices(delta, (v,)))
    mapping: Dict[Face, int] = {}
    for facet in delta.facets:
        if v not in facet:
            continue
        tau = tuple(u for u in facet if u != v)
        others = [w for other in delta.facets if other != facet and set(tau) <= set(other)
                  for w in other if w not in tau]
        w = min(others)
        if w == v or w in neighbours:
            logger.error(f"φ({tau}) = {w} lies in the star of {v}")
            raise TheoremViolation("φ must leave the star of v")
        mapping[tau] = w
    injective = len(set(mapping.values())) == len(mapping)
    if not injective:
        raise TheoremViolation(f"φ at vertex {v} is not injective")
    lk = cached_link(delta, (v,))
    lower = len(lk.faces_by_dim.get(d - 1, [])) + len(lk.vertices) + 1
    if len(delta.vertices) < lower:
        raise TheoremViolation(f"f_0 = {len(delta.vertices)} below f_(d-1)(lk v) + f_0(lk v) + 1 = {lower}")
    return PhiMap(vertex=v, mapping=mapping, injective=injective)


def double_counting_check(delta: SimplicialComplex) -> BoundReport:
    """f_d = (1/(d+1)) Σ_v f_{d-1}(lk v)."""
    d = delta.dim
    if d < 0:
        raise PreconditionError("double counting needs a vertex")
    total = sum(len(cached_link(delta, (v,)).faces_by_dim.get(d - 1, [])) for v in delta.vertices)
    average = Fraction(total, d + 1)
    observed = f_vector(delta).f(d)
    return BoundReport(name="double_counting", hypotheses_checked=[],
                       bound_value=average, observed_value=observed,
                       holds=observed == average, asserted=True)


def smallest_s1_witnesses(max_vertices: int = 5) -> S1Search:
    """Exhaustive search for the 1-dimensional flag-no-square complexes without free ridges with fewest edges.

    Every labelled graph on up to `max_vertices` vertices (no isolated
    vertices) is examined; witnesses are reported up to isomorphism.
    """
    logger.info(f"exhaustive search over graphs on at most {max_vertices} vertices")
    best: Optional[int] = None
    witnesses: List[SimplicialComplex] = []
    examined = 0
    for n in range(2, max_vertices + 1):
        pairs = list(combinations(range(n), 2))
        for chosen in range(1, 2 ** len(pairs)):
            edges = [pair for bit, pair in enumerate(pairs) if chosen >> bit & 1]
            if best is not None and len(edges) > best:
                continue
            graph = Graph.from_edges(n, edges)
            if any(not mask for mask in graph.adjacency):
                continue
            examined += 1
            delta = clique_complex(graph)
            if delta.dim != 1 or free_ridges(delta) or not is_flag_no_square(delta):
                continue
            if best is None or len(edges) < best:
                best, witnesses = len(edges), []
            if not any(nx.is_isomorphic(graph.to_networkx(), one_skeleton(w).to_networkx()) for w in witnesses):
                witnesses.append(delta)
    logger.info(f"examined {examined} complexes, minimum {best} edges, {len(witnesses)} witness(es)")
    return S1Search(min_facets=best, witnesses=witnesses, examined=examined)


def manifold_remark_check(delta: SimplicialComplex, field_spec: Optional[FieldSpec] = None) -> BoundReport:
    """A flag-no-square homology d-manifold has d ≤ 4."""
    fns = is_flag_no_square(delta)
    manifold = is_homology_manifold(delta, field_spec) if fns else Verdict(False, reason="not checked")
    return BoundReport(name="manifold_remark",
                       hypotheses_checked=[("flag_no_square", fns.holds), ("homology_manifold", manifold.holds)],
                       bound_value=4, observed_value=delta.dim, holds=delta.dim <= 4,
                       asserted=fns.holds and manifold.holds)


def twelve_vertex_check(delta: SimplicialComplex, field_spec: Optional[FieldSpec] = None,
                        limit: Optional[int] = None) -> BoundReport:
    """dim = reg = 3 with N_2 forces n ≥ 12, and n = 12 only for the icosahedron boundary."""
    field_spec = field_spec or default_field()
    every_vertex = len(delta.vertices) == delta.n
    flag = is_flag(delta)
    krull = krull_dim(delta)
    reg = regularity(delta, field_spec, limit=limit)
    n2 = np_via_cycles(delta, 2) if flag else np_via_betti(delta, 2, field_spec)
    icosahedral = None
    holds = delta.n >= 12
    if delta.n == 12:
        icosahedral = flag.holds and nx.is_isomorphic(one_skeleton(delta).to_networkx(), nx.icosahedral_graph())
        holds = holds and icosahedral
    return BoundReport(
        name="twelve_vertex",
        hypotheses_checked=[("edge_ideal", every_vertex and flag.holds), ("krull_dim == 3", krull == 3),
                            ("reg == 3", reg == 3), ("N_2", n2.satisfied)],
        bound_value=12,
        observed_value=delta.n,
        holds=holds,
        asserted=every_vertex and flag.holds and krull == 3 and reg == 3 and n2.satisfied,
        details={'field': str(field_spec), 'icosahedral': icosahedral},
    )


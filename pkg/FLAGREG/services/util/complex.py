"""Simplicial complexes, graphs and face-count vectors.

All values are immutable. Faces are strictly increasing tuples of vertex
indices; every face also has a bit mask (bit v set for vertex v), which is
what subset tests run on. Python integers are unbounded, so the mask form
is available for every ground set size.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from FLAGREG.services.config import config
from FLAGREG.services.util.errors import (
    InvalidFacetsError, NotAFaceError, VertexRangeError, VoidComplexError
)
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )

Face = Tuple[int, ...]

VOID_DIM = -math.inf


def face_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        mask |= 1 << v
    return mask


def mask_face(mask: int) -> Face:
    face = []
    v = 0
    while mask:
        if mask & 1:
            face.append(v)
        mask >>= 1
        v += 1
    return tuple(face)


def default_labels(n: int) -> Tuple[str, ...]:
    return tuple(str(v + 1) for v in range(n))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate, with an optional witness and explanation."""
    holds: bool
    witness: Any = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Tuple[int, int]]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        for a, b in self.edges:
            if a == b:
                raise VertexRangeError(f"loop at vertex {a}")
            if not 0 <= a < b < self.n:
                raise VertexRangeError(f"edge ({a}, {b}) outside vertex range 0..{self.n - 1}")
        if not self.labels:
            object.__setattr__(self, 'labels', default_labels(self.n))

    @staticmethod
    def from_edges(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] = ()) -> 'Graph':
        """Build a graph, normalizing each edge to (min, max). Duplicates collapse."""
        normalized = set()
        for edge in edges:
            a, b = edge
            normalized.add((min(a, b), max(a, b)))
        return Graph(n=n, edges=frozenset(normalized), labels=tuple(labels))

    @cached_property
    def adjacency(self) -> Tuple[int, ...]:
        """Neighbourhood bit mask of every vertex."""
        masks = [0] * self.n
        for a, b in self.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a] >> b & 1)

    def neighbors(self, v: int) -> Face:
        return mask_face(self.adjacency[v])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex on the ground set {0, ..., n-1}, given by its facets.

    The void complex has no facets; the complex {∅} has the single facet ().
    Use `from_facets` to build one from arbitrary generating faces.
    """
    n: int
    facets: Tuple[Face, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        for facet in self.facets:
            if any(not 0 <= v < self.n for v in facet):
                raise VertexRangeError(f"facet {facet} outside ground set of size {self.n}")
            if any(a >= b for a, b in zip(facet, facet[1:])):
                raise InvalidFacetsError(f"facet {facet} is not strictly sorted")
        if list(self.facets) != sorted(self.facets, key=lambda f: (len(f), f)):
            raise InvalidFacetsError("facets are not in canonical order")
        masks = self.facet_masks
        for i, j in combinations(range(len(masks)), 2):
            # canonical order puts the smaller face first
            if masks[i] & masks[j] == masks[i]:
                raise InvalidFacetsError(f"facet {self.facets[i]} lies in {self.facets[j]}")
        if not self.labels:
            object.__setattr__(self, 'labels', default_labels(self.n))
        if len(self.labels) != self.n:
            raise VertexRangeError(f"{len(self.labels)} labels for {self.n} vertices")

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self):
        if self.is_void:
            return VOID_DIM
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def facet_masks(self) -> Tuple[int, ...]:
        return tuple(face_mask(f) for f in self.facets)

    @cached_property
    def faces_by_dim(self) -> Dict[int, List[Face]]:
        """All faces grouped by dimension, each group in lexicographic order."""
        found: Dict[int, Set[Face]] = {}
        for facet in self.facets:
            for size in range(len(facet) + 1):
                found.setdefault(size - 1, set()).update(combinations(facet, size))
        return {k: sorted(found[k]) for k in sorted(found)}

    @property
    def faces(self) -> List[Face]:
        """All faces in canonical order: by size, then lexicographic."""
        return [f for k in self.faces_by_dim for f in self.faces_by_dim[k]]

    @property
    def vertices(self) -> Face:
        return tuple(f[0] for f in self.faces_by_dim.get(0, []))

    def contains_face(self, face: Iterable[int]) -> bool:
        mask = face_mask(face)
        return any(mask & fm == mask for fm in self.facet_masks)

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def labelled_facets(self) -> Set[FrozenSet[str]]:
        return {frozenset(self.labels[v] for v in f) for f in self.facets}

    def relabeled(self, labels: Sequence[str] = ()) -> 'SimplicialComplex':
        return SimplicialComplex(n=self.n, facets=self.facets, labels=tuple(labels))


def _maximal(faces: Iterable[Face]) -> Tuple[Face, ...]:
    """Inclusion-maximal members of `faces`, in canonical order."""
    unique = sorted(set(faces), key=lambda f: (-len(f), f))
    kept: List[Face] = []
    kept_masks: List[int] = []
    for face in unique:
        mask = face_mask(face)
        if any(mask & km == mask for km in kept_masks):
            continue
        kept.append(face)
        kept_masks.append(mask)
    return tuple(sorted(kept, key=lambda f: (len(f), f)))


def _normalize_face(face: Iterable[int], ground: int) -> Face:
    vertices = list(face)
    if len(set(vertices)) != len(vertices):
        raise VertexRangeError(f"duplicate vertex in face {vertices}")
    for v in vertices:
        if not 0 <= v < ground:
            raise VertexRangeError(f"vertex {v} outside ground set of size {ground}")
    return tuple(sorted(vertices))


def from_facets(ground: int, faces: Iterable[Iterable[int]],
                labels: Sequence[str] = ()) -> SimplicialComplex:
    """The complex generated by `faces`; non-maximal faces are pruned."""
    normalized = [_normalize_face(f, ground) for f in faces]
    return SimplicialComplex(n=ground, facets=_maximal(normalized), labels=tuple(labels))


def _reindexed(delta: SimplicialComplex, vertices: Sequence[int],
               faces: Iterable[Face]) -> SimplicialComplex:
    """Restrict to `vertices` (sorted original indices) and renumber them 0..m-1."""
    position = {v: i for i, v in enumerate(vertices)}
    renumbered = [tuple(position[v] for v in f) for f in faces]
    return SimplicialComplex(n=len(vertices), facets=_maximal(renumbered),
                             labels=tuple(delta.labels[v] for v in vertices))


def complement_graph(graph: Graph) -> Graph:
    edges = {(a, b) for a, b in combinations(range(graph.n), 2) if (a, b) not in graph.edges}
    return Graph(n=graph.n, edges=frozenset(edges), labels=graph.labels)


def clique_complex(graph: Graph) -> SimplicialComplex:
    """Flag complex whose faces are the cliques of `graph`."""
    if graph.n == 0:
        return SimplicialComplex(n=0, facets=((),))
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(graph.to_networkx())]
    return SimplicialComplex(n=graph.n, facets=_maximal(cliques), labels=graph.labels)


def independence_complex(graph: Graph) -> SimplicialComplex:
    """Faces are the independent sets of `graph`, so I(G) is its Stanley-Reisner ideal."""
    return clique_complex(complement_graph(graph))


def one_skeleton(delta: SimplicialComplex) -> Graph:
    if delta.is_void:
        raise VoidComplexError("the void complex has no 1-skeleton")
    edges = frozenset(delta.faces_by_dim.get(1, []))
    return Graph(n=delta.n, edges=edges, labels=delta.labels)


def minimal_nonfaces(delta: SimplicialComplex, max_size: Optional[int] = None) -> List[Face]:
    """Brute-force minimal nonfaces up to `max_size`, in canonical order."""
    limit = delta.n if max_size is None else min(max_size, delta.n)
    found = []
    for size in range(1, limit + 1):
        for candidate in combinations(range(delta.n), size):
            if delta.contains_face(candidate):
                continue
            if all(delta.contains_face(sub) for sub in combinations(candidate, size - 1)):
                found.append(candidate)
    return found


def is_flag(delta: SimplicialComplex) -> Verdict:
    """True iff every minimal nonface has at most two vertices.

    Equivalently every clique of the 1-skeleton is a face. On failure the
    witness is the first minimal nonface found inside an offending maximal
    clique; it has at least three vertices.
    """
    graph = one_skeleton(delta)
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(graph.to_networkx()))
    for clique in cliques:
        if len(clique) < 3 or delta.contains_face(clique):
            continue
        for size in range(3, len(clique) + 1):
            for candidate in combinations(clique, size):
                if not delta.contains_face(candidate):
                    return Verdict(False, witness=candidate,
                                   reason=f"minimal nonface of size {size}")
    return Verdict(True)


def induced_subcomplex(delta: SimplicialComplex, vertex_set: Iterable[int]) -> SimplicialComplex:
    """Δ_W: the faces of Δ inside W, on the ground set W (renumbered in order)."""
    vertices = sorted(set(vertex_set))
    if any(not 0 <= v < delta.n for v in vertices):
        raise VertexRangeError(f"{vertices} is not a subset of the ground set")
    w_mask = face_mask(vertices)
    restricted = [mask_face(fm & w_mask) for fm in delta.facet_masks]
    return _reindexed(delta, vertices, restricted)


def link_vertices(delta: SimplicialComplex, sigma: Iterable[int]) -> Face:
    """Vertices of Δ outside σ that form a face together with σ."""
    sigma_mask = face_mask(sigma)
    union = 0
    for fm in delta.facet_masks:
        if fm & sigma_mask == sigma_mask:
            union |= fm
    return mask_face(union & ~sigma_mask)


def link(delta: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """lk_Δ σ = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}, renumbered on its own vertices."""
    sigma = tuple(sorted(sigma))
    if not delta.contains_face(sigma):
        raise NotAFaceError(f"{sigma} is not a face")
    if not sigma:
        # lk ∅ = Δ, ground vertices outside every facet included
        return delta
    sigma_mask = face_mask(sigma)
    remaining = [mask_face(fm & ~sigma_mask) for fm in delta.facet_masks
                 if fm & sigma_mask == sigma_mask]
    return _reindexed(delta, link_vertices(delta, sigma), remaining)


def star(delta: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """Closed star of σ, on the ground set of Δ."""
    sigma = tuple(sorted(sigma))
    if not delta.contains_face(sigma):
        raise NotAFaceError(f"{sigma} is not a face")
    sigma_mask = face_mask(sigma)
    facets = tuple(f for f, fm in zip(delta.facets, delta.facet_masks)
                   if fm & sigma_mask == sigma_mask)
    return SimplicialComplex(n=delta.n, facets=facets, labels=delta.labels)


def join(delta: SimplicialComplex, gamma: SimplicialComplex) -> SimplicialComplex:
    """Δ * Γ with the vertices of Γ shifted past those of Δ."""
    shift = delta.n
    facets = [f + tuple(v + shift for v in g) for f in delta.facets for g in gamma.facets]
    return SimplicialComplex(n=delta.n + gamma.n, facets=_maximal(facets),
                             labels=delta.labels + gamma.labels)


@dataclass(frozen=True)
class FVector:
    """(f_-1, f_0, ..., f_dim)."""
    entries: Tuple[int, ...]

    def f(self, i: int) -> int:
        return self.entries[i + 1]

    @property
    def krull_dim(self) -> int:
        return len(self.entries) - 1

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** (i - 1) * count for i, count in enumerate(self.entries))


@dataclass(frozen=True)
class HVector:
    """(h_0, ..., h_d) with d = dim + 1."""
    entries: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> int:
        return self.entries[i]


def f_vector(delta: SimplicialComplex) -> FVector:
    if delta.is_void:
        raise VoidComplexError("the void complex has no f-vector")
    return FVector(tuple(len(delta.faces_by_dim[k]) for k in range(-1, delta.dim + 1)))


def h_vector(f: FVector) -> HVector:
    """Invert f_{j-1} = sum_{i<=j} C(d-i, j-i) h_i."""
    d = f.krull_dim
    return HVector(tuple(
        sum((-1) ** (k - i) * math.comb(d - i, k - i) * f.f(i - 1) for i in range(k + 1))
        for k in range(d + 1)
    ))


def f_from_h(h: HVector) -> FVector:
    d = h.d
    return FVector(tuple(
        sum(math.comb(d - i, j - i) * h[i] for i in range(j + 1))
        for j in range(d + 1)
    ))

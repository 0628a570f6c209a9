"""Graded Betti tables and regularity of Stanley-Reisner rings via Hochster's formula.

β_{i,j}(S/I_Δ) = Σ_{|W|=j} dim Ĥ_{j-i-1}(Δ_W), so the whole table comes from
the reduced homology of the 2^n induced subcomplexes. Property N_p is
decided both from the table and, for flag complexes, from induced cycles
of the 1-skeleton.
"""
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from FLAGREG.services.config import config
from FLAGREG.services.util.complex import (
    Face, Graph, SimplicialComplex, face_mask, is_flag, one_skeleton
)
from FLAGREG.services.util.errors import (
    LimitExceededError, NotFlagError, PreconditionError, VoidComplexError
)
from FLAGREG.services.util.fields import FieldSpec, default_field
from FLAGREG.services.util.homology import BettiVector, ChainComplex
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )

CHUNK_SIZE = 256


@dataclass(frozen=True)
class BettiTable:
    field: FieldSpec
    n: int
    entries: Mapping[Tuple[int, int], int]

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def sorted_entries(self) -> List[Tuple[int, int, int]]:
        return [(i, j, beta) for (i, j), beta in sorted(self.entries.items())]

    @property
    def regularity(self) -> int:
        return max(j - i for i, j in self.entries)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def as_array(self) -> np.ndarray:
        """Rows are j - i (0..reg), columns are i (0..pd)."""
        table = np.zeros((self.regularity + 1, self.projective_dimension + 1), dtype=int)
        for (i, j), beta in self.entries.items():
            table[j - i, i] = beta
        return table

    def __str__(self):
        table = self.as_array()
        width = max(6, max(len(str(v)) for v in table.sum(axis=0)) + 1)
        header = ' ' * 7 + ''.join(f"{i:>{width}}" for i in range(table.shape[1]))
        totals = f"{'total:':>7}" + ''.join(f"{v:>{width}}" for v in table.sum(axis=0))
        lines = [header, totals]
        for row_index, row in enumerate(table):
            cells = ''.join(f"{(str(v) if v else '.'):>{width}}" for v in row)
            lines.append(f"{str(row_index) + ':':>7}{cells}")
        return '\n'.join(lines)


@dataclass(frozen=True)
class NpVerdict:
    p: int
    satisfied: bool
    witness: Any = None

    def __bool__(self):
        return self.satisfied


def _check_limit(delta: SimplicialComplex, limit: Optional[int]) -> None:
    if delta.is_void:
        raise VoidComplexError("Hochster's formula needs a nonvoid complex")
    limit = config.get_int('hochster_limit', 22) if limit is None else limit
    if delta.n > limit:
        raise LimitExceededError(f"{delta.n} vertices exceeds the Hochster limit {limit} (2^{delta.n} subsets)")


def _worker_count(workers: Optional[int]) -> int:
    if workers is None:
        workers = config.get_int('flagreg_workers', 0)
    return workers if workers > 0 else (os.cpu_count() or 1)


def _masked_faces(delta: SimplicialComplex) -> Dict[int, List[Tuple[int, Face]]]:
    return {k: [(face_mask(f), f) for f in faces] for k, faces in delta.faces_by_dim.items()}


def induced_betti(masked_faces: Mapping[int, Sequence[Tuple[int, Face]]], subset: Iterable[int],
                  field_spec: FieldSpec) -> BettiVector:
    """Reduced homology of Δ_W, computed on the original vertex indices."""
    outside = ~face_mask(subset)
    faces = {k: [f for m, f in group if not m & outside] for k, group in masked_faces.items()}
    return ChainComplex(faces).betti(field_spec)


def _subset_chunks(n: int) -> List[List[Face]]:
    """All subsets by increasing size, then lexicographic, cut into chunks."""
    chunks = []
    for size in range(n + 1):
        current: List[Face] = []
        for subset in combinations(range(n), size):
            current.append(subset)
            if len(current) == CHUNK_SIZE:
                chunks.append(current)
                current = []
        if current:
            chunks.append(current)
    return chunks


def hochster_table(delta: SimplicialComplex, field_spec: Optional[FieldSpec] = None,
                   limit: Optional[int] = None, workers: Optional[int] = None) -> BettiTable:
    """Full graded Betti table of S/I_Δ over `field_spec`."""
    _check_limit(delta, limit)
    field_spec = field_spec or default_field()
    masked = _masked_faces(delta)

    def contributions(chunk: List[Face]) -> Counter:
        counts: Counter = Counter()
        for subset in chunk:
            betti = induced_betti(masked, subset, field_spec)
            j = len(subset)
            for t in betti.nonvanishing():
                counts[(j - t - 1, j)] += betti[t]
        return counts

    chunks = _subset_chunks(delta.n)
    workers = min(_worker_count(workers), len(chunks))
    logger.info(f"Hochster enumeration of {2 ** delta.n} subsets over {field_spec} "
                f"in {len(chunks)} chunks, {workers} workers")
    if workers <= 1:
        partials = [contributions(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(contributions, chunks))
    # merged in chunk order so the result does not depend on scheduling
    total: Counter = Counter()
    for partial in partials:
        total.update(partial)
    total[(0, 0)] = 1
    entries = {key: value for key, value in sorted(total.items()) if value}
    logger.debug(f"Betti table entries: {entries}")
    return BettiTable(field=field_spec, n=delta.n, entries=entries)


def regularity(delta: SimplicialComplex, field_spec: Optional[FieldSpec] = None,
               limit: Optional[int] = None) -> int:
    """reg(S/I_Δ) = max (t + 1) over W and t with Ĥ_t(Δ_W) ≠ 0, and 0 if there is none.

    Subsets are scanned by decreasing size. A subset W contributes at most
    min(|W|, dim Δ + 1) because t ≤ dim Δ_W ≤ min(|W|, dim Δ + 1) - 1, so
    the scan stops as soon as the best value reaches that cap.
    """
    _check_limit(delta, limit)
    field_spec = field_spec or default_field()
    masked = _masked_faces(delta)
    cap = delta.dim + 1
    best = 0
    for size in range(delta.n, 0, -1):
        if best >= min(size, cap):
            break
        for subset in combinations(range(delta.n), size):
            top = induced_betti(masked, subset, field_spec).top_nonvanishing()
            if top is not None and top + 1 > best:
                best = top + 1
                if best >= min(size, cap):
                    break
    return best


def krull_dim(delta: SimplicialComplex) -> int:
    if delta.is_void:
        raise VoidComplexError("the void complex has no Stanley-Reisner ring")
    return delta.dim + 1


def _canonical_cycle(cycle: Sequence[int]) -> List[int]:
    """Rotate to start at the smallest vertex, oriented towards its smaller neighbour."""
    start = cycle.index(min(cycle))
    rotated = list(cycle[start:]) + list(cycle[:start])
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return rotated


def shortest_induced_cycle(graph: Graph) -> Optional[List[int]]:
    """A shortest chordless cycle of length at least 4, or None.

    For every induced path a-b-c, a shortest a-c path avoiding the closed
    neighbourhood of b (except a and c) closes a chordless cycle through b.
    The minimum over all such paths is the shortest hole.
    """
    full = graph.to_networkx()
    best: Optional[List[int]] = None
    for b in range(graph.n):
        neighbours = graph.neighbors(b)
        for a, c in combinations(neighbours, 2):
            if graph.has_edge(a, c):
                continue
            blocked = (set(neighbours) - {a, c}) | {b}
            try:
                path = nx.shortest_path(nx.restricted_view(full, blocked, []), a, c)
            except nx.NetworkXNoPath:
                continue
            if best is None or len(path) + 1 < len(best):
                best = [b] + path
                if len(best) == 4:
                    return _canonical_cycle(best)
    return _canonical_cycle(best) if best else None


def induced_cycle_order(graph: Graph, vertices: Sequence[int],
                        full: Optional[nx.Graph] = None) -> Optional[List[int]]:
    """The cyclic order of `vertices` if they induce a cycle of length ≥ 3, else None."""
    if len(vertices) < 3:
        return None
    mask = face_mask(vertices)
    if any(bin(graph.adjacency[v] & mask).count('1') != 2 for v in vertices):
        return None
    induced = (full if full is not None else graph.to_networkx()).subgraph(vertices)
    if not nx.is_connected(induced):
        return None
    return _canonical_cycle(nx.cycle_basis(induced)[0])


def induced_cycles_bruteforce(graph: Graph, length: int) -> List[Face]:
    """Vertex sets of size `length` inducing a cycle. Exponential; used as an oracle."""
    full = graph.to_networkx()
    return [subset for subset in combinations(range(graph.n), length)
            if induced_cycle_order(graph, subset, full) is not None]


def systole_bruteforce(graph: Graph) -> Optional[int]:
    for length in range(4, graph.n + 1):
        if induced_cycles_bruteforce(graph, length):
            return length
    return None


def _require_flag(delta: SimplicialComplex) -> None:
    verdict = is_flag(delta)
    if not verdict:
        raise NotFlagError(f"complex is not flag; minimal nonface {verdict.witness}")


def systole(delta: SimplicialComplex) -> Optional[int]:
    """Length of the shortest induced cycle (length ≥ 4) of the 1-skeleton."""
    _require_flag(delta)
    cycle = shortest_induced_cycle(one_skeleton(delta))
    return len(cycle) if cycle else None


def np_via_cycles(delta: SimplicialComplex, p: int, cumulative: bool = True) -> NpVerdict:
    """N_p for a flag complex: no induced k-cycle with 4 ≤ k ≤ p + 2.

    With cumulative=False only cycles of length exactly p + 2 count.
    A ground vertex outside every facet fails N_p outright; it is the witness.
    """
    if p < 2:
        raise PreconditionError(f"the cycle criterion needs p ≥ 2, got {p}")
    _require_flag(delta)
    outside = sorted(set(range(delta.n)) - set(delta.vertices))
    if outside:
        # x_v is a linear generator of the ideal, so N_1 already fails
        return NpVerdict(p=p, satisfied=False, witness=(outside[0],))
    graph = one_skeleton(delta)
    if not cumulative:
        cycles = induced_cycles_bruteforce(graph, p + 2)
        if cycles:
            return NpVerdict(p=p, satisfied=False, witness=induced_cycle_order(graph, cycles[0]))
        return NpVerdict(p=p, satisfied=True)
    cycle = shortest_induced_cycle(graph)
    if cycle is not None and len(cycle) <= p + 2:
        return NpVerdict(p=p, satisfied=False, witness=cycle)
    return NpVerdict(p=p, satisfied=True)


def np_via_betti(delta: SimplicialComplex, p: int, field_spec: Optional[FieldSpec] = None,
                 table: Optional[BettiTable] = None) -> NpVerdict:
    """N_p from the table: β_{i,j} = 0 for 1 ≤ i ≤ p and j ≠ i + 1."""
    if p < 1:
        raise PreconditionError(f"N_p needs p ≥ 1, got {p}")
    if table is None:
        table = hochster_table(delta, field_spec)
    offending = [(i, j) for (i, j) in sorted(table.entries) if 1 <= i <= p and j != i + 1]
    if offending:
        return NpVerdict(p=p, satisfied=False, witness=offending[0])
    return NpVerdict(p=p, satisfied=True)


def linear_strand_length(table: BettiTable) -> Optional[int]:
    """Largest p with N_p (0 if the ideal is not quadratic), or None when N_p holds for every p."""
    offending = [i for (i, j) in table.entries if i >= 1 and j != i + 1]
    return min(offending) - 1 if offending else None

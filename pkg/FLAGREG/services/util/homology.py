"""Reduced simplicial homology over GF(2), GF(p) and Q.

Chains are indexed by faces in lexicographic order, so boundary matrices
are reproducible entry for entry. Degree 0 maps every vertex to the empty
face (augmentation), which makes the homology reduced.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from FLAGREG.services.config import config
from FLAGREG.services.util.complex import Face, SimplicialComplex
from FLAGREG.services.util.errors import DegreeRangeError, FlagregError, VoidComplexError
from FLAGREG.services.util.fields import FieldSpec, default_field, get_backend
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Any] = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise FlagregError(f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")
            if not value:
                raise FlagregError(f"explicit zero stored at ({r}, {c})")

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def compose(self, other: 'SparseMatrix', field_spec: FieldSpec) -> 'SparseMatrix':
        """self · other, reduced in `field_spec`."""
        if self.cols != other.rows:
            raise FlagregError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        by_row: Dict[int, List[Tuple[int, Any]]] = {}
        for (r, c), value in other.entries.items():
            by_row.setdefault(r, []).append((c, value))
        product: Dict[Tuple[int, int], Any] = {}
        for (r, k), left in self.entries.items():
            for c, right in by_row.get(k, []):
                product[(r, c)] = product.get((r, c), 0) + left * right
        entries = {}
        for key, value in product.items():
            value = field_spec.normalize(value)
            if value:
                entries[key] = value
        return SparseMatrix(self.rows, other.cols, entries)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.rows, self.cols), dtype=object)
        for (r, c), value in self.entries.items():
            dense[r, c] = value
        return dense


@dataclass(frozen=True)
class BettiVector:
    """dim Ĥ_k for k = -1, 0, ..., top."""
    dims: Tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        index = k + 1
        if 0 <= index < len(self.dims):
            return self.dims[index]
        return 0

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 2

    def nonvanishing(self) -> List[int]:
        return [k - 1 for k, value in enumerate(self.dims) if value]

    def top_nonvanishing(self) -> Optional[int]:
        degrees = self.nonvanishing()
        return degrees[-1] if degrees else None

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k - 1) * value for k, value in enumerate(self.dims))

    def is_sphere_like(self, dimension: int) -> bool:
        """Homology of a sphere of `dimension`: one class in the top degree, nothing else."""
        return all(self[k] == (1 if k == dimension else 0) for k in range(-1, max(self.top_degree, dimension) + 1))


class ChainComplex:
    """Augmented chain complex of a finite set of faces closed under subsets."""

    def __init__(self, faces_by_dim: Mapping[int, Sequence[Face]]):
        self.faces_by_dim = {k: list(v) for k, v in faces_by_dim.items() if v}
        self.top = max(self.faces_by_dim) if self.faces_by_dim else -2
        self._index = {k: {f: i for i, f in enumerate(v)} for k, v in self.faces_by_dim.items()}

    def boundary(self, k: int, field_spec: FieldSpec) -> SparseMatrix:
        columns = self.faces_by_dim.get(k, [])
        rows = self.faces_by_dim.get(k - 1, [])
        row_index = self._index.get(k - 1, {})
        entries = {}
        for c, face in enumerate(columns):
            for i in range(len(face)):
                sub = face[:i] + face[i + 1:]
                value = field_spec.normalize(-1 if i % 2 else 1)
                entries[(row_index[sub], c)] = value
        return SparseMatrix(len(rows), len(columns), entries)

    def betti(self, field_spec: FieldSpec) -> BettiVector:
        if self.top < -1:
            raise VoidComplexError("the void complex has no reduced homology")
        backend = get_backend(field_spec)
        ranks = {k: backend.rank(self.boundary(k, field_spec)) for k in range(0, self.top + 1)}
        dims = []
        for k in range(-1, self.top + 1):
            count = len(self.faces_by_dim.get(k, []))
            dims.append(count - ranks.get(k, 0) - ranks.get(k + 1, 0))
        return BettiVector(tuple(dims))


def boundary_matrix(delta: SimplicialComplex, k: int, field_spec: Optional[FieldSpec] = None) -> SparseMatrix:
    """∂_k from k-faces (columns) to (k-1)-faces (rows); removing the i-th vertex has sign (-1)^i."""
    if delta.is_void:
        raise VoidComplexError("the void complex has no chain complex")
    if not -1 <= k <= delta.dim + 1:
        raise DegreeRangeError(f"degree {k} outside -1..{delta.dim + 1}")
    return ChainComplex(delta.faces_by_dim).boundary(k, field_spec or default_field())


def rank(matrix: SparseMatrix, field_spec: Optional[FieldSpec] = None) -> int:
    return get_backend(field_spec or default_field()).rank(matrix)


def reduced_betti(delta: SimplicialComplex, field_spec: Optional[FieldSpec] = None) -> BettiVector:
    if delta.is_void:
        raise VoidComplexError("the void complex has no reduced homology")
    return ChainComplex(delta.faces_by_dim).betti(field_spec or default_field())


def chain_boundary(delta: SimplicialComplex, chain: Mapping[Face, int],
                   field_spec: FieldSpec) -> Dict[Face, Any]:
    """∂ of a chain of equal-dimensional faces, as a sparse face -> coefficient map."""
    result: Dict[Face, Any] = {}
    for face, coefficient in chain.items():
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            result[sub] = result.get(sub, 0) + (-1) ** i * coefficient
    normalized = {}
    for face, value in result.items():
        value = field_spec.normalize(value)
        if value:
            normalized[face] = value
    return normalized

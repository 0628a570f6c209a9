"""Facet files and the built-in complex generators.

A facet file has one facet per line as whitespace-separated labels; '#'
starts a comment. Generator expressions are calls such as `cycle(5)`,
`cone(cycle(5))` or `random_flag(10, 0.4, 7)`.
"""
import ast
from itertools import product
from typing import Any, Callable, Dict, List, Sequence

import networkx as nx

from FLAGREG.services.config import config
from FLAGREG.services.util.complex import (
    Graph, SimplicialComplex, clique_complex, from_facets, join
)
from FLAGREG.services.util.errors import FlagregError, ParseError
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )

# minimal 6-vertex triangulation of the real projective plane
RP2_6_FACETS = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
)

CATALOG = {
    'c4': 'cycle(4)',
    'c5': 'cycle(5)',
    'c6': 'cycle(6)',
    'path3': 'path(3)',
    'triangle': 'simplex(2)',
    'tetrahedron_boundary': 'simplex_boundary(3)',
    'octahedron': 'cross_polytope_boundary(3)',
    'icosahedron': 'icosahedron',
    'rp2_6': 'rp2_6',
    'cone_c5': 'cone(cycle(5))',
    'suspension_c5': 'suspension(cycle(5))',
    'c4_join_c5': 'join(cycle(4), cycle(5))',
}


def parse_facets(text: str) -> SimplicialComplex:
    """Read a facet file; vertices are numbered in order of first appearance."""
    labels: List[str] = []
    index: Dict[str, int] = {}
    faces = []
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split('#', 1)[0].split()
        if not tokens:
            continue
        if len(set(tokens)) != len(tokens):
            raise ParseError(f"repeated vertex in facet {' '.join(tokens)}", line=number)
        for token in tokens:
            if token not in index:
                index[token] = len(labels)
                labels.append(token)
        faces.append([index[token] for token in tokens])
    if not faces:
        raise ParseError("no facets in input")
    delta = from_facets(len(labels), faces, labels)
    distinct = {tuple(sorted(f)) for f in faces}
    if len(delta.facets) < len(distinct):
        logger.warning(f"pruned {len(distinct) - len(delta.facets)} non-maximal facet(s)")
    return delta


def serialize_facets(delta: SimplicialComplex) -> str:
    return ''.join(' '.join(delta.labels[v] for v in facet) + '\n' for facet in delta.facets)


def cycle(k: int) -> SimplicialComplex:
    if k < 3:
        raise FlagregError(f"cycle needs k ≥ 3, got {k}")
    return from_facets(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> SimplicialComplex:
    """Path on k vertices."""
    if k < 2:
        raise FlagregError(f"path needs k ≥ 2, got {k}")
    return from_facets(k, [(i, i + 1) for i in range(k - 1)])


def simplex(n: int) -> SimplicialComplex:
    """The full n-simplex on n + 1 vertices."""
    if n < 0:
        raise FlagregError(f"simplex needs n ≥ 0, got {n}")
    return SimplicialComplex(n=n + 1, facets=(tuple(range(n + 1)),))


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a sphere of dimension n - 1."""
    if n < 1:
        raise FlagregError(f"simplex_boundary needs n ≥ 1, got {n}")
    vertices = range(n + 1)
    return from_facets(n + 1, [[u for u in vertices if u != v] for v in vertices])


def cross_polytope_boundary(m: int) -> SimplicialComplex:
    """Join of m copies of S^0; antipodal pairs are {2i, 2i+1}."""
    if m < 1:
        raise FlagregError(f"cross_polytope_boundary needs m ≥ 1, got {m}")
    return from_facets(2 * m, [[2 * i + s for i, s in enumerate(signs)] for signs in product((0, 1), repeat=m)])


def icosahedron() -> SimplicialComplex:
    """Vertex 0 on top, rings 1..5 and 6..10, vertex 11 at the bottom."""
    facets = []
    for k in range(5):
        up, up_next = 1 + k, 1 + (k + 1) % 5
        low, low_next = 6 + k, 6 + (k + 1) % 5
        facets += [(0, up, up_next), (11, low, low_next), (up, up_next, low), (up_next, low, low_next)]
    return from_facets(12, facets)


def rp2_6() -> SimplicialComplex:
    return from_facets(6, [[v - 1 for v in facet] for facet in RP2_6_FACETS])


def cone(inner: SimplicialComplex) -> SimplicialComplex:
    return join(inner, simplex(0))


def suspension(inner: SimplicialComplex) -> SimplicialComplex:
    return join(inner, SimplicialComplex(n=2, facets=((0,), (1,))))


def random_flag(n: int, edge_prob: float, seed: int) -> SimplicialComplex:
    """Clique complex of a seeded G(n, p) graph."""
    if n < 1 or not 0 <= edge_prob <= 1:
        raise FlagregError(f"random_flag needs n ≥ 1 and 0 ≤ edge_prob ≤ 1, got {n}, {edge_prob}")
    graph = nx.gnp_random_graph(n, edge_prob, seed=seed)
    return clique_complex(Graph.from_edges(n, graph.edges()))


GENERATORS: Dict[str, Callable[..., SimplicialComplex]] = {
    'cycle': cycle,
    'path': path,
    'simplex': simplex,
    'simplex_boundary': simplex_boundary,
    'cross_polytope_boundary': cross_polytope_boundary,
    'icosahedron': icosahedron,
    'rp2_6': rp2_6,
    'cone': cone,
    'suspension': suspension,
    'join': join,
    'random_flag': random_flag,
}


def generate(name: str, params: Sequence[Any] = ()) -> SimplicialComplex:
    """Build a catalog complex; vertex labels are reset to 1..n."""
    if name not in GENERATORS:
        raise ParseError(f"unknown generator '{name}', expected one of {sorted(GENERATORS)}")
    try:
        delta = GENERATORS[name](*params)
    except TypeError as e:
        raise ParseError(f"invalid parameters {tuple(params)} for {name}: {e}")
    return delta.relabeled()


def _evaluate(node: ast.AST) -> Any:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_evaluate(node.operand)
    if isinstance(node, ast.Name):
        return generate(node.id)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        return generate(node.func.id, [_evaluate(arg) for arg in node.args])
    raise ParseError(f"unsupported expression '{ast.dump(node)}'")


def generate_expression(expression: str) -> SimplicialComplex:
    """Evaluate a generator expression; a CATALOG key may stand for its expression."""
    expression = CATALOG.get(expression.strip(), expression)
    try:
        tree = ast.parse(expression.strip(), mode='eval')
    except SyntaxError as e:
        raise ParseError(f"malformed generator expression '{expression}': {e.msg}")
    return _evaluate(tree.body)

"""GF(p) rank via sympy's sparse domain matrices."""
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from FLAGREG.services.config import config
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )


class PrimeFieldBackend:

    def __init__(self, p: int):
        self.p = p
        self.domain = GF(p)
        self.name = f"gf{p}"

    def to_domain_matrix(self, matrix) -> DomainMatrix:
        rows = {}
        for (r, c), value in matrix.entries.items():
            value %= self.p
            if value:
                rows.setdefault(r, {})[c] = self.domain(value)
        return DomainMatrix(rows, (matrix.rows, matrix.cols), self.domain)

    def rank(self, matrix) -> int:
        if not matrix.entries or not matrix.rows or not matrix.cols:
            return 0
        return self.to_domain_matrix(matrix).rank()

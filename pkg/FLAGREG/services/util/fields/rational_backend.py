"""Exact rank over Q.

The reference path is sparse exact elimination over QQ. The optional
modular path takes the maximum of the ranks modulo a few primes below
2^16, which never exceeds the rank over Q.
"""
from fractions import Fraction
from typing import List

from sympy import prevprime
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from FLAGREG.services.config import config
from FLAGREG.services.util.fields.prime_backend import PrimeFieldBackend
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )


def largest_primes_below(bound: int, count: int) -> List[int]:
    primes = []
    p = bound
    for _ in range(count):
        p = prevprime(p)
        primes.append(p)
    return primes


class RationalBackend:
    name = 'q'

    def __init__(self, modular_fastpath: bool = False, prime_count: int = 3):
        self.modular_fastpath = modular_fastpath
        self.modular_backends = [PrimeFieldBackend(p) for p in largest_primes_below(1 << 16, max(prime_count, 1))]
        if modular_fastpath:
            logger.info(f"rank over Q from primes {[b.p for b in self.modular_backends]}")

    @staticmethod
    def to_domain_matrix(matrix) -> DomainMatrix:
        rows = {}
        for (r, c), value in matrix.entries.items():
            if value:
                if isinstance(value, Fraction):
                    element = QQ(value.numerator, value.denominator)
                else:
                    element = QQ(value)
                rows.setdefault(r, {})[c] = element
        return DomainMatrix(rows, (matrix.rows, matrix.cols), QQ)

    def rank(self, matrix) -> int:
        if not matrix.entries or not matrix.rows or not matrix.cols:
            return 0
        if self.modular_fastpath:
            return max(backend.rank(matrix) for backend in self.modular_backends)
        return self.to_domain_matrix(matrix).rank()

"""Coefficient fields and their exact rank backends."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from sympy import isprime

from FLAGREG.services.config import config
from FLAGREG.services.util.errors import FlagregError, ParseError

GF2 = 'gf2'
GFP = 'gfp'
RATIONAL = 'q'


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == GF2:
            object.__setattr__(self, 'p', 2)
        elif self.kind == GFP:
            if self.p is None or self.p == 2 or not isprime(self.p) or self.p >= 1 << 16:
                raise FlagregError(f"GF(p) needs an odd prime p < 65536, got {self.p}")
        elif self.kind == RATIONAL:
            object.__setattr__(self, 'p', None)
        else:
            raise FlagregError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def gf2() -> 'FieldSpec':
        return FieldSpec(GF2)

    @staticmethod
    def gfp(p: int) -> 'FieldSpec':
        return FieldSpec(GF2) if p == 2 else FieldSpec(GFP, p)

    @staticmethod
    def rational() -> 'FieldSpec':
        return FieldSpec(RATIONAL)

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def name(self) -> str:
        if self.kind == RATIONAL:
            return 'q'
        return f"gf{self.p}"

    def normalize(self, value: int) -> Union[int, Fraction]:
        """Canonical representative of an integer coefficient."""
        if self.kind == RATIONAL:
            return value
        return value % self.p

    def __str__(self):
        return 'Q' if self.kind == RATIONAL else f"GF({self.p})"


def parse_field(text: str) -> FieldSpec:
    """Read `gf2`, `gf<p>` or `q` (also `qq`, `rational`)."""
    token = text.strip().lower()
    if token in ('q', 'qq', 'rational'):
        return FieldSpec.rational()
    if token.startswith('gf') and token[2:].isdigit():
        try:
            return FieldSpec.gfp(int(token[2:]))
        except FlagregError as e:
            raise ParseError(str(e))
    raise ParseError(f"unknown field {text!r}; use gf2, gf<p> or q")


def default_field() -> FieldSpec:
    return parse_field(str(config.get('default_field', 'gf2')))


@lru_cache(maxsize=None)
def get_backend(field: FieldSpec):
    """Rank backend for `field`. Backends are stateless and shared."""
    # imported here so the backends can use FieldSpec
    from FLAGREG.services.util.fields.gf2_backend import GF2Backend
    from FLAGREG.services.util.fields.prime_backend import PrimeFieldBackend
    from FLAGREG.services.util.fields.rational_backend import RationalBackend
    if field.kind == GF2:
        return GF2Backend()
    if field.kind == GFP:
        return PrimeFieldBackend(field.p)
    return RationalBackend(
        modular_fastpath=config.get_bool('rational_modular_fastpath', False),
        prime_count=config.get_int('rational_modular_primes', 3),
    )

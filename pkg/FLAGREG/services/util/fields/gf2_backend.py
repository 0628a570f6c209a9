"""GF(2) rank by XOR elimination on rows packed into integers."""
from typing import Dict

from FLAGREG.services.config import config
from FLAGREG.services.util.logutil import LoggingUtil

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )


class GF2Backend:
    name = 'gf2'

    @staticmethod
    def pack_rows(matrix) -> Dict[int, int]:
        """One integer per nonzero row, bit c set when entry (r, c) is odd."""
        rows: Dict[int, int] = {}
        for (r, c), value in matrix.entries.items():
            if value % 2:
                rows[r] = rows.get(r, 0) ^ (1 << c)
        return rows

    def rank(self, matrix) -> int:
        # pivot rows keyed by their leading column
        pivots: Dict[int, int] = {}
        for row in self.pack_rows(matrix).values():
            while row:
                lead = row.bit_length() - 1
                pivot = pivots.get(lead)
                if pivot is None:
                    pivots[lead] = row
                    break
                row ^= pivot
        return len(pivots)

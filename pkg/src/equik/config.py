"""Resource ceilings.

The ceilings exist so that an accidental request (a huge group, a runaway
elimination) fails fast with a clear error instead of grinding.  They can be
raised by mutating the module-level ``LIMITS`` instance or by passing explicit
values where supported.
"""

from dataclasses import dataclass


@dataclass
class Limits:
    max_group_order: int = 64       # largest group admitted by complex builders
    max_aut_group_order: int = 24   # largest automorphism group enumerated
    max_matrix_nnz: int = 200_000   # nonzero budget for integer eliminations
    max_class_enumeration: int = 100_000  # largest finite group listed element-wise


LIMITS = Limits()

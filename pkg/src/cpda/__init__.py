"""Placement delivery arrays with relay-routing structure for combination networks.

The package builds arrays whose star pattern encodes cache placement and
whose symbols encode coded multicasts routed through a layer of relays,
checks the defining properties of such arrays, simulates the resulting
delivery byte-for-byte, and compares achievable memory/rate/subpacketization
triples across scheme families.
"""

from .combinat import RelaySet, binomial, ksubsets
from .model import STAR, ArrayFormatError, PdaArray, canonical_relabel, read_array, write_array
from .validate import InvalidArrayError, ValidationReport, validate

__all__ = [
    "RelaySet",
    "binomial",
    "ksubsets",
    "STAR",
    "ArrayFormatError",
    "PdaArray",
    "canonical_relabel",
    "read_array",
    "write_array",
    "InvalidArrayError",
    "ValidationReport",
    "validate",
]

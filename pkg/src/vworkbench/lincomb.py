"""Finitely supported formal sums of canonical diagrams."""

from __future__ import annotations

from .diagrams import Diagram, bigrading, serialize
from .errors import NonHomogeneousError
from .rings import Ring, ZZ


class LinComb:
    """Formal sum ``sum coeff[D] * D`` with nonzero coefficients in a ring.

    Keys are expected to be canonical diagrams; nothing here enforces Arnold
    admissibility, which is a separate normalization (see ``relations``).
    """

    __slots__ = ("ring", "terms")

    def __init__(self, terms=None, ring: Ring = ZZ):
        self.ring = ring
        self.terms = {}
        if terms:
            for d, c in terms.items():
                c = ring.normalize(c)
                if c != 0:
                    self.terms[d] = c

    @staticmethod
    def zero(ring: Ring = ZZ) -> "LinComb":
        return LinComb(None, ring)

    @staticmethod
    def of(diagram: Diagram, coeff=1, ring: Ring = ZZ) -> "LinComb":
        return LinComb({diagram: coeff}, ring)

    def items(self):
        return self.terms.items()

    def coeff(self, d: Diagram):
        return self.terms.get(d, 0)

    def support(self):
        return set(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return LinComb(out, self.ring)

    def __sub__(self, other):
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) - c
        return LinComb(out, self.ring)

    def __neg__(self):
        return LinComb({d: -c for d, c in self.terms.items()}, self.ring)

    def scaled(self, s) -> "LinComb":
        return LinComb({d: c * s for d, c in self.terms.items()}, self.ring)

    def __rmul__(self, s):
        return self.scaled(s)

    def map_linear(self, fn) -> "LinComb":
        """Linear extension of a map Diagram -> LinComb."""
        out = LinComb.zero(self.ring)
        for d, c in self.terms.items():
            out = out + fn(d).scaled(c)
        return out

    def degree_parity(self, parity) -> int:
        """Total-degree parity of a homogeneous combination."""
        if not self.terms:
            raise NonHomogeneousError("degree of the zero element is undefined")
        parities = {bigrading(d).total_parity(parity) for d in self.terms}
        if len(parities) != 1:
            raise NonHomogeneousError("mixed total-degree parities")
        return parities.pop()

    def __repr__(self):
        if not self.terms:
            return "LinComb(0)"
        bits = [
            f"{c}*[{serialize(d)}]"
            for d, c in sorted(self.terms.items(), key=lambda t: serialize(t[0]))
        ]
        return "LinComb(" + " + ".join(bits) + ")"

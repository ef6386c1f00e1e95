"""The incidence algebra I(X) of a finite poset, over a cyclotomic field.

Elements are sparse maps from comparable pairs (x, y) to CycloNumber
coefficients; the product is the usual convolution
(f*g)(x, y) = sum over z of f(x, z) g(z, y).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycloNumber, cyclo_one
from .errors import PosetMismatch


class IncidenceElement:
    """A sparse element of I(X); support pairs always satisfy x <= y."""

    __slots__ = ("poset", "coeffs", "_by_first")

    def __init__(self, poset, coeffs):
        clean = {}
        for (x, y), c in coeffs.items():
            if not poset.leq(x, y):
                raise ValueError(f"support pair ({x!r}, {y!r}) is not comparable")
            if not isinstance(c, CycloNumber):
                c = CycloNumber.from_rational(Fraction(c))
            if not c.is_zero():
                clean[(x, y)] = c
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_by_first", None)

    def __setattr__(self, name, value):
        raise AttributeError("IncidenceElement is immutable")

    def _indexed(self):
        # product loops index the right factor by its first coordinate
        if self._by_first is None:
            by_first = {}
            for (x, y), c in self.coeffs.items():
                by_first.setdefault(x, []).append((y, c))
            object.__setattr__(self, "_by_first", by_first)
        return self._by_first

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if self.poset is not other.poset and self.poset != other.poset:
            raise PosetMismatch("incidence elements over different posets")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            if key in out:
                s = out[key] + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = c
        return IncidenceElement(self.poset, out)

    def __neg__(self):
        return IncidenceElement(self.poset,
                                {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        """Multiply every coefficient by a rational or cyclotomic scalar."""
        if isinstance(scalar, CycloNumber) and scalar.is_zero():
            return IncidenceElement(self.poset, {})
        return IncidenceElement(self.poset,
                                {k: c * scalar for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(other)
        self._check(other)
        by_first = other._indexed()
        out = {}
        for (x, z), a in self.coeffs.items():
            hits = by_first.get(z)
            if not hits:
                continue
            for y, b in hits:
                key = (x, y)
                prod = a * b
                acc = out.get(key)
                out[key] = prod if acc is None else acc + prod
        return IncidenceElement(self.poset,
                                {k: c for k, c in out.items() if not c.is_zero()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, IncidenceElement):
            return NotImplemented
        if self.poset != other.poset:
            return False
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(other.coeffs[k] == c for k, c in self.coeffs.items())

    __hash__ = None

    def __repr__(self):
        return f"IncidenceElement({len(self.coeffs)} terms)"


def incidence_mul(f, g):
    return f * g


def matrix_unit(poset, x, y):
    """The basis element e_xy (requires x <= y)."""
    return IncidenceElement(poset, {(x, y): cyclo_one()})


def identity_element(poset):
    """The two-sided unit: sum of all e_xx."""
    return IncidenceElement(poset,
                            {(x, x): cyclo_one() for x in poset.elements})


def incidence_dimension(poset):
    """dim I(X): the number of comparable pairs."""
    return len(poset.comparable_pairs())

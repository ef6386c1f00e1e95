"""Row spaces over Q held as primitive integer sparse vectors.

Vectors are dicts column -> int.  Reduction is fraction-free: to cancel a
pivot we cross-multiply (v <- (b/g) v - (a/g) row) and re-normalize by the
gcd, so membership and rank decisions are exact integer arithmetic with
no thresholds anywhere.
"""

from math import gcd


def _normalize(v):
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            return v
    if g > 1:
        for c in v:
            v[c] //= g
    return v


class RationalRowSpace:
    """An incrementally built reduced row space over Q."""

    __slots__ = ("_rows",)

    def __init__(self):
        self._rows = {}

    @property
    def rank(self):
        return len(self._rows)

    def _residual(self, vec):
        v = dict(vec)
        _normalize(v)
        while v:
            pivot = min(v)
            row = self._rows.get(pivot)
            if row is None:
                return v
            a, b = v[pivot], row[pivot]
            g = gcd(a, b)
            fv, fr = b // g, a // g
            if fv != 1:
                for c in v:
                    v[c] *= fv
            for c, x in row.items():
                nv = v.get(c, 0) - fr * x
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
            _normalize(v)
        return v

    def contains(self, vec):
        return not self._residual(vec)

    def add(self, vec):
        """Insert the vector; returns True when it enlarged the space."""
        v = self._residual(vec)
        if not v:
            return False
        pivot = min(v)
        if v[pivot] < 0:
            for c in v:
                v[c] = -v[c]
        self._rows[pivot] = v
        return True

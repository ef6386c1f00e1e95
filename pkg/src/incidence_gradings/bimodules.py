"""Graded bimodule classes between group-algebra blocks.

A graded (F H1, F H2)-bimodule is classified up to graded isomorphism by a
list of pairs (chi, g): chi a character of H1 /\\ H2, g a degree in the
ambient group determined only up to the double coset g + (H1 + H2).
Degrees are therefore stored as the lexicographically least element of
that coset, which turns class equality into plain tuple comparison.

The two-step product: a character chi of H1 /\\ H3 belongs to the product
class exactly when its restriction to H1 /\\ H2 /\\ H3 factors as the
product of restrictions of one character from each factor, and then its
degree is forced to be the sum of the factor degrees.
"""

from __future__ import annotations

from .abelian import intersect, subgroup_sum
from .characters import extension_fiber, restrict
from .errors import (
    AmbientMismatch,
    BlockMismatch,
    ChainMismatch,
    DegreeConflict,
    DomainMismatch,
    InfiniteSubgroup,
)


class BimoduleClass:
    """A graded (F*left, F*right)-bimodule up to graded isomorphism.

    `pairs` may repeat characters (such classes are iso-testable but never
    realizable inside an incidence algebra); the empty list is the zero
    bimodule.
    """

    __slots__ = ("left", "right", "pairs", "middle", "degree_coset")

    def __init__(self, left, right, pairs):
        if left.ambient != right.ambient:
            raise AmbientMismatch("blocks over different ambient groups")
        if not (left.is_finite and right.is_finite):
            raise InfiniteSubgroup("bimodule blocks must be finite subgroups")
        middle = intersect(left, right)
        coset = subgroup_sum(left, right)
        canonical = []
        for chi, g in pairs:
            if chi.domain != middle:
                raise DomainMismatch(
                    "character domain must be the intersection of the blocks")
            if g.group != left.ambient:
                raise AmbientMismatch("degree outside the ambient group")
            canonical.append((chi, coset.least_coset_coords(g)))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "middle", middle)
        object.__setattr__(self, "degree_coset", coset)
        object.__setattr__(self, "pairs", tuple(canonical))

    def __setattr__(self, name, value):
        raise AttributeError("BimoduleClass is immutable")

    def is_zero(self):
        return not self.pairs

    def characters(self):
        return [chi for chi, _ in self.pairs]

    def sorted_key(self):
        """Order-free canonical form: the sorted (values, degree) multiset."""
        return tuple(sorted((chi.values, g.coords) for chi, g in self.pairs))

    def __eq__(self, other):
        if not isinstance(other, BimoduleClass):
            return NotImplemented
        return (self.left == other.left and self.right == other.right
                and self.sorted_key() == other.sorted_key())

    def __hash__(self):
        return hash((self.left, self.right, self.sorted_key()))

    def __repr__(self):
        inner = ", ".join(f"({chi!r}, {g.coords})" for chi, g in self.pairs)
        return f"BimoduleClass[{inner}]"


def realizable(m):
    """Whether the class embeds in the regular module: characters must be
    pairwise distinct (each character occurs once in F[H1 /\\ H2])."""
    chars = m.characters()
    return len(set(chars)) == len(chars)


def bimodule_iso(m, n):
    """Graded-isomorphism test; returns (flag, witness permutation).

    Classes are isomorphic when some permutation matches characters
    exactly and degrees up to the (left, right) double coset.  Degrees are
    already coset-canonical, so matching is multiset matching on
    (character, canonical degree) keys.  The witness sigma maps positions
    of m.pairs to positions of n.pairs.
    """
    if m.left != n.left or m.right != n.right:
        raise BlockMismatch("bimodule classes over different block pairs")
    if len(m.pairs) != len(n.pairs):
        return False, None
    buckets = {}
    for j, (chi, g) in enumerate(n.pairs):
        buckets.setdefault((chi.values, g.coords), []).append(j)
    sigma = []
    for chi, g in m.pairs:
        slot = buckets.get((chi.values, g.coords))
        if not slot:
            return False, None
        sigma.append(slot.pop())
    return True, tuple(sigma)


def twist(m, mu_left, mu_right):
    """The class with every character multiplied by the restrictions of
    (mu_left, mu_right) to the middle subgroup; degrees are unchanged."""
    if mu_left.domain != m.left or mu_right.domain != m.right:
        raise DomainMismatch("twist characters must live on the blocks")
    factor = restrict(mu_left, m.middle) * restrict(mu_right, m.middle)
    return BimoduleClass(m.left, m.right,
                         [(factor * chi, g) for chi, g in m.pairs])


def bimodule_product(m12, m23):
    """Product class over (H1, H3) of classes over (H1, H2) and (H2, H3).

    Output characters are all extensions to H1 /\\ H3 of the products of
    restricted factor characters on H1 /\\ H2 /\\ H3; each comes with
    degree = sum of the factor degrees.  A character reachable from two
    factor pairs whose degree sums land in different double cosets is a
    data error, reported as DegreeConflict.
    """
    if m12.right != m23.left:
        raise ChainMismatch("middle blocks differ")
    h1, h3 = m12.left, m23.right
    h13 = intersect(h1, h3)
    h123 = intersect(h13, m12.right)
    out = {}
    for chi12, g12 in m12.pairs:
        r12 = restrict(chi12, h123)
        for chi23, g23 in m23.pairs:
            target = r12 * restrict(chi23, h123)
            degree = g12 + g23
            for chi in extension_fiber(target, h13):
                known = out.get(chi)
                if known is None:
                    out[chi] = degree
                elif (known - degree) not in subgroup_sum(h1, h3):
                    raise DegreeConflict(
                        f"character {chi!r} forced into two distinct degree cosets")
    pairs = sorted(out.items(), key=lambda p: (p[0].values, p[1].coords))
    return BimoduleClass(h1, h3, pairs)

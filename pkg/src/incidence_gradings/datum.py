"""Grading data: the triple (skeleton poset, blocks, cover bimodules).

A GradingDatum parameterizes a group grading on an incidence algebra by a
finite skeleton poset E, a finite subgroup H_i per vertex, and a nonzero
bimodule class on every cover i <. j.  Bimodules between non-adjacent
comparable vertices are never stored: they are derived by composing cover
data along saturated chains, and validation checks that every chain gives
the same answer.

Degrees along chains are accumulated raw (no intermediate coset
reduction): the canonical degree of a derived class is only defined
modulo H_i + H_j at the endpoints, and reducing at intermediate vertices
would leak middle-block coset parts into later steps.  The raw per-pair
degree representatives are exactly the degrees the realized incidence
algebra carries, so realize() reuses them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .abelian import intersect, subgroup_sum
from .bimodules import BimoduleClass, bimodule_iso, realizable, twist
from .characters import dual_group, extension_fiber, restrict
from .cyclo import root_of_unity
from .errors import (
    AmbientMismatch,
    ChainInconsistency,
    DegreeConflict,
    InternalTransitivityFailure,
    InvalidDatum,
    NotValid,
)
from .incidence import IncidenceElement
from .posets import Poset


class GradingDatum:
    """Parameterizing triple for a grading on an incidence algebra."""

    __slots__ = ("ambient", "skeleton", "blocks", "cover_bimodules")

    def __init__(self, ambient, skeleton, blocks, cover_bimodules):
        covers = set(skeleton.covers())
        if set(blocks) != set(skeleton.elements):
            raise InvalidDatum("blocks must be assigned to every skeleton vertex")
        for label, sub in blocks.items():
            if sub.ambient != ambient:
                raise InvalidDatum(f"block {label!r} lives over a different ambient")
            if not sub.is_finite:
                raise InvalidDatum(f"block {label!r} must be a finite subgroup")
        if set(cover_bimodules) != covers:
            raise InvalidDatum("bimodules must be given exactly on the covers")
        for (i, j), cls in cover_bimodules.items():
            if cls.left != blocks[i] or cls.right != blocks[j]:
                raise InvalidDatum(
                    f"bimodule on cover ({i!r}, {j!r}) has mismatched blocks")
            if cls.is_zero():
                # a cover with zero bimodule cannot come from a poset: the
                # cross pairs e_xy realizing i <. j would not exist
                raise InvalidDatum(
                    f"cover ({i!r}, {j!r}) carries the zero bimodule")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "skeleton", skeleton)
        object.__setattr__(self, "blocks", dict(blocks))
        object.__setattr__(self, "cover_bimodules", dict(cover_bimodules))

    def __setattr__(self, name, value):
        raise AttributeError("GradingDatum is immutable")

    def comparable_block_pairs(self):
        return [(x, y) for x, y in self.skeleton.comparable_pairs() if x != y]

    def __repr__(self):
        return (f"GradingDatum({len(self.skeleton.elements)} blocks, "
                f"{len(self.cover_bimodules)} covers)")


# ---------------------------------------------------------------------------
# chain derivation


def _saturated_chains(skeleton, i, j):
    """All saturated chains i = v0 <. v1 <. ... <. vr = j."""
    cover_up = {}
    for x, y in skeleton.covers():
        cover_up.setdefault(x, []).append(y)
    chains = []

    def walk(path):
        last = path[-1]
        if last == j:
            chains.append(tuple(path))
            return
        for y in cover_up.get(last, ()):
            if skeleton.leq(y, j):
                path.append(y)
                walk(path)
                path.pop()

    walk([i])
    return chains


def _merge_state(entries, reducer):
    """Deduplicate (character, raw degree) pairs modulo the reducer coset.

    Same character in two different cosets means the data cannot come
    from a grading: the character's component would need two degrees.
    """
    merged = {}
    for chi, deg in entries:
        key = (chi, reducer.least_coset_coords(deg).coords)
        if key not in merged:
            for (other, _), kept in list(merged.items()):
                if other == chi:
                    raise DegreeConflict(
                        f"character {chi!r} forced into two distinct degree cosets")
            merged[key] = (chi, deg)
    return list(merged.values())


def _chain_pairs(d, chain):
    """(character, raw degree) data composed along one saturated chain."""
    i = chain[0]
    h_i = d.blocks[i]
    cover = d.cover_bimodules[(chain[0], chain[1])]
    state = [(chi, g) for chi, g in cover.pairs]
    cur = chain[1]
    for nxt in chain[2:]:
        cover = d.cover_bimodules[(cur, nxt)]
        h_i_nxt = intersect(h_i, d.blocks[nxt])
        h_mid = intersect(h_i_nxt, d.blocks[cur])
        new_state = []
        for chi_acc, deg_acc in state:
            r_acc = restrict(chi_acc, h_mid)
            for chi_cov, g_cov in cover.pairs:
                target = r_acc * restrict(chi_cov, h_mid)
                deg = deg_acc + g_cov
                for ext in extension_fiber(target, h_i_nxt):
                    new_state.append((ext, deg))
        state = _merge_state(new_state, subgroup_sum(h_i, d.blocks[nxt]))
        cur = nxt
    return state


def _derive(d, collect_issues=None):
    """Raw derived data for every comparable pair.

    Returns {pair: [(character, raw degree)]}.  With collect_issues given,
    conflicts are appended there (as (pair, message)) instead of raised,
    and the offending pair is left out of the result.
    """
    raw = {}
    for i, j in d.comparable_block_pairs():
        chains = _saturated_chains(d.skeleton, i, j)
        reducer = subgroup_sum(d.blocks[i], d.blocks[j])
        results = []
        failed = False
        for chain in chains:
            try:
                results.append(_merge_state(_chain_pairs(d, chain), reducer))
            except DegreeConflict as exc:
                if collect_issues is None:
                    raise
                collect_issues.append(((i, j), str(exc)))
                failed = True
                break
        if failed:
            continue
        canonical = [sorted((chi.values, reducer.least_coset_coords(deg).coords)
                            for chi, deg in res) for res in results]
        if any(c != canonical[0] for c in canonical[1:]):
            message = (f"saturated chains between {i!r} and {j!r} derive "
                       f"non-isomorphic bimodules")
            if collect_issues is None:
                raise ChainInconsistency(message)
            collect_issues.append(((i, j), message))
            continue
        raw[(i, j)] = results[0]
    return raw


def derive_full_bimodules(d):
    """Bimodule classes for every comparable pair i < j of the skeleton.

    Covers return the stored class; other pairs are derived along
    saturated chains.  Raises DegreeConflict / ChainInconsistency when the
    chains disagree.
    """
    raw = _derive(d)
    out = {}
    for pair, state in raw.items():
        if pair in d.cover_bimodules:
            out[pair] = d.cover_bimodules[pair]
        else:
            out[pair] = BimoduleClass(d.blocks[pair[0]], d.blocks[pair[1]], state)
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationIssue:
    condition: str
    location: str
    message: str


@dataclass
class ValidationReport:
    """Outcome of the three realizability conditions.

    conductor: the lcm of block exponents; over the built-in cyclotomic
    field condition (1) (characteristic and roots of unity) always holds
    and is reported for information only.
    """

    conductor: int = 1
    issues: list = field(default_factory=list)
    checked_covers: int = 0
    checked_triples: int = 0

    @property
    def valid(self):
        return not self.issues


def validate_datum(d):
    report = ValidationReport()
    report.conductor = lcm(*(h.exponent() for h in d.blocks.values())) \
        if d.blocks else 1

    # condition (2): every cover class embeds in the regular module
    for (i, j), cls in sorted(d.cover_bimodules.items(),
                              key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        report.checked_covers += 1
        if not realizable(cls):
            report.issues.append(ValidationIssue(
                "2", f"cover ({i!r}, {j!r})",
                "repeated character: not a submodule of the regular module"))

    # condition (3): derived data must be chain-independent ...
    conflicts = []
    raw = _derive(d, collect_issues=conflicts)
    for pair, message in conflicts:
        report.issues.append(ValidationIssue(
            "3", f"pair ({pair[0]!r}, {pair[1]!r})", message))

    # ... and every two-step product must land exactly on the derived class
    skel = d.skeleton
    for i, j in d.comparable_block_pairs():
        for k in skel.strictly_between(i, j):
            report.checked_triples += 1
            left = raw.get((i, k))
            right = raw.get((k, j))
            whole = raw.get((i, j))
            if left is None or right is None or whole is None:
                continue  # already reported as a conflict
            issue = _triple_issue(d, i, k, j, left, right, whole)
            if issue is not None:
                report.issues.append(ValidationIssue(
                    "3", f"triple ({i!r}, {k!r}, {j!r})", issue))
    return report


def _triple_issue(d, i, k, j, left, right, whole):
    """Check [M_ij] == [M_ik] * [M_kj] with degree congruence mod H_i+H_j."""
    h_ij = intersect(d.blocks[i], d.blocks[j])
    h_ikj = intersect(h_ij, d.blocks[k])
    reducer = subgroup_sum(d.blocks[i], d.blocks[j])
    produced = {}
    for chi_a, deg_a in left:
        r_a = restrict(chi_a, h_ikj)
        for chi_b, deg_b in right:
            target = r_a * restrict(chi_b, h_ikj)
            for ext in extension_fiber(target, h_ij):
                produced[ext] = deg_a + deg_b
    have = {chi: deg for chi, deg in whole}
    if set(produced) != set(have):
        return "character sets of the two-step product and the derived class differ"
    for chi, deg in produced.items():
        if (deg - have[chi]) not in reducer:
            return (f"degree of {chi!r} differs between the two-step product "
                    f"and the derived class")
    return None


# ---------------------------------------------------------------------------
# realization


@dataclass(frozen=True)
class BasisVector:
    """One homogeneous basis element of the realized algebra.

    tag is ("diag", block, h) or ("cross", i, j, char_values, h, k); it
    records where the vector came from, which the oracle and the tests
    use to slice components.
    """

    element: IncidenceElement
    degree: object
    tag: tuple


class RealizedGrading:
    """A concrete graded incidence algebra produced from a datum."""

    __slots__ = ("datum", "poset", "vertex_data", "basis", "full_raw")

    def __init__(self, datum, poset, vertex_data, basis, full_raw):
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "vertex_data", vertex_data)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "full_raw", full_raw)

    def __setattr__(self, name, value):
        raise AttributeError("RealizedGrading is immutable")

    @property
    def ambient(self):
        return self.datum.ambient

    @property
    def homogeneous_basis(self):
        return [b.element for b in self.basis]

    @property
    def degree_map(self):
        return {idx: b.degree for idx, b in enumerate(self.basis)}

    def components(self):
        """Basis indices grouped by degree."""
        grouped = {}
        for idx, b in enumerate(self.basis):
            grouped.setdefault(b.degree, []).append(idx)
        return grouped

    def block_of_vertex(self, v):
        return self.vertex_data[v][0]

    def character_of_vertex(self, v):
        return self.vertex_data[v][1]

    def __repr__(self):
        return (f"RealizedGrading({len(self.poset.elements)} vertices, "
                f"{len(self.basis)} basis elements)")


def vertex_label(block, chi):
    """Stable string label for the dual-group vertex (block, chi)."""
    return f"{block}|{','.join(str(v) for v in chi.values)}"


def _twist_orbit_representatives(h_left, h_right, h_mid):
    """Deterministic orbit representatives of H_i x H_j under
    (h, k) ~ (h + t, k - t) for t in the intersection."""
    mids = list(h_mid.elements())
    seen = set()
    reps = []
    for h in h_left.elements():
        for k in h_right.elements():
            if (h.coords, k.coords) in seen:
                continue
            reps.append((h, k))
            for t in mids:
                seen.add(((h + t).coords, (k - t).coords))
    return reps


def realize(d):
    """Build the graded incidence algebra the datum parameterizes.

    Vertices are the dual groups of the blocks; a lower vertex relates to
    a higher one exactly when their restrictions to the joint
    intersection differ by a derived character.  The homogeneous basis
    consists of the block Fourier images (degree h) and, per derived
    character chi of degree g, the images of h*m_chi*k over twist-orbit
    representatives (h, k), with degree h + g + k.
    """
    report = validate_datum(d)
    if not report.valid:
        raise NotValid(report)
    raw = _derive(d)

    skel = d.skeleton
    verts = []
    vertex_data = {}
    duals = {}
    for block in skel.elements:
        duals[block] = dual_group(d.blocks[block])
        for eta in duals[block]:
            lab = vertex_label(block, eta)
            verts.append(lab)
            vertex_data[lab] = (block, eta)
    vert_index = {v: n for n, v in enumerate(verts)}

    # restrictions of every vertex character to each relevant intersection
    up = [{n} for n in range(len(verts))]
    cross_pairs = {}
    for (i, j), state in raw.items():
        h_ij = intersect(d.blocks[i], d.blocks[j])
        res_i = {eta: restrict(eta, h_ij).values for eta in duals[i]}
        res_j = {eta: restrict(eta, h_ij).values for eta in duals[j]}
        for chi, deg in state:
            related = []
            for eta_j in duals[j]:
                want = tuple((a + b) % 1
                             for a, b in zip(chi.values, res_j[eta_j]))
                for eta_i in duals[i]:
                    if res_i[eta_i] == want:
                        vi = vertex_label(i, eta_i)
                        vj = vertex_label(j, eta_j)
                        up[vert_index[vi]].add(vert_index[vj])
                        related.append((vi, vj))
            cross_pairs[(i, j, chi)] = related

    # the relation is transitive by condition (3); re-check defensively
    for n in range(len(verts)):
        for m in up[n]:
            if not up[m] <= up[n]:
                raise InternalTransitivityFailure(
                    "derived relation failed transitivity")
    poset = Poset(verts, up, _checked=True)

    basis = []
    for block in skel.elements:
        h_block = d.blocks[block]
        for h in h_block.elements():
            coeffs = {}
            for eta in duals[block]:
                lab = vertex_label(block, eta)
                coeffs[(lab, lab)] = root_of_unity(eta(h))
            basis.append(BasisVector(
                IncidenceElement(poset, coeffs), h, ("diag", block, h.coords)))
    for (i, j), state in sorted(raw.items(),
                                key=lambda kv: (skel.index(kv[0][0]),
                                                skel.index(kv[0][1]))):
        h_i, h_j = d.blocks[i], d.blocks[j]
        h_ij = intersect(h_i, h_j)
        for chi, deg in state:
            related = cross_pairs[(i, j, chi)]
            for h, k in _twist_orbit_representatives(h_i, h_j, h_ij):
                coeffs = {}
                for vi, vj in related:
                    eta_i = vertex_data[vi][1]
                    eta_j = vertex_data[vj][1]
                    coeffs[(vi, vj)] = root_of_unity((eta_i(h) + eta_j(k)) % 1)
                basis.append(BasisVector(
                    IncidenceElement(poset, coeffs), h + deg + k,
                    ("cross", i, j, chi.values, h.coords, k.coords)))
    return RealizedGrading(d, poset, vertex_data, basis, raw)


# ---------------------------------------------------------------------------
# grading isomorphism


def grading_iso(d, d_prime):
    """Search for (poset isomorphism alpha, characters mu_i) matching the
    two data cover-wise: M_ij isomorphic to mu_i * M'_{alpha i, alpha j} * mu_j.

    Returns (True, (alpha, mu)) with one witness, or (False, None).  The
    mu search is exhaustive over the product of the dual groups, pruned
    cover-by-cover as soon as both endpoints are assigned.
    """
    if d.ambient != d_prime.ambient:
        raise AmbientMismatch("data over different ambient groups")
    from .posets import poset_isomorphisms

    skel = d.skeleton
    order = list(skel.elements)
    position = {v: n for n, v in enumerate(order)}
    covers_at = {v: [] for v in order}
    for (u, w) in skel.covers():
        late = u if position[u] > position[w] else w
        covers_at[late].append((u, w))

    def constraint(x, y):
        return d.blocks[x] == d_prime.blocks[y]

    for alpha in poset_isomorphisms(skel, d_prime.skeleton, constraint):
        assign = {}

        def cover_ok(u, w):
            target = d_prime.cover_bimodules[(alpha[u], alpha[w])]
            return bimodule_iso(d.cover_bimodules[(u, w)],
                                twist(target, assign[u], assign[w]))[0]

        def search(depth):
            if depth == len(order):
                return True
            v = order[depth]
            for mu in dual_group(d.blocks[v]):
                assign[v] = mu
                if all(cover_ok(u, w) for u, w in covers_at[v]):
                    if search(depth + 1):
                        return True
            del assign[v]
            return False

        if search(0):
            return True, (dict(alpha), dict(assign))
    return False, None

"""Canonical JSON encoding of every domain type.

Rationals travel as reduced "p/q" strings with positive denominator, so
exactness survives any JSON parser.  Serialization is canonical: equal
values produce byte-identical documents (sorted keys, compact separators,
canonical in-memory forms).  Decoders raise MalformedInput with a path
hint on any schema violation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from .abelian import AbelianGroup, canonicalize
from .bimodules import BimoduleClass
from .characters import Character
from .cyclo import CycloNumber
from .datum import GradingDatum, ValidationReport
from .errors import IncidenceGradingsError, MalformedInput
from .incidence import IncidenceElement
from .posets import poset_from_relation


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _fail(path, message):
    raise MalformedInput(f"{path}: {message}")


def _expect(data, typ, path):
    if not isinstance(data, typ):
        _fail(path, f"expected {typ.__name__}, got {type(data).__name__}")
    return data


def encode_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decode_rational(data, path="rational"):
    if isinstance(data, int):
        return Fraction(data)
    text = _expect(data, str, path)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        _fail(path, f"not a rational: {text!r}")


# -- groups and subgroups -----------------------------------------------------

def encode_group(group):
    return {"free_rank": group.free_rank, "torsion": list(group.torsion_factors)}


def decode_group(data, path="group"):
    _expect(data, dict, path)
    try:
        return AbelianGroup(_expect(data.get("free_rank", 0), int, path),
                            _expect(data.get("torsion", []), list, path))
    except (ValueError, TypeError) as exc:
        _fail(path, str(exc))


def encode_element(g):
    return list(g.coords)


def decode_element(data, ambient, path="element"):
    _expect(data, list, path)
    try:
        return ambient.element(data)
    except (IncidenceGradingsError, TypeError) as exc:
        _fail(path, str(exc))


def encode_subgroup(sub):
    return {"generators": [encode_element(g) for g in sub.generators]}


def decode_subgroup(data, ambient, path="subgroup"):
    _expect(data, dict, path)
    gens_data = _expect(data.get("generators", []), list, path)
    gens = [decode_element(g, ambient, f"{path}.generators[{n}]")
            for n, g in enumerate(gens_data)]
    return canonicalize(gens, ambient)


# -- characters ---------------------------------------------------------------

def encode_character(chi):
    return {"domain": encode_subgroup(chi.domain),
            "values": [encode_rational(v) for v in chi.values]}


def decode_character(data, ambient, path="character"):
    _expect(data, dict, path)
    domain = decode_subgroup(data.get("domain", {}), ambient, f"{path}.domain")
    values = [decode_rational(v, f"{path}.values[{n}]")
              for n, v in enumerate(_expect(data.get("values", []), list, path))]
    try:
        return Character(domain, values)
    except IncidenceGradingsError as exc:
        _fail(path, str(exc))


# -- cyclotomic numbers and incidence elements --------------------------------

def encode_cyclo(c):
    return {"conductor": c.conductor,
            "coeffs": [encode_rational(v) for v in c.coefficients]}


def decode_cyclo(data, path="cyclo"):
    _expect(data, dict, path)
    conductor = _expect(data.get("conductor", 1), int, path)
    coeffs = [decode_rational(v, f"{path}.coeffs[{n}]")
              for n, v in enumerate(_expect(data.get("coeffs", []), list, path))]
    try:
        nums = [c.numerator for c in coeffs]
        den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return CycloNumber(conductor,
                           [x * (den // c.denominator) for x, c in
                            zip(nums, coeffs)], den)
    except (ValueError, TypeError) as exc:
        _fail(path, str(exc))


def encode_incidence_element(elem):
    entries = []
    for (x, y) in sorted(elem.coeffs, key=lambda p: (str(p[0]), str(p[1]))):
        entries.append({"from": x, "to": y,
                        "coeff": encode_cyclo(elem.coeffs[(x, y)])})
    return entries


def decode_incidence_element(data, poset, path="incidence"):
    _expect(data, list, path)
    coeffs = {}
    for n, entry in enumerate(data):
        _expect(entry, dict, f"{path}[{n}]")
        x, y = entry.get("from"), entry.get("to")
        c = decode_cyclo(entry.get("coeff", {}), f"{path}[{n}].coeff")
        try:
            coeffs[(x, y)] = c
        except TypeError:
            _fail(f"{path}[{n}]", "unhashable pair")
    try:
        return IncidenceElement(poset, coeffs)
    except (ValueError, KeyError) as exc:
        _fail(path, str(exc))


# -- posets --------------------------------------------------------------------

def encode_poset(p):
    return {"elements": list(p.elements),
            "covers": [[x, y] for x, y in p.covers()]}


def decode_poset(data, path="poset"):
    _expect(data, dict, path)
    elements = _expect(data.get("elements", []), list, path)
    covers = _expect(data.get("covers", []), list, path)
    pairs = []
    for n, pair in enumerate(covers):
        _expect(pair, list, f"{path}.covers[{n}]")
        if len(pair) != 2:
            _fail(f"{path}.covers[{n}]", "cover must be a pair")
        pairs.append((pair[0], pair[1]))
    try:
        return poset_from_relation(elements, pairs)
    except (IncidenceGradingsError, ValueError) as exc:
        _fail(path, str(exc))


# -- bimodule classes -----------------------------------------------------------

def encode_bimodule(m):
    return {"left": encode_subgroup(m.left),
            "right": encode_subgroup(m.right),
            "pairs": [{"char": encode_character(chi), "deg": encode_element(g)}
                      for chi, g in m.pairs]}


def decode_bimodule(data, ambient, path="bimodule"):
    _expect(data, dict, path)
    left = decode_subgroup(data.get("left", {}), ambient, f"{path}.left")
    right = decode_subgroup(data.get("right", {}), ambient, f"{path}.right")
    pairs = []
    for n, entry in enumerate(_expect(data.get("pairs", []), list, path)):
        _expect(entry, dict, f"{path}.pairs[{n}]")
        chi = decode_character(entry.get("char", {}), ambient,
                               f"{path}.pairs[{n}].char")
        deg = decode_element(entry.get("deg", []), ambient,
                             f"{path}.pairs[{n}].deg")
        pairs.append((chi, deg))
    try:
        return BimoduleClass(left, right, pairs)
    except IncidenceGradingsError as exc:
        _fail(path, str(exc))


def encode_bimodule_standalone(m):
    doc = encode_bimodule(m)
    doc["ambient"] = encode_group(m.left.ambient)
    return doc


def decode_bimodule_standalone(data, path="bimodule"):
    _expect(data, dict, path)
    ambient = decode_group(data.get("ambient", {}), f"{path}.ambient")
    return decode_bimodule(data, ambient, path)


# -- grading data ----------------------------------------------------------------

def _cover_key(i, j):
    return f"{i},{j}"


def encode_datum(d):
    return {
        "ambient": encode_group(d.ambient),
        "skeleton": encode_poset(d.skeleton),
        "blocks": {label: encode_subgroup(sub)
                   for label, sub in d.blocks.items()},
        "bimodules": {_cover_key(i, j): encode_bimodule(cls)
                      for (i, j), cls in d.cover_bimodules.items()},
    }


def decode_datum(data, path="datum"):
    _expect(data, dict, path)
    ambient = decode_group(data.get("ambient", {}), f"{path}.ambient")
    skeleton = decode_poset(data.get("skeleton", {}), f"{path}.skeleton")
    for label in skeleton.elements:
        if not isinstance(label, str):
            _fail(f"{path}.skeleton", "skeleton labels must be strings")
    blocks_data = _expect(data.get("blocks", {}), dict, path)
    blocks = {label: decode_subgroup(sub, ambient, f"{path}.blocks[{label}]")
              for label, sub in blocks_data.items()}
    bimodules_data = _expect(data.get("bimodules", {}), dict, path)
    covers = {}
    expected = {_cover_key(i, j): (i, j) for i, j in skeleton.covers()}
    for key, entry in bimodules_data.items():
        if key not in expected:
            _fail(f"{path}.bimodules", f"{key!r} is not a cover of the skeleton")
        covers[expected[key]] = decode_bimodule(entry, ambient,
                                                f"{path}.bimodules[{key}]")
    try:
        return GradingDatum(ambient, skeleton, blocks, covers)
    except IncidenceGradingsError as exc:
        _fail(path, str(exc))


def encode_realized(r):
    return {
        "poset": encode_poset(r.poset),
        "basis": [{"element": encode_incidence_element(b.element),
                   "degree": encode_element(b.degree)} for b in r.basis],
    }


# -- reports ----------------------------------------------------------------------

def encode_validation_report(report: ValidationReport):
    return {
        "valid": report.valid,
        "conductor": report.conductor,
        "checked_covers": report.checked_covers,
        "checked_triples": report.checked_triples,
        "issues": [{"condition": i.condition, "location": i.location,
                    "message": i.message} for i in report.issues],
    }


def encode_verification_report(report):
    return {
        "ok": report.ok,
        "dimension": report.dimension,
        "basis_size": report.basis_size,
        "checked_products": report.checked_products,
        "violations": [{"kind": v.kind, "location": v.location,
                        "message": v.message} for v in report.violations],
    }


def encode_link_report(report):
    return {
        "ok": report.ok,
        "checked_pairs": report.checked_pairs,
        "violations": [list(v) for v in report.violations],
    }

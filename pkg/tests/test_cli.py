import json

from incidence_gradings import jsonio
from incidence_gradings.abelian import (
    AbelianGroup,
    canonicalize,
    full_subgroup,
    intersect,
    trivial_subgroup,
)
from incidence_gradings.bimodules import BimoduleClass
from incidence_gradings.characters import dual_group, trivial_character
from incidence_gradings.cli import main

from helpers import chain_datum, two_block_datum

Z2 = AbelianGroup(0, [2])
Z4 = AbelianGroup(0, [4])


def write_json(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(jsonio.dumps_canonical(doc) + "\n", encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _two_block(ambient=Z4):
    whole = full_subgroup(ambient)
    two = canonicalize([ambient.element([2])], ambient)
    chi = dual_group(intersect(whole, two))[1]
    return two_block_datum(ambient, whole, two, chi, ambient.element([1]))


def test_validate_ok(tmp_path, capsys):
    path = write_json(tmp_path, "d.json", jsonio.encode_datum(_two_block()))
    code, out, err = run(capsys, "validate", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["valid"] is True
    assert doc["conductor"] == 4


def test_validate_invalid_exits_1(tmp_path, capsys):
    h = canonicalize([Z4.element([2])], Z4)
    chi = dual_group(h)[1]
    d = two_block_datum(Z4, h, h, chi, Z4.zero())
    doc = jsonio.encode_datum(d)
    # duplicate the character: condition (2) violation
    doc["bimodules"]["1,2"]["pairs"].append(doc["bimodules"]["1,2"]["pairs"][0])
    path = write_json(tmp_path, "bad.json", doc)
    code, out, err = run(capsys, "validate", path)
    assert code == 1
    report = json.loads(out)
    assert report["valid"] is False
    assert any(issue["condition"] == "2" for issue in report["issues"])


def test_realize_trivial_chain(tmp_path, capsys):
    t = trivial_subgroup(Z2)
    d = two_block_datum(Z2, t, t, trivial_character(t), Z2.zero())
    path = write_json(tmp_path, "d.json", jsonio.encode_datum(d))
    code, out, err = run(capsys, "realize", path)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["poset"]["elements"]) == 2
    assert len(doc["poset"]["covers"]) == 1
    assert len(doc["basis"]) == 3


def test_realize_dot_output(tmp_path, capsys):
    t = trivial_subgroup(Z2)
    d = two_block_datum(Z2, t, t, trivial_character(t), Z2.zero())
    path = write_json(tmp_path, "d.json", jsonio.encode_datum(d))
    code, out, err = run(capsys, "realize", path, "--dot")
    assert code == 0
    assert out.startswith("digraph hasse {")
    assert "->" in out


def test_verify_clean(tmp_path, capsys):
    h = full_subgroup(Z2)
    sigma = dual_group(h)[1]
    d = chain_datum(Z2, [h, h, h], [
        BimoduleClass(h, h, [(sigma, Z2.zero())]),
        BimoduleClass(h, h, [(trivial_character(h), Z2.element([1]))]),
    ])
    path = write_json(tmp_path, "d.json", jsonio.encode_datum(d))
    code, out, err = run(capsys, "verify", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["grading"]["ok"] is True
    assert doc["links"]["ok"] is True
    assert doc["radical_products"] == [{"pair": ["1", "3"], "agree": True}]


def test_verify_corrupted_exits_1(tmp_path, capsys):
    h = canonicalize([Z4.element([2])], Z4)
    chi = dual_group(h)[1]
    d = two_block_datum(Z4, h, h, chi, Z4.zero())
    doc = jsonio.encode_datum(d)
    doc["bimodules"]["1,2"]["pairs"].append(doc["bimodules"]["1,2"]["pairs"][0])
    path = write_json(tmp_path, "bad.json", doc)
    code, out, err = run(capsys, "verify", path)
    assert code == 1
    assert json.loads(out)["valid"] is False


def test_product_command(tmp_path, capsys):
    h = full_subgroup(Z2)
    sigma = dual_group(h)[1]
    m12 = BimoduleClass(h, h, [(sigma, Z2.zero())])
    m23 = BimoduleClass(h, h, [(trivial_character(h), Z2.element([1]))])
    p1 = write_json(tmp_path, "m12.json", jsonio.encode_bimodule_standalone(m12))
    p2 = write_json(tmp_path, "m23.json", jsonio.encode_bimodule_standalone(m23))
    code, out, err = run(capsys, "product", p1, p2)
    assert code == 0
    result = jsonio.decode_bimodule_standalone(json.loads(out))
    assert result == BimoduleClass(h, h, [(sigma, Z2.element([1]))])


def test_product_degree_conflict(tmp_path, capsys):
    t = trivial_subgroup(Z4)
    chi = trivial_character(t)
    m12 = BimoduleClass(t, t, [(chi, Z4.zero())])
    m23 = BimoduleClass(t, t, [(chi, Z4.zero()), (chi, Z4.element([1]))])
    p1 = write_json(tmp_path, "m12.json", jsonio.encode_bimodule_standalone(m12))
    p2 = write_json(tmp_path, "m23.json", jsonio.encode_bimodule_standalone(m23))
    code, out, err = run(capsys, "product", p1, p2)
    assert code == 1
    assert json.loads(err)["error"]["type"] == "DegreeConflict"


def test_iso_bimodule_command(tmp_path, capsys):
    h = canonicalize([Z4.element([2])], Z4)
    chi = dual_group(h)[1]
    m = BimoduleClass(h, h, [(chi, Z4.element([1]))])
    n = BimoduleClass(h, h, [(chi, Z4.element([3]))])
    p1 = write_json(tmp_path, "m.json", jsonio.encode_bimodule_standalone(m))
    p2 = write_json(tmp_path, "n.json", jsonio.encode_bimodule_standalone(n))
    code, out, err = run(capsys, "iso-bimodule", p1, p2)
    assert code == 0
    doc = json.loads(out)
    assert doc["isomorphic"] is True
    assert doc["witness"] == [0]


def test_iso_grading_command(tmp_path, capsys):
    d = _two_block()
    p1 = write_json(tmp_path, "d1.json", jsonio.encode_datum(d))
    p2 = write_json(tmp_path, "d2.json", jsonio.encode_datum(d))
    code, out, err = run(capsys, "iso-grading", p1, p2)
    assert code == 0
    doc = json.loads(out)
    assert doc["isomorphic"] is True
    assert doc["witness"]["alpha"] == {"1": "1", "2": "2"}


def test_dual_command(tmp_path, capsys):
    doc = {"ambient": jsonio.encode_group(Z4),
           "generators": [[2]]}
    path = write_json(tmp_path, "sub.json", doc)
    code, out, err = run(capsys, "dual", path)
    assert code == 0
    chars = json.loads(out)["characters"]
    assert len(chars) == 2
    assert chars[0]["values"] == ["0/1"]
    assert chars[1]["values"] == ["1/2"]


def test_malformed_input_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, out, err = run(capsys, "validate", str(path))
    assert code == 2
    assert json.loads(err)["error"]["type"] == "MalformedInput"
    # schema violation, not just bad JSON
    path2 = write_json(tmp_path, "schema.json", {"ambient": []})
    code, out, err = run(capsys, "validate", path2)
    assert code == 2


def test_stdin_input(tmp_path, capsys, monkeypatch):
    import io
    doc = jsonio.dumps_canonical(jsonio.encode_datum(_two_block()))
    monkeypatch.setattr("sys.stdin", io.StringIO(doc))
    code, out, err = run(capsys, "validate", "-")
    assert code == 0
    assert json.loads(out)["valid"] is True

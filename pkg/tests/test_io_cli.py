import json
import pathlib
import subprocess
import sys

import pytest

from hopfcyc.catalog import CATALOG
from hopfcyc.cli import main
from hopfcyc.io import Document, ParseError, dumps, export, parse_matrix
from hopfcyc.exactlin import QQ

from conftest import instance

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def c2_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("docs") / "c2.json"
    assert main(["export", "group-c2", "--cocyclic", "--cap", "2", "-o", str(p)]) == 0
    return p


# -- the document format

@pytest.mark.parametrize("name", ["constant", "group-s3-h", "ae-twisted-t2-conj"])
def test_round_trip(name):
    H, pair = instance(name)
    twist = CATALOG[name].twisting_data()
    text = dumps(export(H, pair, twist))
    doc = Document.from_text(text)
    H2, pair2 = doc.build()
    assert dumps(export(H2, pair2, doc.twisting_data())) == text
    assert pair2.summary() == pair.summary()


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        Document.from_text('{"format": "hopfcyc/1",\n "field": }')
    assert (err.value.line, err.value.col) == (2, 11)
    with pytest.raises(ParseError, match="expected format"):
        Document.from_text('{"format": "other"}')


def test_parse_matrix():
    assert parse_matrix(QQ, [["1/2", "0"], ["0", "3"]], 2, 2, "m") == [{0: QQ("1/2")}, {1: 3}]
    sparse = {"rows": 2, "cols": 2, "entries": [[0, 1, "1"], [0, 1, "1"]]}
    assert parse_matrix(QQ, sparse, 2, 2, "m") == [{}, {0: 2}]
    with pytest.raises(ParseError, match="out of range"):
        parse_matrix(QQ, {"rows": 1, "cols": 1, "entries": [[1, 0, "1"]]}, 1, 1, "m")
    with pytest.raises(ParseError, match="2×2"):
        parse_matrix(QQ, [["1"]], 2, 2, "m")


# -- command line

def test_non_associative_file(tmp_path, capsys):
    p = tmp_path / "c3.json"
    assert main(["export", "group-c3", "-o", str(p)]) == 0
    d = json.loads(p.read_text())
    U = d["algebras"][1]
    U["structure"] = [q if q[:2] != [1, 1] else [1, 1, 0, "1"] for q in U["structure"]]
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2
    assert "AxiomViolation: associativity" in err


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", "no-such-target")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "ParseError" in err
    code, out, _ = run(capsys, "verify", "ae-twisted-x2-neg", "--cap", "2")
    assert code == 0
    assert "t_1^2 ≠ id, witness 1⊗(x⊗1)" in out
    assert "well-definedness: pass" in out


def test_golden_json(capsys):
    for argv, name in ((["catalog", "list", "--json"], "catalog_list.json"),
                       (["homology", "constant", "--theory", "cyclic", "--cap", "4", "--json"],
                        "constant_cyclic.json")):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert json.loads(out) == json.loads((GOLDEN / name).read_text())


def test_homology_compare(capsys):
    code, out, _ = run(capsys, "homology", "ae-twisted-x2-id", "--cap", "3",
                       "--compare", "hochschild-oracle")
    assert code == 0 and "match: degrees 0..2" in out


def test_dualcheck_supplied_operators(capsys, c2_file):
    code, out, _ = run(capsys, "dualcheck", str(c2_file), "--cap", "2")
    assert code == 0 and "agree, degrees 0..2" in out


def test_dualcheck_detects_mutation(capsys, c2_file, tmp_path):
    d = json.loads(c2_file.read_text())
    m = d["cocyclic"]["maps"]["cyclic 2"]
    m["entries"] = [[i, j, str(-int(v))] for i, j, v in m["entries"]]
    p = tmp_path / "mutated.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "dualcheck", str(p), "--cap", "2")
    assert code == 1
    assert "degree 1: operators agree" in out
    assert "mismatch at (τ, n = 2)" in out


def test_skip_verify_is_tainted(capsys):
    code, out, err = run(capsys, "homology", "group-c2", "--cap", "2", "--skip-verify",
                         "--json")
    assert code == 0 and "tainted" in err
    assert json.loads(out)["table"]["tainted"] is True


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hopfcyc", "catalog", "list"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert all(name in r.stdout for name in CATALOG)

import json
from importlib import resources

import pytest
from click.testing import CliRunner

from dtoric.cli import main

CORPUS = resources.files("dtoric") / "corpus"


def corpus_path(name):
    return str(CORPUS / name)


def expected(name):
    return (CORPUS / "expected" / name).read_text()


def run(*args):
    return CliRunner().invoke(main, list(args))


@pytest.mark.parametrize("command,doc,fixture", [
    (["facets"], "rnc2.json", "rnc2_facets.txt"),
    (["facets"], "pyramid.json", "pyramid_facets.txt"),
    (["dpiece"], "rnc2.json", "rnc2_dpiece.txt"),
    (["quotient"], "rnc3.json", "rnc3_quotient.txt"),
    (["gorenstein"], "rnc2.json", "rnc2_gorenstein.txt"),
    (["sr"], "two_vertex_sr.json", "two_vertex_sr.txt"),
    (["tfr-verify"], "glued_curves.json", "glued_curves_verify.txt"),
    (["oracle"], "rnc2.json", "rnc2_oracle.txt"),
])
def test_corpus_fixtures_byte_for_byte(command, doc, fixture):
    result = run(*command, "-i", corpus_path(doc))
    assert result.output == expected(fixture)


def test_deterministic_output():
    a = run("gorenstein", "-i", corpus_path("rnc2.json"))
    b = run("gorenstein", "-i", corpus_path("rnc2.json"))
    assert a.output == b.output


def test_exit_codes():
    assert run("gorenstein", "-i", corpus_path("rnc2.json")).exit_code == 0
    assert run("gorenstein", "-i", corpus_path("rnc3.json")).exit_code == 1
    assert run("facets", "-i", "/nonexistent.json").exit_code == 2
    assert run("sr", "-i", corpus_path("two_vertex_sr.json"), "--b", "0,1").exit_code == 1


def test_unknown_field_rejected(tmp_path):
    doc = {"matrix": [[1, 1], [0, 1]], "surprise": 1}
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc))
    result = run("facets", "-i", str(path))
    assert result.exit_code == 2
    assert "unknown document fields" in result.output


def test_non_normal_input_rejected(tmp_path):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps({"matrix": [[1, 1, 1], [0, 1, 3]]}))
    result = run("facets", "-i", str(path))
    assert result.exit_code == 2
    assert "not normal" in result.output


def test_json_report_roundtrips_as_document(tmp_path):
    result = run("dpiece", "-i", corpus_path("rnc2.json"), "--format", "json")
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["result"]["generator"] == "(t2)(2t1 - t2)"
    # a report is itself a valid input document
    path = tmp_path / "report.json"
    path.write_text(result.output)
    again = run("dpiece", "-i", str(path), "--format", "json")
    assert again.exit_code == 0
    assert json.loads(again.output)["result"] == report["result"]


def test_degree_option_overrides_document():
    result = run("dpiece", "-i", corpus_path("rnc2.json"), "-m", "-2,-2")
    assert "(t2)(t2 - 1)(2t1 - t2)(2t1 - t2 - 1)" in result.output

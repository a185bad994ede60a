import json
import shutil

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from ringcheck.cli import main
from ringcheck.corpus import corpus_dir

RING = """
ring A = QQ[x,y,z] / (x*y, y*z, z^2);
ideal I in A = (x);
ideal Z in A = (0);
ideal P in A = (x, y);
module M over A = coker [[x]];
ring C = QQ[x,y] / (x^2 - x);
ideal Px in C = (x);
check torsion_free M;
split C at Px;
"""


@pytest.fixture
def src(tmp_path):
    p = tmp_path / "a.ring"
    p.write_text(RING)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gb(capsys, src):
    code, out, _ = run(capsys, "gb", src, "A")
    assert code == 0
    assert out.split() == ["x*y", "y*z", "z^2"]


def test_colon(capsys, src):
    code, out, _ = run(capsys, "colon", src, "Z", "I")
    assert code == 0
    assert json.loads(out)["results"][0]["result"] == ["y"]


def test_isprime_witness(capsys, src):
    code, out, _ = run(capsys, "isprime", src, "P")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["result"] == "false"
    assert doc["schema"] == 1


def test_check_file_statements(capsys, src):
    code, out, _ = run(capsys, "check", src)
    doc = json.loads(out)
    assert code == 0
    assert doc["results"][0]["result"] == "false"
    assert doc["witnesses"][0]["a"] == "x + y"


def test_inline_statement(capsys, src):
    code, out, _ = run(capsys, "check", src, "assprimes", "A")
    assert code == 0
    assert json.loads(out)["results"][0]["result"] == ["(x, z)", "(y, z)"]


def test_split_certificate(capsys, src):
    code, out, _ = run(capsys, "split", src)
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["result"] == "split"
    assert doc["certificates"][0]["e"] == "x"


def test_classify_defaults_to_all_rings(capsys, src):
    code, out, _ = run(capsys, "classify", src)
    assert [r["result"] for r in json.loads(out)["results"]] == ["false", "true"]


def test_output_is_sorted_json(capsys, src):
    _, out, _ = run(capsys, "dim", src, "A")
    doc = json.loads(out)
    assert out.strip() == json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


@pytest.mark.parametrize("argv", [
    ["gb", "/nonexistent/file.ring"],
    ["colon", "{src}", "Z"],
    ["gb", "{src}", "Nope"],
    ["check", "{src}", "torsion_free", "Nope"],
    ["check", "{src}", "torsion_free", "M", "at", "Px"],
    ["decompose", "{src}", "A", "extra"],
])
def test_input_errors_exit_one(capsys, src, argv):
    code, _, err = run(capsys, *[a.replace("{src}", src) for a in argv])
    assert code == 1
    assert err.startswith("ringcheck:")


def test_usage_errors_exit_one():
    for argv in ([], ["frobnicate"], ["gb"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.text(alphabet="ringdealQGF()[]{},;:=/*^+-xyzAIM0123 \n", max_size=80))
def test_malformed_files_never_crash(tmp_path, capsys, text):
    p = tmp_path / "fuzz.ring"
    p.write_text(text)
    code = main(["gb", str(p)])
    capsys.readouterr()
    assert code in (0, 1)


def test_corpus_mismatch_exits_two(tmp_path, capsys):
    work = tmp_path / "corpus"
    shutil.copytree(corpus_dir(), work)
    items = json.loads((work / "items.json").read_text())
    items["items"][0]["claims"][0]["expected"] = "match"
    (work / "items.json").write_text(json.dumps(items))
    code, out, _ = run(capsys, "corpus", str(work), "--no-timing")
    assert code == 2
    assert json.loads(out)["expected"] is False

import json
import subprocess
import sys

import jsonschema
import pytest

from persist.cli import main, read_corpus, UsageError
from persist.document import REPORT_SCHEMA, ReportDocument


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "x0^3*x1")
    assert code == 0 and "c = -36, g = u0*v0" in out and "family: W" in out
    assert run(capsys, "check", "x0^4+x1^4")[0] == 1
    code, out, _ = run(capsys, "check", "x0*x2^3+x1*x2^2*x3+x3^4")
    assert code == 0 and "c = 9, l = x2" in out


def test_check_errors(capsys):
    code, _, err = run(capsys, "check", "x0^2 + x1")
    assert code == 2 and "[1, 2]" in err
    code, _, err = run(capsys, "check", "x0 x1")
    assert code == 2 and "position 3" in err and "^" in err
    code, _, err = run(capsys, "check", "x0^3")
    assert code == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_check_json_validates_and_round_trips(capsys):
    code, out, _ = run(capsys, "check", "x0^3*x1", "--json", "--trials", "4", "--seed", "9")
    obj = json.loads(out)
    jsonschema.validate(obj, REPORT_SCHEMA)
    assert obj["condition_c"] == {"present": True, "c": "-36", "g": "u0*v0"}
    assert obj["condition_a"] == {"present": True, "c": "-9", "ell": "x0"}
    assert obj["seed"] == 9 and obj["probe"] == "consistent-with-persistent"
    doc = ReportDocument.loads(out)
    assert ReportDocument.loads(doc.dumps()) == doc
    assert json.loads(doc.dumps()) == obj


def test_json_schema_rejects_drift(capsys):
    _, out, _ = run(capsys, "check", "x0^4+x1^4", "--json")
    obj = json.loads(out)
    obj["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        ReportDocument.from_json(obj)


def test_hessian_and_polarize(capsys):
    assert run(capsys, "hessian", "x0^2*x1^2")[1].strip() == "-12*x0^2*x1^2"
    out = run(capsys, "polarize", "x0^3*x1", "--blocks", "2")[1].strip()
    assert out == "6*u0*v0*x0*x1 + 3*u0*v1*x0^2 + 3*u1*v0*x0^2"
    out = run(capsys, "polarize", "x0*x1")[1].strip()
    assert out == "1/2*u0*v1 + 1/2*u1*v0"
    assert run(capsys, "polarize", "x0*x1", "--blocks", "3")[0] == 2


def test_gallery(capsys):
    code, out, _ = run(capsys, "gallery", "perazzo", "1", "1", "1", "1")
    assert code == 0 and out.strip() == "x0^2*x4 + x0*x1*x3 + x0*x2^2 + x1^2*x2"
    assert "subhankel" in run(capsys, "gallery")[1]
    code, _, err = run(capsys, "gallery", "nope")
    assert code == 2 and "unknown gallery tag" in err
    assert run(capsys, "gallery", "W", "x")[0] == 2


def test_probe(capsys):
    code, out, _ = run(capsys, "probe", "x2^4+x0*x2^2*x3+x1*x2*x3^2+x3^4", "--trials", "8", "--seed", "1", "--json")
    obj = json.loads(out)
    assert code == 1 and obj["verdict"] == "witnessed-non-persistent" and obj["seed"] == 1
    assert obj["witness"]["directions"]
    # replay from the printed chain
    from persist.expr import parse
    from persist.persistence import replay_chain

    term, reason = replay_chain(parse(obj["input"]), obj["witness"]["directions"])
    assert str(term) == obj["witness"]["terminal"] and reason == obj["witness"]["reason"]
    assert run(capsys, "probe", "x0^3*x1")[0] == 0


CORPUS = """\
# known examples
x0^3*x1                     expect:persistent
x0^4+x1^4                   expect:not
x0*x2^3+x1*x2^2*x3+x3^4     expect:persistent   # quartic with (a)
x2^4+x0*x2^2*x3+x1*x2*x3^2+x3^4  expect:not

x0^2*x3+x0*x1*x2+x1^3
"""


def test_read_corpus():
    lines = read_corpus(CORPUS)
    assert [l.expect for l in lines] == [True, False, True, False, None]
    assert lines[2].expr == "x0*x2^3+x1*x2^2*x3+x3^4" and lines[2].lineno == 4
    with pytest.raises(UsageError):
        read_corpus("x0^2 expect:maybe")


@pytest.mark.parametrize("jobs", ["1", "3"])
def test_corpus_order_and_expectations(tmp_path, capsys, jobs):
    spec = tmp_path / "corpus.txt"
    spec.write_text(CORPUS)
    code, out, err = run(capsys, "corpus", "--spec", str(spec), "--jobs", jobs)
    assert code == 0, err
    docs = [ReportDocument.loads(l) for l in out.splitlines()]
    assert [d.input for d in docs] == [l.expr for l in read_corpus(CORPUS)]
    assert [d.persistent for d in docs] == [True, False, True, False, True]
    spec.write_text("x0^4+x1^4 expect:persistent\n")
    code, _, err = run(capsys, "corpus", "--spec", str(spec))
    assert code == 1 and "expected persistent" in err


def test_corpus_errors(tmp_path, capsys):
    assert run(capsys, "corpus", "--spec", str(tmp_path / "missing"))[0] == 2
    spec = tmp_path / "bad.txt"
    spec.write_text("x0^3*x1\nx0^2 + x1\n")
    code, _, err = run(capsys, "corpus", "--spec", str(spec))
    assert code == 2 and "line 2" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "persist", "check", "x0^3*x1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "verdict: persistent" in proc.stdout

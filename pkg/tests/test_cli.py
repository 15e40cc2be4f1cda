import io
import json

import pytest

from deltachanges import parse_report, parse_trace, serialize_machine
from deltachanges.cli import run
from deltachanges.construct import parse_construction


def call(*argv):
    out, err = io.BytesIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue().decode(), err.getvalue()


@pytest.fixture
def files(tmp_path, m0):
    (tmp_path / "M0.pfm").write_text(serialize_machine(m0))
    (tmp_path / "t.trc").write_text("trace 4 3 general\n000\n100\n110\n110\n")
    (tmp_path / "constant.trc").write_text("trace 3 2 general\n01\n01\n01\n")
    (tmp_path / "bad.pfm").write_text("0 1 1\n01 1 1\n")
    (tmp_path / "fam.txt").write_text("0 5 3\n1 1 2\n")
    (tmp_path / "dec.cost").write_text("cost 2 2\n1 0\n0 0\n")
    return tmp_path


def test_omega_stage(files):
    code, out, _ = call("omega", "--machine", files / "M0.pfm", "--stage", 2)
    assert code == 0
    assert parse_report(out).rows == (("2", "3/2^2"),)
    code, out, _ = call("omega", "--machine", files / "M0.pfm", "--stages", 6, "--format", "csv")
    assert out.splitlines()[1:] == ["0,0/2^0", "1,1/2^2", "2,3/2^2", "3,3/2^2", "4,3/2^2", "5,7/2^3"]


def test_solovay(files):
    code, out, _ = call("solovay", "--trace", files / "t.trc")
    rep = parse_report(out)
    assert code == 0 and [r[1] for r in rep.rows] == ["1", "11"]
    assert rep.field("weight") == "3/2^2"


def test_changes_constant(files):
    code, out, _ = call("changes", "--trace", files / "constant.trc", "--format", "csv")
    assert out == "n,count\n1,0\n2,0\n"


def test_ktrace_writes_trace(files):
    dest = files / "omega.trc"
    code, out, _ = call("ktrace", "--machine", files / "M0.pfm", "--stages", 6, "--width", 3, "--trace-out", dest)
    assert code == 0
    assert parse_trace(dest.read_text()).rows() == ["000", "010", "110", "110", "110", "111"]
    code, out, _ = call("leftce-bound", "--trace", dest, "--k", 1, "--format", "json")
    doc = json.loads(out)
    assert doc["fields"] == {"k": 1, "t": 2, "all_hold": True}
    assert doc["rows"] == [[3, 3, 6, True]]


def test_validate_outcomes(files):
    code, out, _ = call("validate", "--machine", files / "M0.pfm")
    assert code == 0 and "field kraft 7/2^3" in out
    code, _, err = call("validate", "--machine", files / "bad.pfm")
    assert code == 1 and err.startswith("error: PrefixViolation:")
    (files / "dec.trc").write_text("trace 2 3 leftce\n010\n001\n")
    code, _, err = call("validate", "--trace", files / "dec.trc")
    assert code == 1 and "ValidationFailed" in err and "stage 1" in err
    code, _, err = call("validate", "--cost", f"table:{files / 'dec.cost'}", "--X", 1, "--S", 1)
    assert code == 1 and "ValidationFailed" in err


def test_distinct_error_names(files):
    (files / "broken.trc").write_text("trace 3 3 ce\n000\n")
    _, _, err = call("changes", "--trace", files / "broken.trc")
    assert err.startswith("error: ParseError:")
    _, _, err = call("changes", "--trace", files / "missing.trc")
    assert err.startswith("error: FileNotFound:")
    _, _, err = call("cost-eval", "--cost", f"table:{files / 'dec.cost'}", "--x", 5, "--s", 0)
    assert err.startswith("error: CostRangeError:")
    _, _, err = call("construct-ps", "--cost", "exp", "--family", files / "fam.txt", "--stages", 3, "--width", 8)
    assert err.startswith("error: FamilyError:")


def test_gcheck_and_change_lower(files):
    code, out, _ = call("gcheck", "--trace", files / "t.trc", "--bound", "0,2,2")
    rep = parse_report(out)
    assert code == 0 and rep.field("holds") == "false" and rep.field("violation") == "1"
    (files / "flip.trc").write_text("trace 4 1 general\n0\n1\n0\n1\n")
    code, out, _ = call("change-lower", "--trace", files / "flip.trc", "--q", "1/2", "--format", "csv")
    assert out.splitlines() == ["n,count,bound,respected", "1,3,1,false"]


def test_cost_commands(files):
    m = f"omega:{files / 'M0.pfm'}"
    assert "row 1 5 5/2^3" in call("cost-eval", "--cost", m, "--x", 1, "--s", 5)[1]
    assert "row 0 2 1/2^1" in call("cost-eval", "--cost", f"stdk:{files / 'M0.pfm'}", "--x", 0, "--s", 2)[1]
    out = call("obey", "--trace", files / "t.trc", "--cost", "exp", "--format", "csv")[1]
    assert out == "stage,position,charge\n1,0,1/2^0\n2,1,1/2^1\n"
    rep = parse_report(call("limit-probe", "--cost", "exp", "--epsilon", "1/2^3", "--X", 10, "--S", 10)[1])
    assert rep.field("x") == "3"
    out = call("benign", "--cost", "exp", "--k", 2, "--horizon", 10, "--format", "csv")[1]
    assert out == "k,count\n2,3\n"
    code, _, err = call("benign", "--cost", f"table:{files / 'dec.cost'}", "--k", 1, "--horizon", 1)
    assert code == 1 and "ValidationFailed" in err


def test_construct_and_hits(files):
    out_trace, out_full = files / "A.trc", files / "A.ps"
    code, out, _ = call("construct-ps", "--cost", "exp", "--family", files / "fam.txt", "--stages", 5,
                        "--width", 8, "--trace-out", out_trace, "--construction-out", out_full)
    assert code == 0
    rep = parse_report(out)
    assert rep.rows == (("0", "met", "5", "3"), ("1", "unmet", None, None))
    assert rep.field("total") == "1/2^5"
    assert parse_construction(out_full.read_text()).trace == parse_trace(out_trace.read_text())
    rep = parse_report(call("hits", "--strings", "1,11", "--row", "110")[1])
    assert rep.field("hits") == "2"
    rep = parse_report(call("hits", "--trace", files / "t.trc")[1])
    assert rep.field("hits") == "2" and rep.field("weight") == "3/2^2"


def test_kcomplexity_and_ktriv(files):
    rep = parse_report(call("kcomplexity", "--machine", files / "M0.pfm", "--string", "1", "--stage", 1)[1])
    assert rep.rows == (("1", "1", None),)
    rep = parse_report(call("kcomplexity", "--machine", files / "M0.pfm", "--natural", 2)[1])
    assert rep.rows == (("1", "5", "1"),)
    rep = parse_report(call("ktriv", "--machine", files / "M0.pfm", "--set", "1", "--nmax", 1)[1])
    assert rep.rows == (("1", "1", None, None),) and rep.field("b") is None


def test_out_file_and_determinism(files):
    dest = files / "r.json"
    args = ("ktrace", "--machine", files / "M0.pfm", "--stages", 6, "--width", 3, "--format", "json")
    assert call(*args, "--out", dest)[1] == ""
    first = dest.read_bytes()
    call(*args, "--out", dest)
    assert dest.read_bytes() == first == call(*args)[1].encode()

import csv
import io
import json

import pytest

from stackzeta.cli import main
from stackzeta.groups import symmetric


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zeta_bgm_json(capsys):
    code, out, _ = run(capsys, "zeta", "BGm", "--q", "2", "--order", "8", "--depth", "16", "--format", "json")
    assert code == 0
    rep = json.loads(out)[0]
    assert rep["counts_side"][1] == "1/1"
    assert rep["rational_function"] is None
    assert len(rep["poles"]) == 16


def test_zeta_point(capsys):
    code, out, _ = run(capsys, "zeta", "Point", "--q", "5")
    assert code == 0
    assert set(json.loads(out)[0]["counts_side"]) == {"1/1"}


def test_zeta_bfinite_table(capsys, tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(symmetric(3).to_json()))
    code, out, _ = run(capsys, "zeta", "BFinite", "--table", str(path))
    assert code == 0
    R = json.loads(out)[0]["rational_function"]
    assert R == {"numerator": ["1/1"], "denominator": ["1/1", "-1/1"]}


def test_bad_table_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"mul": [[0, 1], [1, 1]]}))
    code, _, err = run(capsys, "zeta", "BFinite", "--table", str(path))
    assert code == 2 and "group table" in err


def test_unknown_selector(capsys):
    code, _, err = run(capsys, "zeta", "Banana")
    assert code == 2 and "unknown stack selector" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "BGm", "--suite", "everything"])
    assert exc.value.code == 2


def test_invalid_config(capsys):
    assert run(capsys, "zeta", "BGm", "--order", "0")[0] == 2
    assert run(capsys, "zeta", "BGm", "--q", "6")[0] == 2
    assert run(capsys, "zeta", "BE", "--q", "2", "--a", "3")[0] == 2
    assert run(capsys, "zeta")[0] == 2


def test_verify_all_trace(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--suite", "trace", "--V", "4", "--depth", "32")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 12
    assert {r["status"] for r in reports} == {"pass"}


def test_verify_be_weights(capsys):
    code, out, _ = run(capsys, "verify", "BE", "--q", "5", "--a", "2", "--suite", "weights", "--depth", "40")
    assert code == 0
    rows = json.loads(out)[0]["witness"]["rows"]
    assert len(rows) == 41 and {r["slack"] for r in rows} == {"0/1"}


def test_verify_existence_and_strict(capsys):
    code, out, _ = run(capsys, "verify", "FormOfBGm", "--q", "2", "--suite", "existence")
    assert code == 0 and json.loads(out)[0]["status"] == "inconclusive"
    code, _, _ = run(capsys, "verify", "FormOfBGm", "--q", "2", "--suite", "existence", "--strict")
    assert code == 1


def test_inapplicable_suite_is_marked(capsys):
    code, out, _ = run(capsys, "verify", "QuotientP1Gm", "--suite", "weights")
    assert code == 0 and json.loads(out)[0]["status"] == "n/a"


def test_n_alias_and_csv(capsys):
    code, out, _ = run(capsys, "zeta", "Gm", "--q", "3", "--N", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["stack", "k", "counts_side", "spectrum_side", "gap"]
    assert [r[2] for r in rows[1:]] == ["1/1", "2/1", "6/1", "18/1", "54/1"]


def test_text_output(capsys):
    code, out, _ = run(capsys, "verify", "P1", "--suite", "funceq", "--format", "text")
    assert code == 0 and out.split() == ["funceq", "P1", "pass"]


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "BGL2", "BE", "--suite", "all", "--V", "3", "--depth", "24"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""

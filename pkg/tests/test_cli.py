import json
import subprocess
import sys

import pytest

from maxmult.cli import EXIT_FINDING, EXIT_PASS, EXIT_RESOURCE, EXIT_USAGE, main

TWISTED = "ring 32003; x,y,z,w\nx*z - y^2\nx*w - y*z\ny*w - z^2\n"
NON_CM = "ring 32003; x,y,z\nx^2\nx*y\ny^2\nx*z\n"
SQUARE = "ring 32003; x,y,z\nx^2\nx*y\ny^2\n"
CI3 = "ring 32003; x,y,z\nx^2\ny^2\nz^2\n"
PLANE_CI = "ring 32003; x,y,z\nx^2\ny^2\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("tc", TWISTED), ("noncm", NON_CM), ("sq", SQUARE), ("ci3", CI3),
                       ("plane", PLANE_CI)]:
        path = tmp_path / f"{name}.ideal"
        path.write_text(text)
        out[name] = str(path)
    return out


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def no_floats(value):
    if isinstance(value, float):
        return False
    if isinstance(value, dict):
        return all(no_floats(v) for v in value.values())
    if isinstance(value, list):
        return all(no_floats(v) for v in value)
    return True


def test_profile_json(capsys, files):
    code, rep = run_json(capsys, "profile", files["tc"])
    assert code == EXIT_PASS
    assert rep["schema"] == 1 and rep["status"] == "pass"
    assert rep["result"]["multiplicity"] == 3
    assert rep["result"]["height"] == 2
    assert "elapsedMs" not in rep
    assert no_floats(rep)


def test_json_is_deterministic(capsys, files):
    outs = []
    for _ in range(2):
        main(["s-invariant", files["tc"], "--json"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_timing_flag(capsys, files):
    _, rep = run_json(capsys, "profile", files["tc"], "--timing")
    assert isinstance(rep["elapsedMs"], int)


def test_text_output(capsys, files):
    assert main(["profile", files["tc"]]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out.startswith("profile: pass")
    assert "multiplicity: 3" in out


def test_s_invariant_and_cm(capsys, files):
    code, rep = run_json(capsys, "s-invariant", files["ci3"])
    assert code == EXIT_PASS and rep["result"]["value"] == 3
    assert rep["result"]["socleType"] == "gorenstein"
    code, rep = run_json(capsys, "cm", files["noncm"])
    assert code == EXIT_PASS and rep["result"]["cohenMacaulay"] is False
    assert all(n > rep["result"]["multiplicity"] for n in rep["result"]["reductionLengths"])


def test_s_invariant_of_non_cm_is_error(capsys, files):
    code, rep = run_json(capsys, "s-invariant", files["noncm"])
    assert code == EXIT_USAGE
    assert rep["status"] == "error" and "error" in rep


def test_depth_and_unmixed(capsys, files):
    _, rep = run_json(capsys, "depth", files["noncm"])
    assert rep["result"] == {"depth": 0, "dim": 1, "pd": 3}
    _, rep = run_json(capsys, "unmixed-part", files["noncm"])
    assert rep["result"]["unmixedPart"] == ["x", "y^2"]


def test_check_bound(capsys, files):
    code, rep = run_json(capsys, "check-bound", "--J", files["ci3"], "--F", "x*y")
    assert code == EXIT_PASS
    assert rep["result"]["boundRHS"] == 6 and rep["result"]["isMaximal"] is True


def test_classify(capsys, files):
    code, rep = run_json(capsys, "classify", "--J", files["sq"], "--F", "x*z")
    assert code == EXIT_PASS
    assert rep["result"]["depthClass"] == "almost_cm"
    assert all(c["ok"] for c in rep["result"]["checks"])


def test_classify_not_maximal_is_error(capsys, files):
    code, _ = run_json(capsys, "classify", "--J", files["ci3"], "--F", "x+y")
    assert code == EXIT_USAGE


def test_colon_structure(capsys, files):
    _, rep = run_json(capsys, "colon-structure", "--J", files["ci3"], "--F", "x*y")
    assert rep["result"]["matches"] is True
    assert rep["result"]["q"] == "z^2"


def test_construct(capsys, files):
    code, rep = run_json(capsys, "construct", "--I", files["tc"], "--Cprime", "y,z")
    assert code == EXIT_PASS
    assert rep["result"]["isMaximal"] is True
    code, rep = run_json(capsys, "construct", "--I", files["sq"], "--Cprime", "x,y^2")
    assert code == EXIT_PASS and rep["result"]["trivial"] is True


def test_mprimary(capsys, tmp_path):
    path = tmp_path / "m.ideal"
    path.write_text("ring 32003; x,y\nx^2\ny^2\n")
    code, rep = run_json(capsys, "mprimary", "--I", str(path), "--F", "x^2")
    assert code == EXIT_PASS
    assert (rep["result"]["e_J"], rep["result"]["e_I"]) == (5, 4)


def test_link(capsys, files, tmp_path):
    g = tmp_path / "g.ideal"
    g.write_text("ring 32003; x,y,z,w\nx*z - y^2\ny*w - z^2\n")
    code, rep = run_json(capsys, "link", "--I", files["tc"], "--G", str(g))
    assert code == EXIT_PASS
    assert sorted(rep["result"]["L"]) == ["y", "z"]
    assert (rep["result"]["e_I_un"], rep["result"]["e_L"], rep["result"]["e_G"]) == (3, 1, 4)
    code, rep = run_json(capsys, "link", "--I", files["tc"])
    assert code == EXIT_PASS and rep["result"]["identityHolds"]


def test_qg(capsys, files):
    code, rep = run_json(capsys, "qg", "--G", files["plane"], "--h", "x")
    assert code == EXIT_PASS
    assert rep["result"]["equality"] and rep["result"]["gorensteinVerified"]
    code, rep = run_json(capsys, "qg", "--degrees", "3,3", "--vars", "x,y,z", "--h", "x")
    assert code == EXIT_PASS
    assert (rep["result"]["boundRHS"], rep["result"]["e_Q"]) == (4, 6)


def test_qg_degrees_need_vars(capsys):
    assert main(["qg", "--degrees", "2,2", "--h", "x"]) == EXIT_USAGE


def test_corpus_list_and_emit(capsys, tmp_path):
    code, rep = run_json(capsys, "corpus", "list")
    assert code == EXIT_PASS and "four-quadrics-1" in rep["result"]["entries"]
    assert main(["corpus", "emit", "catalecticant-1-2-3"]) == EXIT_PASS
    text = capsys.readouterr().out
    assert text.startswith("ring 32003;")
    out = tmp_path / "c.ideal"
    assert main(["corpus", "emit", "catalecticant-1-2-3", "-o", str(out)]) == EXIT_PASS
    assert "written" in capsys.readouterr().out
    assert out.read_text().strip() == text.strip()
    code, rep = run_json(capsys, "profile", str(out))
    assert rep["result"]["multiplicity"] == 3


def test_corpus_check(capsys):
    code, rep = run_json(capsys, "corpus", "check", "four-quadrics-3")
    assert code == EXIT_PASS and rep["result"]["mismatches"] == []
    assert main(["corpus", "check", "no-such-entry"]) == EXIT_USAGE


def test_four_quadrics_table(capsys):
    assert main(["corpus", "four-quadrics", "--all"]) == EXIT_PASS
    out = capsys.readouterr().out
    rows = [line for line in out.splitlines() if "four-quadrics-" in line]
    assert len(rows) == 6 and all(line.endswith("yes") for line in rows)


def test_catalecticant_command(capsys):
    code, rep = run_json(capsys, "corpus", "catalecticant", "2", "2", "3")
    assert code == EXIT_PASS
    assert rep["result"]["computed"]["multiplicity"] == 12
    assert main(["corpus", "catalecticant", "1", "1", "3"]) == EXIT_USAGE


def test_resource_exit(capsys, files):
    code, rep = run_json(capsys, "profile", files["tc"], "--budget-pairs", "1")
    assert code == EXIT_RESOURCE and rep["status"] == "resource"


def test_usage_errors(capsys, files, tmp_path):
    assert main(["profile", str(tmp_path / "missing.ideal")]) == EXIT_USAGE
    assert main(["profile"]) == EXIT_USAGE
    assert main(["profile", files["tc"], "--char", "12"]) == EXIT_USAGE
    assert main(["profile", files["tc"], "--seed", "-1"]) == EXIT_USAGE
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring 32003; x\nx + q\n")
    assert main(["profile", str(bad)]) == EXIT_USAGE
    capsys.readouterr()


def test_char_override(capsys, files):
    _, rep = run_json(capsys, "profile", files["tc"], "--char", "101")
    assert rep["config"]["characteristic"] == 101
    assert rep["result"]["multiplicity"] == 3


def test_seed_choice_does_not_change_answers(capsys, files):
    _, a = run_json(capsys, "depth", files["tc"], "--seed", "7")
    _, b = run_json(capsys, "depth", files["tc"], "--seed", "18446744073709551615")
    assert a["result"] == b["result"]


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "maxmult.cli", "profile", files["tc"], "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["multiplicity"] == 3


def test_finding_exit(capsys, monkeypatch):
    from maxmult import corpus

    real = corpus.get

    def wrong(name, p):
        entry = real(name, p)
        entry.expected["multiplicity"] += 1
        return entry

    monkeypatch.setattr(corpus, "get", wrong)
    code, rep = run_json(capsys, "corpus", "check", "catalecticant-1-2-3")
    assert code == EXIT_FINDING
    assert rep["status"] == "finding" and rep["result"]["mismatches"] == ["multiplicity"]

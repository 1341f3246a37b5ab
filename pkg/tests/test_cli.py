import json
import subprocess
import sys

import pytest

from coverorders.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_primdiv(capsys):
    code, doc = run(capsys, "primdiv", "--t", "2", "--n", "6")
    assert code == 0 and doc["schema"] == "1" and doc["command"] == "primdiv"
    assert doc["result"]["generalized"]["value"] == 9
    assert doc["result"]["primitive"]["case"] == "exception_i"


def test_decompose(capsys):
    code, doc = run(capsys, "decompose", "--kind", "ii", "--n", "21", "--j", "6")
    assert code == 0 and doc["result"]["parts"] == [1, 5, 4, 11] and doc["result"]["eta"] == [0, 1]
    code, doc = run(capsys, "decompose", "--kind", "i", "--n", "26")
    assert code == 0 and doc["result"]["decomposition"]["parts"] == [1, 2, 3, 7, 13]


def test_maxorders_and_spectrum(capsys):
    code, doc = run(capsys, "maxorders", "--group", "su", "--n", "4", "--q", "2")
    assert code == 0 and doc["result"]["maximal_orders"] == [5, 9]
    code, doc = run(capsys, "spectrum", "--group", "sl", "--n", "3", "--q", "2")
    assert doc["result"]["spectrum"] == [1, 2, 3, 4, 7] and doc["result"]["histogram"]["7"] == 48


def test_pmax(capsys):
    code, doc = run(capsys, "pmax", "--group", "sl", "--n", "5", "--q", "2", "--s", "1", "--b", "4")
    assert code == 0 and doc["result"]["certificate"]["excluded_order"] == 10
    code, doc = run(capsys, "pmax", "--group", "su", "--n", "8", "--q", "2", "--s", "1", "--b", "4")
    assert code == 2 and "s + sum(b)" in doc["error"]


def test_cover_and_pipeline(capsys):
    code, doc = run(capsys, "cover", "--group", "su", "--n", "4", "--q", "2")
    assert code == 0 and doc["result"]["new_orders"] == [8]
    code, doc = run(capsys, "pipeline", "--group", "sl", "--n", "5", "--q", "2")
    assert code == 0 and doc["result"]["cover_order"] == 10 and doc["ok"]


def test_element_and_witness(capsys):
    code, doc = run(capsys, "element", "--group", "sl", "--n", "5", "--q", "4", "--realize")
    assert code == 0 and doc["result"]["certificate"]["excluded_order"] == 34
    code, doc = run(capsys, "witness", "--group", "sl", "--n", "5", "--q", "2", "--module", "natural")
    assert code == 0 and doc["result"]["certificate"]["mu_h_is_one"]


def test_verify(capsys):
    code = main(["verify", "zsigmondy", "--t-max", "20", "--n-max", "10"])
    captured = capsys.readouterr()
    assert code == 0 and "[PASS] 1." in captured.err
    assert json.loads(captured.out)["result"]["criteria"][0]["status"] == "PASS"


def test_unknown_check_is_usage_error(capsys):
    code, doc = run(capsys, "verify", "nosuchcheck")
    assert code == 2 and "unknown check" in doc["error"]


def test_element_needs_j_for_module_dependent_route(capsys):
    code, doc = run(capsys, "element", "--group", "su", "--n", "4", "--q", "3")
    assert code == 2 and "--j" in doc["error"]


def test_out_of_scope_group(capsys):
    code, doc = run(capsys, "pipeline", "--group", "sl", "--n", "3", "--q", "2")
    assert code == 2 and doc["lemma"] == "pipeline"


def test_argparse_errors():
    assert main(["primdiv", "--t", "2"]) == 2
    assert main(["nosuch"]) == 2


def test_text_format(capsys):
    code, out = run(capsys, "maxorders", "--group", "sl", "--n", "3", "--q", "2", "--format", "text")
    assert code == 0 and isinstance(out, str) and "7" in out


def test_cap_env_gives_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("COVERORDERS_ENUM_CAP", "10")
    code, doc = run(capsys, "spectrum", "--group", "sl", "--n", "2", "--q", "11")
    assert code == 2 and "TooLarge" in doc["error"]


@pytest.mark.parametrize("argv", [["decompose", "--kind", "ii", "--n", "76", "--j", "10"],
                                  ["element", "--group", "su", "--n", "4", "--q", "3", "--j", "1", "--realize"]])
def test_output_is_deterministic(argv):
    cmd = [sys.executable, "-m", "coverorders", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a

import json
import subprocess
import sys

from gammagerbe.cli import main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("0.3+0.8i") == 0.3 + 0.8j
    assert parse_complex("i") == 1j
    assert parse_complex("-2") == -2


def test_eval_theta(capsys):
    code, out, _ = run(capsys, "eval", "theta", "--z", "0.1+0.2i", "--tau", "i")
    d = json.loads(out)
    assert code == 0 and set(d) == {"re", "im", "tail_bound"}


def test_eval_wedge_gamma(capsys):
    x = "1,-0.5-0.8660254037844386i,-0.5+0.8660254037844386i"
    code, out, _ = run(capsys, "eval", "wedge-gamma", "--a", "1,0,0", "--b", "1,2,0", "--w", "0.1", "--x", x)
    assert code == 0 and json.loads(out)["tail_bound"] < 1e-12


def test_eval_domain_error(capsys):
    code, _, err = run(capsys, "eval", "wedge-gamma", "--a=-1,0,0", "--b", "0,1,0",
                       "--w", "0.1", "--x", "1,-0.5-0.866i,-0.5+0.866i")
    assert code == 2 and "domain" in err


def test_wedge_info(capsys):
    code, out, _ = run(capsys, "wedge-info", "--a", "1,0,0", "--b", "1,2,0")
    d = json.loads(out)
    assert d["modulus"] == 2 and d["gamma"] == [0, 0, 1] and len(d["fundamental_set"]) == 2


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "--a", "2,1,1", "--b", "1,1,0")
    d = json.loads(out)
    assert d["g_a"] == [1, 0, 0] and d["g_b"] == [d["r"], d["s"], 0]


def test_bernoulli_formats(capsys):
    code, out, _ = run(capsys, "bernoulli", "--r", "1", "--n", "2")
    assert json.loads(out)["n"] == 2
    code, out, _ = run(capsys, "bernoulli", "--r", "1", "--n", "2", "--format", "text")
    assert "w^2" in out


def test_check_and_list(capsys):
    code, out, _ = run(capsys, "check", "narukawa", "--samples", "4", "--seed", "2")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "check-all", "--list")
    assert "inversion" in out


def test_check_all_only(capsys):
    code, out, err = run(capsys, "check-all", "--only", "gamma-symmetry", "--samples", "3")
    assert code == 0 and len(json.loads(out)) == 1 and "1/1" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gammagerbe", "bernoulli", "--r", "0", "--n", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0

import json

import pytest

from horotile.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("suite", ["tri", "pent", "det", "identities", "index6", "free", "kernel",
                                   "cf", "conjugacy", "dyadic"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0
    reports = json.loads(out)
    for r in reports if isinstance(reports, list) else [reports]:
        assert set(r) >= {"check", "parameters", "expected", "actual", "pass"}


def test_build_is_byte_stable(capsys):
    args = ("build", "--precision", "8", "--qmax", "6", "--base", "1,2")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and json.loads(a)["model"] == "triangular"


def test_conjugate_round_trip(tmp_path, capsys):
    src, fwd, back = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    assert main(["build", "--precision", "8", "--qmax", "5", "--out", str(src)]) == 0
    assert main(["conjugate", "--in", str(src), "--e", "3", "--out", str(fwd)]) == 0
    assert main(["conjugate", "--in", str(fwd), "--e", "-3", "--out", str(back)]) == 0
    assert back.read_text() == src.read_text()
    assert fwd.read_text() != src.read_text()


def test_pentagonal_build(capsys):
    code, out, _ = run(capsys, "build", "--model", "pentagonal", "--precision", "8", "--word-len", "4",
                       "--k", "1", "--base", "0,1,2,3")
    assert code == 0 and json.loads(out)["k"] == 1


@pytest.mark.parametrize("argv", [
    ("build", "--base", "1,2,3"),
    ("build", "--window", "1,0"),
    ("conjugate", "--in", "/nonexistent/file.json", "--e", "1"),
    ("density", "--oracle", "packing"),
    ("density", "--oracle", "full", "--radii", "2,1"),
    ("render", "--figure", "hexagonal", "--model", "disk"),
])
def test_bad_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_rejects_bad_precision(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["build", "--precision", "0"])
    assert ei.value.code == 2


def test_density_outputs(capsys):
    code, out, _ = run(capsys, "density", "--oracle", "full", "--radii", "0.5,1", "--samples", "1000")
    assert code == 0 and out.splitlines()[0] == "radius,estimate,stderr,samples,seed"
    code, out, _ = run(capsys, "density", "--oracle", "gap", "--samples", "20000", "--format", "json")
    assert code == 0 and abs(json.loads(out)[0]["estimate"] - 0.1416) < 0.03


def test_density_from_packing_file(tmp_path, capsys):
    f = tmp_path / "p.json"
    assert main(["build", "--precision", "8", "--qmax", "12", "--out", str(f)]) == 0
    code, out, _ = run(capsys, "density", "--oracle", "packing", "--packing", str(f),
                       "--radii", "0.2", "--samples", "5000", "--format", "json")
    assert code == 0 and 0 < json.loads(out)[0]["estimate"] < 1


def test_render_svg(capsys):
    code, out, _ = run(capsys, "render", "--figure", "ford", "--qmax", "5")
    assert code == 0 and out.startswith("<svg")

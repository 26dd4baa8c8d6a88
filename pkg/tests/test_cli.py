import pytest

from conftest import P

from canext.cli import EXIT_HYPOTHESIS, EXIT_OK, EXIT_PARSE, EXIT_USAGE, parse_curve_file, run
from canext.curves import genus
from canext.errors import CurveFileError


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def body(out: str) -> str:
    """Report lines without the timing row (timing is run-dependent)."""
    return "\n".join(l for l in out.splitlines() if not l.startswith("elapsed-s"))


def test_corpus_listing(capsys):
    code, out, _ = invoke(capsys, "corpus")
    assert code == EXIT_OK
    for name in [
        "hyperell-5-3", "hyperell-6-4", "trigonal-6-3", "tetragonal-6-node",
        "smooth-plane-7", "nodal-8-1", "nodal-8-2",
    ]:
        assert f"curve {name} " in out
    assert int(out.splitlines()[1].split()[1]) >= 7


def test_genus_subcommand(capsys):
    code, out, _ = invoke(capsys, "genus", "--curve", "corpus:hyperell-5-3", "--prime", str(P))
    assert code == EXIT_OK
    assert "genus 3" in out
    assert f"prime {P}" in out


def test_corank_subcommand_reproducible(capsys):
    args = ("corank", "--curve", "corpus:hyperell-5-3", "--prime", str(P), "--seed", "2")
    code1, out1, _ = invoke(capsys, *args)
    code2, out2, _ = invoke(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert "corank 7" in out1
    assert body(out1) == body(out2)


def test_gauss_subcommand(capsys):
    code, out, _ = invoke(capsys, "gauss", "--k", "1", "--curve", "corpus:hyperell-5-3",
                          "--prime", str(P))
    assert code == EXIT_OK and "corank 7" in out


def test_normal_gate_exit_code(capsys):
    code, _, err = invoke(capsys, "normal", "--k", "1", "--curve", "corpus:hyperell-5-3",
                          "--prime", str(P))
    assert code == EXIT_HYPOTHESIS
    assert "HYPERELLIPTIC_INPUT" in err


def test_extend_gate_exit_code(capsys):
    code, _, err = invoke(capsys, "extend", "--curve", "corpus:trigonal-6-3", "--prime", str(P))
    assert code == EXIT_HYPOTHESIS
    assert "CLIFF_GATE" in err


def test_normal_with_dump(capsys):
    code, out, _ = invoke(capsys, "normal", "--k", "2", "--curve", "corpus:ci-6-5",
                          "--prime", str(P), "--dump-presentation")
    assert code == EXIT_OK
    assert "dim 3" in out
    assert "canonical-presentation" in out


def test_usage_errors(capsys):
    assert invoke(capsys, "no-such-command")[0] == EXIT_USAGE
    assert invoke(capsys, "corank")[0] == EXIT_USAGE  # missing --curve


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.curve"
    bad.write_text("degree x\nterm 1 2\n")
    code, _, err = invoke(capsys, "genus", "--curve", str(bad))
    assert code == EXIT_PARSE
    assert "parse-error" in err


def test_curve_file_roundtrip(tmp_path, capsys):
    text = f"""# quintic with an ordinary triple point
name file-demo
prime {P}
degree 5
gonality hyperelliptic
term 5 0 0 1
term 0 5 0 1
term 2 1 2 1
term 3 0 2 4
term 0 3 2 1
"""
    c = parse_curve_file(text)
    assert c.name == "file-demo" and c.degree == 5 and c.p == P
    path = tmp_path / "demo.curve"
    path.write_text(text)
    code, out, _ = invoke(capsys, "genus", "--curve", str(path))
    assert code == EXIT_OK
    assert f"genus {genus(c)}" in out


def test_curve_file_rejects_bad_gonality():
    with pytest.raises(CurveFileError):
        parse_curve_file("degree 4\nterm 4 0 0 1\ngonality cuspidal\n")
    with pytest.raises(CurveFileError):
        parse_curve_file("term 1 0 0 1\n")


def test_plane_extend_subcommand(capsys):
    code, out, _ = invoke(capsys, "plane-extend", "--curve", "corpus:ci-6-5",
                          "--prime", str(P), "--dump-samples")
    assert code == EXIT_OK
    assert "system-dim 6" in out
    assert "contraction-ok 1" in out
    assert "surface-sample" in out

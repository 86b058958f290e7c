import pytest

from cykit.cli import main

QUINTIC = "T^4-5*x*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)"


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def machine(out):
    rows = {}
    for line in out.splitlines():
        key, _, val = line.partition(" ")
        rows[key] = val
    return rows


def test_parse_noncommutative(capsys):
    code, out, _ = run(capsys, "parse", "T*x")
    assert code == 0 and out.splitlines()[0] == "x*(T + 1)"


def test_render_machine_record(capsys):
    code, out, _ = run(capsys, "render", "tilde-3", "--style", "machine")
    lines = out.splitlines()
    assert code == 0 and lines[:2] == ["CYOP 1", "order 4 degree 2"] and len(lines) == 5


@pytest.mark.parametrize("where", ["before", "after"])
def test_format_flag_position(capsys, where):
    args = ["yukawa", QUINTIC, "-M", "3"]
    argv = ["--format", "machine", *args] if where == "before" else [*args, "--format", "machine"]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and machine(out)["K"] == "1 575 975375 1712915000"


def test_order_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CYKIT_ORDER", "2")
    _, out, _ = run(capsys, "--format", "machine", "mirror", QUINTIC)
    assert machine(out)["q"] == "0 1 770"


def test_operator_from_file(capsys, tmp_path):
    f = tmp_path / "op.txt"
    f.write_text("T^2 - x*(T+1)^2\n")
    code, out, _ = run(capsys, "--format", "machine", "parse", str(f))
    assert code == 0 and "order 2 degree 1" in out


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "mum", "T^4+x*T")[0] == 0
    assert run(capsys, "check", "cy2", "T^4+x*T")[0] == 1
    assert run(capsys, "check", "cy2", "sporadic-26")[0] == 0


def test_usage_and_parse_errors(capsys):
    code, _, err = run(capsys, "parse", "T^4+")
    assert code == 2 and "position 4" in err
    assert run(capsys, "catalog", "show", "nope")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_precondition_exit_code(capsys):
    assert run(capsys, "yukawa", "quintic-130")[0] == 3


def test_enumerate(capsys):
    code, out, _ = run(capsys, "--format", "machine", "enumerate", "--n", "4",
                       "(n+2)^2*N^2-(11*n^2+33*n+25)*N-(n+1)^2")
    assert code == 0 and machine(out)["A"] == "1 3 19 147 1251"


def test_de2diff_diff2de_round_trip(capsys):
    _, out, _ = run(capsys, "de2diff", "T^2-x*(T+1)^2")
    diff = out.strip()
    _, out, _ = run(capsys, "--format", "machine", "diff2de", diff)
    rows = machine(out)
    assert rows["operator.P0"] == "0 0 1" and rows["operator.P1"] == "-1 -2 -1"


def test_superseek(capsys):
    code, out, _ = run(capsys, "--format", "machine", "superseek", "77 -209 142")
    rows = machine(out)
    assert code == 0 and rows["D"] == "-55" and "232" in rows["ids"].split()


def test_pullback_of_130(capsys):
    _, out, _ = run(capsys, "--format", "machine", "pullback", "quintic-130")
    rows = machine(out)
    assert rows["operator.order"] == "4" and rows["operator.degree"] == "6"


def test_equiv_reports_sign_flip(capsys):
    code, out, _ = run(capsys, "equiv", "hadamard-e-e", "tilde-3")
    assert code == 1 and "q -> -q: pass" in out


def test_transform(capsys):
    _, out, _ = run(capsys, "--format", "machine", "transform", "hadamard-e-e", "tilde-3", "-M", "3")
    rows = machine(out)
    assert rows["f"] == "1 480 383488 330493952"
    assert rows["g"] == "0 1 128 81920"


def test_factor_232(capsys):
    code, out, _ = run(capsys, "factor", "diffop-232", "--kmax", "4", "--dmax", "4")
    assert code == 0 and "right division exact: pass" in out


def test_hadamard_closed_form(capsys):
    _, out, _ = run(capsys, "--format", "machine", "hadamard", "--left", "D", "--right", "j")
    rows = machine(out)
    assert rows["operator.degree"] == "2"
    assert rows["operator.P1"] == "-22320 -212544 -585792 -746496 -373248"


def test_catalog_verify_all(capsys):
    code, out, _ = run(capsys, "catalog", "verify-all")
    assert code == 0 and out.rstrip().endswith("failures: 0")
    assert "superseeker-row-13 erratum" in out

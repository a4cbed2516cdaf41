import pytest

from bnskein.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["eval-s3", "(1,0)"], "2 * empty"),
        (["eval-s3", "(1,0);(0,1)"], "2 * empty"),
        (["eval-s3", "(0,0)"], "0"),
        (["normalize-s1s2", "k=3", "dots=0,1"], "1 * z^1"),
        (["normalize-s1s2", "k=1", "dots=0"], "1 * e0"),
        (["normalize-t3", "dir=2,0,-1", "k=2"], "1 * T[2,0,-1]^2"),
        (["mbn-solve", "x=1", "y=1/4", "z=1/2"], "solution in family modified"),
        (["mbn-solve", "x=1", "y=1", "z=1"], "not a solution"),
        (["mbn-eval", "b=2", "surfaces=0:0:10;-2:1:11"], "1 * x^2 * [01]"),
        (["mbn-eval", "--allow-half", "b=1", "surfaces=1:0:1:n"], "1 * x^-1/2 * [1]"),
        (["sbn-normalize", "g=1", "stacks=10:2:1", "regions=0,0"], "-TypeA[e=10](n=2)"),
        (["sbn-dim", "g=1", "n=2"], "16"),
        (["sbn-dim", "--exclude-zero-class", "g=1", "n=2"], "9"),
        (["horiz-normalize", "f=f", "k=3", "dots=0,2"], "-1 * f^1"),
    ],
)
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_machine_format(capsys):
    code, out, _ = run(capsys, "--format", "machine", "sbn-normalize", "g=1", "stacks=10:2:1", "regions=0,0")
    assert (code, out) == (0, "-1\tTypeA[e=10](n=2)")
    code, out, _ = run(capsys, "--format", "machine", "mbn-eval", "b=2", "surfaces=0:0:10;-2:1:11")
    assert out == "1\t2\t01"


def test_seifert_report(capsys):
    code, out, _ = run(capsys, "seifert-report", "g=1", "fibers=(2,1);(3,1)", "horiz=f:1")
    assert code == 0
    assert "singular=2" in out and "horizontal: f degree=1 genus=0" in out


def test_mbn_solve_lists_families(capsys):
    code, out, _ = run(capsys, "mbn-solve")
    assert code == 0 and len(out.splitlines()) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["sbn-dim", "g=1"],
        ["sbn-dim", "g=1", "n=x"],
        ["sbn-dim", "g=1", "n=2", "q=3"],
        ["eval-s3", "(1,0"],
        ["mbn-solve", "x=1"],
        ["mbn-eval", "b=1", "surfaces=0:0"],
        ["selftest", "--only", "99"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_bad_coefficient_exits_2(capsys):
    code, _, err = run(capsys, "mbn-solve", "x=0.5", "y=0", "z=1")
    assert code == 2 and "parse error" in err


def test_domain_errors_exit_1(capsys):
    assert run(capsys, "sbn-dim", "g=1", "n=0")[0] == 1
    code, _, err = run(capsys, "mbn-eval", "b=1", "surfaces=1:0:1:n")
    assert code == 1 and "--allow-half" in err
    assert run(capsys, "normalize-t3", "dir=2,4,0", "k=1")[0] == 1


def test_print_state_round_trip(capsys, tmp_path):
    p = tmp_path / "state.txt"
    p.write_text("1/2 * [essential-sphere#0:0:1]\n-1 * []\n")
    code, first, _ = run(capsys, "print-state", str(p))
    assert code == 0
    p.write_text(first + "\n")
    assert run(capsys, "print-state", str(p))[1] == first
    code, machine, _ = run(capsys, "--format", "machine", "print-state", str(p))
    assert all("\t" in line for line in machine.splitlines())


def test_print_state_errors(capsys, tmp_path):
    assert run(capsys, "print-state", str(tmp_path / "missing.txt"))[0] == 2
    p = tmp_path / "bad.txt"
    p.write_text("1 * [a:0]\n")
    code, _, err = run(capsys, "print-state", str(p))
    assert code == 2 and "line 1" in err


def test_output_is_deterministic(capsys):
    argv = ["seifert-report", "g=2", "fibers=(3,1);(2,1)", "horiz=b:2,a:1:1"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "4,5")
    assert code == 0
    assert out.splitlines()[-1] == "2/2 criteria pass"

import subprocess
import sys

import pytest
from helpers import parse_report, rand_quat_mat, report_solution_set, rng_for, write_matrix

from quatcon.canonical import consimilarity_transform
from quatcon.cli import main, run
from quatcon.equations import EquationKind, verify_solution
from quatcon.matrix import Mat, format_matrix, parse_matrix, read_matrix
from quatcon.scalar import I, J, K, Quat, Sigma


@pytest.fixture
def example(tmp_path):
    (tmp_path / "A.mat").write_text("2 2\n0 0\n0 1i\n")
    (tmp_path / "B.mat").write_text("2 2\ni 1\n0 i\n")
    (tmp_path / "C.mat").write_text("2 2\n-k j\n0 0\n")
    return tmp_path


def paths(d, *names):
    return [str(d / n) for n in names]


def test_parse_matrix_files(tmp_path):
    p = tmp_path / "j.mat"
    p.write_text("1 1\nj")
    assert read_matrix(p) == Mat.from_rows([[J]])
    p.write_text("2 2\n0 0\n0 1i")
    assert read_matrix(p) == Mat.diag([Quat(0), I])
    assert read_matrix(p).kind() == "complex"
    p.write_text("1 1\n1+q")
    report, code, err = run(["canon", str(p)])
    assert code == 2 and "line 2" in err and "col 3" in err


def test_solve_example(example):
    report, code, _ = run(["solve", "--kind", "sylvester", "--sigma", "1",
                           *paths(example, "A.mat", "B.mat", "C.mat")])
    assert code == 0
    header, sections = parse_report(report)
    assert header[0] == "AFFINE(dim=2)"
    a, b, c = (read_matrix(p) for p in paths(example, "A.mat", "B.mat", "C.mat"))
    assert verify_solution(a, b, c, sections["PARTICULAR"], Sigma.ONE, EquationKind.SYLVESTER)
    for name in ("BASIS 1", "BASIS 2"):
        y = sections[name]
        assert all(not y[r, s] for r in range(2) for s in range(2) if (r, s) != (1, 1))


def test_solve_classify(example):
    report, code, _ = run(["solve", "--classify", "--sigma", "i",
                           *paths(example, "A.mat", "B.mat", "C.mat")])
    assert code == 0 and "M_SIGMA {i}" in report.splitlines()
    assert report.startswith("AFFINE(dim=4)\n")


def test_canon_example(tmp_path):
    p = write_matrix(tmp_path / "J.mat", Mat.from_rows([[I, 1], [0, I]]))
    report, code, _ = run(["canon", "--sigma", "i", p])
    assert code == 0
    header, sections = parse_report(report)
    assert header[0] == "CANONICAL"
    assert header[header.index("SPEC") + 1] == "i 2"
    a = read_matrix(p)
    assert consimilarity_transform(a, sections["CERTIFICATE"], Sigma.I) == sections["FORM"]
    assert sections["FORM"] == Mat.from_rows([[I, 1], [0, I]])


def test_check_consimilar_example(tmp_path):
    p = write_matrix(tmp_path / "P.mat", Mat.from_rows([[1]]))
    q = write_matrix(tmp_path / "Q.mat", Mat.from_rows([[-1]]))
    report, code, _ = run(["check-consimilar", "--sigma", "i", p, q])
    assert code == 0 and report.splitlines()[0] == "CONSIMILAR"
    report, code, _ = run(["check-similar", p, q])
    assert code == 0 and report.splitlines()[0] == "NOT SIMILAR"


def test_frame_reported_for_unit_sigma(example):
    report, code, _ = run(["solve", "--sigma", "j", *paths(example, "A.mat", "B.mat", "C.mat")])
    assert code == 0
    assert "FRAME i1=j j1=k k1=i" in report.splitlines()
    report, code, _ = run(["reduce-automorphism", "--sigma", "3/5i+4/5j"])
    assert code == 0 and report.splitlines()[:2] == ["AUTOMORPHISM", "SIGMA i"]


def test_verify_verb(example):
    x = write_matrix(example / "X.mat", Mat.from_rows([[-J, 0], [0, 0]]))
    base = paths(example, "A.mat", "B.mat", "C.mat")
    assert run(["verify", *base, x])[:2] == ("VERIFIED\nSIGMA 1\n", 0)
    zero = write_matrix(example / "Z.mat", Mat.zeros(2, 2))
    assert run(["verify", *base, zero])[1] == 1


def test_determinism(example):
    argv = ["solve", "--sigma", "i", "--method", "general", *paths(example, "A.mat", "B.mat", "C.mat")]
    first = run(argv)
    assert all(run(argv) == first for _ in range(3))


def test_report_matrices_round_trip(example):
    for argv in (["solve", "--sigma", "i", *paths(example, "A.mat", "B.mat", "C.mat")],
                 ["canon", "--sigma", "1", str(example / "B.mat")]):
        report, _, _ = run(argv)
        _, sections = parse_report(report)
        assert sections
        for m in sections.values():
            assert parse_matrix(format_matrix(m)) == m


@pytest.mark.parametrize("method", ["structured", "canonical", "general"])
def test_methods_agree(example, method):
    report, code, _ = run(["solve", "--method", method, "--sigma", "i",
                           *paths(example, "A.mat", "B.mat", "C.mat")])
    assert code == 0
    sols = report_solution_set(report)
    assert sols.dim == 4


def test_exit_codes(tmp_path):
    good = write_matrix(tmp_path / "g.mat", Mat.from_rows([[1]]))
    bad = tmp_path / "bad.mat"
    bad.write_text("1 1\n1//2\n")
    wide = write_matrix(tmp_path / "w.mat", Mat.zeros(1, 2))
    irrational = write_matrix(tmp_path / "r.mat", Mat.from_rows([[0, 2], [1, 0]]))
    zero = write_matrix(tmp_path / "z.mat", Mat.from_rows([[0]]))
    assert run(["canon", str(bad)])[1] == 2
    assert run(["canon", str(tmp_path / "missing.mat")])[1] == 2
    assert run(["check-consimilar", good, wide])[1] == 2
    assert run(["solve", good, good, wide])[1] == 2
    assert run(["canon", "--sigma", "1+i", good])[1] == 2
    assert run(["canon", "--sigma", "i+j", good])[1] == 2
    assert run(["canon", irrational])[1] == 3
    # A = B = [0], C = [1]: 0 = 1 has no solution
    assert run(["solve", zero, zero, good])[1] == 0
    assert run(["solve", "--expect-solvable", zero, zero, good])[1] == 4


def test_main_writes_streams(example, capsys):
    assert main(["canon", str(example / "B.mat")]) == 0
    out = capsys.readouterr()
    assert out.out.startswith("CANONICAL\n") and not out.err
    assert main(["canon", str(example / "nope.mat")]) == 2
    assert "error:" in capsys.readouterr().err


def test_module_entry_point(example):
    proc = subprocess.run([sys.executable, "-m", "quatcon", "solve",
                           *paths(example, "A.mat", "B.mat", "C.mat")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("AFFINE(dim=2)")


@pytest.mark.parametrize("seed", range(4))
def test_solution_feeds_verify(tmp_path, seed):
    rng = rng_for(seed)
    a, b = rand_quat_mat(rng, 2, 2), rand_quat_mat(rng, 1, 1)
    c = a @ Mat.from_rows([[K], [I]]) - Mat.from_rows([[K], [I]]).hat(Sigma.I) @ b
    files = [write_matrix(tmp_path / f"{n}.mat", m) for n, m in zip("ABC", (a, b, c))]
    report, code, _ = run(["solve", "--sigma", "i", *files])
    assert code == 0
    _, sections = parse_report(report)
    x = write_matrix(tmp_path / "X.mat", sections["PARTICULAR"])
    assert run(["verify", "--sigma", "i", *files, x])[1] == 0

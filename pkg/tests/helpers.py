"""Seeded random instance generators shared by the test modules."""

import random
from fractions import Fraction

from quatcon.canonical import JordanSpec, consimilarity_transform
from quatcon.matrix import Mat
from quatcon.scalar import Gauss, Quat

EIGEN_POOL = [Gauss(0), Gauss(1), Gauss(-1), Gauss(0, 1), Gauss(0, -1),
              Gauss(1, 1), Gauss(2), Gauss(Fraction(1, 2)), Gauss(-1, 2)]


def rng_for(seed):
    return random.Random(seed)


def rand_rat(rng, lo=-3, hi=3):
    return Fraction(rng.randint(lo, hi), rng.choice([1, 1, 1, 2]))


def rand_gauss(rng):
    return Gauss(rand_rat(rng), rand_rat(rng))


def rand_quat(rng, lo=-2, hi=2):
    return Quat(*(rng.randint(lo, hi) for _ in range(4)))


def rand_quat_mat(rng, m, n):
    return Mat(m, n, [rand_quat(rng) for _ in range(m * n)], Quat)


def rand_gauss_mat(rng, m, n, lo=-2, hi=2):
    return Mat(m, n, [Gauss(rng.randint(lo, hi), rng.randint(lo, hi))
                      for _ in range(m * n)], Gauss)


def rand_invertible(rng, n, ring=Quat):
    while True:
        m = rand_quat_mat(rng, n, n) if ring is Quat else rand_gauss_mat(rng, n, n, -1, 1)
        if m.rank() == n:
            return m


def rand_sparse_invertible(rng, n):
    """Unit-triangular-ish quaternion matrix: invertible, small entries."""
    while True:
        entries = []
        for r in range(n):
            for c in range(n):
                if r == c:
                    entries.append(Quat(1) if rng.random() < 0.5 else rand_quat(rng, -1, 1))
                elif rng.random() < 0.5:
                    entries.append(rand_quat(rng, -1, 1))
                else:
                    entries.append(Quat(0))
        m = Mat(n, n, entries, Quat)
        if m.rank() == n:
            return m


def rand_spec(rng, n, pool=EIGEN_POOL):
    blocks = []
    left = n
    while left:
        size = rng.randint(1, left)
        blocks.append((rng.choice(pool), size))
        left -= size
    return JordanSpec(tuple(blocks))


def rand_complex_with_spec(rng, spec):
    """A complex matrix similar (over C) to the Jordan matrix of ``spec``."""
    j = spec.matrix(Gauss)
    p = rand_invertible(rng, spec.dim, Gauss)
    return p.inverse() @ j @ p


def conjugate(a, s, sigma):
    return consimilarity_transform(a, s, sigma)


def parse_report(text):
    """Split a CLI report into its header lines and named matrix sections."""
    from quatcon.matrix import parse_matrix

    lines = text.splitlines()
    header, sections = [], {}
    k = 0
    while k < len(lines):
        line = lines[k]
        if line in ("PARTICULAR", "CERTIFICATE", "FORM") or line.startswith("BASIS "):
            rows = int(lines[k + 1].split()[0])
            sections[line] = parse_matrix("\n".join(lines[k + 1:k + 2 + rows]))
            k += 2 + rows
        else:
            header.append(line)
            k += 1
    return header, sections


def report_solution_set(text):
    from quatcon.matrix import SolutionSet, Status

    header, sections = parse_report(text)
    status = header[0]
    if status == "INCONSISTENT":
        return SolutionSet.inconsistent()
    basis = [sections[f"BASIS {t}"] for t in range(1, len(sections))]
    if status == "UNIQUE":
        return SolutionSet.unique(sections["PARTICULAR"])
    return SolutionSet(Status.AFFINE, sections["PARTICULAR"], tuple(basis))


def write_matrix(path, m):
    from quatcon.matrix import format_matrix

    path.write_text(format_matrix(m) + "\n")
    return str(path)

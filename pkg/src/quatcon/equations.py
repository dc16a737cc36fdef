"""The quaternion equations ``A X - X^sigma B = C`` and ``X - A X^sigma B = C``.

Three independent routes are provided:

* :func:`solve_structured` for complex ``A``, ``B``: writing ``X = X1 + X2 j``
  and ``C = C1 + C2 j`` splits the equation into two complex Sylvester (or
  Stein) equations, the second one with ``B`` replaced by ``sigma^2 conj(B)``.
* :func:`solve_via_canonical` reduces ``A`` and ``B`` to their
  sigma-consimilarity canonical forms first and transports the answer back.
* :func:`solve_general` expands everything into real coordinates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .canonical import JordanBlock, JordanSpec, canonical_consimilarity
from .errors import ShapeMismatch
from .matrix import (
    Mat,
    SolutionSet,
    Status,
    column_rank,
    join_complex,
    realify,
    realify_solve,
    solve_linear,
    split_complex,
)
from .scalar import Gauss, Quat, format_scalar


class EquationKind(enum.Enum):
    SYLVESTER = "sylvester"   # A X - X^sigma B = C
    STEIN = "stein"           # X - A X^sigma B = C

    def __str__(self):
        return self.value


INFINITY = "oo"


@dataclass(frozen=True)
class MSigma:
    """Eigenvalue collision set; empty exactly when the solution is unique."""

    values: frozenset

    @property
    def is_empty(self):
        return not self.values

    def __bool__(self):
        return bool(self.values)

    def __str__(self):
        finite = sorted((v for v in self.values if v != INFINITY),
                        key=lambda g: (g.re, g.im), reverse=True)
        items = [format_scalar(v) for v in finite]
        if INFINITY in self.values:
            items.append(INFINITY)
        return "{" + ", ".join(items) + "}"


def _check_shapes(a, b, c):
    if not a.is_square() or not b.is_square():
        raise ShapeMismatch(f"A {a.shape} and B {b.shape} must be square")
    if c.shape != (a.rows, b.rows):
        raise ShapeMismatch(f"C has shape {c.shape}, expected {(a.rows, b.rows)}")


def _as_complex(m, name):
    if m.ring is Gauss:
        return m
    if not m.is_complex():
        raise ShapeMismatch(f"{name} must be a complex matrix")
    return m.to_ring(Gauss)


# -- complex equations -----------------------------------------------------------

def _complex_solution(system, c):
    m, n = c.shape
    # unknown vec(X) stacks columns: X[r, col] sits at index col * m + r
    rhs = [c[r, col] for col in range(n) for r in range(m)]
    particular, null = solve_linear(system, rhs)
    if particular is None:
        return SolutionSet.inconsistent()

    def unvec(v):
        return Mat(m, n, [v[col * m + r] for r in range(m) for col in range(n)], Gauss)

    return SolutionSet.affine(unvec(particular), [unvec(v) for v in null])


def solve_complex_sylvester(a, b, c):
    """``A X - X B = C`` over Q(i) through the Kronecker system ``I (x) A - B^T (x) I``.

    Homogeneous solutions are returned as a complex basis.
    """
    a, b, c = (_as_complex(x, name) for x, name in ((a, "A"), (b, "B"), (c, "C")))
    _check_shapes(a, b, c)
    m, n = c.shape
    size = m * n
    grid = [[Gauss(0)] * size for _ in range(size)]
    for col in range(n):
        for r in range(m):
            row = grid[col * m + r]
            for k in range(m):
                if a[r, k]:
                    row[col * m + k] = row[col * m + k] + a[r, k]
            for k in range(n):
                if b[k, col]:
                    row[k * m + r] = row[k * m + r] - b[k, col]
    system = Mat(size, size, [v for row in grid for v in row], Gauss)
    return _complex_solution(system, c)


def solve_complex_stein(a, b, c):
    """``X - A X B = C`` over Q(i) through the system ``I - B^T (x) A``."""
    a, b, c = (_as_complex(x, name) for x, name in ((a, "A"), (b, "B"), (c, "C")))
    _check_shapes(a, b, c)
    m, n = c.shape
    size = m * n
    grid = [[Gauss(0)] * size for _ in range(size)]
    for col in range(n):
        for r in range(m):
            row = grid[col * m + r]
            row[col * m + r] = Gauss(1)
            for k in range(m):
                if not a[r, k]:
                    continue
                for l in range(n):
                    if b[l, col]:
                        row[l * m + k] = row[l * m + k] - a[r, k] * b[l, col]
    system = Mat(size, size, [v for row in grid for v in row], Gauss)
    return _complex_solution(system, c)


_COMPLEX_SOLVERS = {
    EquationKind.SYLVESTER: solve_complex_sylvester,
    EquationKind.STEIN: solve_complex_stein,
}


def solve_structured(a, b, c, sigma, kind):
    """Solve with complex ``a`` and ``b`` by splitting into two complex equations.

    ``X1`` solves the equation with ``(a, b, C1)`` and ``X2`` the one with
    ``(a, sigma^2 conj(b), C2)``; the real homogeneous basis collects
    ``E, iE`` for each complex basis element of ``X1`` and ``F j, (iF) j``
    for those of ``X2``.
    """
    a, b = _as_complex(a, "A"), _as_complex(b, "B")
    c = c.to_ring(Quat)
    _check_shapes(a, b, c)
    parts = split_complex(c)
    b2 = b.conj() if sigma.square == 1 else -b.conj()
    solve = _COMPLEX_SOLVERS[kind]
    first = solve(a, b, parts.first)
    second = solve(a, b2, parts.second)
    if Status.INCONSISTENT in (first.status, second.status):
        return SolutionSet.inconsistent()
    zero = Mat.zeros(*c.shape, Gauss)
    i = Gauss(0, 1)
    basis = []
    for e in first.basis:
        basis += [join_complex(e, zero), join_complex(e.scale_left(i), zero)]
    for f in second.basis:
        basis += [join_complex(zero, f), join_complex(zero, f.scale_left(i))]
    return SolutionSet.affine(join_complex(first.particular, second.particular), basis)


def _blocks(spec):
    """Blocks of a JordanSpec, or of a plain ``[(eigenvalue, size), ...]`` in the given order."""
    if isinstance(spec, JordanSpec):
        return list(spec.blocks)
    return [JordanBlock(Gauss.coerce(lam), int(k)) for lam, k in spec]


def _eigenvalues(spec):
    out = []
    for b in _blocks(spec):
        if b.eigenvalue not in out:
            out.append(b.eigenvalue)
    return out


def block_matrix(spec):
    """Jordan matrix of ``spec`` with blocks in the order given."""
    return Mat.block_diag([b.matrix(Gauss) for b in _blocks(spec)], Gauss)


def classify_m_sigma(spec_a, spec_b, sigma, kind):
    """``{lam} & {mu, sigma^2 conj mu}``; for Stein ``lam`` becomes ``1/lam`` with ``1/0 = oo``."""
    mus = set()
    for mu in _eigenvalues(spec_b):
        mus.add(mu)
        mus.add(mu.conj() if sigma.square == 1 else -mu.conj())
    if kind is EquationKind.SYLVESTER:
        lams = set(_eigenvalues(spec_a))
    else:
        lams = {lam.inverse() if lam else INFINITY for lam in _eigenvalues(spec_a)}
    return MSigma(frozenset(lams & mus))


@dataclass(frozen=True)
class ToeplitzParam:
    """One block ``Y[alpha, beta]`` carrying free parameters.

    ``role`` is ``"U"`` (complex part) or ``"V"`` (the part multiplying j).
    The block is zero outside the top-right ``min(rows, cols)`` diagonals:
    leading zero columns when ``rows <= cols``, trailing zero rows otherwise.
    With sigma = i the V-blocks alternate sign down each diagonal.
    """

    alpha: int
    beta: int
    role: str
    rows: int
    cols: int
    alternating: bool = False

    @property
    def count(self):
        return min(self.rows, self.cols)

    def pattern(self, t):
        """Real ``rows x cols`` pattern of the ``t``-th parameter (0 = main)."""
        shift = max(0, self.cols - self.rows) + t
        entries = [0] * (self.rows * self.cols)
        for r in range(self.rows):
            if r + shift < self.cols:
                entries[r * self.cols + r + shift] = -1 if self.alternating and r % 2 else 1
        return Mat(self.rows, self.cols, entries, Gauss)


def homogeneous_basis_jordan(spec_a, spec_b, sigma):
    """Real basis of ``{Y : A Y - Y^sigma B = 0}`` for Jordan matrices ``A``, ``B``.

    Returns ``[(ToeplitzParam, [basis matrices]), ...]``; block indices are
    0-based positions in ``spec_a``/``spec_b``.
    """
    blocks_a, blocks_b = _blocks(spec_a), _blocks(spec_b)
    ra, rb = _offsets(blocks_a), _offsets(blocks_b)
    zero = Mat.zeros(sum(b.size for b in blocks_a), sum(b.size for b in blocks_b), Gauss)
    i = Gauss(0, 1)
    out = []
    for alpha, ba in enumerate(blocks_a):
        for beta, bb in enumerate(blocks_b):
            mu = bb.eigenvalue
            roles = []
            if ba.eigenvalue == mu:
                roles.append(("U", False))
            twin = mu.conj() if sigma.square == 1 else -mu.conj()
            if ba.eigenvalue == twin:
                roles.append(("V", sigma.square == -1))
            for role, alternating in roles:
                param = ToeplitzParam(alpha, beta, role, ba.size, bb.size, alternating)
                mats = []
                for t in range(param.count):
                    block = param.pattern(t)
                    for scalar in (Gauss(1), i):
                        full = _embed(zero, block.scale_left(scalar), ra[alpha], rb[beta])
                        mats.append(join_complex(full, zero) if role == "U"
                                    else join_complex(zero, full))
                out.append((param, mats))
    return out


def _offsets(blocks):
    out, start = [], 0
    for b in blocks:
        out.append(start)
        start += b.size
    return out


def _embed(base, block, r0, c0):
    entries = list(base.entries)
    for r in range(block.rows):
        for c in range(block.cols):
            entries[(r0 + r) * base.cols + c0 + c] = block[r, c]
    return Mat(base.rows, base.cols, entries, base.ring)


def jordan_homogeneous_dimension(spec_a, spec_b, sigma):
    """Real dimension ``2 * (sum min(k, l))`` over both collision patterns."""
    return sum(2 * p.count for p, _ in homogeneous_basis_jordan(spec_a, spec_b, sigma))


# -- general route -----------------------------------------------------------------

def equation_lhs(a, b, x, sigma, kind):
    x_hat = x.hat(sigma)
    if kind is EquationKind.SYLVESTER:
        return a @ x - x_hat @ b
    return x - a @ x_hat @ b


def solve_general(a, b, c, sigma, kind):
    """Solve any conformable quaternion instance through its real expansion."""
    a, b, c = a.to_ring(Quat), b.to_ring(Quat), c.to_ring(Quat)
    _check_shapes(a, b, c)
    return realify_solve(lambda x: equation_lhs(a, b, x, sigma, kind), c.shape, c)


def solve_via_canonical(a, b, c, sigma, kind):
    """Reduce ``a`` and ``b`` to canonical complex form, solve, transport back.

    With ``S^(-sigma) A S`` and ``R^(-sigma) B R`` canonical, the Sylvester
    unknown becomes ``S^-1 X R`` and the Stein unknown ``hat(S)^-1 X R``.
    """
    a, b, c = a.to_ring(Quat), b.to_ring(Quat), c.to_ring(Quat)
    _check_shapes(a, b, c)
    ca = canonical_consimilarity(a, sigma)
    cb = canonical_consimilarity(b, sigma)
    s, r = ca.certificate, cb.certificate
    s_hat = s.hat(sigma)
    c_new = s_hat.inverse() @ c @ r
    inner = solve_structured(ca.spec.matrix(Gauss), cb.spec.matrix(Gauss), c_new, sigma, kind)
    if inner.status is Status.INCONSISTENT:
        return inner
    left = s if kind is EquationKind.SYLVESTER else s_hat
    r_inv = r.inverse()

    def back(x):
        return left @ x @ r_inv

    return SolutionSet.affine(back(inner.particular), [back(y) for y in inner.basis])


def verify_solution(a, b, c, x, sigma, kind):
    a, b, c, x = (m.to_ring(Quat) for m in (a, b, c, x))
    _check_shapes(a, b, c)
    if x.shape != c.shape:
        raise ShapeMismatch(f"X has shape {x.shape}, expected {c.shape}")
    return equation_lhs(a, b, x, sigma, kind) == c


def verify_solution_set(a, b, c, sols, sigma, kind):
    """Particular solves the equation and every basis element the homogeneous one."""
    if sols.status is Status.INCONSISTENT:
        return True
    zero = Mat.zeros(*c.shape, Quat)
    return verify_solution(a, b, c, sols.particular, sigma, kind) and all(
        verify_solution(a, b, zero, y, sigma, kind) for y in sols.basis)


def _real_rank(mats):
    return column_rank([realify(m) for m in mats], Fraction) if mats else 0


def same_solution_set(s1, s2):
    """True when two quaternion SolutionSets describe the same affine set."""
    if s1.status is not s2.status:
        return False
    if s1.status is Status.INCONSISTENT:
        return True
    if s1.status is Status.UNIQUE:
        return s1.particular.to_ring(Quat) == s2.particular.to_ring(Quat)
    if s1.dim != s2.dim:
        return False
    b1, b2 = list(s1.basis), list(s2.basis)
    if _real_rank(b1) != s1.dim or _real_rank(b1 + b2) != s1.dim:
        return False
    diff = s1.particular.to_ring(Quat) - s2.particular.to_ring(Quat)
    return _real_rank(b1 + [diff]) == s1.dim


def homogeneous_basis_matrices(spec_a, spec_b, sigma):
    return [m for _, mats in homogeneous_basis_jordan(spec_a, spec_b, sigma) for m in mats]



__all__ = [
    "EquationKind", "INFINITY", "JordanSpec", "MSigma", "SolutionSet", "Status",
    "ToeplitzParam", "classify_m_sigma", "equation_lhs", "homogeneous_basis_jordan",
    "homogeneous_basis_matrices", "jordan_homogeneous_dimension", "block_matrix",
    "same_solution_set", "solve_complex_stein", "solve_complex_sylvester",
    "solve_general", "solve_structured", "solve_via_canonical", "verify_solution",
    "verify_solution_set",
]

"""Dense exact matrices over Fraction, Gauss and Quat.

Matrices are immutable.  Elimination uses left row operations only, so it is
valid over the quaternions; null spaces are right vector spaces (a null
vector times any scalar on the right is again a null vector).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

from .errors import NotSquare, ParseError, ShapeMismatch
from .scalar import Gauss, Quat, Sigma, format_scalar, inverse, parse_quat

RINGS = (Fraction, Gauss, Quat)


def _ring_of(values):
    ring = Fraction
    for v in values:
        if isinstance(v, Quat):
            return Quat
        if isinstance(v, Gauss):
            ring = Gauss
    return ring


def coerce(v, ring):
    if ring is Fraction:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, (Gauss, Quat)) and v.is_real():
            return v.re if isinstance(v, Gauss) else v.a
        raise TypeError(f"{v!r} is not rational")
    return ring.coerce(v)


class Mat:
    """A ``rows x cols`` matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows, cols, entries, ring=None):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        if ring is None:
            ring = _ring_of(entries)
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self.entries = tuple(coerce(v, ring) for v in entries)

    @classmethod
    def _raw(cls, rows, cols, entries, ring):
        self = object.__new__(cls)
        self.rows, self.cols, self.entries, self.ring = rows, cols, tuple(entries), ring
        return self

    @classmethod
    def from_rows(cls, rows, ring=None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), ncols, [v for r in rows for v in r], ring)

    @classmethod
    def from_columns(cls, columns, nrows=None, ring=None):
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        if any(len(c) != nrows for c in columns):
            raise ShapeMismatch("columns of unequal length")
        ncols = len(columns)
        entries = [columns[c][r] for r in range(nrows) for c in range(ncols)]
        if ring is None:
            ring = _ring_of(entries)
        return cls(nrows, ncols, entries, ring)

    @classmethod
    def zeros(cls, rows, cols, ring=Quat):
        z = coerce(0, ring)
        return cls._raw(rows, cols, (z,) * (rows * cols), ring)

    @classmethod
    def identity(cls, n, ring=Quat):
        z, o = coerce(0, ring), coerce(1, ring)
        return cls._raw(n, n, (o if r == c else z for r in range(n) for c in range(n)), ring)

    @classmethod
    def diag(cls, values, ring=None):
        values = list(values)
        ring = ring or _ring_of(values)
        n = len(values)
        z = coerce(0, ring)
        return cls(n, n, [values[r] if r == c else z for r in range(n) for c in range(n)], ring)

    @classmethod
    def block_diag(cls, blocks, ring=None):
        blocks = list(blocks)
        if ring is None:
            ring = _ring_of(v for b in blocks for v in b.entries)
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        z = coerce(0, ring)
        grid = [[z] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for r in range(b.rows):
                for c in range(b.cols):
                    grid[r0 + r][c0 + c] = coerce(b[r, c], ring)
            r0 += b.rows
            c0 += b.cols
        return cls._raw(n, m, (v for row in grid for v in row), ring)

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r):
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c):
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def row_lists(self):
        return [list(self.row(r)) for r in range(self.rows)]

    def columns(self):
        return [self.column(c) for c in range(self.cols)]

    def submatrix(self, r0, r1, c0, c1):
        return Mat._raw(r1 - r0, c1 - c0,
                        (self[r, c] for r in range(r0, r1) for c in range(c0, c1)),
                        self.ring)

    # -- structure ---------------------------------------------------------

    def is_square(self):
        return self.rows == self.cols

    def is_real(self):
        return all(v.is_real() if not isinstance(v, Fraction) else True
                   for v in self.entries)

    def is_complex(self):
        if self.ring is Quat:
            return all(v.is_complex() for v in self.entries)
        return True

    def kind(self):
        """``'real'``, ``'complex'`` or ``'quaternion'`` judged by the entries."""
        if self.is_real():
            return "real"
        if self.is_complex():
            return "complex"
        return "quaternion"

    def to_ring(self, ring):
        if ring is self.ring:
            return self
        return Mat(self.rows, self.cols, self.entries, ring)

    def map(self, f, ring=None):
        return Mat(self.rows, self.cols, [f(v) for v in self.entries], ring)

    def transpose(self):
        return Mat._raw(self.cols, self.rows,
                        (self[r, c] for c in range(self.cols) for r in range(self.rows)),
                        self.ring)

    T = property(transpose)

    def conj(self):
        """Entrywise complex conjugation (Gauss matrices)."""
        if self.ring is Fraction:
            return self
        if self.ring is Quat:
            if not self.is_complex():
                raise TypeError("entrywise conj is defined for complex matrices only")
            return Mat._raw(self.rows, self.cols,
                            (Quat.coerce(Gauss.coerce(v).conj()) for v in self.entries),
                            Quat)
        return Mat._raw(self.rows, self.cols, (v.conj() for v in self.entries), Gauss)

    def hat(self, sigma):
        """Apply the sigma-automorphism entrywise."""
        if sigma is Sigma.ONE or self.ring is not Quat:
            return self
        return Mat._raw(self.rows, self.cols, (v.hat() for v in self.entries), Quat)

    def trace(self):
        if not self.is_square():
            raise NotSquare("trace of a non-square matrix")
        return sum((self[r, r] for r in range(self.rows)), coerce(0, self.ring))

    # -- arithmetic --------------------------------------------------------

    def _common(self, other):
        if self.ring is other.ring:
            return self, other
        ring = max(self.ring, other.ring, key=RINGS.index)
        return self.to_ring(ring), other.to_ring(ring)

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        a, b = self._common(other)
        return Mat._raw(a.rows, a.cols, (x + y for x, y in zip(a.entries, b.entries)), a.ring)

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        a, b = self._common(other)
        return Mat._raw(a.rows, a.cols, (x - y for x, y in zip(a.entries, b.entries)), a.ring)

    def __neg__(self):
        return Mat._raw(self.rows, self.cols, (-x for x in self.entries), self.ring)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def scale_left(self, q):
        """``q * M`` with ``q`` acting on the left of every entry."""
        ring = max(self.ring, _ring_of([q]), key=RINGS.index)
        q = coerce(q, ring)
        return Mat._raw(self.rows, self.cols,
                        (q * coerce(v, ring) for v in self.entries), ring)

    def scale_right(self, q):
        """``M * q`` with ``q`` acting on the right of every entry."""
        ring = max(self.ring, _ring_of([q]), key=RINGS.index)
        q = coerce(q, ring)
        return Mat._raw(self.rows, self.cols,
                        (coerce(v, ring) * q for v in self.entries), ring)

    def __pow__(self, e):
        if not self.is_square():
            raise NotSquare("power of a non-square matrix")
        out = Mat.identity(self.rows, self.ring)
        for _ in range(e):
            out = out @ self
        return out

    def rank(self):
        return row_reduce(self, with_transform=False).rank

    def inverse(self):
        if not self.is_square():
            raise NotSquare("inverse of a non-square matrix")
        red = row_reduce(self)
        if red.rank < self.rows:
            raise ZeroDivisionError("matrix is singular")
        return red.transform

    def is_zero(self):
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for x, y in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.ring.__name__}, {format_matrix(self)!r})"


def mat_mul(a, b):
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    a, b = a._common(b)
    zero = coerce(0, a.ring)
    bcols = b.columns()
    out = []
    for r in range(a.rows):
        row = a.row(r)
        for col in bcols:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
    return Mat._raw(a.rows, b.cols, out, a.ring)


# -- elimination -------------------------------------------------------------

class RowReduction(NamedTuple):
    rank: int
    rref: Mat
    nullspace: list
    transform: Mat | None
    pivots: tuple


def _eliminate(rows, ncols, trans):
    """In-place Gauss-Jordan on a list of row lists; returns pivot columns."""
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            if trans is not None:
                trans[r], trans[p] = trans[p], trans[r]
        inv = inverse(rows[r][c])
        prow = [inv * x if x else x for x in rows[r]]
        rows[r] = prow
        if trans is not None:
            trans[r] = [inv * x if x else x for x in trans[r]]
            trow = trans[r]
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            row = rows[i]
            for k in nz:
                row[k] = row[k] - f * prow[k]
            if trans is not None:
                rows_t = trans[i]
                for k, y in enumerate(trow):
                    if y:
                        rows_t[k] = rows_t[k] - f * y
        pivots.append(c)
        r += 1
    return pivots


def row_reduce(m, with_transform=True):
    """Reduced row echelon form by left row operations.

    Returns ``(rank, rref, nullspace, transform, pivots)`` with
    ``transform @ m == rref``.  The null-space basis has one vector per free
    column (that coordinate 1, other free coordinates 0) and spans the right
    solution space of ``m x = 0``.
    """
    rows = m.row_lists()
    trans = Mat.identity(m.rows, m.ring).row_lists() if with_transform else None
    pivots = _eliminate(rows, m.cols, trans)
    rref = Mat._raw(m.rows, m.cols, (v for row in rows for v in row), m.ring)
    null = _nullspace_from_rref(rows, m.cols, pivots, m.ring)
    transform = None
    if with_transform:
        transform = Mat._raw(m.rows, m.rows, (v for row in trans for v in row), m.ring)
    return RowReduction(len(pivots), rref, null, transform, tuple(pivots))


def _nullspace_from_rref(rows, ncols, pivots, ring):
    zero, one = coerce(0, ring), coerce(1, ring)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [zero] * ncols
        x[f] = one
        for k, pc in enumerate(pivots):
            x[pc] = -rows[k][f]
        basis.append(tuple(x))
    return basis


def solve_linear(m, rhs):
    """Solve ``m x = rhs`` (``rhs`` a sequence).

    Returns ``(particular, nullspace)``; ``particular`` is None when the
    system is inconsistent.  The particular solution sets every free
    coordinate to zero.
    """
    if len(rhs) != m.rows:
        raise ShapeMismatch("right-hand side length does not match the row count")
    ring = m.ring
    rows = [list(m.row(r)) + [coerce(rhs[r], ring)] for r in range(m.rows)]
    pivots = _eliminate(rows, m.cols + 1, None)
    if pivots and pivots[-1] == m.cols:
        return None, _nullspace_from_rref(rows, m.cols, pivots[:-1], ring)
    x = [coerce(0, ring)] * m.cols
    for k, pc in enumerate(pivots):
        x[pc] = rows[k][m.cols]
    return tuple(x), _nullspace_from_rref(rows, m.cols, pivots, ring)


def column_rank(vectors, ring=None):
    """Rank of the right span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return Mat.from_columns(vectors, ring=ring).rank()


# -- complex structure of quaternion matrices --------------------------------

def complex_adjoint(a):
    """``U + V j  ->  [[U, V], [-conj V, conj U]]``."""
    a = a.to_ring(Quat)
    m, n = a.shape
    grid = [[None] * (2 * n) for _ in range(2 * m)]
    for r in range(m):
        for c in range(n):
            u, v = a[r, c].split()
            grid[r][c] = u
            grid[r][n + c] = v
            grid[m + r][c] = -v.conj()
            grid[m + r][n + c] = u.conj()
    return Mat._raw(2 * m, 2 * n, (x for row in grid for x in row), Gauss)


@dataclass(frozen=True)
class ComplexSplit:
    """``first + second * j`` decomposition of a quaternion matrix."""

    first: Mat
    second: Mat

    def join(self):
        return join_complex(self.first, self.second)


def split_complex(c):
    c = c.to_ring(Quat)
    pairs = [v.split() for v in c.entries]
    return ComplexSplit(Mat._raw(c.rows, c.cols, (p[0] for p in pairs), Gauss),
                        Mat._raw(c.rows, c.cols, (p[1] for p in pairs), Gauss))


def join_complex(first, second):
    if first.shape != second.shape:
        raise ShapeMismatch("split parts differ in shape")
    return Mat._raw(first.rows, first.cols,
                    (Quat.from_split(u, v) for u, v in zip(first.entries, second.entries)),
                    Quat)


# -- realification ------------------------------------------------------------

def realify(m):
    """Flatten to rationals: entries row-major, each as (1, i, j, k) coordinates."""
    out = []
    for v in m.to_ring(Quat).entries:
        out.extend(v.coefficients)
    return out


def derealify(vec, rows, cols):
    vec = list(vec)
    if len(vec) != 4 * rows * cols:
        raise ShapeMismatch("vector length is not 4*rows*cols")
    return Mat._raw(rows, cols, (Quat(*vec[4 * t:4 * t + 4]) for t in range(rows * cols)), Quat)


_UNITS = (Quat(1), Quat(0, 1), Quat(0, 0, 1), Quat(0, 0, 0, 1))


def unit_matrix(rows, cols, r, c, q, ring=Quat):
    z = coerce(0, ring)
    entries = [z] * (rows * cols)
    entries[r * cols + c] = coerce(q, ring)
    return Mat._raw(rows, cols, entries, ring)


class Status(enum.Enum):
    UNIQUE = "UNIQUE"
    INCONSISTENT = "INCONSISTENT"
    AFFINE = "AFFINE"


@dataclass(frozen=True)
class SolutionSet:
    """Unique(x) | Inconsistent | Affine(particular, basis).

    For quaternion results ``basis`` is a real basis of the homogeneous
    solutions; the complex solvers return complex bases instead.
    """

    status: Status
    particular: Mat | None = None
    basis: tuple = field(default_factory=tuple)

    @classmethod
    def unique(cls, x):
        return cls(Status.UNIQUE, x, ())

    @classmethod
    def inconsistent(cls):
        return cls(Status.INCONSISTENT, None, ())

    @classmethod
    def affine(cls, particular, basis):
        basis = tuple(basis)
        if not basis:
            return cls.unique(particular)
        return cls(Status.AFFINE, particular, basis)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def solution(self):
        return self.particular

    def __str__(self):
        if self.status is Status.AFFINE:
            return f"AFFINE(dim={self.dim})"
        return self.status.value


def realify_solve(action: Callable[[Mat], Mat], shape, rhs):
    """Solve ``action(X) = rhs`` for an R-linear ``action`` on ``shape`` matrices.

    Expands the unknown into ``4 * rows * cols`` real coordinates (entries
    row-major, each in the order 1, i, j, k) and eliminates over Q.
    """
    rows, cols = shape
    columns = []
    for r in range(rows):
        for c in range(cols):
            for u in _UNITS:
                columns.append(realify(action(unit_matrix(rows, cols, r, c, u))))
    target = realify(rhs)
    system = Mat.from_columns(columns, nrows=len(target), ring=Fraction) if columns \
        else Mat.zeros(len(target), 0, Fraction)
    particular, null = solve_linear(system, target)
    if particular is None:
        return SolutionSet.inconsistent()
    x = derealify(particular, rows, cols)
    return SolutionSet.affine(x, [derealify(v, rows, cols) for v in null])


# -- text format --------------------------------------------------------------

def format_matrix(m):
    """``rows cols`` header, then one whitespace-separated line per row."""
    lines = [f"{m.rows} {m.cols}"]
    for r in range(m.rows):
        lines.append(" ".join(format_scalar(v) for v in m.row(r)))
    return "\n".join(lines)


def parse_matrix(text):
    """Parse the matrix text format into a quaternion matrix."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("missing 'rows cols' header", 1, 1)
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise ParseError("header must be two non-negative integers 'rows cols'", 1, 1)
    rows, cols = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) < rows:
        raise ParseError(f"expected {rows} matrix rows, found {len(body)}", len(lines) + 1, 1)
    if len(body) > rows:
        raise ParseError(f"unexpected extra row (expected {rows})", rows + 2, 1)
    entries = []
    for lineno, line in enumerate(body, start=2):
        tokens = _tokens(line)
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} entries, found {len(tokens)}", lineno, 1)
        for col, tok in tokens:
            entries.append(parse_quat(tok, line=lineno, col0=col))
    return Mat(rows, cols, entries, Quat)


def _tokens(line):
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_matrix(text)
    except ParseError as exc:
        raise ParseError(f"{exc.message} (in {path})", exc.line, exc.col) from None

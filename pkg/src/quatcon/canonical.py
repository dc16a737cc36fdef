"""Jordan forms over Q(i) and sigma-consimilarity canonical forms over H.

Eigenvalues are found exactly: the characteristic polynomial (Faddeev-LeVerrier)
is searched for roots in Q(i) by enumerating Gaussian divisors, and anything
that does not split is rejected.  Block sizes come from rank sequences; the
transforming matrices come from explicit Jordan chains.

For a quaternion matrix ``m`` the chains of a non-real eigenvalue ``lam``
(``Im lam > 0``) are taken in the complex adjoint and mapped back through
``x1 + x2 j <-> (x1, -conj x2)``; for a real eigenvalue ``m - lam`` is
H-linear, so the chains are built directly over H.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import NamedTuple

from sympy import factorint

from .errors import (
    CertificateError,
    EigenvaluesNotGaussianRational,
    NotSquare,
    ShapeMismatch,
)
from .matrix import Mat, column_rank, complex_adjoint, row_reduce
from .scalar import Gauss, Quat, Sigma, format_scalar

# -- polynomials (coefficient lists, lowest degree first) ----------------------


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_eval(p, x):
    acc = Gauss(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(p, q):
    p, q = _trim(p), _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    out = [Gauss(0)] * max(len(p) - len(q) + 1, 0)
    rem = list(p)
    lead_inv = q[-1].inverse()
    while len(rem) >= len(q):
        coef = rem[-1] * lead_inv
        shift = len(rem) - len(q)
        out[shift] = coef
        for t, c in enumerate(q):
            rem[shift + t] = rem[shift + t] - coef * c
        rem = _trim(rem)
        if not rem:
            break
    return out, rem


def poly_monic(p):
    p = _trim(p)
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    return poly_monic(p)


def poly_derivative(p):
    return [c * k for k, c in enumerate(p)][1:]


def poly_mul(p, q):
    out = [Gauss(0)] * (len(p) + len(q) - 1)
    for s, a in enumerate(p):
        for t, b in enumerate(q):
            out[s + t] = out[s + t] + a * b
    return out


def format_poly(p):
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        cs = format_scalar(c)
        if k and c == 1:
            cs = ""
        elif k and c == -1:
            cs = "-"
        elif k and not c.is_real() and c.re != 0:
            cs = f"({cs})"
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        terms.append(cs + mono if (cs or mono) else "1")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def char_poly(m):
    """Monic characteristic polynomial of a square Gauss matrix (Faddeev-LeVerrier)."""
    if not m.is_square():
        raise NotSquare(f"characteristic polynomial of a {m.rows}x{m.cols} matrix")
    m = m.to_ring(Gauss)
    n = m.rows
    coeffs = [Gauss(0)] * (n + 1)
    coeffs[n] = Gauss(1)
    ident = Mat.identity(n, Gauss)
    acc = Mat.zeros(n, n, Gauss)
    for k in range(1, n + 1):
        acc = m @ acc + ident.scale_left(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ acc).trace() / k
    return coeffs


# -- Gaussian integers as (re, im) int pairs -----------------------------------

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdivmod_exact(a, b):
    """``a / b`` if the quotient is a Gaussian integer, else None."""
    n = b[0] * b[0] + b[1] * b[1]
    x = a[0] * b[0] + a[1] * b[1]
    y = a[1] * b[0] - a[0] * b[1]
    if x % n or y % n:
        return None
    return (x // n, y // n)


def _ground_div(a, b):
    # Nearest-integer quotient, the Euclidean step of Z[i].
    n = b[0] * b[0] + b[1] * b[1]
    x = a[0] * b[0] + a[1] * b[1]
    y = a[1] * b[0] - a[0] * b[1]
    return ((2 * x + n) // (2 * n), (2 * y + n) // (2 * n))


def _ggcd(a, b):
    while b != (0, 0):
        q = _ground_div(a, b)
        qb = _gmul(q, b)
        a, b = b, (a[0] - qb[0], a[1] - qb[1])
    return a


def _sqrt_minus_one(p):
    for g in range(2, p):
        t = pow(g, (p - 1) // 4, p)
        if t * t % p == p - 1:
            return t
    raise ValueError(f"no square root of -1 modulo {p}")


def gaussian_factor(z):
    """Factor a nonzero Gaussian integer into ``[(prime, exponent), ...]``.

    The leftover unit is dropped: divisors are enumerated up to all four units
    anyway.
    """
    norm = z[0] * z[0] + z[1] * z[1]
    if norm == 0:
        raise ValueError("cannot factor zero")
    out = []
    for p in sorted(factorint(norm)):
        if p == 2:
            primes = [(1, 1)]
        elif p % 4 == 3:
            primes = [(p, 0)]
        else:
            pi = _ggcd((p, 0), (_sqrt_minus_one(p), 1))
            primes = [pi, (pi[0], -pi[1])]
        for pi in primes:
            e = 0
            while True:
                q = _gdivmod_exact(z, pi)
                if q is None:
                    break
                z, e = q, e + 1
            if e:
                out.append((pi, e))
    return out


def gaussian_divisors(z):
    divisors = [(1, 0)]
    for pi, e in gaussian_factor(z):
        powers = [(1, 0)]
        for _ in range(e):
            powers.append(_gmul(powers[-1], pi))
        divisors = [_gmul(d, pw) for d in divisors for pw in powers]
    units = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    return sorted({_gmul(d, u) for d in divisors for u in units})


def gaussian_rational_roots(p):
    """All roots of the monic polynomial ``p`` in Q(i), with multiplicity.

    Returns ``[(root, multiplicity), ...]`` sorted by the Jordan order; raises
    EigenvaluesNotGaussianRational when a factor without Q(i) roots remains.
    """
    p = _trim(Gauss.coerce(c) for c in p)
    if len(p) < 2 or p[-1] != 1:
        raise ValueError("expected a monic, nonconstant polynomial")
    roots = {}
    zero_mult = 0
    while not p[0]:
        p = p[1:]
        zero_mult += 1
    if zero_mult:
        roots[Gauss(0)] = zero_mult
    if len(p) > 1:
        sqf = poly_divmod(p, poly_gcd(p, poly_derivative(p)))[0]
        deg = len(sqf) - 1
        den = reduce(lcm, (c._d for c in sqf), 1)
        # q(y) = den^deg * sqf(y / den) is monic over Z[i]; its Q(i) roots
        # are Gaussian integers dividing q(0).
        scaled = []
        for k, c in enumerate(sqf):
            f = den ** (deg - k) // c._d
            scaled.append((c._x * f, c._y * f))
        for cand in gaussian_divisors(scaled[0]):
            acc = (0, 0)
            for coef in reversed(scaled):
                acc = _gmul(acc, cand)
                acc = (acc[0] + coef[0], acc[1] + coef[1])
            if acc == (0, 0):
                root = Gauss(Fraction(cand[0], den), Fraction(cand[1], den))
                mult = 0
                while len(p) > 1:
                    quot, rem = poly_divmod(p, [-root, Gauss(1)])
                    if rem:
                        break
                    p, mult = quot, mult + 1
                roots[root] = mult
    if len(p) > 1:
        raise EigenvaluesNotGaussianRational([str(c) for c in p])
    return sorted(roots.items(), key=lambda t: _order_key(t[0]), reverse=True)


# -- Jordan data ---------------------------------------------------------------

def _order_key(lam):
    return (lam.re, lam.im)


class JordanBlock(NamedTuple):
    eigenvalue: Gauss
    size: int

    def matrix(self, ring=Gauss):
        n = self.size
        return Mat(n, n, [self.eigenvalue if r == c else (1 if c == r + 1 else 0)
                          for r in range(n) for c in range(n)], ring)


@dataclass(frozen=True)
class JordanSpec:
    """A multiset of Jordan blocks kept in one canonical order.

    Blocks are sorted by eigenvalue real part, then imaginary part, then size,
    all descending.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = []
        for b in self.blocks:
            lam, size = b
            if size < 1:
                raise ValueError("Jordan blocks have size >= 1")
            blocks.append(JordanBlock(Gauss.coerce(lam), int(size)))
        blocks.sort(key=lambda b: (b.eigenvalue.re, b.eigenvalue.im, b.size), reverse=True)
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def dim(self):
        return sum(b.size for b in self.blocks)

    def eigenvalues(self):
        seen = []
        for b in self.blocks:
            if b.eigenvalue not in seen:
                seen.append(b.eigenvalue)
        return seen

    def matrix(self, ring=Gauss):
        """The Jordan matrix, units above the diagonal."""
        return Mat.block_diag([b.matrix(ring) for b in self.blocks], ring)

    def offsets(self):
        out, start = [], 0
        for b in self.blocks:
            out.append(start)
            start += b.size
        return out

    def lines(self):
        return [f"{format_scalar(b.eigenvalue)} {b.size}" for b in self.blocks]

    def __str__(self):
        return "\n".join(self.lines())


def _weyr_blocks(m, lam, mult):
    n = m.rows
    shifted = m - Mat.identity(n, m.ring).scale_left(lam)
    ranks = [n]
    power = Mat.identity(n, m.ring)
    while n - ranks[-1] < mult:
        power = power @ shifted
        ranks.append(power.rank())
        if ranks[-1] == ranks[-2]:
            raise CertificateError("kernel chain stalled below the algebraic multiplicity")
    ranks.append(ranks[-1])
    # at_least[s] = number of blocks of size >= s
    at_least = [None] + [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    blocks = []
    for s in range(1, len(ranks) - 1):
        blocks += [JordanBlock(lam, s)] * (at_least[s] - at_least[s + 1])
    return blocks


def jordan_spec_complex(m):
    """Jordan structure of a square complex matrix."""
    if not m.is_square():
        raise NotSquare("Jordan form of a non-square matrix")
    m = m.to_ring(Gauss)
    blocks = []
    for lam, mult in gaussian_rational_roots(char_poly(m)) if m.rows else []:
        blocks += _weyr_blocks(m, lam, mult)
    return JordanSpec(tuple(blocks))


def jordan_spec_quaternion(m):
    """Similarity canonical form of a quaternion matrix: blocks with ``Im >= 0``."""
    if not m.is_square():
        raise NotSquare("Jordan form of a non-square matrix")
    adj = jordan_spec_complex(complex_adjoint(m))
    blocks = [b for b in adj.blocks if b.eigenvalue.im > 0]
    real = [b for b in adj.blocks if b.eigenvalue.im == 0]
    # real blocks of the adjoint come in equal pairs; sorted order puts twins together
    if len(real) % 2 or any(real[t] != real[t + 1] for t in range(0, len(real), 2)):
        raise CertificateError("adjoint real Jordan blocks are not paired")
    blocks += real[::2]
    return JordanSpec(tuple(blocks))


def _jordan_chains(shifted, target):
    """Jordan chains of the nilpotent part of ``shifted`` on its generalized kernel.

    ``target`` is the dimension of that kernel.  Each chain is a list of
    column vectors ``[N^(s-1) v, ..., N v, v]``.  Works over Gauss and Quat
    (right spans).
    """
    n = shifted.rows
    ring = shifted.ring
    kernels = [[]]
    power = Mat.identity(n, ring)
    while len(kernels[-1]) < target:
        power = power @ shifted
        kernels.append(row_reduce(power, with_transform=False).nullspace)
        if len(kernels[-1]) == len(kernels[-2]):
            raise CertificateError("kernel chain stalled below the algebraic multiplicity")
    top = len(kernels) - 1

    def apply(v):
        return [sum((shifted[r, c] * v[c] for c in range(n) if v[c]), ring.coerce(0))
                for r in range(n)]

    chains = []   # (top level, [v, Nv, N^2 v, ...])
    for level in range(top, 0, -1):
        existing = [images[top_level - level] for top_level, images in chains]
        base = list(kernels[level - 1]) + existing
        rank = column_rank(base, ring)
        for cand in kernels[level]:
            trial = column_rank(base + [cand], ring)
            if trial > rank:
                base.append(cand)
                rank = trial
                images = [list(cand)]
                for _ in range(level - 1):
                    images.append(apply(images[-1]))
                chains.append((level, images))
    return [list(reversed(images)) for _, images in chains]


def _adjoint_to_quat(w, n):
    # (x1, -conj x2) -> x1 + x2 j
    return [Quat.from_split(w[r], -w[n + r].conj()) for r in range(n)]


def _quaternion_jordan_data(m):
    """``[(eigenvalue, chain), ...]`` with quaternion chain vectors for ``m``."""
    if not m.is_square():
        raise NotSquare("Jordan form of a non-square matrix")
    m = m.to_ring(Quat)
    n = m.rows
    if n == 0:
        return []
    adj = complex_adjoint(m)
    data = []
    for lam, mult in gaussian_rational_roots(char_poly(adj)):
        if lam.im < 0:
            continue
        if lam.im > 0:
            shifted = adj - Mat.identity(2 * n, Gauss).scale_left(lam)
            for chain in _jordan_chains(shifted, mult):
                data.append((lam, [_adjoint_to_quat(w, n) for w in chain]))
        else:
            shifted = m - Mat.identity(n, Quat).scale_left(Quat.coerce(lam))
            for chain in _jordan_chains(shifted, mult // 2):
                data.append((lam, chain))
    return data


def _assemble(data, n):
    """Sort chains into the JordanSpec order and stack them into one matrix."""
    data = sorted(data, key=lambda t: (t[0].re, t[0].im, len(t[1])), reverse=True)
    spec = JordanSpec(tuple(JordanBlock(lam, len(chain)) for lam, chain in data))
    columns = [v for _, chain in data for v in chain]
    s = Mat.from_columns(columns, nrows=n, ring=Quat)
    return spec, s


def jordan_certificate(m):
    """Return ``(spec, s)`` with ``s^-1 m s`` equal to the Jordan matrix of ``spec``."""
    m = m.to_ring(Quat)
    spec, s = _assemble(_quaternion_jordan_data(m), m.rows)
    if s.inverse() @ m @ s != spec.matrix(Quat):
        raise CertificateError("Jordan certificate failed substitution")
    return spec, s


# -- sigma-consimilarity ---------------------------------------------------------

def consimilarity_transform(a, t, sigma):
    """``T^(-sigma) A T = hat(T)^-1 A T``."""
    return t.hat(sigma).inverse() @ a @ t


@dataclass(frozen=True)
class CanonicalResult:
    sigma: Sigma
    spec: JordanSpec
    certificate: Mat

    @property
    def canonical(self):
        return self.spec.matrix(Quat)

    def check(self, a):
        return consimilarity_transform(a, self.certificate, self.sigma) == self.canonical


def _rescale_chain(chain, c):
    # Right-multiply the t-th vector by c^t; turns (-i) J_k(lam) into J_k(-i lam).
    out, scale = [], Gauss(1)
    for v in chain:
        q = Quat.coerce(scale)
        out.append([x * q for x in v])
        scale = scale * c
    return out


def canonical_consimilarity(a, sigma):
    """Canonical form of ``a`` under ``A -> T^(-sigma) A T``.

    For sigma = 1 this is the similarity canonical form (eigenvalues with
    ``Im >= 0``).  For sigma = i the form of ``i a`` is computed and every
    eigenvalue ``lam`` becomes ``-i lam`` (so ``Re >= 0``).
    """
    if not a.is_square():
        raise NotSquare("canonical form of a non-square matrix")
    a = a.to_ring(Quat)
    n = a.rows
    if sigma is Sigma.ONE:
        spec, t = jordan_certificate(a)
    else:
        minus_i = Gauss(0, -1)
        data = [(minus_i * lam, _rescale_chain(chain, Gauss(0, 1)))
                for lam, chain in _quaternion_jordan_data(a.scale_left(Quat(0, 1)))]
        spec, t = _assemble(data, n)
    result = CanonicalResult(sigma, spec, t)
    if not result.check(a):
        raise CertificateError("consimilarity certificate failed substitution")
    return result


def canonical_spec(a, sigma):
    return canonical_consimilarity(a, sigma).spec


def consimilarity_verdicts(a, b):
    """Four independent answers to "are ``a`` and ``b`` i-consimilar?".

    (i) the i-consimilarity canonical forms agree; (ii) ``iA ~ iB``;
    (iii) ``iA ~ Bi``; (iv) ``Ai ~ Bi``, each similarity decided by
    the quaternion Jordan spec.
    """
    if a.shape != b.shape or not a.is_square():
        raise ShapeMismatch("consimilarity needs two square matrices of one size")
    i = Quat(0, 1)
    ia, ib = a.scale_left(i), b.scale_left(i)
    ai, bi = a.scale_right(i), b.scale_right(i)
    return (
        canonical_spec(a, Sigma.I) == canonical_spec(b, Sigma.I),
        jordan_spec_quaternion(ia) == jordan_spec_quaternion(ib),
        jordan_spec_quaternion(ia) == jordan_spec_quaternion(bi),
        jordan_spec_quaternion(ai) == jordan_spec_quaternion(bi),
    )


def are_consimilar(a, b, sigma):
    if a.shape != b.shape or not a.is_square():
        raise ShapeMismatch("consimilarity needs two square matrices of one size")
    if sigma is Sigma.ONE:
        return canonical_spec(a, sigma) == canonical_spec(b, sigma)
    verdicts = consimilarity_verdicts(a, b)
    if len(set(verdicts)) != 1:
        raise CertificateError(f"equivalent consimilarity criteria disagree: {verdicts}")
    return verdicts[0]


def are_similar(a, b):
    return are_consimilar(a, b, Sigma.ONE)

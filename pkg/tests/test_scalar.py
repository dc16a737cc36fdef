from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcon.errors import DivisionByZero, ExactFrameUnavailable, NotInvolutive, ParseError
from quatcon.scalar import (
    I,
    J,
    K,
    ONE,
    Automorphism,
    Frame,
    Gauss,
    Quat,
    Sigma,
    apply_automorphism,
    apply_hat,
    format_scalar,
    parse_quat,
    quat_inverse,
    quat_product,
    reduce_automorphism,
)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)
quats = st.builds(Quat, rats, rats, rats, rats)
pure_quats = st.builds(lambda b, c, d: Quat(0, b, c, d), rats, rats, rats).filter(bool)
gausses = st.builds(Gauss, rats, rats)


def hamilton_oracle(x, y):
    """Product via the left-multiplication matrix of x; independent of Quat.__mul__."""
    a, b, c, d = x.coefficients
    left = [[a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a]]
    v = y.coefficients
    return Quat(*(sum(left[r][t] * v[t] for t in range(4)) for r in range(4)))


# -- examples ----------------------------------------------------------------------

def test_product_examples():
    assert quat_product(I, J) == K
    assert quat_product(1 + I, 1 + J) == Quat(1, 1, 1, 1)
    assert quat_product(2 + 3 * K, 2 - 3 * K) == Quat(13)


def test_inverse_examples():
    assert quat_inverse(I) == -I
    assert quat_inverse(Quat(1, 1, 1, 1)) == Quat(1, -1, -1, -1) / 4
    with pytest.raises(DivisionByZero):
        quat_inverse(Quat())
    with pytest.raises(ZeroDivisionError):
        Gauss(0).inverse()


def test_apply_hat_examples():
    assert apply_hat(J, Sigma.I) == -J
    assert apply_hat(Quat(3, 5), Sigma.I) == Quat(3, 5)
    assert apply_hat(K, Sigma.ONE) == K


def test_apply_automorphism_examples():
    assert apply_automorphism(K, Automorphism.by_unit(J)) == -K
    assert apply_automorphism(I, Automorphism.by_unit(I)) == I
    tau = Quat(0, 3, 4)
    expected = hamilton_oracle(hamilton_oracle(tau.conj() / 25, J), tau)
    assert expected == Quat(0, Fraction(24, 25), Fraction(7, 25))
    assert apply_automorphism(J, Automorphism.by_unit(tau)) == expected


def test_tilde_automorphism_matches_formula():
    # conjugation by j: a + bi + cj + dk -> a - bi + cj - dk
    h = Quat(1, 2, 3, 4)
    assert apply_automorphism(h, Automorphism.by_unit(J)) == Quat(1, -2, 3, -4)


def test_reduce_automorphism_examples():
    assert reduce_automorphism(Automorphism.identity()) == (Sigma.ONE, Frame(I, J, K))
    sigma, frame = reduce_automorphism(Automorphism.by_unit(J))
    assert sigma is Sigma.I
    assert frame == Frame(J, K, I)
    assert J * K == I

    sigma, frame = reduce_automorphism(Automorphism.by_unit(Quat(0, Fraction(3, 5), Fraction(4, 5))))
    assert sigma is Sigma.I
    assert frame.i1 == Quat(0, Fraction(3, 5), Fraction(4, 5))
    assert frame.violations() == []
    # the frame (i1, (4i-3j)/5, -k) is an equally valid choice
    alt = Frame(frame.i1, Quat(0, Fraction(4, 5), Fraction(-3, 5)), -K)
    assert alt.violations() == []


def test_reduce_automorphism_rescales_tau():
    sigma, frame = reduce_automorphism(Automorphism.by_unit(Quat(0, 0, 7)))
    assert frame.i1 == J


def test_reduce_needs_rational_length():
    with pytest.raises(ExactFrameUnavailable):
        reduce_automorphism(Automorphism.by_unit(Quat(0, 1, 1)))


def test_householder_fallback_gives_rational_frame():
    # tau = (2i + 3j + 6k)/7: crossing with i gives length sqrt(45)/7, irrational
    sigma, frame = reduce_automorphism(Automorphism.by_unit(Quat(0, 2, 3, 6)))
    assert frame.violations() == []
    assert frame.i1 == Quat(0, 2, 3, 6) / 7


def test_non_involutive_rejected():
    with pytest.raises(NotInvolutive):
        Automorphism.by_unit(Quat(1, 1))
    with pytest.raises(NotInvolutive):
        Automorphism.from_quat(Quat(1, 0, 2))
    with pytest.raises(NotInvolutive):
        Automorphism.from_quat(Quat())
    assert Automorphism.from_quat(Quat(3)).is_identity


# -- literal grammar -----------------------------------------------------------------

@pytest.mark.parametrize("text, value", [
    ("3/2+1i-2/5j+0k", Quat(Fraction(3, 2), 1, Fraction(-2, 5))),
    ("-k", -K),
    ("0", Quat()),
    ("i", I),
    ("1i", I),
    ("-1/2", Quat(Fraction(-1, 2))),
    ("2j+2j", Quat(0, 0, 4)),
])
def test_parse_quat(text, value):
    assert parse_quat(text) == value


@pytest.mark.parametrize("text, col", [
    ("1+q", 3), ("", 1), ("1 +i", 2), ("i-", 3), ("1/0", 3), ("ij", 2), ("/2", 1),
])
def test_parse_quat_errors(text, col):
    with pytest.raises(ParseError) as info:
        parse_quat(text)
    assert info.value.col == col


@given(quats)
def test_format_round_trip(x):
    assert parse_quat(format_scalar(x)) == x


# -- properties -----------------------------------------------------------------------

@given(quats, quats)
def test_product_matches_oracle(x, y):
    assert x * y == hamilton_oracle(x, y)


@given(quats, quats, quats)
@settings(max_examples=200)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert ONE * x == x == x * ONE


@given(quats)
def test_inverse_two_sided(x):
    if x:
        assert x * x.inverse() == ONE == x.inverse() * x


@given(quats, quats)
@settings(max_examples=300)
def test_hat_is_ring_automorphism(x, y):
    for sigma in Sigma:
        assert apply_hat(x * y, sigma) == apply_hat(x, sigma) * apply_hat(y, sigma)
        assert apply_hat(x + y, sigma) == apply_hat(x, sigma) + apply_hat(y, sigma)


@given(quats, st.one_of(st.none(), pure_quats))
def test_involutive(x, tau):
    spec = Automorphism(tau)
    for sigma in Sigma:
        assert apply_hat(apply_hat(x, sigma), sigma) == x
    assert apply_automorphism(apply_automorphism(x, spec), spec) == x


@given(quats)
def test_hat_i_is_conjugation_by_i(x):
    assert apply_hat(x, Sigma.I) == -I * x * I


@given(gausses, gausses)
def test_complex_split_law(u, v):
    h = Quat.from_split(u, v)
    assert h.split() == (u, v)
    assert h == Quat.coerce(u) + Quat.coerce(v) * J
    assert apply_hat(h, Sigma.I) == Quat.from_split(u, -v)


def _rational_pure(p, q, scale):
    # inverse stereographic projection: every rational point on the unit sphere
    n = p * p + q * q + 1
    return Quat(0, 2 * p / n, 2 * q / n, (p * p + q * q - 1) / n) * scale


rational_length_pures = st.builds(_rational_pure, rats, rats,
                                  st.fractions(min_value=Fraction(1, 4), max_value=4))


@given(rational_length_pures)
def test_frames_from_rational_units(tau):
    spec = Automorphism.by_unit(tau)
    sigma, frame = reduce_automorphism(spec)
    assert sigma is Sigma.I
    assert frame.violations() == []


FRAME_TAUS = [J, K, -I, Quat(0, 3, 4), Quat(0, 0, 5, 12), Quat(0, 2, 3, 6), Quat(0, 1, 2, 2),
              Quat(0, -2, 1, 2), Quat(0, 1, 4, 8)]


@pytest.mark.parametrize("tau", FRAME_TAUS)
@given(h=quats)
@settings(max_examples=200)
def test_frame_transport(tau, h):
    spec = Automorphism.by_unit(tau)
    sigma, frame = reduce_automorphism(spec)
    assert not frame.violations()
    assert frame.from_frame(frame.to_frame(h)) == h
    assert frame.from_frame(apply_hat(frame.to_frame(h), sigma)) == apply_automorphism(h, spec)


@given(quats, quats)
def test_frame_map_is_multiplicative(x, y):
    _, frame = reduce_automorphism(Automorphism.by_unit(Quat(0, 2, 3, 6)))
    assert frame.to_frame(x * y) == frame.to_frame(x) * frame.to_frame(y)


@given(gausses, gausses)
def test_gauss_field(u, v):
    assert u * v == v * u
    if v:
        assert (u / v) * v == u
    assert (u + v).conj() == u.conj() + v.conj()


def test_mixed_tower_arithmetic():
    g = Gauss(1, 2)
    assert g * J == Quat(0, 0, 1, 2)
    assert J * g == Quat(0, 0, 1, -2)
    assert g + Fraction(1, 2) == Gauss(Fraction(3, 2), 2)
    assert Quat(1, 2) == g - Fraction(0)
    assert hash(Quat(3)) == hash(Gauss(3)) == hash(Fraction(3))
    with pytest.raises(TypeError):
        J / I

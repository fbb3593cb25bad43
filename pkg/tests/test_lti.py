import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import signal

from soaring_esc.lti import (
    ImproperTransferFunction,
    RationalTransferFunction,
    is_hurwitz,
    is_proper,
    is_strictly_proper,
    poles,
    realize,
    tf_divide,
    tf_multiply,
)
from soaring_esc.sim import rk4_step

TF = RationalTransferFunction
CUBIC_CASE1 = np.polymul(np.polymul([1, 0.1], [1, 8.8]), [1, 8.1])


def test_multiply_keeps_common_factor():
    p = tf_multiply(TF([1], [1, 1]), TF.unchecked([1, 1], [1]))
    assert p.num == (1.0, 1.0)
    assert p.den == (1.0, 1.0)


def test_multiply_case1_block1():
    p = tf_multiply(TF.unchecked([1, 0, 2.25], [1]), TF([1], CUBIC_CASE1))
    assert p.num == (1.0, 0.0, 2.25)
    # (s+0.1)(s+8.8)(s+8.1) expanded by hand
    np.testing.assert_allclose(p.den, [1, 17.0, 72.97, 7.128], rtol=1e-12)


def test_multiply_identity():
    h = TF([2, 3], [1, 4, 5])
    assert tf_multiply(h, TF.constant(1.0)) == h


def test_divide_is_uncancelled():
    q = tf_divide(TF([1], [1, 5]), TF([1], [1, 0]))
    assert q.num == (1.0, 0.0)
    assert q.den == (1.0, 5.0)


def test_normalizes_leading_denominator():
    h = TF([2], [2, 4])
    assert h.den == (1.0, 2.0)
    assert h.num == (1.0,)


def test_improper_rejected_but_unchecked_allowed():
    with pytest.raises(ImproperTransferFunction):
        TF([1, 0, 0], [1, 1])
    h = TF.unchecked([1, 0, 0], [1, 1])
    assert not h.is_proper()
    with pytest.raises(ImproperTransferFunction):
        realize(h)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        TF([1], [0, 0])


def test_realize_unity():
    f = realize(TF.constant(1.0))
    assert f.order == 0
    assert f.D == 1.0
    for u in (0.0, -2.5, 7.0):
        assert f.output(u) == u


def test_realize_case1_block1_dc_gain():
    f = realize(TF([1, 0, 2.25], CUBIC_CASE1))
    assert f.order == 3
    assert f.D == 0.0
    dc = -f.C @ np.linalg.solve(f.A, f.B) + f.D
    assert dc == pytest.approx(2.25 / 7.128, rel=1e-12)
    assert dc == pytest.approx(0.31566, abs=1e-5)


def test_realize_highpass_dc_zero():
    f = realize(TF([1, 0], [1, 0.4]))
    dc = -f.C @ np.linalg.solve(f.A, f.B) + f.D
    assert dc == pytest.approx(0.0, abs=1e-15)
    assert TF([1, 0], [1, 0.4]).dc_gain() == 0.0


def test_realize_matches_scipy():
    tf = TF([2, 3, 1], [1, 6, 11, 6])
    f = realize(tf)
    num, den = signal.ss2tf(f.A, f.B.reshape(-1, 1), f.C.reshape(1, -1), [[f.D]])
    np.testing.assert_allclose(num[0], [0, 2, 3, 1], atol=1e-12)
    np.testing.assert_allclose(den, [1, 6, 11, 6], atol=1e-12)


def _step_response(tf, t_end, dt, u=1.0):
    f = realize(tf)
    x = list(f.state)

    def rhs(t, s):
        return list(f.derivative(u, np.asarray(s)))

    n = int(round(t_end / dt))
    for k in range(n):
        x = rk4_step(rhs, x, k * dt, dt)
    return f.output(u, np.asarray(x))


def test_lowpass_step_closed_form():
    y = _step_response(TF([0.01], [1, 0.01]), 100.0, 1e-2)
    assert y == pytest.approx(1 - math.exp(-1.0), abs=1e-4)
    assert abs(y - (1 - math.exp(-1.0))) < 1e-6


def test_highpass_rejects_dc():
    assert abs(_step_response(TF([1, 0], [1, 0.4]), 60.0, 1e-2)) < 1e-9


def test_zero_input_zero_output():
    f = realize(TF([1, 2], [1, 3, 2]))
    assert f.output(0.0) == 0.0
    assert np.all(f.derivative(0.0) == 0.0)


def test_poles_and_predicates():
    h = TF([1], CUBIC_CASE1)
    np.testing.assert_allclose(np.sort(poles(h).real), [-8.8, -8.1, -0.1], rtol=1e-10)
    assert is_hurwitz(h)
    osc = TF([1], [1, 0, 8.2**2])
    np.testing.assert_allclose(np.sort(osc.poles().imag), [-8.2, 8.2], rtol=1e-12)
    assert not is_hurwitz(osc)
    g = TF([1, 2, 3], [1, 2, 3, 4])
    assert is_proper(g) and is_strictly_proper(g)
    assert is_proper(TF([1, 2], [1, 3])) and not is_strictly_proper(TF([1, 2], [1, 3]))


def test_hurwitz_margin():
    assert not is_hurwitz(TF([1], [1, 1e-12]))
    assert is_hurwitz(TF([1], [1, 1e-6]))
    assert is_hurwitz(TF.constant(3.0))


coef = st.floats(-5, 5, allow_nan=False).filter(lambda v: abs(v) > 1e-3)


@st.composite
def proper_tfs(draw):
    nd = draw(st.integers(1, 3))
    nn = draw(st.integers(0, nd))
    den = [1.0] + [draw(coef) for _ in range(nd)]
    num = [draw(coef) for _ in range(nn + 1)]
    return TF(num, den)


@given(proper_tfs(), proper_tfs())
def test_degree_additivity(a, b):
    p = tf_multiply(a, b)
    assert p.num_degree == a.num_degree + b.num_degree
    assert p.den_degree == a.den_degree + b.den_degree


@given(proper_tfs(), proper_tfs())
def test_pole_union(a, b):
    got = np.sort_complex(tf_multiply(a, b).poles())
    want = np.sort_complex(np.concatenate([a.poles(), b.poles()]))
    # matching as multisets: every wanted pole has a nearby computed pole
    scale = max(1.0, np.max(np.abs(want)))
    for w in want:
        assert np.min(np.abs(got - w)) < 1e-4 * scale


@settings(max_examples=10, deadline=None)
@given(
    st.lists(st.floats(0.5, 4.0), min_size=1, max_size=3, unique=True).filter(
        lambda ps: all(abs(x - y) > 0.2 for i, x in enumerate(ps) for y in ps[i + 1:])
    ),
    st.lists(st.floats(-3, 3), min_size=1, max_size=3),
)
def test_realization_round_trip(rates, num):
    den = np.poly([-r for r in rates])
    num = num[: len(rates)]
    tf = TF(num, den)
    # analytic step response by partial fractions of tf(s)/s
    r, p, k = signal.residue(tf.num, np.polymul(tf.den, [1, 0]))
    t_end = 10.0 / min(rates)
    want = float(np.real(np.sum(r * np.exp(p * t_end))))
    got = _step_response(tf, t_end, 1e-3)
    assert got == pytest.approx(want, abs=1e-6)

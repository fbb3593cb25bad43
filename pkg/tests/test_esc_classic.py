import math

import pytest

from soaring_esc.esc_classic import EscClassicParams, EscClassicState, esc1_control, esc1_rhs
from soaring_esc.sim import Esc1, run_system


def P(**kw):
    base = dict(a=0.5, omega=1.2, b=1.0, phi_phase=0.0, k=1.0, omega_h=0.4)
    base.update(kw)
    return EscClassicParams(**base)


def test_control_without_dither():
    st = EscClassicState(theta_hat=0.37)
    assert esc1_control(st, P(a=0.0), 3.3) == 0.37


def test_control_at_zero_time():
    assert esc1_control(EscClassicState(0.1), P(), 0.0) == 0.1


def test_control_at_dither_peak():
    assert esc1_control(EscClassicState(0.0), P(), math.pi / (2 * 1.2)) == pytest.approx(0.5, rel=1e-15)


def test_settled_high_pass_freezes_estimate():
    d = esc1_rhs(EscClassicState(0.2, 0.0, 3.0), P(), 3.0, 0.7)
    assert d.eta == 0.0
    assert d.theta_hat == 0.0


def test_high_pass_rate():
    d = esc1_rhs(EscClassicState(0.0, 0.0, 0.0), P(omega_h=0.4), 2.0, 0.0)
    assert d.eta == pytest.approx(0.8, rel=1e-15)


def test_zero_demodulation_gain():
    for t in (0.1, 1.0, 2.5):
        assert esc1_rhs(EscClassicState(0.0, 0.0, 0.0), P(b=0.0), 5.0, t).theta_hat == 0.0


def test_low_pass_path():
    p = P(k=2.0, b=0.5, phi_phase=0.3, omega_l=0.2, use_low_pass=True)
    st = EscClassicState(0.0, xi=0.25, eta=1.0)
    J, t = 3.0, 0.9
    d = esc1_rhs(st, p, J, t)
    demod = (J - 1.0) * 0.5 * math.sin(1.2 * t - 0.3)
    assert d.theta_hat == pytest.approx(2.0 * 0.25)
    assert d.xi == pytest.approx(-0.2 * 0.25 + 0.2 * demod)
    assert d.eta == pytest.approx(0.4 * (J - 1.0))


def test_without_high_pass():
    p = P(use_high_pass=False, omega_h=0.0, k=1.5, b=2.0)
    d = esc1_rhs(EscClassicState(0.0, 0.0, 9.0), p, 2.0, 0.4)
    assert d.eta == 0.0
    assert d.theta_hat == pytest.approx(1.5 * 2.0 * 2.0 * math.sin(1.2 * 0.4))


def test_parameter_validation():
    with pytest.raises(ValueError):
        P(a=-0.1)
    with pytest.raises(ValueError):
        P(omega=0.0)
    with pytest.raises(ValueError):
        P(omega_h=0.0)
    with pytest.raises(ValueError):
        P(use_low_pass=True, omega_l=0.0)


class StaticQuadratic:
    columns = ["theta", "J_measured", "J_clean"]
    state_names = ()

    def __init__(self, peak=2.0, curvature=1.0, theta_star=0.5):
        self.peak, self.c, self.theta_star = peak, curvature, theta_star

    def objective(self, t, x, u):
        return self.peak - self.c * (u - self.theta_star) ** 2

    def derivative(self, t, x, u):
        return []

    def row(self, t, x, u, Jm, Jc):
        return (u, Jm, Jc)

    def summary(self, rec):
        return {}


@pytest.mark.parametrize("start", [-1.0, 2.0])
def test_gradient_sign_on_static_quadratic(start):
    plant = StaticQuadratic()
    omega = 10.0
    p = EscClassicParams(a=0.1, omega=omega, b=1.0, k=2.0, omega_h=1.0)
    dt = 1e-3
    rec = run_system(plant, Esc1(p, theta_hat0=start), (), 30.0, dt)
    th = rec.column("theta_hat")
    n = int(round(2 * math.pi / omega / dt))
    means = [sum(th[i:i + n]) / n for i in range(0, len(th) - n, n)]
    sign = 1.0 if start < plant.theta_star else -1.0
    moving = [m for m in means if abs(m - plant.theta_star) > 0.02]
    assert len(moving) > 5
    steps = [sign * (b - a) for a, b in zip(moving, moving[1:])]
    assert min(steps) >= -1e-9
    assert abs(means[-1] - plant.theta_star) < 0.02

"""Augmented extremum seeking (ESC2) with compensated reference models.

Signal path, left to right::

    J -> F_0 -> block1 -> x b sin(wt - phase) -> block2 -> + a sin(wt) -> F_i -> theta

with ``block1 = C_0 / Gamma_J`` and ``block2 = k2 C_i Gamma_phi``.  The sign of
``k2`` selects maximization (positive) or minimization (negative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lti import (
    LinearFilter,
    RationalTransferFunction,
    is_hurwitz,
    realize,
    tf_divide,
    tf_multiply,
)

ONE = RationalTransferFunction.constant(1.0)


class InvalidDesign(ValueError):
    pass


def sinusoid_laplace(freq: float, phase: float) -> RationalTransferFunction:
    """Laplace transform of ``sin(freq t + phase)``."""
    return RationalTransferFunction(
        [math.sin(phase), freq * math.cos(phase)], [1.0, 0.0, freq * freq]
    )


@dataclass(frozen=True)
class ReferenceSignalModel:
    gamma_phi: RationalTransferFunction
    gamma_J: RationalTransferFunction
    lambda_phi: float = 1.0
    lambda_J: float = 1.0


@dataclass(frozen=True)
class EscAugmentedDesign:
    reference: ReferenceSignalModel
    C_i: RationalTransferFunction
    C_0: RationalTransferFunction
    block1: RationalTransferFunction
    block2: RationalTransferFunction
    a: float
    b: float
    omega: float
    phi_phase: float
    k2: float = 1.0
    F_i: RationalTransferFunction = ONE
    F_0: RationalTransferFunction = ONE
    constants: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ("block1", "block2", "F_i", "F_0"):
            tf = getattr(self, name)
            if not tf.is_proper():
                raise InvalidDesign(f"{name} is improper and cannot be realized: {tf!r}")


def build_ds_design(
    c1: float,
    c2: float,
    c3: float,
    c4: float,
    c5: float,
    c6: float,
    k2: float,
    a: float,
    b: float,
    omega: float,
    phi_phase: float,
    c0: float = 0.0,
) -> EscAugmentedDesign:
    """ESC2 customized for dynamic soaring: sinusoidal references, ``F_i = F_0 = 1``.

    ``block1`` is stored in reduced form, with the common factor
    ``c3 cos c0 + s sin c0`` cancelled explicitly; ``c0`` therefore only
    affects ``C_0`` and ``Gamma_J``.
    """
    gamma_phi = sinusoid_laplace(c1, c2)
    gamma_J = sinusoid_laplace(c3, c0)
    cubic = np.polymul(np.polymul([1.0, c4], [1.0, c5]), [1.0, c6])
    C_0 = RationalTransferFunction([math.sin(c0), c3 * math.cos(c0)], cubic)
    C_i = ONE
    try:
        block1 = RationalTransferFunction([1.0, 0.0, c3 * c3], cubic)
        block2 = RationalTransferFunction(
            [k2 * math.sin(c2), k2 * c1 * math.cos(c2)], [1.0, 0.0, c1 * c1]
        )
    except ValueError as exc:
        raise InvalidDesign(str(exc)) from exc
    return EscAugmentedDesign(
        reference=ReferenceSignalModel(gamma_phi, gamma_J),
        C_i=C_i,
        C_0=C_0,
        block1=block1,
        block2=block2,
        a=a,
        b=b,
        omega=omega,
        phi_phase=phi_phase,
        k2=k2,
        constants=dict(c0=c0, c1=c1, c2=c2, c3=c3, c4=c4, c5=c5, c6=c6),
    )


def build_toy_design(b: float = 0.5) -> EscAugmentedDesign:
    """Exponential-tracking toy: ``theta*(t) = 0.01 e^{0.01 t}``, ``J*(t) = 0.01 u(t - 10)``.

    The toy minimizes, so ``k2 = -1`` and block 2 is ``-50 (s - 4) / (s - 0.01)``.
    The step delay ``e^{-10 s}`` of ``J*`` is dropped from ``Gamma_J`` since it
    does not change poles or zeros.
    """
    gamma_phi = RationalTransferFunction([1.0], [1.0, -0.01])
    gamma_J = RationalTransferFunction([1.0], [1.0, 0.0])
    C_0 = RationalTransferFunction([1.0], [1.0, 5.0])
    C_i = RationalTransferFunction.unchecked([50.0, -200.0], [1.0])
    k2 = -1.0
    return EscAugmentedDesign(
        reference=ReferenceSignalModel(gamma_phi, gamma_J, lambda_phi=0.01, lambda_J=0.01),
        C_i=C_i,
        C_0=C_0,
        block1=tf_divide(C_0, gamma_J),
        block2=k2 * tf_multiply(C_i, gamma_phi),
        a=0.05,
        b=b,
        omega=5.0,
        phi_phase=0.8,
        k2=k2,
        F_i=RationalTransferFunction([1.0, -1.0], [1.0, 3.0, 2.0]),
        F_0=RationalTransferFunction([1.0], [1.0, 1.0]),
        constants={"design": "toy"},
    )


# --- design validation --------------------------------------------------------


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    ok: bool
    evidence: str
    checked: bool = True

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        if not self.checked:
            status = "NOT CHECKED"
        return f"{self.name}: {status} - {self.evidence}"


@dataclass(frozen=True)
class DesignReport:
    c1: ConditionCheck
    c2: ConditionCheck
    c3: ConditionCheck
    c4: ConditionCheck
    c5: ConditionCheck
    c5_loop: ConditionCheck

    @property
    def c1_ok(self) -> bool:
        return self.c1.ok

    @property
    def c2_ok(self) -> bool:
        return self.c2.ok

    @property
    def c3_ok(self) -> bool:
        return self.c3.ok

    @property
    def c4_ok(self) -> bool:
        return self.c4.ok

    @property
    def c5_ok(self) -> bool:
        return self.c5.ok and (self.c5_loop.ok or not self.c5_loop.checked)

    @property
    def c5_checked(self) -> bool:
        return self.c5_loop.checked

    @property
    def overall(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok and self.c4_ok and self.c5_ok

    def lines(self) -> list[str]:
        out = [c.line() for c in (self.c1, self.c2, self.c3, self.c4, self.c5, self.c5_loop)]
        out.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return out

    def to_dict(self) -> dict:
        d = {}
        for c in (self.c1, self.c2, self.c3, self.c4, self.c5, self.c5_loop):
            d[c.name] = {"ok": c.ok, "checked": c.checked, "evidence": c.evidence}
        d["overall"] = self.overall
        return d


def _fmt_roots(r) -> str:
    if len(r) == 0:
        return "{}"
    parts = []
    for z in sorted(np.atleast_1d(r), key=lambda v: (v.real, v.imag)):
        re = z.real + 0.0
        if abs(z.imag) < 1e-12:
            parts.append(f"{re:.6g}")
        else:
            parts.append(f"{re:.6g}{z.imag:+.6g}j")
    return "{" + ", ".join(parts) + "}"


def _unstable(roots, eps: float) -> np.ndarray:
    r = np.atleast_1d(roots)
    return r[r.real >= -eps]


def _contains_root(roots, z, tol: float) -> bool:
    return any(abs(r - z) <= tol * max(1.0, abs(z)) for r in np.atleast_1d(roots))


def _degrees(tf: RationalTransferFunction) -> str:
    return f"deg {tf.num_degree}/{tf.den_degree}"


def shifted_real_part(H: RationalTransferFunction, omega: float, kappa: complex) -> RationalTransferFunction:
    """Real-coefficient rational function ``Re[kappa H(s + j omega)]``.

    Computed as ``(kappa H(s+jw) + conj(kappa) H(s-jw)) / 2`` over a common
    denominator.
    """
    shift_p = np.poly1d([1.0, 1j * omega])
    shift_m = np.poly1d([1.0, -1j * omega])
    Np, Dp = np.poly1d(H.num)(shift_p).coeffs, np.poly1d(H.den)(shift_p).coeffs
    Nm, Dm = np.poly1d(H.num)(shift_m).coeffs, np.poly1d(H.den)(shift_m).coeffs
    num = np.polyadd(kappa * np.polymul(Np, Dm), np.conj(kappa) * np.polymul(Nm, Dp)) / 2.0
    den = np.polymul(Dp, Dm)
    return RationalTransferFunction.unchecked(np.real(num), np.real(den))


def loop_transfer(d: EscAugmentedDesign, f_pp: float) -> RationalTransferFunction:
    """Averaged loop gain ``L(s)`` for the C5 closed-loop condition ``1/(1 + L)``.

    The condition is stated for negative feedback through ``C_i Gamma_phi``,
    i.e. a minimizing loop with ``k2 = -1``; here the sign of ``k2`` lives in
    block 2, so ``H_i = -block2 F_i``.  ``H_0 = block1 F_0``, the demodulation
    amplitude ``b`` scales the loop, and the phase in ``e^{j phi0}`` is taken to
    be the demodulation phase.
    """
    H_i = tf_multiply(-1.0 * d.block2, d.F_i)
    H_0 = tf_multiply(d.block1, d.F_0)
    kappa = complex(np.exp(1j * d.phi_phase) * d.F_i(1j * d.omega))
    R = shifted_real_part(H_0, d.omega, kappa)
    gain = d.a * d.b * f_pp / 4.0
    return gain * tf_multiply(H_i, R)


def validate_design(
    d: EscAugmentedDesign, f_pp: float | None = None, eps: float = 1e-9, root_tol: float = 1e-6
) -> DesignReport:
    """Check design conditions C1-C5; failures are reported, never raised."""
    ref = d.reference

    c1_ok = is_hurwitz(d.F_i, eps) and is_hurwitz(d.F_0, eps) and d.F_i.is_proper() and d.F_0.is_proper()
    c1 = ConditionCheck(
        "C1",
        c1_ok,
        f"F_i poles {_fmt_roots(d.F_i.poles())} {_degrees(d.F_i)}; "
        f"F_0 poles {_fmt_roots(d.F_0.poles())} {_degrees(d.F_0)}",
    )

    strict = ref.gamma_J.is_strictly_proper() and ref.gamma_phi.is_strictly_proper()
    bad_poles = _unstable(ref.gamma_phi.poles(), eps)
    ci_zeros = d.C_i.zeros() if d.C_i.num_degree > 0 else np.array([])
    clash = [p for p in bad_poles if _contains_root(ci_zeros, p, root_tol)]
    c2 = ConditionCheck(
        "C2",
        strict and not clash,
        f"Gamma_J {_degrees(ref.gamma_J)}, Gamma_phi {_degrees(ref.gamma_phi)}; "
        f"non-Hurwitz poles of Gamma_phi {_fmt_roots(bad_poles)} vs zeros of C_i {_fmt_roots(ci_zeros)}"
        + (f"; shared {_fmt_roots(np.array(clash))}" if clash else ""),
    )

    gj_zeros = ref.gamma_J.zeros() if ref.gamma_J.num_degree > 0 else np.array([])
    bad_zeros = _unstable(gj_zeros, eps)
    c0_zeros = d.C_0.zeros() if d.C_0.num_degree > 0 else np.array([])
    missing = [z for z in bad_zeros if not _contains_root(c0_zeros, z, root_tol)]
    c3 = ConditionCheck(
        "C3",
        not missing,
        f"non-Hurwitz zeros of Gamma_J {_fmt_roots(bad_zeros)} vs zeros of C_0 {_fmt_roots(c0_zeros)}"
        + (f"; missing {_fmt_roots(np.array(missing))}" if missing else ""),
    )

    h0 = tf_divide(d.C_0, ref.gamma_J)
    hi = tf_multiply(d.C_i, ref.gamma_phi)
    c4 = ConditionCheck(
        "C4",
        h0.is_proper() and hi.is_proper(),
        f"C_0/Gamma_J {_degrees(h0)}; C_i*Gamma_phi {_degrees(hi)}",
    )

    c0_poles = d.C_0.poles()
    c5 = ConditionCheck(
        "C5",
        is_hurwitz(d.C_0, eps),
        f"C_0 poles {_fmt_roots(c0_poles)}",
    )

    if f_pp is None:
        c5_loop = ConditionCheck(
            "C5-loop", False, "not checked (f'' absent); interpretation-dependent", checked=False
        )
    else:
        L = loop_transfer(d, f_pp)
        char = np.polyadd(L.den, L.num)
        cl = RationalTransferFunction.unchecked(L.den, char)
        cl_poles = cl.poles()
        c5_loop = ConditionCheck(
            "C5-loop",
            is_hurwitz(cl, eps),
            f"f''={f_pp:.6g}; poles of 1/(1+L) {_fmt_roots(cl_poles)}; interpretation-dependent",
        )

    return DesignReport(c1, c2, c3, c4, c5, c5_loop)


# --- time-domain loop -----------------------------------------------------------


@dataclass
class Esc2Filters:
    block1: LinearFilter
    block2: LinearFilter
    fi: LinearFilter
    f0: LinearFilter

    @classmethod
    def from_design(cls, d: EscAugmentedDesign) -> Esc2Filters:
        return cls(realize(d.block1), realize(d.block2), realize(d.F_i), realize(d.F_0))

    def as_tuple(self) -> tuple[LinearFilter, ...]:
        return (self.block1, self.block2, self.fi, self.f0)


def esc2_rhs(filters: Esc2Filters, d: EscAugmentedDesign, J_measured: float, t: float):
    """Filter-state derivatives and steered parameter for one evaluation.

    Returns ``((d_block1, d_block2, d_fi, d_f0), theta)``.  The filters'
    ``state`` attributes are read, never advanced.
    """
    f = filters
    y0 = f.f0.output(J_measured)
    y1 = f.block1.output(y0)
    y2 = y1 * d.b * math.sin(d.omega * t - d.phi_phase)
    y3 = f.block2.output(y2)
    u = y3 + d.a * math.sin(d.omega * t)
    theta = f.fi.output(u)
    derivs = (
        f.block1.derivative(y0),
        f.block2.derivative(y2),
        f.fi.derivative(u),
        f.f0.derivative(J_measured),
    )
    return derivs, theta

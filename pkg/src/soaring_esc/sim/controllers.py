"""Controllers closing the loop around a plant.

A controller provides ``initial_state(plant, x0)``, ``parameter(t, xc)`` (the
steered input, a function of controller state only), ``derivative(t, xc, J)``,
and the record ``columns`` naming its states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..esc_augmented import EscAugmentedDesign, InvalidDesign
from ..esc_classic import EscClassicParams, esc1_derivatives
from ..lti import realize


@dataclass(frozen=True)
class OpenLoop:
    phi: float = 0.0

    columns = []

    def initial_state(self, plant, x0):
        return []

    def parameter(self, t, xc):
        return self.phi

    def derivative(self, t, xc, J):
        return []


@dataclass(frozen=True)
class Esc1:
    """Classic loop; ``eta0=None`` starts the washout filter at the initial objective."""

    params: EscClassicParams
    theta_hat0: float = 0.0
    eta0: float | None = None
    xi0: float = 0.0

    columns = ["theta_hat", "xi", "eta"]

    def initial_state(self, plant, x0):
        eta0 = self.eta0
        if eta0 is None:
            eta0 = plant.objective(0.0, x0, self.parameter(0.0, [self.theta_hat0]))
        return [self.theta_hat0, self.xi0, eta0]

    def parameter(self, t, xc):
        return xc[0] + self.params.a * math.sin(self.params.omega * t)

    def derivative(self, t, xc, J):
        return list(esc1_derivatives(xc[0], xc[1], xc[2], self.params, J, t))


class _Block:
    """Scalar view of a realized filter for the inner loop."""

    __slots__ = ("n", "A", "B", "C", "D")

    def __init__(self, tf):
        f = realize(tf)
        self.n = f.order
        self.A = [list(map(float, row)) for row in f.A]
        self.B = [float(v) for v in f.B]
        self.C = [float(v) for v in f.C]
        self.D = float(f.D)

    def out(self, x, u):
        return sum(c * v for c, v in zip(self.C, x)) + self.D * u

    def deriv(self, x, u):
        return [sum(a * v for a, v in zip(row, x)) + b * u for row, b in zip(self.A, self.B)]


class Esc2:
    """Augmented loop with every block realized in controllable canonical form.

    Controller state layout: block1, block2, F_i, F_0 states in that order.
    """

    def __init__(self, design: EscAugmentedDesign):
        self.design = design
        self.b1 = _Block(design.block1)
        self.b2 = _Block(design.block2)
        self.fi = _Block(design.F_i)
        self.f0 = _Block(design.F_0)
        if self.fi.D * self.b2.D * self.b1.D * self.f0.D != 0.0:
            raise InvalidDesign("direct feedthrough from J to the steered parameter (algebraic loop)")
        n1, n2, ni = self.b1.n, self.b2.n, self.fi.n
        self._cut = (n1, n1 + n2, n1 + n2 + ni)
        self.columns = (
            [f"block1_{i}" for i in range(n1)]
            + [f"block2_{i}" for i in range(n2)]
            + [f"fi_{i}" for i in range(ni)]
            + [f"f0_{i}" for i in range(self.f0.n)]
        )

    def __eq__(self, other):
        return isinstance(other, Esc2) and other.design == self.design

    def __repr__(self):
        return f"Esc2({self.design!r})"

    def _split(self, xc):
        c1, c2, c3 = self._cut
        return xc[:c1], xc[c1:c2], xc[c2:c3], xc[c3:]

    def initial_state(self, plant, x0):
        return [0.0] * len(self.columns)

    def _signals(self, t, xc, J):
        d = self.design
        x1, x2, xi, x0 = self._split(xc)
        y0 = self.f0.out(x0, J)
        y1 = self.b1.out(x1, y0)
        y2 = y1 * d.b * math.sin(d.omega * t - d.phi_phase)
        u = self.b2.out(x2, y2) + d.a * math.sin(d.omega * t)
        return (x1, x2, xi, x0), (y0, y2, u), self.fi.out(xi, u)

    def parameter(self, t, xc):
        # J cannot reach theta within one evaluation (checked in __init__).
        return self._signals(t, xc, 0.0)[2]

    def derivative(self, t, xc, J):
        (x1, x2, xi, x0), (y0, y2, u), _ = self._signals(t, xc, J)
        return self.b1.deriv(x1, y0) + self.b2.deriv(x2, y2) + self.fi.deriv(xi, u) + self.f0.deriv(x0, J)

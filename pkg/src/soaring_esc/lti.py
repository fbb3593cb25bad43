"""SISO rational transfer functions and their state-space realization.

Coefficients are stored in descending powers of ``s`` with the leading
denominator coefficient normalized to 1.  Products and quotients never cancel
common factors; callers that want a reduced form must build it explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

EPS_STAB = 1e-9


class ImproperTransferFunction(ValueError):
    """Raised when a proper transfer function is required but deg(num) > deg(den)."""


class RootFindingFailure(RuntimeError):
    """Raised when the companion-matrix eigenvalue solver does not converge."""


def _trim(coeffs) -> tuple[float, ...]:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=float))
    nz = np.flatnonzero(arr)
    if nz.size == 0:
        return (0.0,)
    return tuple(float(c) for c in arr[nz[0]:])


class RationalTransferFunction:
    """``num(s) / den(s)`` with real coefficients.

    The default constructor rejects improper functions.  Use
    :meth:`unchecked` for intermediate algebra (e.g. a compensator that is only
    ever realized after multiplication with a reference model).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self._set(num, den)
        if not self.is_proper():
            raise ImproperTransferFunction(
                f"numerator degree {self.num_degree} exceeds denominator degree {self.den_degree}"
            )

    def _set(self, num, den) -> None:
        den_t = _trim(den)
        if den_t == (0.0,):
            raise ZeroDivisionError("denominator polynomial is identically zero")
        lead = den_t[0]
        self.num = tuple(c / lead for c in _trim(num))
        self.den = tuple(c / lead for c in den_t)

    @classmethod
    def unchecked(cls, num, den) -> RationalTransferFunction:
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def constant(cls, k: float) -> RationalTransferFunction:
        return cls([k], [1.0])

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1 if self.num != (0.0,) else 0

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    def is_proper(self) -> bool:
        return self.num_degree <= self.den_degree

    def is_strictly_proper(self) -> bool:
        return self.num == (0.0,) or self.num_degree < self.den_degree

    def __call__(self, s):
        return np.polyval(self.num, s) / np.polyval(self.den, s)

    def dc_gain(self) -> float:
        if self.den[-1] == 0.0:
            raise ZeroDivisionError("transfer function has a pole at the origin")
        return self.num[-1] / self.den[-1]

    def poles(self) -> np.ndarray:
        return _roots(self.den)

    def zeros(self) -> np.ndarray:
        return _roots(self.num)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return RationalTransferFunction.unchecked([other * c for c in self.num], self.den)
        return tf_multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return tf_divide(self, other)

    def __eq__(self, other):
        if not isinstance(other, RationalTransferFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalTransferFunction(num={list(self.num)}, den={list(self.den)})"


def _roots(coeffs) -> np.ndarray:
    try:
        r = np.roots(coeffs)
    except np.linalg.LinAlgError as exc:
        raise RootFindingFailure(str(exc)) from exc
    if not np.all(np.isfinite(r)):
        raise RootFindingFailure(f"non-finite roots for polynomial {list(coeffs)}")
    return r


def tf_multiply(a: RationalTransferFunction, b: RationalTransferFunction) -> RationalTransferFunction:
    """Series connection by polynomial convolution; no cancellation."""
    return RationalTransferFunction.unchecked(np.polymul(a.num, b.num), np.polymul(a.den, b.den))


def tf_divide(a: RationalTransferFunction, b: RationalTransferFunction) -> RationalTransferFunction:
    """``a / b`` by cross-multiplication; no cancellation."""
    if b.num == (0.0,):
        raise ZeroDivisionError("division by the zero transfer function")
    return RationalTransferFunction.unchecked(np.polymul(a.num, b.den), np.polymul(a.den, b.num))


def poles(tf: RationalTransferFunction) -> np.ndarray:
    return tf.poles()


def is_hurwitz(tf: RationalTransferFunction, eps: float = EPS_STAB) -> bool:
    """True iff every pole lies strictly left of ``Re(s) = -eps``."""
    p = tf.poles()
    return bool(np.all(p.real < -eps))


def is_proper(tf: RationalTransferFunction) -> bool:
    return tf.is_proper()


def is_strictly_proper(tf: RationalTransferFunction) -> bool:
    return tf.is_strictly_proper()


@dataclass
class LinearFilter:
    """Controllable-canonical realization ``x' = A x + B u``, ``y = C x + D u``.

    The filter owns no clock.  The simulation engine integrates ``derivative``
    alongside everything else in its augmented state vector.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float
    source: RationalTransferFunction
    state: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.state is None:
            self.state = np.zeros(self.order)

    @property
    def order(self) -> int:
        return self.A.shape[0]

    def derivative(self, u: float, state=None) -> np.ndarray:
        x = self.state if state is None else state
        return self.A @ x + self.B * u

    def output(self, u: float, state=None) -> float:
        x = self.state if state is None else state
        return float(self.C @ x) + self.D * u

    def reset(self) -> None:
        self.state = np.zeros(self.order)


def realize(tf: RationalTransferFunction) -> LinearFilter:
    """Controllable canonical form of a proper transfer function."""
    if not tf.is_proper():
        raise ImproperTransferFunction(
            f"cannot realize improper transfer function {tf!r}"
        )
    den = np.asarray(tf.den)
    n = len(den) - 1
    num = np.zeros(n + 1)
    num[n + 1 - len(tf.num):] = tf.num
    d = float(num[0])
    A = np.zeros((n, n))
    if n:
        A[0, :] = -den[1:]
        A[1:, :-1] = np.eye(n - 1)
    B = np.zeros(n)
    if n:
        B[0] = 1.0
    C = num[1:] - den[1:] * d
    return LinearFilter(A=A, B=B, C=C, D=d, source=tf)


def filter_derivative(f: LinearFilter, u: float) -> np.ndarray:
    return f.derivative(u)


def output(f: LinearFilter, u: float) -> float:
    return f.output(u)

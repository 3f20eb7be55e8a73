"""Scalar driving functions and time-dependent Hamiltonians.

A time-dependent Hamiltonian is a sum of driving channels

    H(t) = sum_a f_a(t) * H_a

with each ``H_a`` a time-independent first-degree MPO and ``f_a`` a scalar
driving function.  Driving functions know how to evaluate themselves, how to
build their quantics tensor train on an interval, and (when periodic) their
period, which lets bracket tables be reused between congruent time steps.
"""

import math
from dataclasses import dataclass, field

import numpy as np


class DrivingFunction:
    """Base class; subclasses implement ``__call__`` and ``build_qtt``."""

    name = "driving"
    period = None          # None when not periodic
    constant_value = None  # set when f is a constant

    def __call__(self, t):
        raise NotImplementedError

    def build_qtt(self, t0, t1, bits):
        """Quantics train of f on the dyadic grid of [t0, t1)."""
        from . import quantics
        return quantics.qtt_from_samples_of(self, t0, t1, bits)

    def describe(self):
        return self.name


@dataclass
class ConstDriving(DrivingFunction):
    value: complex = 1.0

    name = "const"

    def __post_init__(self):
        self.constant_value = complex(self.value)
        self.period = math.inf

    def __call__(self, t):
        return self.value * np.ones_like(np.asarray(t, dtype=float))

    def build_qtt(self, t0, t1, bits):
        from . import quantics
        return quantics.qtt_const(self.value, bits)

    def describe(self):
        return f"const({self.value})"


@dataclass
class TrigDriving(DrivingFunction):
    """``amplitude * sin/cos(omega * t + phase) + offset``."""

    kind: str = "sin"
    omega: float = 2.0 * math.pi
    phase: float = 0.0
    amplitude: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in ("sin", "cos"):
            raise ValueError("kind must be 'sin' or 'cos'")
        self.name = self.kind
        self.period = 2.0 * math.pi / abs(self.omega) if self.omega else math.inf
        if self.omega == 0:
            f0 = math.sin(self.phase) if self.kind == "sin" else math.cos(self.phase)
            self.constant_value = self.amplitude * f0 + self.offset

    def __call__(self, t):
        f = np.sin if self.kind == "sin" else np.cos
        return self.amplitude * f(self.omega * np.asarray(t) + self.phase) + self.offset

    def build_qtt(self, t0, t1, bits):
        from . import quantics
        # on the unit grid x, t = t0 + (t1 - t0) x
        freq = self.omega * (t1 - t0)
        phase = self.omega * t0 + self.phase
        train = quantics.qtt_trig(self.kind, freq, phase, bits)
        if self.amplitude != 1.0:
            train = train.scaled(self.amplitude)
        if self.offset != 0.0:
            train = quantics.qtt_add(train, quantics.qtt_const(self.offset, bits))
        return train

    def describe(self):
        return (f"{self.kind}(omega={self.omega}, phase={self.phase}, "
                f"amplitude={self.amplitude}, offset={self.offset})")


@dataclass
class ExpDriving(DrivingFunction):
    """``amplitude * exp(rate * t)``."""

    rate: complex = 1.0
    amplitude: complex = 1.0

    name = "exp"

    def __post_init__(self):
        if self.rate == 0:
            self.constant_value = complex(self.amplitude)

    def __call__(self, t):
        return self.amplitude * np.exp(self.rate * np.asarray(t))

    def build_qtt(self, t0, t1, bits):
        from . import quantics
        train = quantics.qtt_exp(self.rate * (t1 - t0), bits)
        return train.scaled(self.amplitude * np.exp(self.rate * t0))

    def describe(self):
        return f"exp(rate={self.rate}, amplitude={self.amplitude})"


@dataclass
class PolyDriving(DrivingFunction):
    """Polynomial ``sum_k coeffs[k] * t**k``."""

    coeffs: tuple = (0.0, 1.0)

    name = "poly"

    def __post_init__(self):
        self.coeffs = tuple(complex(c) for c in self.coeffs)
        if all(c == 0 for c in self.coeffs[1:]):
            self.constant_value = self.coeffs[0] if self.coeffs else 0.0

    def __call__(self, t):
        t = np.asarray(t)
        out = np.zeros_like(t, dtype=complex)
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def describe(self):
        return f"poly(coeffs={list(self.coeffs)})"


@dataclass
class SampledDriving(DrivingFunction):
    """Linear interpolation through given samples on [t_start, t_end]."""

    t_start: float = 0.0
    t_end: float = 1.0
    values: tuple = (0.0, 0.0)

    name = "samples"

    def __post_init__(self):
        self.values = tuple(float(np.real(v)) for v in self.values)

    def __call__(self, t):
        grid = np.linspace(self.t_start, self.t_end, len(self.values))
        return np.interp(np.asarray(t, dtype=float), grid, self.values)

    def describe(self):
        return f"samples(n={len(self.values)} on [{self.t_start}, {self.t_end}])"


@dataclass
class Channel:
    """One driving channel: a name, a static MPO and its driving function."""

    name: str
    operator: object  # FirstDegreeMPO
    driving: DrivingFunction = field(default_factory=ConstDriving)


class TimeDependentHamiltonian:
    """``H(t) = sum_a f_a(t) H_a`` with a fixed channel order."""

    def __init__(self, channels, d=None):
        self.channels = [c if isinstance(c, Channel) else Channel(*c)
                         for c in channels]
        if not self.channels:
            raise ValueError("at least one channel required")
        dims = {c.operator.d for c in self.channels}
        if len(dims) != 1:
            raise ValueError("all channels must share the physical dimension")
        self.d = dims.pop()
        if d is not None and d != self.d:
            raise ValueError("declared d does not match the channel operators")
        names = [c.name for c in self.channels]
        if len(set(names)) != len(names):
            raise ValueError("channel names must be unique")

    @property
    def channel_names(self):
        return [c.name for c in self.channels]

    def channel(self, name):
        for c in self.channels:
            if c.name == name:
                return c
        raise KeyError(name)

    def common_period(self):
        """Smallest common driving period, or None when aperiodic."""
        periods = [c.driving.period for c in self.channels]
        if any(p is None for p in periods):
            return None
        finite = [p for p in periods if p != math.inf]
        if not finite:
            return math.inf
        base = finite[0]
        for p in finite[1:]:
            ratio = base / p
            if abs(ratio - round(ratio)) > 1e-9 and abs(1 / ratio - round(1 / ratio)) > 1e-9:
                return None
            base = max(base, p)
        return base

    def to_dense(self, n_sites, t, cap=64):
        """Dense H(t) on a finite chain."""
        dim = self.d ** n_sites
        out = np.zeros((dim, dim), dtype=complex)
        for c in self.channels:
            out += complex(np.asarray(c.driving(t)).item()) * \
                c.operator.to_dense(n_sites, cap=cap)
        return out

    def dense_channel_matrices(self, n_sites, cap=4096):
        """Per-channel dense matrices, for the state-vector oracle."""
        return [c.operator.to_dense(n_sites, cap=cap) for c in self.channels]

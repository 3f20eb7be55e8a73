"""Tables of time-ordered integrals of driving functions.

A bracket table stores ``[f_{a_1} ... f_{a_k}]`` for every channel sequence
up to a maximum order on one time interval.  Tables are computed once per
interval and shared by every MPO construction for that step; the Taylor
variant replaces the integrals by ``tau**k / k!``.
"""

import math
from itertools import product

from .quadrature import quad_time_ordered_integral
from .quantics import time_ordered_integral


class BracketTable:
    """Time-ordered integrals keyed by channel-name sequences."""

    def __init__(self, interval, values, max_order):
        self.interval = tuple(interval)
        self.values = dict(values)
        self.max_order = int(max_order)

    def value(self, sigma):
        sigma = tuple(sigma)
        if len(sigma) > self.max_order:
            raise KeyError(
                f"bracket {sigma} exceeds table order {self.max_order}")
        return self.values[sigma]

    __call__ = value

    def __contains__(self, sigma):
        return tuple(sigma) in self.values

    def channel_names(self):
        return sorted({name for key in self.values for name in key})

    def max_factoring_defect(self):
        """Largest violation of ``[a][b] = [ab] + [ba]`` stored in the table."""
        worst = 0.0
        names = self.channel_names()
        if self.max_order < 2:
            return worst
        for a, b in product(names, repeat=2):
            lhs = self.value((a,)) * self.value((b,))
            rhs = self.value((a, b)) + self.value((b, a))
            worst = max(worst, abs(lhs - rhs))
        return worst

    @classmethod
    def compute(cls, channels, t0, t, max_order, bits=24, engine="qtt",
                quad_tol=1e-10):
        """Evaluate all brackets up to `max_order` on ``[t0, t]``.

        `channels` is a list of ``(name, driving)`` pairs in channel order;
        `engine` selects the quantics evaluator or the quadrature oracle.
        """
        channels = list(channels)
        by_name = dict(channels)
        values = {}
        for k in range(1, max_order + 1):
            for key in product([name for name, _ in channels], repeat=k):
                fs = [by_name[name] for name in key]
                if t == t0:
                    values[key] = 0.0j
                elif engine == "qtt":
                    values[key] = time_ordered_integral(fs, t0, t, bits=bits)
                elif engine == "quad":
                    values[key] = quad_time_ordered_integral(fs, t0, t,
                                                             abs_tol=quad_tol)
                else:
                    raise ValueError(f"unknown engine {engine!r}")
        return cls((t0, t), values, max_order)


class TaylorBrackets:
    """Synthetic table for a time-independent exponential: ``tau**k / k!``."""

    def __init__(self, tau, max_order):
        self.tau = complex(tau)
        self.max_order = int(max_order)
        self.interval = None

    def value(self, sigma):
        k = len(tuple(sigma))
        if k > self.max_order:
            raise KeyError(f"order {k} exceeds {self.max_order}")
        return self.tau ** k / math.factorial(k)

    __call__ = value

    def __contains__(self, sigma):
        return len(tuple(sigma)) <= self.max_order

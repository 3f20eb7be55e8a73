"""Quantics tensor trains and time-ordered integrals of driving functions.

A scalar function on ``[t0, t1)`` is sampled on the dyadic grid
``x_n = n / 2**R`` (mapped affinely onto the interval) and stored as a
tensor train with one binary digit per site, least-significant bit first.
Exponentials have bond dimension 1, sines and cosines bond dimension 2.

Nested time-ordered integrals

    [f_1 f_2 ... f_k] = (-i)^k  int_{t0}^{t} dt_1 f_1(t_1)
                                int_{t0}^{t_1} dt_2 f_2(t_2) ...

are evaluated by alternating a cumulative-integral MPO of bond dimension 2
(a strict Heaviside comparison of binary digits, left-endpoint rule) with
pointwise products, and closing with a full grid sum.
"""

import math

import numpy as np

from .linalg import svd_truncate


class QuanticsTrain:
    """R-site tensor train with physical dimension 2 per binary digit."""

    def __init__(self, sites):
        self.sites = [np.asarray(s, dtype=complex) for s in sites]
        if self.sites[0].shape[0] != 1 or self.sites[-1].shape[2] != 1:
            raise ValueError("boundary bonds must have dimension 1")

    @property
    def bits(self):
        return len(self.sites)

    @property
    def bond_dimensions(self):
        return [s.shape[2] for s in self.sites[:-1]]

    @property
    def max_bond(self):
        return max(self.bond_dimensions, default=1)

    def evaluate(self, n):
        """Value at grid index `n` (bits read least-significant first)."""
        v = np.ones((1,), dtype=complex)
        for alpha, site in enumerate(self.sites):
            bit = (int(n) >> alpha) & 1
            v = v @ site[:, bit, :]
        return complex(v[0])

    def evaluate_many(self, ns):
        return np.array([self.evaluate(n) for n in ns])

    def full_sum(self):
        """Sum of the train over all 2**R grid points."""
        v = np.ones((1,), dtype=complex)
        for site in self.sites:
            v = v @ (site[:, 0, :] + site[:, 1, :])
        return complex(v[0])

    def scaled(self, c):
        sites = [s.copy() for s in self.sites]
        sites[0] = sites[0] * c
        return QuanticsTrain(sites)

    def compress(self, tol=1e-13, max_bond=None):
        """Two-sided sweep: QR to the right, truncated SVD back."""
        sites = [s.copy() for s in self.sites]
        n = len(sites)
        for i in range(n - 1):
            dl, _, dr = sites[i].shape
            q, r = np.linalg.qr(sites[i].reshape(dl * 2, dr))
            sites[i] = q.reshape(dl, 2, q.shape[1])
            sites[i + 1] = np.tensordot(r, sites[i + 1], axes=(1, 0))
        discarded = 0.0
        for i in range(n - 1, 0, -1):
            dl, _, dr = sites[i].shape
            u, s, v, disc = svd_truncate(sites[i].reshape(dl, 2 * dr),
                                         max_rank=max_bond, tol=tol)
            discarded += disc
            sites[i] = v.reshape(v.shape[0], 2, dr)
            us = u * s
            sites[i - 1] = np.tensordot(sites[i - 1], us, axes=(2, 0))
        train = QuanticsTrain(sites)
        train.discarded_weight = discarded
        return train

    def __repr__(self):
        return f"QuanticsTrain(bits={self.bits}, max_bond={self.max_bond})"


def qtt_exp(a, bits):
    """Train of ``exp(a * x)`` on the unit grid; bond dimension 1.

    Site ``alpha`` holds the pair ``(1, exp(a * 2**(alpha - R)))``.
    """
    if bits < 1:
        raise ValueError("need at least one bit")
    sites = []
    for alpha in range(bits):
        t = np.zeros((1, 2, 1), dtype=complex)
        t[0, 0, 0] = 1.0
        t[0, 1, 0] = np.exp(a * 2.0 ** (alpha - bits))
        sites.append(t)
    return QuanticsTrain(sites)


def qtt_const(c, bits):
    """Constant function `c`; bond dimension 1."""
    return qtt_exp(0.0, bits).scaled(c)


def qtt_add(f, g):
    """Direct sum of two trains; bond dimensions add."""
    if f.bits != g.bits:
        raise ValueError("bit counts differ")
    sites = []
    for i, (a, b) in enumerate(zip(f.sites, g.sites)):
        al, _, ar = a.shape
        bl, _, br = b.shape
        if i == 0:
            t = np.concatenate([a, b], axis=2)
        elif i == f.bits - 1:
            t = np.concatenate([a, b], axis=0)
        else:
            t = np.zeros((al + bl, 2, ar + br), dtype=complex)
            t[:al, :, :ar] = a
            t[al:, :, ar:] = b
        sites.append(t)
    return QuanticsTrain(sites)


def qtt_trig(kind, frequency, phase=0.0, bits=24):
    """Train of ``sin/cos(frequency * x + phase)``; bond dimension 2."""
    if kind == "sin":
        cp = np.exp(1j * phase) / 2j
        cm = -np.exp(-1j * phase) / 2j
    elif kind == "cos":
        cp = np.exp(1j * phase) / 2
        cm = np.exp(-1j * phase) / 2
    else:
        raise ValueError("kind must be 'sin' or 'cos'")
    plus = qtt_exp(1j * frequency, bits).scaled(cp)
    minus = qtt_exp(-1j * frequency, bits).scaled(cm)
    return qtt_add(plus, minus)


def qtt_from_samples(values, max_bond=None, tol=1e-13):
    """Sequential-SVD train of an explicitly sampled function.

    `values` must have length ``2**R``, indexed by the grid position `n`.
    Raises when `max_bond` forces truncation above `tol`.
    """
    values = np.asarray(values, dtype=complex)
    bits = round(math.log2(len(values)))
    if 2 ** bits != len(values):
        raise ValueError("sample count must be a power of two")
    scale = np.max(np.abs(values))
    # reshape puts the most significant bit on the first axis; reverse so
    # the least significant bit sits on the first site
    tensor = values.reshape([2] * bits).transpose(tuple(reversed(range(bits))))
    sites = []
    rest = tensor.reshape(1, -1)
    for _ in range(bits - 1):
        dl = rest.shape[0]
        m = rest.reshape(dl * 2, -1)
        u, s, v, disc = svd_truncate(m, max_rank=max_bond, tol=tol)
        if max_bond is not None and disc > (tol * max(scale, 1e-300)) ** 2:
            raise ValueError("bond cap exceeded before tolerance was reached")
        sites.append(u.reshape(dl, 2, u.shape[1]))
        rest = (s[:, None] * v)
    sites.append(rest.reshape(rest.shape[0], 2, 1))
    return QuanticsTrain(sites)


def qtt_from_samples_of(f, t0, t1, bits, max_bond=None, tol=1e-13):
    """Sample a callable driving function on the interval grid and encode it."""
    if bits > 24:
        raise ValueError("dense sampling is capped at 24 bits")
    n = np.arange(2 ** bits)
    ts = t0 + (t1 - t0) * n / 2.0 ** bits
    return qtt_from_samples(np.asarray(f(ts), dtype=complex),
                            max_bond=max_bond, tol=tol)


class CumulativeIntegralMPO:
    """Bond-dimension-2 MPO encoding ``F(y) = sum_{x < y} f(x) * delta_x``.

    The digit comparison runs from the most significant bit (last site)
    toward the least significant: virtual state 0 means all higher digits
    agree, state 1 means the strict inequality is already decided.  The
    deciding digit pair ``(y=1, x=0)`` carries the grid spacing.
    """

    def __init__(self, bits, delta_x):
        self.bits = bits
        self.delta_x = float(delta_x)
        w = np.zeros((2, 2, 2, 2), dtype=complex)  # (a, y, x, b)
        for x in (0, 1):
            for y in (0, 1):
                w[1, y, x, 1] = 1.0
                if x == y:
                    w[0, y, x, 0] = 1.0
        w[1, 1, 0, 0] = self.delta_x
        self.tensor = w

    def apply(self, train):
        """Train of the running integral of `train`."""
        if train.bits != self.bits:
            raise ValueError("bit counts differ")
        sites = []
        for i, site in enumerate(train.sites):
            w = self.tensor
            if i == 0:
                w = w[1:2]           # leftmost virtual index terminated at 1
            if i == self.bits - 1:
                w = w[..., 0:1]      # rightmost terminated at 0
            # (a, y, x, b), (l, x, r) -> (a, l, y, b, r)
            t = np.einsum("ayxb,lxr->alybr", w, site)
            al, fl, _, bl, fr = t.shape
            sites.append(t.reshape(al * fl, 2, bl * fr))
        return QuanticsTrain(sites)


def cumulative_integral_mpo(bits, delta_x):
    return CumulativeIntegralMPO(bits, delta_x)


def pointwise_product(f, g, compress_tol=None):
    """Train of the pointwise product ``f(x) * g(x)``; bonds multiply."""
    if f.bits != g.bits:
        raise ValueError("bit counts differ")
    sites = []
    for a, b in zip(f.sites, g.sites):
        t = np.einsum("lxr,mxs->lmxrs", a, b)
        ll, ml, _, rl, sl = t.shape
        sites.append(t.reshape(ll * ml, 2, rl * sl))
    out = QuanticsTrain(sites)
    if compress_tol is not None:
        out = out.compress(tol=compress_tol)
    return out


def time_ordered_integral(drivings, t0, t, bits=24, compress_tol=1e-13):
    """Bracket ``[f_1 ... f_k]`` over ``[t0, t]``; first entry = latest time.

    Constant channels short-circuit to the closed form
    ``prod(c) * (-i (t - t0))**k / k!``; otherwise the nested integrals are
    evaluated on the quantics grid with the left-endpoint rule.
    """
    drivings = list(drivings)
    k = len(drivings)
    if k == 0:
        raise ValueError("empty channel sequence")
    if t == t0:
        return 0.0 + 0.0j
    consts = [d.constant_value for d in drivings]
    if all(c is not None for c in consts):
        prod = np.prod([complex(c) for c in consts])
        return complex(prod * (-1j * (t - t0)) ** k / math.factorial(k))
    delta_x = (t - t0) / 2.0 ** bits
    heaviside = cumulative_integral_mpo(bits, delta_x)
    w = drivings[-1].build_qtt(t0, t, bits)
    for f in reversed(drivings[:-1]):
        w = heaviside.apply(w).compress(tol=compress_tol)
        w = pointwise_product(f.build_qtt(t0, t, bits), w,
                              compress_tol=compress_tol)
    return complex((-1j) ** k * w.full_sum() * delta_x)

"""Finite matrix product states and MPO application with truncation."""

import numpy as np

from .linalg import svd_truncate


class FiniteMPS:
    """Open-boundary MPS; site tensors have index order (left, phys, right)."""

    def __init__(self, tensors):
        self.tensors = [np.asarray(t, dtype=complex) for t in tensors]
        if self.tensors[0].shape[0] != 1 or self.tensors[-1].shape[2] != 1:
            raise ValueError("boundary bonds must have dimension 1")
        for a, b in zip(self.tensors, self.tensors[1:]):
            if a.shape[2] != b.shape[0]:
                raise ValueError("mismatched internal bonds")

    @property
    def n_sites(self):
        return len(self.tensors)

    @property
    def d(self):
        return self.tensors[0].shape[1]

    @property
    def bond_dimensions(self):
        return [t.shape[2] for t in self.tensors[:-1]]

    @property
    def max_bond(self):
        return max(self.bond_dimensions, default=1)

    @classmethod
    def product_state(cls, states):
        """Product state from a list of single-site vectors."""
        return cls([np.asarray(s, dtype=complex).reshape(1, -1, 1)
                    for s in states])

    @classmethod
    def all_up(cls, n_sites, d=2):
        vec = np.zeros(d, dtype=complex)
        vec[0] = 1.0
        return cls.product_state([vec] * n_sites)

    @classmethod
    def random_product(cls, n_sites, d=2, rng=None):
        rng = np.random.default_rng(rng)
        states = []
        for _ in range(n_sites):
            v = rng.normal(size=d) + 1j * rng.normal(size=d)
            states.append(v / np.linalg.norm(v))
        return cls.product_state(states)

    @classmethod
    def from_dense(cls, vec, n_sites, d=2):
        """Exact MPS of a dense state vector."""
        vec = np.asarray(vec, dtype=complex)
        tensors = []
        rest = vec.reshape(1, -1)
        for _ in range(n_sites - 1):
            dl = rest.shape[0]
            u, s, v, _ = svd_truncate(rest.reshape(dl * d, -1), tol=0.0)
            tensors.append(u.reshape(dl, d, -1))
            rest = s[:, None] * v
        tensors.append(rest.reshape(rest.shape[0], d, 1))
        return cls(tensors)

    def to_dense(self):
        out = np.ones((1, 1), dtype=complex)
        for t in self.tensors:
            out = np.tensordot(out, t, axes=(1, 0))
            out = out.reshape(-1, t.shape[2])
        return out[:, 0]

    def overlap(self, other):
        """<self|other> by transfer contraction."""
        if self.n_sites != other.n_sites:
            raise ValueError("site counts differ")
        env = np.ones((1, 1), dtype=complex)
        for a, b in zip(self.tensors, other.tensors):
            env = np.einsum("lm,lpr,mps->rs", env, a.conj(), b, optimize=True)
        return complex(env[0, 0])

    def norm(self):
        return float(np.sqrt(abs(self.overlap(self))))

    def normalized(self):
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero state")
        tensors = [t.copy() for t in self.tensors]
        scale = nrm ** (1.0 / self.n_sites)
        for i in range(self.n_sites):
            tensors[i] = tensors[i] / scale
        return FiniteMPS(tensors)

    def canonicalized(self, d_max=None, svd_tol=0.0):
        """Left-to-right QR sweep, then right-to-left truncated SVD sweep.

        Returns ``(mps, discarded_weight)``; the state is not normalized.
        """
        tensors = [t.copy() for t in self.tensors]
        n = len(tensors)
        for i in range(n - 1):
            dl, d, dr = tensors[i].shape
            q, r = np.linalg.qr(tensors[i].reshape(dl * d, dr))
            tensors[i] = q.reshape(dl, d, q.shape[1])
            tensors[i + 1] = np.tensordot(r, tensors[i + 1], axes=(1, 0))
        discarded = 0.0
        for i in range(n - 1, 0, -1):
            dl, d, dr = tensors[i].shape
            u, s, v, disc = svd_truncate(tensors[i].reshape(dl, d * dr),
                                         max_rank=d_max, tol=svd_tol)
            discarded += disc
            tensors[i] = v.reshape(-1, d, dr)
            tensors[i - 1] = np.tensordot(tensors[i - 1], u * s, axes=(2, 0))
        return FiniteMPS(tensors), discarded


def apply_mpo(mpo, psi, d_max=None, svd_tol=1e-14):
    """Apply an extensive MPO to a finite MPS and truncate.

    Exact contraction (bond dimensions multiply) followed by a two-sided
    SVD sweep at `d_max` / `svd_tol`.  Returns ``(psi_out, discarded)``
    with a normalized state and the total discarded weight.
    """
    if psi.d != mpo.d:
        raise ValueError("physical dimensions differ")
    w = mpo.site_tensor()  # (left, right, out, in)
    bidx = mpo.boundary_index()
    tensors = []
    n = psi.n_sites
    for i, t in enumerate(psi.tensors):
        wt = w
        if i == 0:
            wt = w[bidx:bidx + 1]
        if i == n - 1:
            wt = wt[:, bidx:bidx + 1]
        new = np.einsum("absp,lpr->alsbr", wt, t, optimize=True)
        al, ll, d, bl, rl = new.shape
        tensors.append(new.reshape(al * ll, d, bl * rl))
    raw = FiniteMPS(tensors)
    out, discarded = raw.canonicalized(d_max=d_max, svd_tol=svd_tol)
    return out.normalized(), discarded


def trace_distance_error(psi_a, psi_b):
    """``sqrt(1 - |<a|b>|^2)`` with both states normalized first."""
    if psi_a.n_sites != psi_b.n_sites or psi_a.d != psi_b.d:
        raise ValueError("states live on different chains")
    a = psi_a.normalized()
    b = psi_b.normalized()
    fidelity = min(abs(a.overlap(b)) ** 2, 1.0)
    return float(np.sqrt(max(0.0, 1.0 - fidelity)))

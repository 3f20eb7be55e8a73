"""Dyson-series MPOs for time-dependent Hamiltonians.

Each driving channel gets its own finishing level in the rewired
Hamiltonian, so the level labels of its powers record which channel acted
in which factor (time) slot.  Folding a finished level back into the
identity level then picks up the time-ordered integral of the matching
driving-function sequence, read with the latest time first.
"""

import numpy as np

from .extensive import ExtensiveMPO, RewiredHamiltonian, build_evolution_mpo
from .levels import IDENTITY_LEVEL


def rewire(hamiltonian):
    """Rewired Hamiltonian with one finishing level per driving channel.

    The returned object exposes ``matrix_at(t)`` (the multi-level
    operator-valued site matrix, with the driving weights on the arrows
    into the finishing levels) and ``to_dense(n_sites, t)``.
    """
    return RewiredHamiltonian.from_hamiltonian(hamiltonian)


def rewired_matrix_at(rew, t):
    """Site matrix of the rewired Hamiltonian at fixed time `t`.

    Level order: the start level, the middle block of every channel in
    declaration order, then one finishing level per channel.  Returns
    ``(labels, matrix)`` with `matrix` of shape ``(n, n, d, d)``.
    """
    labels = ["1"]
    for name, h, _ in rew.channels:
        labels.extend(f"2_{name}[{k}]" for k in range(h.chi))
    labels.extend(f"3_{name}" for name, _, _ in rew.channels)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    m = np.zeros((n, n, rew.d, rew.d), dtype=complex)
    eye = np.eye(rew.d, dtype=complex)
    m[0, 0] = eye
    for name, h, drv in rew.channels:
        f = 1.0 if drv is None else complex(np.asarray(drv(t)).item())
        fin = index[f"3_{name}"]
        m[fin, fin] = eye
        if h.D is not None:
            m[0, fin] = f * h.D
        for k, op in h.L.items():
            m[0, index[f"2_{name}[{k}]"]] = op
        for (i, j), op in h.A.items():
            m[index[f"2_{name}[{i}]"], index[f"2_{name}[{j}]"]] = op
        for k, op in h.R.items():
            m[index[f"2_{name}[{k}]"], fin] = f * op
    return labels, m


def identity_mpo(d):
    """The exact identity operator as a bond-dimension-1 extensive MPO."""
    return ExtensiveMPO(d, [IDENTITY_LEVEL],
                        {(IDENTITY_LEVEL, IDENTITY_LEVEL): np.eye(d, dtype=complex)},
                        order=0, params={"kind": "identity"})


def dyson_mpo(hamiltonian, t0, t, order, integrals, merged=True):
    """N-th order Dyson MPO of the evolution operator on ``[t0, t]``.

    `integrals` must hold all brackets of the Hamiltonian's channels up to
    `order`.  A degenerate interval returns the exact identity.  With
    ``merged=False`` the power is kept over full symbol tuples and folded
    with the literal per-level weights (oracle path).
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if integrals.max_order < order:
        raise ValueError(
            f"bracket table of order {integrals.max_order} cannot build an "
            f"order-{order} Dyson MPO")
    if getattr(integrals, "interval", None) is not None:
        i0, i1 = integrals.interval
        if abs(i0 - t0) > 1e-12 or abs(i1 - t) > 1e-12:
            raise ValueError("bracket table interval does not match [t0, t]")
    if t == t0:
        return identity_mpo(hamiltonian.d)
    rew = RewiredHamiltonian.from_hamiltonian(hamiltonian)
    try:
        mpo = build_evolution_mpo(rew, order, integrals.value, merged=merged)
    except KeyError as exc:
        raise ValueError(f"missing bracket: {exc}") from exc
    mpo.params.update(kind="dyson", interval=(t0, t), brackets=integrals)
    return mpo


def dyson_first_order(hamiltonian, integrals):
    """First-order Dyson MPO on the bracket table's interval."""
    t0, t = integrals.interval
    return dyson_mpo(hamiltonian, t0, t, 1, integrals)

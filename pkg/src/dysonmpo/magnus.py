"""Magnus operators as first-degree MPOs and their Taylor exponentiation.

The first Magnus operator is the channel-weighted sum

    Omega_1 = sum_a [f_a] H_a

and the second collects commutators of channel pairs,

    Omega_2 = sum_{a<b} alpha_ab [H_a, H_b],
    alpha_ab = ([f_a f_b] - [f_b f_a]) / 2.

Both stay first-degree MPOs, so the evolution operator follows by the
Taylor construction with unit step.
"""

from . import fdmpo
from .taylor import taylor_mpo


def magnus_omega1(hamiltonian, integrals):
    """First Magnus operator ``sum_a [f_a] H_a``."""
    total = None
    for c in hamiltonian.channels:
        term = fdmpo.scale(c.operator, integrals.value((c.name,)))
        total = term if total is None else fdmpo.add(total, term)
    return total


def magnus_omega2(hamiltonian, integrals):
    """Second Magnus operator; commutator blocks weighted per channel pair."""
    total = fdmpo.zero_hamiltonian(hamiltonian.d)
    chans = hamiltonian.channels
    for i in range(len(chans)):
        for j in range(i + 1, len(chans)):
            a, b = chans[i], chans[j]
            alpha = 0.5 * (integrals.value((a.name, b.name))
                           - integrals.value((b.name, a.name)))
            if alpha == 0:
                continue
            ab = fdmpo.scale(fdmpo.nondisjoint_product(a.operator, b.operator), alpha)
            ba = fdmpo.scale(fdmpo.nondisjoint_product(b.operator, a.operator), -alpha)
            total = fdmpo.add(total, fdmpo.add(ab, ba))
    return total


def magnus_evolution(hamiltonian, t0, t, n_magnus, n_taylor, integrals):
    """Evolution MPO from the Magnus operator of order ``n_magnus <= 2``.

    The Magnus operator for ``[t0, t]`` is assembled as a first-degree MPO
    and exponentiated with an ``n_taylor``-order Taylor MPO at unit step.
    """
    if n_magnus < 1 or n_magnus > 2:
        raise ValueError("only Magnus orders 1 and 2 are supported")
    from .dyson import identity_mpo
    if t == t0:
        return identity_mpo(hamiltonian.d)
    omega = magnus_omega1(hamiltonian, integrals)
    if n_magnus == 2:
        omega = fdmpo.add(omega, magnus_omega2(hamiltonian, integrals))
    mpo = taylor_mpo(omega, 1.0, n_taylor)
    mpo.params.update(kind="magnus", interval=(t0, t), n_magnus=n_magnus)
    return mpo

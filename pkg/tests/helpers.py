"""Brute-force oracles shared by the test modules.

Everything here works with explicit operator strings (start site, dense
operator on a contiguous support) so the MPO code under test never enters
the expected-value computation.
"""

from itertools import product

import numpy as np

from dysonmpo.spin import kron_chain


def strings_of(h, n_sites):
    """All operator strings of a first-degree MPO on a finite chain.

    Returns a list of ``(start, length, dense_op)`` with `dense_op` acting
    on the contiguous support ``start .. start+length-1``.  Strings of the
    same start and length (different middle slots) are summed.
    """
    out = []
    for start in range(n_sites):
        if h.D is not None:
            out.append((start, 1, h.D.copy()))
        max_len = n_sites - start
        # vec[i] = accumulated operator ending in middle slot i
        vec = {i: op.copy() for i, op in h.L.items()}
        for length in range(2, max_len + 1):
            done = {}
            for i, acc in vec.items():
                for j, r in h.R.items():
                    if i == j:
                        key = length
                        term = np.kron(acc, r)
                        done[key] = done.get(key, 0) + term
            if done:
                out.append((start, length, done[length]))
            new_vec = {}
            for i, acc in vec.items():
                for (a, b), mid in h.A.items():
                    if a == i:
                        term = np.kron(acc, mid)
                        new_vec[b] = new_vec.get(b, 0) + term
            vec = new_vec
            if not vec:
                break
    return out


def embed_string(string, n_sites, d=2):
    start, length, op = string
    eye_l = np.eye(d ** start)
    eye_r = np.eye(d ** (n_sites - start - length))
    return np.kron(np.kron(eye_l, op), eye_r)


def dense_from_strings(strings, n_sites, d=2):
    dim = d ** n_sites
    out = np.zeros((dim, dim), dtype=complex)
    for s in strings:
        out += embed_string(s, n_sites, d)
    return out


def _disjoint(s1, s2):
    a = set(range(s1[0], s1[0] + s1[1]))
    b = set(range(s2[0], s2[0] + s2[1]))
    return not (a & b)


def disjoint_product_dense(strings1, strings2, n_sites, d=2):
    """Sum of products over pairs of strings with non-overlapping supports."""
    dim = d ** n_sites
    out = np.zeros((dim, dim), dtype=complex)
    for s1 in strings1:
        m1 = embed_string(s1, n_sites, d)
        for s2 in strings2:
            if _disjoint(s1, s2):
                out += m1 @ embed_string(s2, n_sites, d)
    return out


def disjoint_power_dense(strings, k, n_sites, d=2):
    """Sum over ordered k-tuples of pairwise disjoint strings."""
    dim = d ** n_sites
    out = np.zeros((dim, dim), dtype=complex)
    for combo in product(range(len(strings)), repeat=k):
        chosen = [strings[i] for i in combo]
        ok = all(_disjoint(chosen[i], chosen[j])
                 for i in range(k) for j in range(i + 1, k))
        if not ok:
            continue
        m = np.eye(dim, dtype=complex)
        for s in chosen:
            m = m @ embed_string(s, n_sites, d)
        out += m
    return out


def random_fdmpo(rng, d=2, chi=1, with_d=True, with_a=False, hermitian=True):
    """Random first-degree MPO with the given block structure."""
    from dysonmpo.fdmpo import FirstDegreeMPO

    def rand_op():
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        if hermitian:
            m = m + m.conj().T
        return m / 2

    L = {i: rand_op() for i in range(chi)}
    R = {i: rand_op() for i in range(chi)}
    A = {}
    if with_a and chi:
        A[(0, 0)] = 0.5 * rand_op()
    D = rand_op() if with_d else None
    return FirstDegreeMPO(d, chi, L=L, A=A, R=R, D=D)

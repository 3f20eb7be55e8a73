"""Hamiltonians as first-degree MPOs and their closed algebra.

Builds a transverse-field Ising Hamiltonian from its coupling operators,
then walks through sums, scalar multiples, non-disjoint products and
commutators, checking everything against dense matrices on a short chain.
"""

import numpy as np

import dysonmpo as dm
from dysonmpo.spin import SX, SZ

L = 4

ising = dm.from_terms(2, two_site=[(SZ, SZ)])
field = dm.from_terms(2, on_site=SX)
tfi = dm.add(ising, field)
print("transverse-field Ising chain as a first-degree MPO")
print(f"  ising:  chi = {ising.chi}")
print(f"  field:  chi = {field.chi}   (on-site terms need no middle level)")
print(f"  sum:    chi = {tfi.chi}")

dense = tfi.to_dense(L)
print(f"  dense on {L} sites: shape {dense.shape}, hermitian "
      f"{np.allclose(dense, dense.conj().T)}")

# scalar multiples land in the L row and the on-site block
scaled = dm.scale(tfi, -1j)
print("\nscaling by -1j changes the dense operator accordingly:",
      np.allclose(scaled.to_dense(L), -1j * dense))

# the non-disjoint product keeps only overlapping term pairs; its bond
# dimension follows the closed formula 2 chi1 + 2 chi2 + chi1 chi2
prod = dm.nondisjoint_product(ising, field)
print(f"\nnon-disjoint product: chi = {prod.chi} "
      f"(= 2*{ising.chi} + 2*{field.chi} + {ising.chi}*{field.chi})")

# the disjoint parts of H1 H2 and H2 H1 coincide, so the commutator is a
# difference of two non-disjoint products and stays a first-degree MPO
comm = dm.commutator(ising, field)
a, b = ising.to_dense(L), field.to_dense(L)
print("commutator matches the dense matrix commutator:",
      np.abs(comm.to_dense(L) - (a @ b - b @ a)).max() < 1e-12)

# squaring compresses the duplicate L and R instances into anticommutators
square = dm.nondisjoint_square(tfi)
print(f"non-disjoint square of the TFI: chi = {square.chi} "
      f"(= 2*{tfi.chi} + {tfi.chi}**2)")
print("square equals the generic product of H with itself:",
      np.abs(square.to_dense(L)
             - dm.nondisjoint_product(tfi, tfi).to_dense(L)).max() < 1e-12)

# exponentially decaying interactions fit in the same structure via the
# middle-level coupling A
lam = 0.5
decay = dm.from_terms(2, two_site=[(SZ, SZ)], longer={(0, 0): lam * np.eye(2)})
print(f"\ndecaying couplings sum_i<j {lam}^(j-i-1) z_i z_j carried by A:",
      f"chi = {decay.chi}")

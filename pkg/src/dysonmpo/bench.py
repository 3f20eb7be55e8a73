"""Finite-chain error-scaling benchmark for the evolution-operator MPOs.

Splits an interval into uniform steps; per step computes the bracket table,
builds the requested MPO (Dyson, Magnus or frozen-Hamiltonian Taylor),
row-compresses it and applies it to the state.  The evolved state is
compared against a dense Runge-Kutta reference (or against the most
accurate Dyson state when self-referencing) through the trace-distance
error ``sqrt(1 - |<a|b>|^2)``.
"""

import csv
import io
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import fdmpo
from .brackets import BracketTable
from .compression import row_compress
from .dyson import dyson_mpo
from .evolve import exact_evolve
from .magnus import magnus_evolution
from .mps import FiniteMPS, apply_mpo, trace_distance_error
from .taylor import taylor_mpo

CSV_COLUMNS = ["method", "order", "dt", "epsilon", "wall_time_per_step_s",
               "mpo_bond_dim", "mps_bond_dim", "seed"]


@dataclass
class EvolutionConfig:
    """Parameters of one benchmark sweep."""

    n_sites: int = 8
    t0: float = 0.0
    t_final: float = 1.0
    dt: float = 0.125
    order: int = 2
    method: str = "dyson"            # taylor | dyson | magnus
    d_max: int = 64
    svd_tol: float = 1e-14
    qtt_bits: int = 24
    oracle_substeps: int = 4000
    qr_tol: float = 1e-12
    self_reference: bool = False
    seed: int = 0
    compress: bool = True
    orders: tuple = ()               # sweep; defaults to (order,)
    dts: tuple = ()                  # sweep; defaults to (dt,)

    def sweep(self):
        orders = tuple(self.orders) or (self.order,)
        dts = tuple(self.dts) or (self.dt,)
        return orders, dts


@dataclass
class ErrorRecord:
    method: str
    order: int
    dt: float
    epsilon: float
    wall_time_per_step: float
    mpo_bond_dim: int
    mps_bond_dim: int
    seed: int


class BracketCache:
    """Bracket tables keyed on the step's congruence class.

    For periodic driving and uniform steps, intervals whose start times
    agree modulo the common period share their tables.
    """

    def __init__(self, hamiltonian, bits=24):
        self.hamiltonian = hamiltonian
        self.bits = bits
        self.period = hamiltonian.common_period()
        self._store = {}

    def table(self, t0, t1, order):
        if self.period and self.period is not math.inf:
            phase = t0 - math.floor((t0 + 1e-12) / self.period) * self.period
        else:
            phase = t0
        key = (round(phase, 12), round(t1 - t0, 12), order, self.bits)
        hit = self._store.get(key)
        if hit is not None:
            stored_t0, table = hit
            if abs(stored_t0 - t0) < 1e-12:
                return table
            # congruent interval: same table, shifted start
            return BracketTable((t0, t1), table.values, table.max_order)
        channels = [(c.name, c.driving) for c in self.hamiltonian.channels]
        table = BracketTable.compute(channels, t0, t1, order, bits=self.bits)
        self._store[key] = (t0, table)
        return table


def build_step_mpo(hamiltonian, t0, t1, order, method, table, qr_tol=1e-6,
                   compress=True):
    """Evolution MPO for one step, optionally row-compressed."""
    if method == "dyson":
        mpo = dyson_mpo(hamiltonian, t0, t1, order, table)
    elif method == "magnus":
        mpo = magnus_evolution(hamiltonian, t0, t1, min(order, 2), order, table)
    elif method == "taylor":
        # constant-Hamiltonian baseline: freeze the driving at the midpoint
        tm = 0.5 * (t0 + t1)
        frozen = None
        for c in hamiltonian.channels:
            term = fdmpo.scale(c.operator, complex(np.asarray(c.driving(tm)).item()))
            frozen = term if frozen is None else fdmpo.add(frozen, term)
        mpo = taylor_mpo(frozen, -1j * (t1 - t0), order)
    else:
        raise ValueError(f"unknown method {method!r}")
    if compress and mpo.bond_dimension > 1:
        mpo, _ = row_compress(mpo, order, tol=qr_tol)
    return mpo


def evolve_state(hamiltonian, psi, config, order=None, dt=None, cache=None):
    """Evolve `psi` over ``[t0, t_final]`` in uniform steps.

    Returns ``(psi_out, stats)`` where stats carries per-step wall time and
    the largest MPO/MPS bond dimensions encountered.
    """
    order = config.order if order is None else order
    dt = config.dt if dt is None else dt
    span = config.t_final - config.t0
    n_steps = round(span / dt)
    if abs(n_steps * dt - span) > 1e-12:
        raise ValueError("dt must divide t_final - t0")
    cache = cache or BracketCache(hamiltonian, bits=config.qtt_bits)
    mpo_bond = 0
    mps_bond = psi.max_bond
    t_start = time.perf_counter()
    for i in range(n_steps):
        s0 = config.t0 + i * dt
        s1 = config.t0 + (i + 1) * dt
        table = cache.table(s0, s1, order)
        mpo = build_step_mpo(hamiltonian, s0, s1, order, config.method, table,
                             qr_tol=config.qr_tol, compress=config.compress)
        psi, _ = apply_mpo(mpo, psi, d_max=config.d_max, svd_tol=config.svd_tol)
        mpo_bond = max(mpo_bond, mpo.bond_dimension)
        mps_bond = max(mps_bond, psi.max_bond)
    wall = (time.perf_counter() - t_start) / max(n_steps, 1)
    return psi, {"wall_time_per_step": wall, "mpo_bond_dim": mpo_bond,
                 "mps_bond_dim": mps_bond, "n_steps": n_steps}


def initial_state(config):
    if config.seed:
        return FiniteMPS.random_product(config.n_sites, rng=config.seed)
    return FiniteMPS.all_up(config.n_sites)


def _epsilon_stable(psi, reference, dense_cap=4096):
    """Trace-distance error, accurate below the overlap's rounding floor.

    ``sqrt(1 - |<a|b>|^2)`` cancels catastrophically once the states agree
    to ~1e-8; for small systems the phase-aligned difference norm delta
    gives the same quantity as ``delta * sqrt(1 - delta^2 / 4)`` with full
    precision.
    """
    dim = psi.d ** psi.n_sites
    if dim > dense_cap:
        return trace_distance_error(psi, reference)
    a = psi.to_dense()
    b = reference.to_dense()
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    ov = np.vdot(b, a)
    phase = ov / abs(ov) if abs(ov) > 0 else 1.0
    delta = np.linalg.norm(a - phase * b)
    return float(delta * math.sqrt(max(0.0, 1.0 - 0.25 * delta ** 2)))


def run_benchmark(hamiltonian, config):
    """Error records for every (order, dt) pair of the config's sweep."""
    orders, dts = config.sweep()
    psi0 = initial_state(config)
    cache = BracketCache(hamiltonian, bits=config.qtt_bits)
    evolved = {}
    for order in orders:
        for dt in dts:
            psi, stats = evolve_state(hamiltonian, psi0, config,
                                      order=order, dt=dt, cache=cache)
            evolved[(order, dt)] = (psi, stats)
    if config.self_reference:
        best = max(orders), min(dts)
        reference = evolved[best][0]
    else:
        vec = exact_evolve(hamiltonian, psi0.to_dense(), config.t0,
                           config.t_final, substeps=config.oracle_substeps)
        reference = FiniteMPS.from_dense(vec, config.n_sites, hamiltonian.d)
    records = []
    for order in orders:
        for dt in dts:
            psi, stats = evolved[(order, dt)]
            eps = _epsilon_stable(psi, reference)
            records.append(ErrorRecord(config.method, order, dt, eps,
                                       stats["wall_time_per_step"],
                                       stats["mpo_bond_dim"],
                                       stats["mps_bond_dim"], config.seed))
    return records


def records_to_csv(records, seed=0):
    buf = io.StringIO()
    buf.write(f"# seed={seed}\n")
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([r.method, r.order, f"{r.dt:.12g}", f"{r.epsilon:.12g}",
                         f"{r.wall_time_per_step:.6g}", r.mpo_bond_dim,
                         r.mps_bond_dim, r.seed])
    return buf.getvalue()


def prune_plateau(dts, epsilons, eps_floor=1e-11, min_ratio=1.4):
    """Keep the pre-plateau points of an error-vs-step-size curve.

    Walking from the largest step down, points are kept while each halving
    of dt still shrinks the error by at least ``min_ratio ** halvings``;
    once the curve flattens (reference-accuracy floor) the tail is cut.
    """
    pts = sorted(zip(dts, epsilons), key=lambda p: -p[0])
    kept = [pts[0]]
    for prev, cur in zip(pts, pts[1:]):
        if cur[1] <= eps_floor:
            break
        halvings = math.log2(prev[0] / cur[0])
        if prev[1] / cur[1] < min_ratio ** halvings:
            break
        kept.append(cur)
    return kept


def fit_loglog_slope(dts, epsilons, eps_floor=1e-11):
    """Least-squares slope of log(eps) vs log(dt) over pre-plateau points."""
    pts = prune_plateau(dts, epsilons, eps_floor=eps_floor)
    if len(pts) < 2:
        raise ValueError("not enough points above the error floor")
    x = np.log(np.array([p[0] for p in pts]))
    y = np.log(np.array([p[1] for p in pts]))
    return float(np.polyfit(x, y, 1)[0])


def order_slopes(records, eps_floor=1e-11):
    """Per-order log-log slopes from a benchmark record list."""
    by_order = {}
    for r in records:
        by_order.setdefault(r.order, []).append(r)
    slopes = {}
    for order, rs in by_order.items():
        rs = sorted(rs, key=lambda r: r.dt)
        slopes[order] = fit_loglog_slope([r.dt for r in rs],
                                         [r.epsilon for r in rs],
                                         eps_floor=eps_floor)
    return slopes


def runtime_at_accuracy(records, target_eps, span=1.0):
    """Estimated total runtime ``N_steps * dt_av`` per order at fixed error.

    Extrapolates each order's fitted error scaling to the step size that
    reaches `target_eps` and multiplies the implied step count by the
    measured average per-step wall time.
    """
    by_order = {}
    for r in records:
        by_order.setdefault(r.order, []).append(r)
    out = {}
    for order, rs in by_order.items():
        rs = sorted(rs, key=lambda r: r.dt)
        pts = [(r.dt, r.epsilon) for r in rs if r.epsilon > 1e-12]
        x = np.log([p[0] for p in pts])
        y = np.log([p[1] for p in pts])
        slope, intercept = np.polyfit(x, y, 1)
        log_dt = (math.log(target_eps) - intercept) / slope
        dt_needed = math.exp(log_dt)
        n_steps = span / dt_needed
        dt_av = float(np.mean([r.wall_time_per_step for r in rs]))
        out[order] = n_steps * dt_av
    return out

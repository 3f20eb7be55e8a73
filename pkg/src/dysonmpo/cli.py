"""Command-line interface: build-mpo, integrate, bench."""

import argparse
import sys

from . import modelfile
from .bench import EvolutionConfig, records_to_csv, run_benchmark
from .brackets import BracketTable
from .compression import row_compress
from .dyson import dyson_mpo
from .magnus import magnus_evolution
from .taylor import taylor_mpo


def _add_common(p):
    p.add_argument("--model", required=True, help="model file path")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t", type=float, default=0.125)
    p.add_argument("--bits", type=int, default=24,
                   help="quantics resolution for the bracket table")


def cmd_build_mpo(args):
    ham = modelfile.load(args.model)
    channels = [(c.name, c.driving) for c in ham.channels]
    table = BracketTable.compute(channels, args.t0, args.t, args.order,
                                 bits=args.bits)
    if args.method == "dyson":
        mpo = dyson_mpo(ham, args.t0, args.t, args.order, table)
    elif args.method == "magnus":
        mpo = magnus_evolution(ham, args.t0, args.t, min(args.order, 2),
                               args.order, table)
    elif args.method == "taylor":
        import numpy as np

        from . import fdmpo
        tm = 0.5 * (args.t0 + args.t)
        frozen = None
        for c in ham.channels:
            term = fdmpo.scale(c.operator,
                               complex(np.asarray(c.driving(tm)).item()))
            frozen = term if frozen is None else fdmpo.add(frozen, term)
        mpo = taylor_mpo(frozen, -1j * (args.t - args.t0), args.order)
    report = None
    if not args.no_compress and mpo.bond_dimension > 1:
        mpo, report = row_compress(mpo, args.order, tol=args.qr_tol)
    print(f"method={args.method} order={args.order} interval=[{args.t0}, {args.t}]")
    print(f"bond dimension: {mpo.bond_dimension}")
    print("levels: " + " ".join(repr(l) for l in mpo.levels))
    if args.report and report is not None:
        print(report.to_text())
    return 0


def cmd_integrate(args):
    ham = modelfile.load(args.model)
    channels = [(c.name, c.driving) for c in ham.channels]
    table = BracketTable.compute(channels, args.t0, args.t, args.max_order,
                                 bits=args.bits)
    print("channels,real,imag")
    for key in sorted(table.values, key=lambda k: (len(k), k)):
        v = table.values[key]
        print(f"{' '.join(key)},{v.real:.15g},{v.imag:.15g}")
    return 0


def cmd_bench(args):
    ham = modelfile.load(args.model)
    config = EvolutionConfig(
        n_sites=args.sites,
        t0=args.t0,
        t_final=args.t,
        method=args.method,
        d_max=args.dmax,
        svd_tol=args.svd_tol,
        qtt_bits=args.bits,
        oracle_substeps=args.substeps,
        qr_tol=args.qr_tol,
        self_reference=args.self_reference,
        seed=args.seed,
        orders=tuple(int(o) for o in args.orders.split(",")),
        dts=tuple(float(x) for x in args.dts.split(",")),
    )
    records = run_benchmark(ham, config)
    text = records_to_csv(records, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(records)} records)")
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dysonmpo",
        description="MPO encodings of time-evolution operators for 1D chains")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-mpo", help="build one evolution MPO")
    _add_common(p)
    p.add_argument("--method", choices=["taylor", "dyson", "magnus"],
                   default="dyson")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--no-compress", action="store_true")
    p.add_argument("--report", action="store_true",
                   help="print the compression report")
    p.add_argument("--qr-tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_build_mpo)

    p = sub.add_parser("integrate", help="print a bracket table as CSV")
    _add_common(p)
    p.add_argument("--max-order", type=int, default=2)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("bench", help="error-scaling benchmark")
    _add_common(p)
    p.add_argument("--method", choices=["taylor", "dyson", "magnus"],
                   default="dyson")
    p.add_argument("--orders", default="1,2,3,4")
    p.add_argument("--dts", default="0.25,0.125,0.0625")
    p.add_argument("--sites", type=int, default=8)
    p.add_argument("--dmax", type=int, default=64)
    p.add_argument("--svd-tol", type=float, default=1e-14)
    p.add_argument("--substeps", type=int, default=4000)
    p.add_argument("--qr-tol", type=float, default=1e-12)
    p.add_argument("--self-reference", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_bench, t=1.0)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

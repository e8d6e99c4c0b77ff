"""Compare the lattice oracle with the type recursion over all small groups.

    python scripts/oracle_sweep.py --max-order 64
"""
import argparse
import time

from couniserial.abtype import format_type, type_from_orders
from couniserial.dimension import cudim, usdim
from couniserial.latoracle import ExplicitGroup, SubgroupLattice, groups_up_to, oracle_cudim, oracle_usdim


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=64)
    ap.add_argument("--budget", type=int, default=512)
    args = ap.parse_args()

    mismatches = 0
    t0 = time.monotonic()
    print(f"{'moduli':18} {'type':18} {'subgroups':>9} {'cudim':>5} {'usdim':>5}  ok")
    for ms in groups_up_to(args.max_order):
        g = ExplicitGroup(ms, budget=args.budget)
        lat = SubgroupLattice(g)
        t = type_from_orders(ms)
        oc, ou = oracle_cudim(lat), oracle_usdim(lat)
        ok = oc == cudim(t) and ou == usdim(t)
        mismatches += not ok
        print(f"{str(g):18} {format_type(t):18} {len(lat):>9} {str(oc):>5} {str(ou):>5}  {'yes' if ok else 'NO'}")
    print(f"\n{mismatches} mismatches, {time.monotonic() - t0:.1f}s")
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()

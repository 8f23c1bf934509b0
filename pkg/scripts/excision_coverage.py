"""How many basis symbols the excision identities are certified on, as the cap grows."""

import argparse
import time

from jkforge import excision as ex
from jkforge import tensorial as tn
from jkforge.exactcore import QQ, compose


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--caps", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    args = ap.parse_args()
    print("%-8s %4s %6s %9s %6s" % ("case", "cap", "holds", "covered", "secs"))
    for cap in args.caps:
        for name, D in [("loop", ex.loop_extension_data(QQ, cap)),
                        ("sqz", ex.splitting_data(ex.squarezero_extension(QQ, cap)))]:
            t0 = time.perf_counter()
            M = ex.mapping_path(D)
            res = ex.check_identities(M)
            xu = ex.xi_upsilon(M)
            lhs = compose(ex.alpha(M), tn.J_on_map(ex.iota(M)))
            print("%-8s %4d %6s %4d/%-4d %6.2f" % (name, cap, all(v is None for v in res.values()),
                                                len(lhs.exact & xu.exact), len(xu.source.basis),
                                                time.perf_counter() - t0))


if __name__ == "__main__":
    main()

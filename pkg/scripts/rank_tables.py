"""Cumulative ranks per filtration level for the basic constructions."""

import argparse

from jkforge import funalg, tensorial as tn
from jkforge import matrices as mx
from jkforge import simplicial as sx
from jkforge.exactcore import ground, parse_ring, square_zero


def row(name, A, cap):
    r = A.ranks()
    print("%-22s %s" % (name, " ".join("%5d" % r.get(d, 0) for d in range(1, cap + 1))))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ring", default="Q")
    ap.add_argument("--cap", type=int, default=4)
    args = ap.parse_args()
    R, cap = parse_ring(args.ring), args.cap
    k, sq = ground(R, cap), square_zero(R, 2, cap)
    print("%-22s %s" % ("level", " ".join("%5d" % d for d in range(1, cap + 1))))
    for A in (k, sq):
        row("J(%s)" % A.name, tn.J(A), cap)
        row("E(%s)" % A.name, funalg.path_algebra(A), cap)
        row("Omega(%s)" % A.name, funalg.loop_algebra(A), cap)
    D2 = sx.standard_simplex(2)
    for name, K in [("D2", D2), ("dD2", sx.boundary(D2)), ("I2", sx.cube(2)),
                    ("sdD1", sx.subdivide(sx.standard_simplex(1))),
                    ("D1xD1", sx.product(sx.standard_simplex(1), sx.standard_simplex(1)))]:
        row("k^%s" % name, funalg.power(k, K), cap)
    row("M2(k)", mx.matrix_algebra(k, 2), cap)


if __name__ == "__main__":
    main()

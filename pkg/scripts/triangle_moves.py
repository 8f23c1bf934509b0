"""Print the vertex moves joining two faces of a subdivided simplex, and certify the chain."""

import argparse

from jkforge import funalg
from jkforge import homotopy as ho
from jkforge import simplicial as sx
from jkforge.exactcore import ground, identity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1, help="faces are n-simplices of Delta^(n+1)")
    ap.add_argument("--i", type=int, default=2)
    ap.add_argument("--j", type=int, default=1)
    ap.add_argument("--m", type=int, default=1, help="subdivision depth")
    args = ap.parse_args()
    seq = ho.simplex_face_sequence(args.n, args.i, args.j, args.m)
    for step, (a, b) in enumerate(zip(seq, seq[1:]), 1):
        moved = [v for v in a.source.vertices if a(v) != b(v)]
        for v in moved:
            print("step %d: %s -> %s" % (step, a(v), b(v)))
    k = ground()
    P = funalg.power(k, sx.iterated_subdivision(sx.standard_simplex(args.n + 1), args.m))
    ch = ho.simplex_face_homotopy(identity(P), k, args.n, args.i, args.j, args.m, best_effort=True)
    ok = ho.check_homotopic(ho.face_restriction(k, args.n, args.i, args.m),
                            ho.face_restriction(k, args.n, args.j, args.m), ch)
    print("%d links, certified: %s" % (len(ch), ok))


if __name__ == "__main__":
    main()

"""Graph subspaces U_g defining the same point set as U(b), q = 2.

For each b the full scan over all 16^4 q-polynomials counts the g with
L_{U_g} = L_{U(b)}, how many arise as g(x) = f(lam x)/lam or as the same
scaling of the adjoint, and whether all of them are GL-equivalent to U(b).
"""

import argparse
import json

from linset.classifier import classify_case
from linset.field_tower import FieldSpec
from linset.oracle import gammal_class_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    F = FieldSpec(2)
    recs = []
    for b in F.elements():
        rec = gammal_class_census(F, b)
        rec["case"] = int(classify_case(F, b))
        recs.append(rec)
    if args.json:
        print(json.dumps(recs, indent=2))
        return
    print(f"{'b':>3} {'case':>4} {'matches':>7} {'scaling':>7} {'adjoint':>7} {'either':>6} single_orbit")
    for r in recs:
        print(
            f"{r['b']:>3} {r['case']:>4} {r['matching_polys']:>7} {r['scaling_route']:>7} "
            f"{r['adjoint_route']:>7} {r['either_route']:>6} {r['single_gl_orbit']}"
        )


if __name__ == "__main__":
    main()

"""Run every verification suite over the fields used by the acceptance criteria.

Prints one line per (suite, q) with its agreement count and runtime and
exits nonzero if anything disagrees.
"""

import argparse
import sys
import time

from linset.field_tower import FieldSpec
from linset.verify import verify_geometry, verify_glclass, verify_orbits, verify_weights

PLAN = [
    ("weights", verify_weights, [(2, 1), (3, 1), (2, 2), (5, 1)]),
    ("glclass", lambda F: verify_glclass(F), [(2, 1), (3, 1), (2, 2), (5, 1)]),
    ("geometry", verify_geometry, [(2, 1), (3, 1)]),
    ("orbits", verify_orbits, [(2, 1), (3, 1)]),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip", nargs="*", default=[], choices=[name for name, _, _ in PLAN])
    args = ap.parse_args()
    ok = True
    for name, fn, fields in PLAN:
        if name in args.skip:
            continue
        for p, e in fields:
            F = FieldSpec(p, e)
            t0 = time.perf_counter()
            rep = fn(F)
            dt = time.perf_counter() - t0
            ok &= rep.passed
            status = "PASS" if rep.passed else "FAIL"
            print(f"{status} {name:<9} q={F.q:<2} {rep.agreements}/{rep.pairs_tested} {dt:7.2f}s", flush=True)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()

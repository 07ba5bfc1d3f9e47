"""Class counts of L_U(b) under PGL and PGammaL for small q.

For e = 1 the scattered PGammaL count is compared with (q^2-1)/4 (odd q);
for e > 1 no closed formula is used and the counts are only tabulated.
The last table splits scattered PGammaL classes of prime q by whether
N_{q^4/q^2}(b) lies in GF(q) minus {0, 1, -1}.
"""

import argparse
import json

from linset.classifier import CaseLabel, census, scattered_elements
from linset.field_tower import FieldSpec

FIELDS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


def norm_split(F):
    """Number of distinct N_{q^4/q^2}(b) per scattered PGammaL class, by kind."""
    out = {}
    for cl in census(F, "PGammaL", scattered_elements(F)).classes:
        norms = {F.norm(b, 2) for b in cl.members}
        n = F.norm(cl.rep, 2)
        if n == 0:
            out["b=0"] = [1]
            continue
        kind = "in_Fq" if F.in_subfield(n, 1) and n not in (0, 1, F.minus_one) else "other"
        out.setdefault(kind, []).append(len(norms))
    return {k: sorted(v) for k, v in out.items()}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="*", default=sorted(FIELDS))
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for q in args.q:
        F = FieldSpec(*FIELDS[q])
        pgl = census(F, "PGL").counts()
        pgam = census(F, "PGammaL").counts()
        scat = len(census(F, "PGammaL", scattered_elements(F)).classes)
        row = {
            "q": q,
            "p": F.p,
            "e": F.e,
            "pgl": [pgl[c] for c in CaseLabel],
            "pgammal": [pgam[c] for c in CaseLabel],
            "pgammal_scattered": scat,
            "formula": (q * q - 1) // 4 if F.e == 1 and q % 2 else None,
        }
        if F.e == 1 and q > 2:
            row["norm_split"] = norm_split(F)
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'q':>3} {'p^e':>5} {'PGL c1/c2/c3':>14} {'PGammaL c1/c2/c3':>17} {'scat':>5} {'(q^2-1)/4':>9}")
    for r in rows:
        pgl = "/".join(map(str, r["pgl"]))
        pg = "/".join(map(str, r["pgammal"]))
        f = "" if r["formula"] is None else r["formula"]
        print(f"{r['q']:>3} {r['p']}^{r['e']:<3} {pgl:>14} {pg:>17} {r['pgammal_scattered']:>5} {f!s:>9}")
    for r in rows:
        if "norm_split" in r:
            print(f"q={r['q']} distinct N(b) per class: {r['norm_split']}")


if __name__ == "__main__":
    main()

"""Map where the log-weight identity is exact once s exceeds 1.

Usage:
    python3 scripts/log_weight_census.py [--k-max 200] [--s-max 4]
                                         [--out reports/log_weight_census.json]

For every k <= k_max and 2 <= s <= s_max the exact defect of the identity
is the log-vector

    lhs - rhs = -(s/k) * sum over d | k of mu(k/d) (k mod d^s) log d,

which vanishes identically at s = 1 but only sporadically afterwards.
Whenever every mu-surviving divisor d >= 2 satisfies d^s > k the sum
telescopes to k * Lambda(k), so such points are exact precisely when k has
at least two prime factors ("telescoping" below).  A few points are exact
without that support through accidental cancellation (k = 104 at s = 2 is
the smallest).  Membership in the s-full set {k : rad(k)^s | k} turns out
to predict neither direction, and the script prints the disagreement.
"""

import argparse
import json
import sys
from pathlib import Path

from ramsum.arith import divisors, factorize, moebius
from ramsum.identities import check_log_weight
from ramsum.logspace import render


def surviving_divisors(k):
    fac = factorize(k)
    return [d for d in divisors(fac) if moebius(factorize(k // d)) != 0]


def telescopes(k, s):
    if len(factorize(k).factors) < 2:
        return False
    return all(d**s > k for d in surviving_divisors(k) if d >= 2)


def is_s_full(k, s):
    rad = 1
    for p, _ in factorize(k).factors:
        rad *= p
    return k % rad**s == 0


def census(k_max, s_max):
    doc = {}
    for s in range(2, s_max + 1):
        verified, telescoped, cancelled, sfull_mismatch = [], [], [], []
        findings = 0
        for k in range(2, k_max + 1):
            out = check_log_weight(k, s)
            if out.passed:
                verified.append(k)
                (telescoped if telescopes(k, s) else cancelled).append(k)
            else:
                findings += 1
                if is_s_full(k, s):
                    sfull_mismatch.append(k)
        doc[str(s)] = {
            "verified": verified,
            "telescoping": telescoped,
            "cancellation": cancelled,
            "findings": findings,
            "s_full_yet_mismatch": sfull_mismatch,
        }
    return doc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k-max", type=int, default=200)
    parser.add_argument("--s-max", type=int, default=4)
    parser.add_argument("--out", default="reports/log_weight_census.json")
    args = parser.parse_args(argv)

    doc = census(args.k_max, args.s_max)
    for s, row in doc.items():
        print(f"s={s}: {len(row['verified'])} exact, {row['findings']} findings "
              f"(k <= {args.k_max})")
        print(f"  exact via telescoping: {row['telescoping']}")
        print(f"  exact via cancellation: {row['cancellation']}")
        print(f"  s-full yet mismatching: {row['s_full_yet_mismatch']}")
        for k in row["s_full_yet_mismatch"][:3]:
            out = check_log_weight(k, int(s))
            print(f"    defect at k={k}: {render(out.lhs - out.rhs)}")

    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

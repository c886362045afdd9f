#!/usr/bin/env python3
"""Probe and certify the Weak Lefschetz Property across the built corpus.

Usage: python scripts/wlp_survey.py [--seed S] [--certify-flagship]

Prints one line per module: probe verdict, certified verdict, and the
failing degrees with their generic ranks.  The non-unimodal flagship is
probed only unless --certify-flagship is given (its symbolic
certification runs 27x28 eliminations and takes tens of seconds).
"""
import argparse
import sys
import time

from apolar import (
    InverseSystem,
    build_example2,
    build_example7,
    build_prop8,
    build_remark9,
    parse_form,
    wlp_certify,
    wlp_probe,
)


def describe(cert):
    if not cert.failing:
        return cert.verdict
    spots = ", ".join(
        f"deg {i}: rank {cert.reports[i].rank}/{cert.reports[i].required}"
        for i in cert.failing
    )
    return f"{cert.verdict} ({spots})"


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--certify-flagship", action="store_true")
    args = ap.parse_args()

    corpus = {
        "monomial-ci": InverseSystem(3, (parse_form("y1*y2*y3"),)),
        "prop8": build_prop8(),
        "remark9(7,5)": build_remark9(7, 5, args.seed).system,
    }
    for e in range(3, 7):
        corpus[f"example7(e={e})"] = build_example7(e)
    flagship = build_example2(args.seed).system
    corpus["example2"] = flagship

    for name, M in corpus.items():
        t0 = time.perf_counter()
        probe = wlp_probe(M, args.seed)
        if name == "example2" and not args.certify_flagship:
            print(f"{name:<14} probe: {describe(probe)}  [certify skipped]")
            continue
        cert = wlp_certify(M)
        agree = "agree" if probe.holds() == cert.holds() else "DISAGREE"
        print(
            f"{name:<14} probe: {probe.verdict:<20} certified: {describe(cert)}"
            f"  [{agree}, {time.perf_counter() - t0:.1f}s]"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""How often do the certificate searches decide a join that has no closed form?

Two reports:

* on the slice grid inside R, the word (A&B)|(A&C) is decided by a witness
  (OUT) or a GHZ-symmetric split (IN); the H1 hexagon is the reference, so
  any point left undecided or decided against H1 shows up as a count;
* on random rational GHZ-diagonal states, verdict counts for a few words
  outside the catalog.
"""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from partsep.lattice import Answer, evaluate
from partsep.oracle import decompose_join
from partsep.slices import RegionTag, region_status, rho_st
from partsep.witness import certify_out
from partsep.xcore import Status, XMatrix


@dataclass(frozen=True)
class StatsConfig:
    denom: int = 24
    states: int = 500
    seed: int = 0
    words: tuple = ("(A&B)|(A&C)", "A&(B|C)", "A|(B&(A|C))", "(A|B)&(A|C)&(B|C)")


def slice_report(cfg: StatsConfig) -> Counter:
    out = Counter()
    D = cfg.denom
    for j in range(-D, D + 1):
        for i in range(-D, D + 1):
            if region_status(RegionTag.R, i, j, D) is Status.OUT:
                continue
            m = rho_st(Fraction(i, D), Fraction(j, D))
            h1 = region_status(RegionTag.H1, i, j, D)
            w = certify_out(m, "(A&B)|(A&C)")
            split = decompose_join(m, ["A&B", "C&A"])
            if w is not None and split is not None:
                out["contradiction"] += 1
            elif w is not None:
                out["witness, H1 OUT" if h1 is Status.OUT else "witness, H1 not OUT"] += 1
            elif split is not None:
                out["split, H1 IN/BOUNDARY" if h1 is not Status.OUT else "split, H1 OUT"] += 1
            else:
                out["undecided, H1 " + h1.value] += 1
    return out


def random_state(rng: random.Random, denom: int = 24) -> XMatrix:
    a = [Fraction(rng.randint(0, denom), denom) for _ in range(4)]
    c = [Fraction(rng.randint(-int(x * denom), int(x * denom)), denom) for x in a]
    return XMatrix.ghz(a, c)


def word_report(cfg: StatsConfig) -> dict:
    rng = random.Random(cfg.seed)
    states = [random_state(rng) for _ in range(cfg.states)]
    out = {}
    for word in cfg.words:
        c = Counter()
        for m in states:
            r = evaluate(m, word)
            kind = r.certificate.kind if r.certificate else "none"
            c[f"{r.verdict.value} via {kind}" if r.verdict is not Answer.UNKNOWN else "UNKNOWN"] += 1
        out[word] = c
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--denom", type=int, default=StatsConfig.denom)
    ap.add_argument("--states", type=int, default=StatsConfig.states)
    ap.add_argument("--seed", type=int, default=StatsConfig.seed)
    a = ap.parse_args()
    cfg = StatsConfig(a.denom, a.states, a.seed)
    print(f"(A&B)|(A&C) on the slice inside R, denominator {cfg.denom}:")
    for k, v in sorted(slice_report(cfg).items()):
        print(f"  {k:28s} {v}")
    print(f"\nverdicts on {cfg.states} random GHZ-diagonal states (seed {cfg.seed}):")
    for word, c in word_report(cfg).items():
        print(f"  {word}")
        for k, v in sorted(c.items()):
            print(f"    {k:28s} {v}")


if __name__ == "__main__":
    main()

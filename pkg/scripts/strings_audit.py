"""Audit chi against 40 chi^3 and the boundary ordering on seeded string arrangements.

    python3 scripts/strings_audit.py --count 100 --curves 30
"""

import argparse
import random
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from pervade.graph import Budget
from pervade.strings import DegenerateBoundary, Disc, audit_40chi3, boundary_order, check_cross_property, clip_with_jitter, random_arrangement


@dataclass
class StringsAuditConfig:
    seed: int = 0
    count: int = 100
    curves: int = 30
    segments: int = 6
    box: int = 100
    budget: float = 10.0
    order: bool = True  # also clip to a disc and check the cross property


def audit_one(cfg: StringsAuditConfig, seed: int) -> dict:
    rng = random.Random(seed)
    arr = random_arrangement(seed, rng.randint(1, cfg.curves), cfg.segments, box=cfg.box)
    a = audit_40chi3(arr, Budget(cfg.budget))
    row = {"seed": seed, "n": arr.graph.n, "m": arr.graph.m, "chi": str(a.chi), "chi3": str(a.chi3), "bound_holds": a.bound_holds}
    if cfg.order:
        half = Fraction(cfg.box, 2)
        disc = Disc(half + Fraction(1, 7), half + Fraction(2, 11), Fraction(rng.randint(cfg.box // 5, cfg.box // 3)) + Fraction(1, 13))
        try:
            clipped, _, jitter = clip_with_jitter(arr, disc)
            bo = boundary_order(clipped)
            row.update(boundary=len(bo.order), jitter=str(jitter), cross=str(check_cross_property(clipped.graph, bo.order, Budget(cfg.budget))))
        except DegenerateBoundary as e:
            row.update(boundary="", jitter="", cross=f"degenerate: {e}")
    return row


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(StringsAuditConfig):
        if f.type in (bool, "bool"):
            ap.add_argument(f"--{f.name}", action=argparse.BooleanOptionalAction, default=f.default)
        else:
            ap.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    cfg = StringsAuditConfig(**vars(ap.parse_args()))
    bad = 0
    for i in range(cfg.count):
        row = audit_one(cfg, cfg.seed * 100003 + i)
        bad += row["bound_holds"] is False or row.get("cross", "Accept") not in ("Accept", "Timeout") and not row["cross"].startswith("degenerate")
        print("\t".join(f"{k}={v}" for k, v in row.items()))
    print(f"# {cfg.count} arrangements, {bad} violations", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

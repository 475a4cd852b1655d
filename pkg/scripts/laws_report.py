"""Run the sampled law suites over the domain zoo and write a summary table.

    python3 scripts/laws_report.py --samples 200 --seed 20240601 [--out report.json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from appl.domains import make_domain, make_gi
from appl.laws import domain_laws, galois_laws
from appl.order import SamplePlan

DOMAINS = [
    "collecting(x:0..2)",
    "incorrectness(x:0..2)",
    "interval(irreducible)",
    "interval(simple)",
    "hyper(collecting(x:0..2))",
    "pointwise(interval-over-powerset(x:0..3))",
    "product(interval-over-powerset(x:0..3))",
    "downclosed(hyper(interval))",
]
GIS = ["interval-over-powerset(x:-2..2)", "trivial-top(x:0..3)"]


@dataclass
class ReportConfig:
    samples: int = 200
    seed: int = 20240601
    depth: int = 3
    domains: list = field(default_factory=lambda: list(DOMAINS))


def run(cfg: ReportConfig) -> list:
    plan = SamplePlan(seed=cfg.seed, samples=cfg.samples)
    rows = []
    for spec in cfg.domains:
        t0 = time.perf_counter()
        rep = domain_laws(make_domain(spec), plan, depth=cfg.depth)
        rows.append((spec, rep, time.perf_counter() - t0))
    for gi in GIS:
        t0 = time.perf_counter()
        rows.append((f"galois {gi}", galois_laws(make_gi(gi), plan), time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--out", help="also write the rows as json")
    args = ap.parse_args()
    cfg = ReportConfig(args.samples, args.seed, args.depth)
    rows = run(cfg)
    out = []
    for subject, rep, secs in rows:
        failed = [e.name for e in rep.entries if not e.passed]
        print(f"{'PASS' if not failed else 'FAIL'}  {subject:<45} {len(rep.entries):>2} laws  {secs:6.2f}s")
        for name in failed:
            print(f"        failed: {name}")
        out.append(
            {
                "subject": subject,
                "seconds": round(secs, 3),
                "laws": {e.name: {"passed": e.passed, "checked": e.checked} for e in rep.entries},
            }
        )
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": out}, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()

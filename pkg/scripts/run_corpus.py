"""Check every derivation script in the corpus and print one line per file.

Positive scripts must be accepted; the ones under negative/ must be
rejected. Exits non-zero if any file disagrees.

    python3 scripts/run_corpus.py [--json]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from appl.logic import check_script

CORPUS = Path(__file__).resolve().parent / "corpus"


def check(path: Path, expect: bool) -> dict:
    t0 = time.perf_counter()
    rep = check_script(path.read_text())
    return {
        "file": str(path.relative_to(CORPUS)),
        "expected": "Accepted" if expect else "Rejected",
        "verdict": rep.verdict,
        "failure": None if rep.accepted else f"{rep.path}: {rep.condition}",
        "seconds": round(time.perf_counter() - t0, 3),
        "ok": rep.accepted == expect,
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [check(p, True) for p in sorted(CORPUS.glob("*.appl"))]
    rows += [check(p, False) for p in sorted((CORPUS / "negative").glob("*.appl"))]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            mark = "ok " if r["ok"] else "BAD"
            extra = f"  ({r['failure']})" if r["failure"] else ""
            print(f"{mark} {r['verdict']:<8} {r['file']:<40} {r['seconds']:.3f}s{extra}")
    return 0 if all(r["ok"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())

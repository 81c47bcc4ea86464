"""Run the consistency sweep for both varieties and print a summary."""

import json
import sys

from tiltstab.verify import verify_all


def main():
    failed = False
    for geom in ("triple", "double"):
        rep = verify_all(geom)
        for check in rep.checks:
            mark = "ok  " if check.passed else "FAIL"
            print(f"{geom:7} {mark} {check.name}" + ("" if check.passed else f"  ({check.detail})"))
        for w in rep.warnings:
            print(f"{geom:7} warn {w}")
        failed |= not rep.passed
    if "--json" in sys.argv:
        print(json.dumps([verify_all(g).to_json() for g in ("triple", "double")], indent=2))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

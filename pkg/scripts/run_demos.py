#!/usr/bin/env python3
"""Run every built-in demonstration and summarize."""

import sys

from nba import demos


def main() -> int:
    failures = 0
    for name in demos.demo_names():
        ok, lines = demos.run_demo(name)
        print(f"== {name}: {'PASS' if ok else 'FAIL'}")
        for line in lines:
            print(f"   {line}")
        failures += 0 if ok else 1
    print(f"\n{len(demos.demo_names()) - failures}/{len(demos.demo_names())} demos passed")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())

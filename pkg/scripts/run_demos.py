"""Run every built-in demo and print a one-line verdict per scenario."""

import argparse
import sys
import time

from betlogic.demos import DEMOS, run_demo


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", metavar="NAME", help=f"any of {', '.join(DEMOS)}")
    parser.add_argument("-v", "--verbose", action="store_true", help="print the full transcript")
    args = parser.parse_args(argv)
    unknown = set(args.names) - set(DEMOS)
    if unknown:
        parser.error(f"unknown demo(s): {', '.join(sorted(unknown))}")

    failed = 0
    for name in args.names or DEMOS:
        start = time.perf_counter()
        result = run_demo(name)
        elapsed = time.perf_counter() - start
        if args.verbose:
            print("\n".join(result.lines))
        print(f"{name:<9} {'ok' if result.ok else 'FAILED':<7} "
              f"{len(result.records):>6} conclusions  {elapsed:6.2f}s")
        for failure in result.failures:
            print(failure)
        failed += not result.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
ritt-kit command line entry point.

    python ritt_kit.py classify --f "x^3 + x"
    python ritt_kit.py curve-period --field "Q(zeta 7)" --curve "x - z*y" --f "x^2" --g "x^2" --nmax 5
    python ritt_kit.py --job job.json

The result document goes to stdout, logs go to stderr.
"""

import logging
import sys

from cli.commands import run_command


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    verbose = sum(1 for a in argv if a in ("-v", "--verbose"))
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose > 1 else logging.INFO if verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    status, document = run_command(argv)
    print(document)
    return status


if __name__ == "__main__":
    sys.exit(main())

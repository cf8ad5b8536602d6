"""Entry point for ``python -m metricdl``."""

import sys

from metricdl.cli import run


def main() -> None:
    """Run the command line."""
    sys.exit(run())


if __name__ == "__main__":
    main()

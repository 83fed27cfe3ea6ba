"""CLI utility to run a prediction-versus-oracle sweep and write CSV."""
from __future__ import annotations

import sys

from twogap.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["compare", *sys.argv[1:]]))

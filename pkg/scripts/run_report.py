#!/usr/bin/env python3
"""Regenerate the full verification report (same as `crepant report --all`)."""
import sys

from crepant.cli import main

if __name__ == "__main__":
    sys.exit(main(["report", "--all", "--order", "8", "--precision", "40"]
                  + sys.argv[1:]))

#!/usr/bin/env python3
"""CLI tool for stabbing families with the (p, q)-property."""

import sys
from pathlib import Path

# Add parent directory to path to import from src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())

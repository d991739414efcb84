"""Allow `python -m collatzk`."""
import sys

from collatzk.cli import main

sys.exit(main())

import sys

from abtk.experiments.cli import main

sys.exit(main())

import sys

from litho_sim.cli import main

sys.exit(main())

import sys

from qzalg.cli import main

sys.exit(main())

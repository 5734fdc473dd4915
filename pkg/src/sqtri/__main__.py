import sys

from sqtri.cli import main

sys.exit(main())

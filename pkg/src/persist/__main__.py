import sys

from persist.cli import main

sys.exit(main())

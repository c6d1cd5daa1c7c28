import sys

from BSSit.cli import main

sys.exit(main())

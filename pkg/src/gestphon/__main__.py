import sys

from gestphon.cli import main

sys.exit(main())

import sys

from ifam.cli import main

sys.exit(main())

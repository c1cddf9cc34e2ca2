import sys

from thetalg.cli import main

sys.exit(main())

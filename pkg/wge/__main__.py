import sys

from wge.cli import main


sys.exit(main())

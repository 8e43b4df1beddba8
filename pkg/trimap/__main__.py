import sys

from trimap.cli import main


sys.exit(main())

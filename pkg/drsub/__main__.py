import sys

from drsub.main import main

sys.exit(main())

import sys

from qcorr.main import main

sys.exit(main())

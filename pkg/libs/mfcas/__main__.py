import sys

from mfcas.cli import main

sys.exit(main())

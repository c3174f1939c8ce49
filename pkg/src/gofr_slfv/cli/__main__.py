import sys

from gofr_slfv.cli.main import main

sys.exit(main())

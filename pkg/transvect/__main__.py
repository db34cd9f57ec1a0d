import sys

from transvect.main import main

sys.exit(main())

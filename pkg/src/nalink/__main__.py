from nalink.cli import main
import sys

sys.exit(main())

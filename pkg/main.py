import sys

from pcenters.cli.main import main

if __name__ == "__main__":
    sys.exit(main())

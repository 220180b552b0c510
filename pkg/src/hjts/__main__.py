"""Allow ``python -m hjts`` alongside the installed ``hjts`` script."""
from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())

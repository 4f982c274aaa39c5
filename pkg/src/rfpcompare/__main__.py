"""Entry point for ``python -m rfpcompare``."""

from .cli import main

if __name__ == "__main__":
    main()

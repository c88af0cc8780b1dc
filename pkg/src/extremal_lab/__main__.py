"""Entry point for ``python -m extremal_lab``."""

from .cli import run

if __name__ == "__main__":
    run()

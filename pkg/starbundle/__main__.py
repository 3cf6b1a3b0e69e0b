"""Entry point for ``python -m starbundle``."""

from starbundle.cli.commands import starbundle

if __name__ == "__main__":
    starbundle()

"""Common utilities and shared functionality for the starbundle package."""

import os

__all__ = ["get_project_root"]


def get_project_root() -> str:
    """Get the project root directory (the directory holding the package)."""
    return os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

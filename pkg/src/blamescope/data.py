"""Access to bundled example models and logs."""

from importlib import resources


def bundled_path(name: str):
    """Filesystem path of a bundled data file (e.g. "xor.json")."""
    return resources.files(__package__) / "data" / name

"""Setup file for spikedse; metadata and dependencies live in setup.cfg."""
# stdlib
from pathlib import Path
import re

# third party
from setuptools import setup

VERSION_FILE = Path(__file__).resolve().parent / "src" / "spikedse" / "version.py"


def find_version() -> str:
    match = re.search(r'^__version__ = "([^"]+)"', VERSION_FILE.read_text(), re.MULTILINE)
    if match is None:
        raise RuntimeError(f"no __version__ in {VERSION_FILE}")
    return match.group(1)


if __name__ == "__main__":
    setup(version=find_version())

"""
Main entry point for the bergman-toolkit command line.
"""
import sys
from pathlib import Path

# Ensure the project root is in the Python path
# This helps Python find the 'app' package
root_dir = Path(__file__).parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from app.cli import run


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

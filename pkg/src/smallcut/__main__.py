"""CLI entry point for the smallcut package."""

from smallcut.cli import main

if __name__ == "__main__":
    main()

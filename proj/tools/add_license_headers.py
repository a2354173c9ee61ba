#!/usr/bin/env python3
"""Prepends the license header to every C++ source file that lacks it."""

import argparse
import pathlib

DIRS = ("include", "src", "tests", "tools", "bench")
SUFFIXES = {".cpp", ".hpp", ".h", ".cc"}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("header", type=pathlib.Path, help="file holding the comment block")
    parser.add_argument("--root", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parent.parent)
    args = parser.parse_args()

    header = args.header.read_text().rstrip("\n") + "\n"
    first = header.splitlines()[0]
    changed = 0
    for d in DIRS:
        for path in sorted((args.root / d).rglob("*")):
            if path.suffix not in SUFFIXES or not path.is_file():
                continue
            text = path.read_text()
            if text.startswith(first):
                continue
            path.write_text(header + "\n" + text)
            changed += 1
    print(f"{changed} files updated")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerates the committed raw linter outputs from real tool runs.

Optional integration helper: run it in an environment with the pinned tool
versions installed (see docs/inspectors.md) to refresh the fixture outputs.
Directories ending in `_synthetic` pin parser edge cases (skip rules, odd
paths) and are never regenerated.

Usage: scripts/regenerate_fixtures.py [fixtures_dir]
"""
import pathlib
import shutil
import subprocess
import sys

PINNED = {
    "flake8": ["flake8", "--version"],
    "pylint": ["pylint", "--version"],
    "checkstyle": ["checkstyle", "--version"],
    "pmd": ["pmd", "--version"],
}


def run(cmd, cwd):
    return subprocess.run(cmd, cwd=cwd, capture_output=True, text=True, check=False)


def regenerate(tool_dir: pathlib.Path):
    tool = tool_dir.name
    if shutil.which(PINNED[tool][0]) is None:
        print(f"skip {tool}: not installed")
        return
    for case in sorted(tool_dir.iterdir()):
        if not case.is_dir() or case.name.endswith("_synthetic"):
            continue
        inputs = [p for p in case.iterdir() if p.suffix in (".py", ".java")]
        if len(inputs) != 1:
            print(f"skip {case}: expected exactly one input source")
            continue
        source = inputs[0].name
        if tool == "flake8":
            proc = run(["flake8", source], cwd=case)
            (case / "output.txt").write_text(proc.stdout)
        elif tool == "pylint":
            proc = run(["pylint", "--output-format=json", "--score=n", source], cwd=case)
            (case / "output.json").write_text(proc.stdout)
        elif tool == "checkstyle":
            proc = run(["checkstyle", "-f", "xml", "-c", "/google_checks.xml", source], cwd=case)
            (case / "output.xml").write_text(proc.stdout)
        elif tool == "pmd":
            proc = run(["pmd", "-no-cache", "-f", "xml", "-R",
                        "rulesets/java/quickstart.xml", "-d", source], cwd=case)
            (case / "output.xml").write_text(proc.stdout)
        print(f"regenerated {case}")


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    for tool in PINNED:
        tool_dir = root / tool
        if tool_dir.is_dir():
            regenerate(tool_dir)
    print("note: expected.json files are the review gate; re-check them after regenerating")


if __name__ == "__main__":
    main()

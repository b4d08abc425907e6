"""Run the acceptance suite with the full SP_4 stretch budget.

    python3 scripts/run_acceptance.py [--stretch-budget 600]
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--stretch-budget", type=float, default=600.0, help="seconds for the SP_4 4-colouring refutation")
    ap.add_argument("pytest_args", nargs="*")
    args = ap.parse_args()
    env = dict(os.environ, PERVADE_STRETCH_BUDGET=str(args.stretch_budget))
    cmd = [sys.executable, "-m", "pytest", "-q", str(ROOT / "tests" / "test_acceptance.py"), *args.pytest_args]
    return subprocess.call(cmd, cwd=ROOT, env=env)


if __name__ == "__main__":
    sys.exit(main())

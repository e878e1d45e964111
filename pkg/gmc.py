"""
Convenience entrypoint so `python gmc.py` works from the repo root.

Example:
    python gmc.py gen --kind thin --n 32 --s 4 --seed 1 --out artifacts/thin.json
    python gmc.py solve --alg horizontal --in artifacts/thin.json
"""
from src.cli import main


if __name__ == "__main__":
    raise SystemExit(main())

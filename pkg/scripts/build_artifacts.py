"""Write the sparse-grid tilesets and a SHA256SUMS file.

    python3 scripts/build_artifacts.py [out_dir]   (default: artifacts/)
"""
import hashlib
import sys
from pathlib import Path

from wangshift.sparse_grid import artifacts


def main(out="artifacts"):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    sums = []
    for name, text in sorted(artifacts().items()):
        (out / name).write_text(text)
        sums.append(f"{hashlib.sha256(text.encode()).hexdigest()}  {name}")
    (out / "SHA256SUMS").write_text("\n".join(sums) + "\n")
    print("\n".join(sums))


if __name__ == "__main__":
    main(*sys.argv[1:])

#!/usr/bin/env python3
"""Fetch the classic grayscale Lena test scans and convert them to PGM.

The acceptance suite's strict quality checks need the standard 512x512 and
256x256 8-bit grayscale Lena scans, which cannot be redistributed with this
repository. This script downloads a commonly used scan, converts it to binary
PGM, prints its SHA-256 (so the exact scan used can be recorded alongside any
published numbers), and drops the files where the tests look for them:

    crates/ca-denoise/tests/data/lena_512.pgm
    crates/ca-denoise/tests/data/lena_256.pgm

Requires: Pillow, numpy, and network access.

Usage: python3 scripts/fetch_lena.py [--url URL]
"""

import argparse
import hashlib
import io
import sys
import urllib.request
from pathlib import Path

# Widely mirrored grayscale 512x512 scans; tried in order.
CANDIDATE_URLS = [
    "https://www.ece.rice.edu/~wakin/images/lena512.bmp",
    "https://raw.githubusercontent.com/mikolalysenko/lena/master/lena.png",
]

DATA_DIR = Path(__file__).resolve().parent.parent / "crates" / "ca-denoise" / "tests" / "data"


def fetch(url: str) -> bytes:
    print(f"fetching {url} ...")
    with urllib.request.urlopen(url, timeout=30) as resp:
        return resp.read()


def write_pgm(path: Path, pixels) -> None:
    import numpy as np

    arr = np.asarray(pixels, dtype=np.uint8)
    h, w = arr.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode())
        f.write(arr.tobytes())
    print(f"wrote {path} ({w}x{h})")


def main() -> int:
    import numpy as np
    from PIL import Image

    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--url", help="explicit source URL (overrides the built-in candidates)")
    args = parser.parse_args()

    urls = [args.url] if args.url else CANDIDATE_URLS
    raw = None
    for url in urls:
        try:
            raw = fetch(url)
            break
        except Exception as exc:  # noqa: BLE001 - report and try the next mirror
            print(f"  failed: {exc}", file=sys.stderr)
    if raw is None:
        print("all sources failed; supply --url", file=sys.stderr)
        return 1

    print(f"source SHA-256: {hashlib.sha256(raw).hexdigest()}")
    img = Image.open(io.BytesIO(raw)).convert("L")
    if img.size != (512, 512):
        print(f"warning: expected 512x512, got {img.size}; resizing", file=sys.stderr)
        img = img.resize((512, 512), Image.LANCZOS)
    arr = np.asarray(img, dtype=np.float64)

    DATA_DIR.mkdir(parents=True, exist_ok=True)
    write_pgm(DATA_DIR / "lena_512.pgm", arr)

    # 256x256 companion: 2x2 box mean, rounded half up
    small = np.floor(
        (arr[0::2, 0::2] + arr[0::2, 1::2] + arr[1::2, 0::2] + arr[1::2, 1::2]) / 4 + 0.5
    )
    write_pgm(DATA_DIR / "lena_256.pgm", small)
    print("done; rerun the acceptance suite to pick the files up")
    return 0


if __name__ == "__main__":
    sys.exit(main())

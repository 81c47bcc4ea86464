"""Write every figure as SVG and CSV into an output directory."""

import argparse
from pathlib import Path

from tiltstab import figures


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--variety", choices=["triple", "double"], default="triple")
    parser.add_argument("--samples", type=int, default=64)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in figures.FIGURES:
        for fmt in ("svg", "csv"):
            path = args.out / f"{name}_{args.variety}.{fmt}"
            figures.emit_figure(name, args.variety, path=path, fmt=fmt, samples=args.samples)
            print(path)


if __name__ == "__main__":
    main()

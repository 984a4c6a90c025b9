"""Command line: plot spectrum|scaling --in DIR --out FILE.png"""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, SchemaError, plot_scaling, plot_spectrum


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "scaling"):
        sub = subs.add_parser(name)
        sub.add_argument("--in", dest="in_dir", required=True, help="directory with the run's CSV files")
        sub.add_argument("--out", dest="out_path", required=True, help="output image path (.png)")
        sub.add_argument("--log-x", action="store_true", help="logarithmic time axis (scaling)")
        sub.add_argument("--min-overlap", type=float, default=0.01,
                         help="only draw eigenvalue lines above this overlap (spectrum)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(in_dir=args.in_dir, out_path=args.out_path, kind=args.command,
                      log_x=args.log_x, min_overlap=args.min_overlap)
    try:
        result = plot_spectrum(spec) if args.command == "spectrum" else plot_scaling(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    print(result["out_path"])
    return 0


if __name__ == "__main__":
    sys.exit(main())

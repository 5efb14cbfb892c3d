"""Render a figure from a fuzzy-casimir output table.

    casimir-plots --input table.json --kind dispersion --out figure.svg

The output format follows the --out extension (svg, png, pdf, ...).  Exit 0
on success, 2 on unusable input or arguments; nothing is written on error.
"""

import argparse
import sys

import matplotlib

from .io import load_table


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir-plots",
        description="Render dispersion, energy, force or fit-residual figures "
        "from fuzzy-casimir CSV/JSON tables.",
    )
    parser.add_argument("--input", required=True, help="CSV or JSON table")
    parser.add_argument("--kind", required=True,
                        choices=("dispersion", "energy", "force", "fit_residuals"))
    parser.add_argument("--out", required=True, help="figure path; extension picks the format")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    matplotlib.use("Agg")
    from .figures import FIGURE_KINDS

    try:
        table = load_table(args.input)
        fig = FIGURE_KINDS[args.kind](table, source=args.input)
        fig.savefig(args.out, dpi=args.dpi)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

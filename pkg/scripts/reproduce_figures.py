"""Write the data series for all five figures as CSV files.

    python scripts/reproduce_figures.py [OUTDIR]

Each file holds the swept parameter, one value column per criterion, and
``:violated`` / ``:slack`` columns. Plotting is left to whatever tool you like.
"""
import sys
from pathlib import Path

from tripartite_cv.sweep import FIGURES, reproduce_figure


def main(outdir: str = "figures") -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for fig, (model, labels) in FIGURES.items():
        table = reproduce_figure(fig)
        path = out / f"{fig}.csv"
        path.write_text(table.to_csv(), encoding="utf-8", newline="\n")
        print(f"{fig}: {model}, {len(table.rows)} points, {', '.join(labels)} -> {path}")


if __name__ == "__main__":
    main(*sys.argv[1:2])

"""Generate the invariant tables and summary figures for a curve corpus.

Tables go to `reports/tables`, figures to `reports/figures`.

Usage:
  python -m scripts.report_generator --max-crossings 7 --prime --reduced
"""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from spherecurves.core.config import settings  # noqa: E402
from spherecurves.logging_config import configure_logging  # noqa: E402
from spherecurves.services.corpus import (  # noqa: E402
    class_counts,
    enumerate_curves,
    lines_table,
    move_lines,
    table,
)


def save_tables(classes, out_dir: Path) -> pd.DataFrame:
    out_dir.mkdir(parents=True, exist_ok=True)
    df = table(classes)
    csv_path = out_dir / "invariants.csv"
    df.to_csv(csv_path, index=False)
    df.to_json(out_dir / "invariants.json", orient="records", indent=2, force_ascii=False)
    counts = pd.DataFrame(sorted(class_counts(classes).items()), columns=["n", "classes"])
    counts.to_csv(out_dir / "class_counts.csv", index=False)
    print(f"Saved table: {csv_path} ({len(df)} rows)")
    return df


def save_lines(classes, out_dir: Path, identify_mirrors: bool = True) -> pd.DataFrame:
    out_dir.mkdir(parents=True, exist_ok=True)
    df = lines_table(move_lines(classes, identify_mirrors=identify_mirrors))
    csv_path = out_dir / "move_lines.csv"
    df.to_csv(csv_path, index=False)
    print(f"Saved table: {csv_path} ({len(df)} rows)")
    return df


def save_figures(df: pd.DataFrame, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    nontrivial = df[df["n"] > 0]
    if nontrivial.empty:
        print("No nontrivial classes; figures skipped")
        return

    per_n = nontrivial.groupby("n").size()
    plt.figure(figsize=(7, 4))
    plt.bar(per_n.index.astype(str), per_n.values, color="#2e8b57")
    plt.xlabel("Double points")
    plt.ylabel("Classes")
    plt.title("Curve classes by crossing number")
    plt.tight_layout()
    out_path = out_dir / "class_counts.png"
    plt.savefig(out_path)
    plt.close()
    print(f"Saved figure: {out_path}")

    plt.figure(figsize=(6, 6))
    plt.scatter(nontrivial["inv_s3"], nontrivial["inv_s2"], c=nontrivial["n"], cmap="viridis")
    for _, row in nontrivial.iterrows():
        if not str(row["name"]).startswith("n"):
            plt.annotate(row["name"], (row["inv_s3"], row["inv_s2"]), fontsize=8)
    plt.xlabel("l + r - b")
    plt.ylabel("u - l - r + b")
    plt.title("Invariant plane")
    plt.colorbar(label="n")
    plt.tight_layout()
    out_path = out_dir / "invariant_plane.png"
    plt.savefig(out_path)
    plt.close()
    print(f"Saved figure: {out_path}")


def main():
    parser = argparse.ArgumentParser(description="Regenerate invariant tables and figures")
    parser.add_argument("--max-crossings", type=int, default=settings.DEFAULT_MAX_CROSSINGS)
    parser.add_argument("--prime", action="store_true")
    parser.add_argument("--reduced", action="store_true")
    parser.add_argument("--keep-mirrors", action="store_true", help="list chiral pairs separately")
    parser.add_argument("--lines", action="store_true", help="also write the move-lines table")
    parser.add_argument("--output", default=str(settings.REPORTS_DIR), help="Reports directory")
    args = parser.parse_args()

    configure_logging(log_level="INFO")
    classes = enumerate_curves(
        args.max_crossings, prime=args.prime, reduced=args.reduced, identify_mirrors=not args.keep_mirrors
    )
    out = Path(args.output)
    df = save_tables(classes, out / "tables")
    save_figures(df, out / "figures")
    if args.lines:
        save_lines(classes, out / "tables", identify_mirrors=not args.keep_mirrors)


if __name__ == "__main__":
    main()

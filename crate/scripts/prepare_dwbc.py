#!/usr/bin/env python3
"""Prepare the balanced DWBC benchmark table.

The Diagnostic Wisconsin Breast Cancer table distributed with scikit-learn
has 569 rows (212 malignant, 357 benign) in the original UCI row order.
The benchmark uses a balanced 424-row subset: all 212 malignant rows plus
the first 212 benign rows in file order, with the original relative order
preserved.

Output: a headerless CSV with 30 feature columns followed by the label
column ("M" or "B").

Usage: python3 scripts/prepare_dwbc.py [out_csv]
"""

import sys

from sklearn.datasets import load_breast_cancer


def main() -> None:
    out_path = sys.argv[1] if len(sys.argv) > 1 else "data/dwbc.csv"

    bunch = load_breast_cancer()
    data, target = bunch.data, bunch.target  # target: 0 = malignant, 1 = benign

    benign_kept = 0
    rows = []
    for features, label in zip(data, target):
        if label == 1:
            if benign_kept >= 212:
                continue
            benign_kept += 1
        tag = "M" if label == 0 else "B"
        rows.append(",".join(repr(float(v)) for v in features) + "," + tag)

    assert len(rows) == 424, f"expected 424 rows, got {len(rows)}"
    with open(out_path, "w") as f:
        f.write("\n".join(rows) + "\n")
    print(f"wrote {len(rows)} rows to {out_path}")


if __name__ == "__main__":
    main()

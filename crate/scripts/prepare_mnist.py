#!/usr/bin/env python3
"""Prepare the MNIST benchmark pool as IDX files.

Source: the `mnist` npm package (https://www.npmjs.com/package/mnist,
version 1.1.0), which redistributes ~10k MNIST digits grouped per digit as
JSON arrays of pixel intensities rounded to three decimals of byte/255.
Because consecutive byte values differ by 1/255 > 2 * 0.0005, the original
byte value of every pixel is recovered exactly by round(v * 255).

To fetch the source data:

    npm pack mnist@1.1.0 && tar xzf mnist-1.1.0.tgz

The pool is the first `--per-class` images of each digit, written in digit
order (all 0s, then all 1s, ...) as a standard big-endian IDX image file
(magic 2051) plus label file (magic 2049).

Usage: python3 scripts/prepare_mnist.py <digits_dir> <out_dir> [--per-class 100]
"""

import argparse
import json
import os
import struct


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("digits_dir", help="package/src/digits from the mnist npm package")
    parser.add_argument("out_dir")
    parser.add_argument("--per-class", type=int, default=100)
    args = parser.parse_args()

    images = bytearray()
    labels = bytearray()
    count = 0
    for digit in range(10):
        with open(os.path.join(args.digits_dir, f"{digit}.json")) as f:
            data = json.load(f)["data"]
        available = len(data) // 784
        assert available >= args.per_class, f"digit {digit}: only {available} images"
        for i in range(args.per_class):
            pixels = data[i * 784 : (i + 1) * 784]
            images.extend(round(v * 255) for v in pixels)
            labels.append(digit)
            count += 1

    os.makedirs(args.out_dir, exist_ok=True)
    img_path = os.path.join(args.out_dir, "pool100-images-idx3-ubyte")
    lbl_path = os.path.join(args.out_dir, "pool100-labels-idx1-ubyte")
    with open(img_path, "wb") as f:
        f.write(struct.pack(">IIII", 2051, count, 28, 28))
        f.write(bytes(images))
    with open(lbl_path, "wb") as f:
        f.write(struct.pack(">II", 2049, count))
        f.write(bytes(labels))
    print(f"wrote {count} images to {img_path} and labels to {lbl_path}")


if __name__ == "__main__":
    main()

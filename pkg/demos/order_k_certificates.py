"""Quantified dual-witness certificates: per-measurement and matrix-wide.

The identity passes everything.  A generic dense square matrix fails the
matrix-wide for-all property at order 1, while row-sparse draws (one
nonzero per row) pass it; the seeded scan below reports the split.
"""

import numpy as np

from onebitcs import (
    NECESSARY,
    SUFFICIENT,
    rrsp_order_k,
    rrsp_wrt_y,
)


def main():
    eye = np.eye(2)
    y = np.array([1, -1])

    for variant in (SUFFICIENT, NECESSARY):
        holds, evidence = rrsp_wrt_y(eye, y, 2, variant)
        print(f"identity, measurement {tuple(y.tolist())}, k=2, {variant}: {holds}")
        for ev in evidence:
            print(f"  pattern +{list(ev.s_plus)} -{list(ev.s_minus)} "
                  f"margin {ev.margin:.3g}: {ev.note}")

    for k in (1, 2):
        holds, _ = rrsp_order_k(eye, k, SUFFICIENT)
        print(f"identity, matrix-wide order {k}, sufficient: {holds}")

    rng = np.random.default_rng(42)
    dense_pass = 0
    sparse_pass = 0
    trials = 10
    for _ in range(trials):
        dense = rng.normal(size=(4, 4))
        if rrsp_order_k(dense, 1, SUFFICIENT)[0]:
            dense_pass += 1

        rows = np.zeros((4, 4))
        for i in range(4):
            v = 0.0
            while abs(v) < 0.3:
                v = rng.normal()
            rows[i, rng.integers(0, 4)] = v
        if rrsp_order_k(rows, 1, SUFFICIENT)[0]:
            sparse_pass += 1
    print(f"\n4x4 draws, order-1 sufficient property over {trials} trials:")
    print(f"  dense gaussian: {dense_pass}/{trials}")
    print(f"  one nonzero per row: {sparse_pass}/{trials}")


if __name__ == "__main__":
    main()

"""Walk through the built-in counterexample against the sign-cone relaxation.

The 2x4 integer matrix admits cone-feasible points whose sign image does not
reproduce the measurement under either convention, while the consistent
decoder is forced back onto the measurement.  Everything prints from the
bundled audit, then the two violations are re-derived by hand.
"""

import numpy as np

from onebitcs import (
    NONSTANDARD_PHIX,
    NONSTANDARD_X,
    relaxation_consistency,
    repro_example,
    sign_nonstandard,
    sign_standard,
)
from onebitcs.repro import COUNTEREXAMPLE_MATRIX, COUNTEREXAMPLE_Y


def main():
    report = repro_example()
    print(report.table())
    print()

    phi = np.array(COUNTEREXAMPLE_MATRIX, dtype=float)
    y = np.array(COUNTEREXAMPLE_Y)
    print("matrix:")
    print(phi)
    print("measurement:", y)

    for alpha in (1, 2):
        x = np.array([alpha, alpha, 0.0, 0.0])
        v = phi @ x
        print(f"\nx = {x}:  phi @ x = {v}")
        print("  in sign cone:", bool(np.all(y * v >= 0)))
        print("  standard sign image:   ", sign_standard(v))
        print("  nonstandard sign image:", sign_nonstandard(v))

    for mode in (NONSTANDARD_X, NONSTANDARD_PHIX):
        holds, violations = relaxation_consistency(phi, y, mode)
        print(f"\naudit mode {mode}: holds = {holds}")
        for row, d in violations:
            print(f"  row {row} admits cone direction d = {np.round(d, 6)}")


if __name__ == "__main__":
    main()

"""Decode a few instances and certify whether each optimum is unique.

Two desk instances show the two verdicts, then a seeded batch reports how
often random gaussian instances produce a certified-unique optimum.
"""

import numpy as np

from onebitcs import (
    SignMeasurement,
    is_consistent,
    one_bit_bp,
    sign_standard,
    uniqueness_certificate,
)


def show(label, phi, y):
    meas = SignMeasurement.from_y(y)
    sol = one_bit_bp(phi, meas)
    print(f"{label}: status {sol.status}", end="")
    if sol.status != "optimal":
        print()
        return
    print(f", |x|_1 = {sol.objective:.6g}, x = {np.round(sol.x, 6)}")
    print("  reproduces measurement:", is_consistent(phi, sol.x, meas))
    report = uniqueness_certificate(phi, meas, sol.x)
    print(f"  unique: {report.unique}  (boundary rank {report.h_rank}, "
          f"dual witness margin {report.margin:.3g})")
    for note in report.notes:
        print("  note:", note)


def main():
    show("identity 2x2", np.eye(2), np.array([1, -1]))

    phi = np.array([[2., -1., 0., 2.], [-1., 1., 1., 0.]])
    show("wide 2x4", phi, np.array([1, -1]))

    rng = np.random.default_rng(7)
    unique_count = 0
    total = 0
    for _ in range(40):
        m, n = 6, 4
        a = rng.normal(size=(m, n))
        y = sign_standard(a @ rng.normal(size=n))
        meas = SignMeasurement.from_y(y)
        if meas.is_zero():
            continue
        sol = one_bit_bp(a, meas)
        if sol.status != "optimal" or np.abs(sol.x).max() < 1e-9:
            continue
        total += 1
        if uniqueness_certificate(a, meas, sol.x).unique:
            unique_count += 1
    print(f"\nrandom 6x4 batch: {unique_count}/{total} optima certified unique")


if __name__ == "__main__":
    main()

"""Higher-order derivatives of the power map and their exact norms.

Run as ``python3 demos/derivative_norms.py``.
"""

import math

import numpy as np

from kchi import (
    Partition,
    build_symmetry_class,
    dk_kchi,
    dk_norm_formula,
    dk_norm_verify,
    k_chi_matrix,
    sample_rng,
    random_matrix,
    singular_values,
    spectral_norm,
)


def norm_identity_walkthrough():
    chi, n = Partition((2, 1)), 3
    sc = build_symmetry_class(chi, n)
    t = random_matrix(n, sample_rng(7, 0))
    nu = singular_values(t)
    print(f"chi={chi}, n={n}, singular values {np.round(nu, 4)}")
    for k in range(1, sc.m + 1):
        report = dk_norm_verify(sc, t, k, samples=60, seed=7)
        print(
            f"  k={k}: formula {report.formula_value:10.6f}   "
            f"attained {report.attained_value:10.6f}   "
            f"sampled sup {report.sample_max:10.6f}   ok={report.ok}"
        )


def the_formula_is_elementary_symmetric():
    print("\nthe closed form is k! e_(m-k) of a repeated singular-value selection:")
    nu = (3.0, 2.0, 1.0)
    for chi in (Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))):
        values = [dk_norm_formula(chi, k, nu) for k in (1, 2, 3)]
        print(f"  chi={chi}: norms at nu={nu} -> {values}")


def taylor_is_finite():
    print("\nthe power map is polynomial, so its Taylor expansion terminates:")
    chi, n = Partition((2,)), 2
    sc = build_symmetry_class(chi, n)
    rng = sample_rng(8, 0)
    t, x = random_matrix(n, rng), random_matrix(n, rng)
    total = np.zeros((sc.dim, sc.dim), dtype=complex)
    for k in range(sc.m + 1):
        total += dk_kchi(sc, t, [x] * k) / math.factorial(k)
    gap = spectral_norm(k_chi_matrix(sc, t + x) - total)
    print(f"  ||K(T+X) - sum_k D^k K(T)(X,..,X)/k!|| = {gap:.2e}")


if __name__ == "__main__":
    norm_identity_walkthrough()
    the_formula_is_elementary_symmetric()
    taylor_is_finite()

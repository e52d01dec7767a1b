#!/usr/bin/env python3
"""Gallery of matrices attaining the comparison bound, one per equality class.

For each of the four sign quadrants this script constructs an attaining
matrix three ways (structured example, rank-one tensor, prescribed-SVD
generator), verifies membership with the class predicates, and measures the
ratio of ||A||_{r,s} to the bound at sample points of the quadrant.

Run:  python3 scripts/class_gallery.py [--seed N]
"""

import argparse

import numpy as np

from pqnorm import (
    ClassId,
    as_index,
    as_matrix,
    best_norm,
    bound_factor,
    check_class,
    check_svd_equality,
    gen_dft,
    gen_hadamard,
    gen_single_entry,
    gen_svd_extremal,
    gen_tensor_product,
    index_str,
)

SAMPLE_POINTS = {
    ClassId.E_1INF: [(1, 3), (1.5, "inf"), (1, "inf")],
    ClassId.E_11: [(1, 1), (1.5, 1.5), (1, 1.5)],
    ClassId.E_INFINF: [(3, 3), ("inf", "inf"), (3, "inf")],
    ClassId.E_INF1: [("inf", 1), (3, 1.5), ("inf", 1.5)],
}

STRUCTURED = {
    ClassId.E_1INF: ("single dominant entry", lambda: gen_single_entry(3, 3, 1, 1, 2.0)),
    ClassId.E_11: ("Hadamard 4", lambda: gen_hadamard(4)),
    ClassId.E_INFINF: ("DFT 3 adjoint", lambda: as_matrix(gen_dft(3).entries.conj().T, field="complex")),
    ClassId.E_INF1: (
        "tensor of constant-modulus vectors",
        lambda: gen_tensor_product(np.array([1.0, 1j, -1.0]), np.array([1.0, -1.0])),
    ),
}


def measure(M, cls: ClassId) -> None:
    v22 = best_norm(M, 2, 2).value
    for (r, s) in SAMPLE_POINTS[cls]:
        factor = bound_factor(2, 2, r, s, M.m, M.n)
        vrs = best_norm(M, r, s).value
        ratio = vrs / (factor * v22) if v22 > 0 else float("nan")
        print(
            f"      ({index_str(as_index(r)):>4},{index_str(as_index(s)):>4}):"
            f" norm {vrs:.10f}  bound {factor * v22:.10f}  ratio {ratio:.10f}"
        )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for cls in ClassId:
        print(f"\n=== {cls.value} (quadrant sgn(p-r), sgn(q-s) = {cls.sign_signature}) ===")

        label, build = STRUCTURED[cls]
        M = build()
        verdict = check_class(M, cls, 2, 2)
        print(f"  structured: {label} -> {verdict.member}")
        measure(M, cls)

        r, s = cls.extremal_pair
        E = gen_svd_extremal(3, 3, r, s, (2.0, 1.0, 0.5), seed=args.seed)
        sv = check_svd_equality(E, r, s)
        print(f"  generated (prescribed SVD at corner ({index_str(r)},{index_str(s)})): {sv.member}")
        measure(E, cls)


if __name__ == "__main__":
    main()

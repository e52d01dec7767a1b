#!/usr/bin/env python3
"""End-to-end tour of the 2x2 example A = [[1,1],[-1,1]].

Over the complex field this matrix attains the comparison bound
||A||_{r,s} <= m^{(1/p-1/r)+} n^{(1/s-1/q)+} ||A||_{p,q} against the
(p,q) = (2,2) anchor at every (r,s) with r >= 2 >= s, where its norm obeys
the closed formula 2^{(1/s)-(1/r)+(1/2)}.  Over the real field the same
matrix is strictly inside the bound at (inf,1): sign vectors cannot hold
both image entries at full modulus simultaneously, while (1, i) can.

Run:  python3 scripts/worked_example.py
"""

import numpy as np

from pqnorm import (
    ClassId,
    as_index,
    as_matrix,
    best_norm,
    bound_factor,
    check_Einf1,
    check_svd_equality,
    dav_normal_form,
    index_str,
)

A = np.array([[1.0, 1.0], [-1.0, 1.0]])


def banner(text: str) -> None:
    print()
    print(text)
    print("-" * len(text))


def main() -> None:
    AC = as_matrix(A, field="complex")
    AR = as_matrix(A, field="real")

    banner("norm grid over the complex field (formula 2^(1/s - 1/r + 1/2))")
    v22 = best_norm(AC, 2, 2).value
    print(f"anchor ||A||_2,2 = {v22:.12f}")
    print(f"{'r':>5} {'s':>5} {'computed':>16} {'formula':>16} {'ratio-to-bound':>15}")
    for r in [2, 3, 4, "inf"]:
        for s in [1, 1.5, 2]:
            got = best_norm(AC, r, s).value
            want = 2.0 ** (as_index(s).inv - as_index(r).inv + 0.5)
            factor = bound_factor(2, 2, r, s, AC.m, AC.n)
            print(
                f"{index_str(as_index(r)):>5} {index_str(as_index(s)):>5}"
                f" {got:>16.12f} {want:>16.12f} {got / (factor * v22):>15.12f}"
            )

    banner("real field: strict at (inf,1)")
    real_inf1 = best_norm(AR, "inf", 1)
    cplx_inf1 = best_norm(AC, "inf", 1)
    factor = bound_factor(2, 2, "inf", 1, 2, 2)
    print(f"real    ||A||_inf,1 = {real_inf1.value:.12f}  ({real_inf1.certainty.value})")
    print(f"complex ||A||_inf,1 = {cplx_inf1.value:.12f}  ({cplx_inf1.certainty.value})")
    print(f"bound against the (2,2) anchor: {factor * v22:.12f}")
    print(f"real ratio = {real_inf1.value / (factor * v22):.12f}  (strictly < 1)")
    print(f"complex maximizer: {np.round(cplx_inf1.witness, 6)}")

    banner("class verdicts at (p,q)=(2,2)")
    for field_tag, M in [("complex", AC), ("real", AR)]:
        v = check_Einf1(M, 2, 2)
        print(f"E_inf1, {field_tag:>7}: {v.member}")
        for c in v.conditions:
            state = {True: "yes", False: "no", None: "?"}[c.satisfied]
            print(f"    {c.name:<42} {state}")

    banner("top singular pair classes for equality past the anchor")
    for (r, s) in [(3, 1.5), ("inf", 1)]:
        v = check_svd_equality(AC, r, s)
        print(f"(r,s)=({index_str(as_index(r))},{index_str(as_index(s))}): {v.member}")

    banner("diagonal normal form from the maximizer v = (1, i)")
    rep = dav_normal_form(AC, np.array([1.0, 1j]))
    print(f"attained: {rep.ok},  common row-sum tau = {rep.tau:.12f}")
    W = rep.d @ AC.entries @ rep.v_diag
    print("D A V =")
    for row in W:
        print("   ", np.round(row, 12))
    print("row sums:", np.round(W.sum(axis=1), 12))
    print("col sums:", np.round(W.sum(axis=0), 12))


if __name__ == "__main__":
    main()

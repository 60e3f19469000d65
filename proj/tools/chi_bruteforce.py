#!/usr/bin/env python3
"""Independent cross-check for the character series.

Expands the two alternating theta-style sums and divides by the truncated
infinite Pochhammer product, all with dense exact-integer polynomial
arithmetic mod q^(N+1). Shares nothing with the C++ implementation; used to
freeze oracle values into the test suite.
"""

import argparse


def inv_pochhammer(N: int) -> list[int]:
    # 1 / prod_{n>=1} (1 - q^n) as a power series: unbounded-part DP.
    c = [0] * (N + 1)
    c[0] = 1
    for part in range(1, N + 1):
        for e in range(part, N + 1):
            c[e] += c[e - part]
    return c


def numerator(p: int, r: int, s: int, N: int) -> list[int]:
    c = [0] * (N + 1)
    pp = p + 1
    j = 0
    while True:
        hit = False
        for jj in {j, -j}:
            lo = p * pp * jj * jj + jj * (pp * r - p * s)
            hi = (p * jj + r) * (pp * jj + s)
            if lo <= N:
                c[lo] += 1
                hit = True
            if hi <= N:
                c[hi] -= 1
                hit = True
        if not hit and j > 0:
            return c
        j += 1


def chi_coeffs(p: int, r: int, s: int, N: int) -> list[int]:
    num = numerator(p, r, s, N)
    inv = inv_pochhammer(N)
    out = [0] * (N + 1)
    for i, a in enumerate(num):
        if a == 0:
            continue
        for k in range(N + 1 - i):
            out[i + k] += a * inv[k]
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, required=True)
    ap.add_argument("--r", type=int, required=True)
    ap.add_argument("--s", type=int, required=True)
    ap.add_argument("--n", type=int, default=20, help="highest power of q kept")
    args = ap.parse_args()
    if not (args.p >= 4 and 1 <= args.r <= args.p - 1 and 1 <= args.s <= args.p):
        ap.error("need p >= 4, 1 <= r <= p-1, 1 <= s <= p")
    print(", ".join(str(c) for c in chi_coeffs(args.p, args.r, args.s, args.n)))


if __name__ == "__main__":
    main()

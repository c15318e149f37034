#!/usr/bin/env python3
"""Generate Taylor coefficients of the Riemann-Siegel correction terms C0..C3.

The corrections are expressed through
    psi(p) = cos(2*pi*(p*p - p - 1/16)) / cos(2*pi*p)
and expanded in z = 2p - 1 around z = 0. Output is a C++ initializer list
as the header include/zgb/detail/rs_coefficients.hpp.
"""
import mpmath as mp

mp.mp.dps = 80
ORDER = 50


def psi_z(z):
    p = (z + 1) / 2
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


HEADER = """#pragma once

// Generated by tools/gen_rs_coefficients.py; do not edit by hand.
// Taylor coefficients in z = 2p - 1 of the Riemann-Siegel corrections C0..C3.

#include <array>

namespace zgb::detail {
"""

FOOTER = "}  // namespace zgb::detail"


def main():
    # Taylor coefficients of psi in z; derivative in p is 2^k times derivative in z.
    a = mp.taylor(psi_z, 0, ORDER + 10)

    def dpsi(k):
        # coefficients of d^k psi / dp^k as a series in z
        out = []
        for j in range(ORDER + 1):
            idx = j + k
            c = a[idx] * mp.factorial(idx) / mp.factorial(j) * mp.mpf(2) ** k
            out.append(c)
        return out

    pi = mp.pi
    c0 = dpsi(0)
    c1 = [-x / (96 * pi**2) for x in dpsi(3)]
    d2, d6 = dpsi(2), dpsi(6)
    c2 = [d2[j] / (64 * pi**2) + d6[j] / (18432 * pi**4) for j in range(ORDER + 1)]
    d1, d5, d9 = dpsi(1), dpsi(5), dpsi(9)
    c3 = [-d1[j] / (64 * pi**2) - d5[j] / (3840 * pi**4) - d9[j] / (5308416 * pi**6)
          for j in range(ORDER + 1)]
    print(HEADER)
    for name, cs, parity in (("kC0", c0, 0), ("kC1", c1, 1), ("kC2", c2, 0), ("kC3", c3, 1)):
        terms = [cs[j] for j in range(parity, ORDER + 1, 2)]
        while abs(terms[-1]) < mp.mpf(10) ** -21:
            terms.pop()
        power = "z^(2j)" if parity == 0 else "z^(2j+1)"
        print(f"// Coefficient j multiplies {power}.")
        print(f"inline constexpr std::array<double, {len(terms)}> {name} = {{")
        for c in terms:
            print(f"    {mp.nstr(c, 21, min_fixed=-30, max_fixed=-30)},")
        print("};\n")
    print(FOOTER)


if __name__ == "__main__":
    main()

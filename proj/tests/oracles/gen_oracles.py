#!/usr/bin/env python3
"""Generate frozen reference values for the unit tests.

Every value here comes from an extended-precision route that shares no code
with the C++ library: plain power series summed with mpmath at a working
precision large enough to absorb the cancellation, mpmath's own Bessel
functions, and the Wright-function series for the subordination density.

Run from the repository root:
    python3 tests/oracles/gen_oracles.py > tests/oracles/frozen_values.hpp
"""
import math
from fractions import Fraction
import mpmath as mp


def ml_series(alpha, beta, z):
    """E_{alpha,beta}(z) by direct summation. alpha and beta are decimal strings;
    alpha = p/q is handled exactly through Gamma(x + p) = Gamma(x) (x)_p, so
    only q Gamma evaluations are needed at the working precision."""
    z = complex(z)
    r = abs(z)
    a0 = float(alpha)
    growth = r ** (1.0 / a0) if r > 0 else 0.0
    dps = int(40 + growth / 2.2)
    frac = Fraction(alpha)
    p, q = frac.numerator, frac.denominator
    with mp.workdps(dps):
        A = mp.mpf(p) / q
        B = mp.mpf(beta)
        Z = mp.mpc(z.real, z.imag)
        # rg[k] = 1 / Gamma(A k + B); exact zeros at the poles of Gamma
        rg = [mp.rgamma(A * k + B) for k in range(q)]
        s = mp.mpc(0)
        zk = mp.mpc(1)
        tol = mp.mpf(10) ** (-30)
        k = 0
        while True:
            if k >= q:
                x = A * (k - q) + B
                prod = mp.mpf(1)
                for i in range(p):
                    prod *= (x + i)
                if prod == 0:
                    rg.append(mp.rgamma(A * k + B))
                else:
                    rg.append(rg[k - q] / prod)
            term = zk * rg[k]
            s += term
            k += 1
            zk *= Z
            if k * a0 > growth * 1.5 + 20 and abs(term) < tol * max(1, abs(s)):
                break
        return complex(s)


def wright_m(alpha, x, terms=400):
    """Mainardi function M_alpha(x) = sum (-x)^k / (k! Gamma(1 - alpha - alpha k))."""
    with mp.workdps(60):
        A = mp.mpf(alpha)
        X = mp.mpf(x)
        s = mp.mpf(0)
        for k in range(terms):
            g = 1 - A - A * k
            if g <= 0 and g == mp.floor(g):
                continue
            s += (-X) ** k / (mp.factorial(k) * mp.gamma(g))
        return float(s)


def fmt(x):
    v = float(x)
    if math.isinf(v):
        # magnitude beyond double range; the library must signal overflow
        return "kInf" if v > 0 else "-kInf"
    return repr(v)


def main():
    out = []
    out.append("// Generated by tests/oracles/gen_oracles.py. Do not edit by hand.")
    out.append("#pragma once")
    out.append("#include <array>")
    out.append("#include <limits>")
    out.append("")
    out.append("namespace ffq_oracle {")
    out.append("")
    out.append("inline constexpr double kInf = std::numeric_limits<double>::infinity();")
    out.append("")
    out.append("struct MlfCase { double alpha, beta, z_re, z_im, re, im; };")
    out.append("")

    cases = []
    angles = [0.0, 0.35 * math.pi, 0.5 * math.pi, 0.8 * math.pi, math.pi, -0.6 * math.pi]

    def add(alpha, beta, z):
        v = ml_series(alpha, beta, z)
        cases.append((float(alpha), float(beta), z.real, z.imag, v.real, v.imag))

    # named points
    add("0.5", "1", complex(0.3, 0.0))
    add("0.7", "1.3", complex(0.0, 0.0))
    add("1", "1", complex(1.0, 0.0))

    plan = [
        ("0.3", ["1", "1.3"], [0.2, 0.9, 1.5, 3.0, 6.0]),
        ("0.5", ["1", "0.5", "1.5"], [0.2, 0.9, 1.5, 3.0, 7.0, 15.0, 30.0, 50.0]),
        ("0.6", ["1", "1.6"], [0.9, 2.0, 7.0, 20.0, 50.0]),
        ("0.8", ["1", "1.8", "0.2"], [0.5, 1.5, 5.0, 12.0, 35.0, 50.0]),
        ("0.95", ["1"], [1.2, 9.0, 40.0]),
        ("1", ["1.4", "0.5", "2"], [0.7, 2.5, 10.0, 30.0, 50.0]),
        ("1.2", ["1", "1.6", "2.2"], [0.5, 3.0, 15.0, 50.0]),
        ("1.6", ["1", "1.8", "2.6"], [0.8, 4.0, 20.0, 50.0]),
        ("2", ["1", "2", "1.5"], [0.4, 2.0, 12.0, 50.0]),
    ]
    for alpha, betas, radii in plan:
        for beta in betas:
            for r in radii:
                for th in angles:
                    z = complex(r * math.cos(th), r * math.sin(th))
                    # keep the reference cheap: skip points where e^{|z|^{1/alpha}}
                    # would need tens of thousands of digits
                    if r ** (1.0 / float(alpha)) > 9000:
                        continue
                    add(alpha, beta, z)

    out.append("inline constexpr std::array<MlfCase, %d> kMlfCases{{" % len(cases))
    for c in cases:
        out.append("    {%s, %s, %s, %s, %s, %s}," % tuple(fmt(x) for x in c))
    out.append("}};")
    out.append("")

    # Bessel J_n(z), real and complex arguments
    bcases = []
    for n in [0, 1, 2, 3, 5, 8, 13, 20, 40, 64, -1, -4, -7]:
        for z in [complex(0.01, 0), complex(0.5, 0), complex(1, 0), complex(2, 0), complex(5, 0),
                  complex(12.5, 0), complex(30, 0), complex(1.5, 0.7), complex(-2.0, 1.2),
                  complex(4.0, -3.0)]:
            with mp.workdps(40):
                v = complex(mp.besselj(n, mp.mpc(z.real, z.imag)))
            bcases.append((n, z.real, z.imag, v.real, v.imag))
    out.append("struct BesselCase { int n; double z_re, z_im, re, im; };")
    out.append("inline constexpr std::array<BesselCase, %d> kBesselCases{{" % len(bcases))
    for c in bcases:
        out.append("    {%d, %s, %s, %s, %s}," % (c[0], fmt(c[1]), fmt(c[2]), fmt(c[3]), fmt(c[4])))
    out.append("}};")
    out.append("")

    # Subordination density K(xi, t) = t^-alpha M_alpha(xi t^-alpha), alpha = 0.6, t = 1
    mcases = []
    for xi in [0.05, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0]:
        mcases.append((xi, wright_m("0.6", xi)))
    out.append("struct DensityCase { double xi, value; };")
    out.append("// Mainardi density M_{0.6}(xi), the exact unregularized kernel at t = 1")
    out.append("inline constexpr std::array<DensityCase, %d> kMainardi06{{" % len(mcases))
    for c in mcases:
        out.append("    {%s, %s}," % (fmt(c[0]), fmt(c[1])))
    out.append("}};")
    out.append("")
    out.append("}  // namespace ffq_oracle")
    print("\n".join(out))


if __name__ == "__main__":
    main()

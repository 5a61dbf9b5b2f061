"""Reference computations that share no code with the package.

Plain lists of Fractions and textbook formulas; slow but obviously right.
"""

from fractions import Fraction
from math import comb, factorial


def gen_binom(x, k):
    """x (x-1) ... (x-k+1) / k!"""
    num = Fraction(1)
    for i in range(k):
        num *= Fraction(x) - i
    return num / factorial(k)


def binomial_series(c, e, n):
    """Coefficients of (1 + c t)^e through t^n, term by term."""
    return [gen_binom(e, i) * Fraction(c) ** i for i in range(n + 1)]


def horner_binomial(c, e, n):
    """Same series by Horner evaluation of the binomial sum in the variable c t.

    Expands prod-free: 1 + e x (1 + (e-1)/2 x (1 + (e-2)/3 x (...))) with x = c t.
    """
    e = Fraction(e)
    acc = [Fraction(1)] + [Fraction(0)] * n
    for i in range(n, 0, -1):
        # acc <- 1 + (e - i + 1)/i * x * acc
        factor = (e - i + 1) / i * Fraction(c)
        shifted = [Fraction(0)] + [factor * a for a in acc[:-1]]
        shifted[0] += 1
        acc = shifted
    return acc


def poly_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def poly_inv(a, n):
    out = [Fraction(1) / a[0]]
    for i in range(1, n + 1):
        s = sum((a[j] * out[i - j] for j in range(1, min(i, len(a) - 1) + 1)), Fraction(0))
        out.append(-s / a[0])
    return out


def lagrange_reverse(f, n):
    """[z^j] g = (1/j) [t^(j-1)] (t / f)^j, with powers recomputed from scratch."""
    body = list(f[1:]) + [Fraction(0)] * n
    h = poly_inv(body, n)
    g = [Fraction(0)]
    for j in range(1, n + 1):
        p = [Fraction(1)] + [Fraction(0)] * n
        for _ in range(j):
            p = poly_mul(p, h, n)
        g.append(p[j - 1] / j)
    return g


def delta0_k3(r, chi, k):
    return (r + 1) ** k * gen_binom(Fraction(chi) - (r + 1) * k, k)


def k3_closed_by_sum(r, chi, delta, k):
    """Coeff_{t^k} (1+(2+r)t)^delta (1+(1+r)t)^(chi-delta-(r+1)k) as an explicit double sum."""
    e = Fraction(chi) - delta - (r + 1) * k
    return sum(
        gen_binom(delta, i) * (2 + r) ** i * gen_binom(e, k - i) * (1 + r) ** (k - i)
        for i in range(k + 1)
    )


def curve_closed_by_sum(g, r, d, k):
    chi = d + r * (1 - g)
    e = -chi + k * (r + 1) - 1
    return sum(comb(g, i) * r ** i * gen_binom(e, k - i) * (-1) ** (k - i) for i in range(min(g, k) + 1))

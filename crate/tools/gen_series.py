"""Emit Taylor coefficients used by the `special` and `transforms` modules.

Run from the repository root:
    python3 tools/gen_series.py > crates/chaoskernel/src/special/coeffs.rs

All coefficients are computed in exact rational arithmetic and rounded once.
"""
import sympy as sp

N = 16
x, t = sp.symbols("x t")


def even_coeffs(expr, order):
    """Coefficients of x^(2n), n = 0..order-1."""
    s = sp.series(expr, x, 0, 2 * order + 1).removeO()
    p = sp.Poly(sp.expand(s), x)
    return [sp.Rational(p.coeff_monomial(x ** (2 * n))) for n in range(order)]


def series_in_t(expr, order):
    s = sp.series(expr, t, 0, order).removeO()
    p = sp.Poly(sp.expand(s), t)
    return [sp.Rational(p.coeff_monomial(t ** n)) for n in range(order)]


# lambda = k^2, half-angle x = k/2, so x^2 = lambda/4.
h = [c / sp.Integer(4) ** n for n, c in enumerate(even_coeffs(sp.tan(x) / x, N + 2))]
# u(lambda) = lambda / (1 - h) = -1 / sum_{n>=0} h_{n+1} lambda^n
u = series_in_t(-1 / sum(h[n + 1] * t ** n for n in range(N + 1)), N)
g = [c / sp.Integer(4) ** n for n, c in enumerate(even_coeffs(x * sp.cot(x), N))]
# d(lambda) = (1 - cos k - (k/2) sin k) / lambda^2, c(lambda) = 1 / (4 d)
dk = even_coeffs(1 - sp.cos(x) - x / 2 * sp.sin(x), N + 3)
c = series_in_t(1 / (4 * sum(dk[n + 2] * t ** n for n in range(N + 1))), N)

th = even_coeffs(sp.tanh(x) / x, N)
xth = even_coeffs((x - sp.tanh(x)) / x ** 3, N)
sh2 = even_coeffs(sp.sinh(x / 2) ** 2 / (x ** 2 * sp.cosh(x)), N)


def emit(name, doc, coeffs):
    print(f"/// {doc}")
    print(f"pub(crate) const {name}: [f64; {len(coeffs)}] = [")
    for q in coeffs:
        print(f"    {float(q)!r}, // {q}")
    print("];")


print("// Generated by tools/gen_series.py. Do not edit.")
print()
emit("U_COEFFS", "u(l) = l / (1 - (2/sqrt l) tan(sqrt l / 2)) in powers of l.", u)
print()
emit("G_COEFFS", "g(l) = (sqrt l / 2) cot(sqrt l / 2) in powers of l.", g)
print()
emit("C_COEFFS", "c(l) = l^2 / (4 (1 - cos sqrt l - (sqrt l / 2) sin sqrt l)) in powers of l.", c)
print()
emit("TH_OVER_X", "th(x) / x in powers of x^2.", th)
print()
emit("X_MINUS_TH_OVER_X3", "(x - th x) / x^3 in powers of x^2.", xth)
print()
emit("SH2_HALF_OVER_X2_CH", "sh^2(x/2) / (x^2 ch x) in powers of x^2.", sh2)

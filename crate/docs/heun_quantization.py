"""Symbolic termination conditions for the biconfluent Heun polynomials.

Substitutes a truncated power series into

    xi H'' + (theta - 2 xi^2) H' + (g xi + s alpha) H = 0,   s = +1 or -1,

solves for the coefficients by undetermined coefficients (no recurrence is
assumed), and factors the condition that the series stops at degree n.

Run: python3 docs/heun_quantization.py
"""

import sympy as sp

xi, alpha, theta, g = sp.symbols("xi alpha theta g")


def series_coefficients(sign, degree):
    c = sp.symbols(f"c0:{degree + 2}")
    h = sum(c[j] * xi**j for j in range(degree + 2))
    ode = sp.expand(xi * sp.diff(h, xi, 2) + (theta - 2 * xi**2) * sp.diff(h, xi) + (g * xi + sign * alpha) * h)
    eqs = [ode.coeff(xi, k) for k in range(degree + 1)]
    sol = sp.solve(eqs, c[1 : degree + 2], dict=True)[0]
    return [sp.Integer(1)] + [sp.factor(sol[c[j]].subs(c[0], 1)) for j in range(1, degree + 2)]


def main():
    for sign, label in [(+1, "(g + alpha/xi)"), (-1, "(g - alpha/xi)")]:
        coeffs = series_coefficients(sign, 3)
        print(f"equation with {label}: a1 = {coeffs[1]}")
        for n in (1, 2):
            cond = sp.factor(coeffs[n + 1].subs(g, 2 * n))
            print(f"  n = {n}: a_{n + 1} = {cond}")
            for th in (3, 5):
                roots = sorted(r for r in sp.solve(sp.numer(cond).subs(theta, th), alpha) if r.is_positive)
                print(f"    theta = {th}: alpha^2 = {[sp.nsimplify(r**2) for r in roots]}")


if __name__ == "__main__":
    main()

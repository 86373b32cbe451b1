"""Certified complex root enclosures (Krawczyk test) on top of mpmath intervals."""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from typing import Callable, Sequence

from mpmath import iv, mp


_IVMPC = type(iv.mpc(0, 0))
_IVMPF = type(iv.mpf(0))


@contextmanager
def precision(bits: int):
    """Set both the floating and the interval context to ``bits`` of precision."""
    old_mp, old_iv = mp.prec, iv.prec
    mp.prec = bits
    iv.prec = bits
    try:
        yield
    finally:
        mp.prec, iv.prec = old_mp, old_iv


def to_mp(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mp.mpf(x)
    return mp.mpmathify(x)


def to_iv(x):
    """Enclose an exact or floating value in a complex interval."""
    if isinstance(x, Fraction):
        return iv.mpc(iv.mpf(x.numerator) / x.denominator, 0)
    if isinstance(x, int):
        return iv.mpc(x, 0)
    if isinstance(x, _IVMPC):
        return x
    if isinstance(x, _IVMPF):
        return iv.mpc(x, 0)
    x = mp.mpmathify(x)
    return iv.mpc(iv.mpf(x.real), iv.mpf(x.imag))


def box(center, radius):
    c = mp.mpmathify(center)
    r = mp.mpf(radius)
    re, im = mp.mpf(c.real), mp.mpf(c.imag)
    return iv.mpc(iv.mpf([re - r, re + r]), iv.mpf([im - r, im + r]))


def _ends(x):
    return mp.mpf(x.a), mp.mpf(x.b)


def strictly_inside(inner, outer) -> bool:
    for a, b in ((inner.real, outer.real), (inner.imag, outer.imag)):
        ia, ib = _ends(a)
        oa, ob = _ends(b)
        if not (ia > oa and ib < ob):
            return False
    return True


def excludes_zero(z) -> bool:
    z = to_iv(z)
    ra, rb = _ends(z.real)
    ia, ib = _ends(z.imag)
    return ra > 0 or rb < 0 or ia > 0 or ib < 0


def magnitude_upper(z) -> object:
    ra, rb = _ends(z.real)
    ia, ib = _ends(z.imag)
    return mp.sqrt(max(abs(ra), abs(rb)) ** 2 + max(abs(ia), abs(ib)) ** 2)


def newton(F: Callable, J: Callable, x0: Sequence, steps: int = 60, tol=None) -> list:
    """Plain Newton iteration in the current mp precision."""
    x = mp.matrix([mp.mpmathify(v) for v in x0])
    tol = tol if tol is not None else mp.mpf(2) ** (-mp.prec + 16)
    for _ in range(steps):
        fx = mp.matrix(F(list(x)))
        jx = mp.matrix(J(list(x)))
        try:
            dx = mp.lu_solve(jx, fx)
        except ZeroDivisionError:
            break
        x = x - dx
        if mp.norm(dx) <= tol * max(1, mp.norm(x)):
            break
    return list(x)


def krawczyk(F_iv: Callable, J_iv: Callable, J_mp: Callable, center: Sequence, radius) -> bool:
    """Krawczyk test on the complex box of half-width ``radius`` around ``center``.

    Returns True when K(X) lies strictly inside X, which proves that X holds
    exactly one zero of F and that the Jacobian is invertible there.
    """
    n = len(center)
    X = [box(c, radius) for c in center]
    y = [to_iv(mp.mpmathify(c)) for c in center]
    try:
        Y = mp.inverse(mp.matrix(J_mp(list(center))))
    except ZeroDivisionError:
        return False
    Yiv = [[to_iv(Y[i, j]) for j in range(n)] for i in range(n)]
    Fy = F_iv(y)
    JX = J_iv(X)
    diff = [X[j] - y[j] for j in range(n)]
    for i in range(n):
        acc = y[i]
        for j in range(n):
            acc = acc - Yiv[i][j] * Fy[j]
        for k in range(n):
            m = (1 if i == k else 0) - sum((Yiv[i][j] * JX[j][k] for j in range(n)), iv.mpc(0, 0))
            acc = acc + m * diff[k]
        if not strictly_inside(acc, X[i]):
            return False
    return True


def polynomial_evaluators(coeffs_low_first: Sequence):
    """(f_mp, df_mp, f_iv, df_iv) for a univariate polynomial with exact coefficients."""
    c_mp = [to_mp(c) for c in coeffs_low_first]
    c_iv = [to_iv(c) for c in coeffs_low_first]
    d_mp = [i * c_mp[i] for i in range(1, len(c_mp))]
    d_iv = [c_iv[i] * i for i in range(1, len(c_iv))]

    def horner(cs, x, zero):
        acc = zero
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    return (
        lambda x: horner(c_mp, x, mp.mpc(0)),
        lambda x: horner(d_mp, x, mp.mpc(0)),
        lambda x: horner(c_iv, x, iv.mpc(0, 0)),
        lambda x: horner(d_iv, x, iv.mpc(0, 0)),
    )


def taylor_shift_iv(coeffs_low_first: Sequence, center) -> list:
    """Interval Taylor coefficients of p(center + d), lowest first."""
    t = [to_iv(c) for c in coeffs_low_first]
    z = to_iv(mp.mpmathify(center))
    n = len(t)
    # repeated synthetic division
    for k in range(n - 1):
        for i in range(n - 2, k - 1, -1):
            t[i] = t[i] + z * t[i + 1]
    return t


def centered_derivative(coeffs_low_first: Sequence, center, radius):
    """Enclosure of p' on the box around center, via the shifted polynomial.

    Horner on the box itself overestimates badly when large coefficients
    cancel; in the offset d = x - center the higher terms carry powers of
    the radius and stay small.
    """
    t = taylor_shift_iv(coeffs_low_first, center)
    d = box(0, radius)
    acc = iv.mpc(0, 0)
    for k in range(len(t) - 1, 0, -1):
        acc = acc * d + t[k] * k
    return acc


def certified_polynomial_roots(coeffs_low_first: Sequence, radius_bits: int) -> list[tuple[object, object]]:
    """All complex roots of a square-free exact polynomial with Krawczyk certificates.

    Returns (center, radius) pairs; raises ArithmeticError when some root
    cannot be certified or boxes overlap.
    """
    coeffs = [to_mp(c) for c in coeffs_low_first]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 1:
        return []
    f, df, f_iv, df_iv = polynomial_evaluators(coeffs_low_first[: deg + 1])
    approx = mp.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=4 * mp.prec, cleanup=False)
    out = []
    for z in approx:
        z = newton(lambda v: [f(v[0])], lambda v: [[df(v[0])]], [z])[0]
        r = mp.mpf(2) ** (-radius_bits) * max(1, abs(z))
        dX = centered_derivative(coeffs_low_first[: deg + 1], z, r)
        ok = krawczyk(lambda v: [f_iv(v[0])], lambda v: [[dX]], lambda v: [[df(v[0])]], [z], r)
        if not ok:
            raise ArithmeticError(f"root near {mp.nstr(z, 12)} could not be certified")
        out.append((z, r))
    for i in range(len(out)):
        for j in range(i):
            if abs(out[i][0] - out[j][0]) <= 2 * (out[i][1] + out[j][1]):
                raise ArithmeticError("root enclosures overlap")
    return out

"""
High-precision reference values for the scalar functions (mpmath, 50 digits).

Written independently of src/bounds so the two can be compared.
"""

import mpmath as mp

mp.mp.dps = 50


def f(p):
    p = mp.mpf(p)
    return mp.sqrt(p / 2) * (2 - p) ** (1 / p - mp.mpf(1) / 2)


def g(p):
    p = mp.mpf(p)
    return (p / 2) * (1 - p / 2) ** (2 / p - 1)


def p_star():
    return mp.findroot(lambda p: f(p) - 1, mp.mpf("0.45"))


def _left(p) -> bool:
    return mp.mpf(p) <= p_star()


def big_C(p, delta):
    p, delta = mp.mpf(p), mp.mpf(delta)
    shrink = (2 - delta) ** (1 - 2 / p)
    if _left(p):
        inner = (shrink + 2 * delta) * g(p)
    else:
        inner = shrink * g(p) + mp.mpf(2) ** (2 - 2 / p) * delta
    return (inner / (1 - delta)) ** (p / 2)


def big_D(p, delta):
    p, delta = mp.mpf(p), mp.mpf(delta)
    if _left(p):
        inner = (2 + delta) * g(p)
    else:
        inner = (2 - delta) * g(p) + mp.mpf(2) ** (2 - 2 / p) * delta
    return (inner / (1 - delta)) ** (p / 2)


def big_D_one_sided(p, delta) -> tuple:
    """Both branch formulas of D(p) at the same point, (p <= p* form, p > p* form)."""
    p, delta = mp.mpf(p), mp.mpf(delta)
    left = ((2 + delta) * g(p) / (1 - delta)) ** (p / 2)
    right = (((2 - delta) * g(p) + mp.mpf(2) ** (2 - 2 / p) * delta) / (1 - delta)) ** (p / 2)
    return left, right


def big_C_bar(p, delta):
    p, delta = mp.mpf(p), mp.mpf(delta)
    return (1 + delta) * mp.mpf(2) ** (p / 2 - 1) * (g(p) / (1 - delta)) ** (p / 2)


def big_D_bar(p, delta):
    p, delta = mp.mpf(p), mp.mpf(delta)
    return (2 * g(p) / (1 - delta)) ** (p / 2)


def theorem_constants(p, delta) -> dict:
    """c0, c1, d0, d1 and the barred ones as mpf."""
    p, delta = mp.mpf(p), mp.mpf(delta)
    c, d = big_C(p, delta), big_D(p, delta)
    cb, db = big_C_bar(p, delta), big_D_bar(p, delta)
    scale = (1 - delta) ** (p / 2)
    return {
        "c0": 2 * (1 + c) / (1 - c),
        "c1": mp.mpf(2) ** (3 * p / 2 + 1) / (scale * (1 - c)),
        "d0": 2 * d / (1 - c),
        "d1": (mp.mpf(2) ** p + mp.mpf(2) ** (3 * p / 2) * d / (1 - c)) / scale,
        "c0_bar": 2 * (1 + cb) / (1 - cb),
        "c1_bar": mp.mpf(2) ** (p + 2) / (scale * (1 - cb)),
        "d0_bar": 2 * db / (1 - cb),
        "d1_bar": mp.mpf(2) ** p * (1 + 2 * db / (1 - cb)) / scale,
    }

"""Shared fixtures and randomized-instance generators for the test suite."""

import cmath
import math

import numpy as np

from birange.criteria import solve_b
from birange.forms import BlockForm, ReciprocalForm, SpecialForm, normalize_block
from birange.linalg import CMatrix


def fig_left_special() -> SpecialForm:
    return SpecialForm(u=0.1, v=0.0, b1=(3 - 1j) / 5, b2=(2 - 1j) / 5, b=1.0)


def fig_right_special() -> SpecialForm:
    return SpecialForm(u=0.0, v=0.1, b1=(3 + 4j) / 10, b2=(4 + 3j) / 10, b=1.0)


def general_example_matrix() -> CMatrix:
    return CMatrix(
        (
            (4, 0, 4 - 8j, 0),
            (0, 4, 5 - 5j, 4 - 12j),
            (-2 + 6j, 5 - 5j, -4, 0),
            (0, 2 + 6j, 0, -4),
        )
    )


def general_example_block() -> BlockForm:
    return BlockForm(
        alpha=4 + 0j,
        C=CMatrix(((4 - 8j, 0), (5 - 5j, 4 - 12j))),
        D=CMatrix(((-2 + 6j, 5 - 5j), (0, 2 + 6j))),
    )


def reciprocal_two_ellipse() -> ReciprocalForm:
    a = math.sqrt(3.0 + 2.0 * math.sqrt(2.0))
    return ReciprocalForm(a1=a, a2=1.0, a3=a)


def random_cmat(rng, n: int = 2, scale: float = 1.0) -> CMatrix:
    return CMatrix(
        scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    )


def random_unitary2(rng) -> CMatrix:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(g)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return CMatrix(q)


def random_block(rng, scale: float = 1.0) -> BlockForm:
    return BlockForm(
        alpha=complex(rng.normal(), rng.normal()) * scale,
        C=random_cmat(rng, 2, scale),
        D=random_cmat(rng, 2, scale),
    )


def random_hermitian4(rng, scale: float = 1.0) -> CMatrix:
    m = random_cmat(rng, 4, scale)
    return 0.5 * (m + m.H)


def _nonzero(rng, floor: float = 0.2) -> float:
    x = float(rng.normal())
    sign = 1.0 if x >= 0 else -1.0
    return sign * (abs(x) + floor)


def random_special(rng, v_zero: bool = False, u_zero: bool = False) -> SpecialForm:
    if v_zero:
        u, v = float(rng.normal()), 0.0
    elif u_zero:
        u, v = 0.0, _nonzero(rng)
    else:
        u, v = float(rng.normal()), float(rng.normal())
    return SpecialForm(
        u=u,
        v=v,
        b1=complex(rng.normal(), rng.normal()),
        b2=complex(rng.normal(), rng.normal()),
        b=abs(float(rng.normal())) + 0.2,
    )


def bi_special_real_case_i(rng) -> SpecialForm:
    """Real diagonal parameter, equal diagonal imaginary parts."""
    for _ in range(200):
        u = _nonzero(rng)
        xi1, xi2 = (float(x) for x in rng.normal(size=2))
        eta = float(rng.normal())
        b = abs(xi1 * xi1 - xi2 * xi2) / (2.0 * abs(u))
        if 0.05 < b < 20.0:
            return SpecialForm(
                u=u, v=0.0, b1=complex(xi1, eta), b2=complex(xi2, eta), b=b
            )
    raise RuntimeError("generator failed")


def bi_special_real_case_ii(rng) -> SpecialForm:
    """Zero diagonal with purely imaginary entries; any coupling works."""
    eta1, eta2 = (float(x) for x in rng.normal(size=2))
    return SpecialForm(
        u=0.0, v=0.0,
        b1=complex(0.0, eta1), b2=complex(0.0, eta2),
        b=abs(float(rng.normal())) + 0.2,
    )


def bi_special_imag(rng) -> SpecialForm:
    """Purely imaginary diagonal parameter with matched entry moduli."""
    for _ in range(200):
        v = _nonzero(rng)
        rho = abs(float(rng.normal())) + 0.5
        eta1, eta2 = (float(x) for x in rng.uniform(-rho, rho, size=2))
        b = abs(eta1 - eta2) / abs(v)
        if not (0.05 < b < 20.0):
            continue
        s1 = 1.0 if rng.random() < 0.5 else -1.0
        s2 = 1.0 if rng.random() < 0.5 else -1.0
        xi1 = s1 * math.sqrt(max(rho * rho - eta1 * eta1, 0.0))
        xi2 = s2 * math.sqrt(max(rho * rho - eta2 * eta2, 0.0))
        return SpecialForm(
            u=0.0, v=v, b1=complex(xi1, eta1), b2=complex(xi2, eta2), b=b
        )
    raise RuntimeError("generator failed")


def bi_special_general(rng) -> SpecialForm:
    """Fully complex diagonal parameter; the entry layout kills Im T for
    every coupling, and the unique coupling root does the rest."""
    for _ in range(400):
        u = _nonzero(rng)
        v = _nonzero(rng)
        half = u / v
        d = float(rng.normal())
        xi = abs(float(rng.normal())) + 0.1
        b1 = complex(xi, half + d)
        b2 = complex(-xi, half - d)
        b = solve_b(u, v, b1, b2)
        if b is not None and 0.05 < b < 20.0:
            return SpecialForm(u=u, v=v, b1=b1, b2=b2, b=b)
    raise RuntimeError("generator failed")


_BI_FAMILIES = (
    bi_special_real_case_i,
    bi_special_real_case_ii,
    bi_special_imag,
    bi_special_general,
)


def bi_special_any(rng) -> SpecialForm:
    return _BI_FAMILIES[int(rng.integers(0, len(_BI_FAMILIES)))](rng)


def disguise(rng, sf: SpecialForm, rotate: bool = True, scale: bool = True,
             shift: bool = True) -> tuple[BlockForm, float]:
    """Hide a special form behind rotation, scaling, shift and block
    unitaries; returns the disguised block form and the rotation used."""
    bf = sf.to_block()
    u1 = random_unitary2(rng)
    u2 = random_unitary2(rng)
    theta0 = float(rng.uniform(0.0, math.pi)) if rotate else 0.0
    t = math.exp(float(rng.uniform(-0.7, 0.7))) if scale else 1.0
    c = complex(rng.normal(), rng.normal()) if shift else 0j
    w = t * cmath.exp(1j * theta0)
    alpha = w * sf.alpha
    c_new = w * (u1.H @ bf.C @ u2)
    d_new = w * (u2.H @ bf.D @ u1)
    return normalize_block(alpha + c, -alpha + c, c_new, d_new), theta0

"""Peano-kernel ingredients: ridge derivative densities, the polynomial
part, the variation-norm upper bound, and Fourier-side Sobolev seminorms.

On the unit ball a smooth target decomposes as

    f(x) = p(x) + (1/k!) int_{S^{d-1}} int_{-1}^{1}
                  F_omega^{(k+1)}(b) sigma_k(omega.x - b) db domega,

where F_omega is the back-projected profile, p has degree <= k, and the
double integral of |F^{(k+1)}| (divided by k!) upper-bounds the network
variation norm of the integral term.
"""

import math
import warnings
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .fourier_radon import (RidgeProfile, _apply_multiplier_linear, multiplier,
                            radon_slice, radon_transform, taper)
from .quadrature import sphere_grid

SPECTRAL_MASS_TOL = 1e-8


def theorem_order(d, k):
    """Smoothness order s = (d + 2k + 1) / 2 at which the embedding holds."""
    return (d + 2 * k + 1) / 2.0


@dataclass(frozen=True)
class SmoothnessSpec:
    """Sobolev order with L_2 integrability for seminorm computations."""

    s: float
    q: int = 2

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("s must be > 0")
        if self.q != 2:
            raise ValueError("only q = 2 seminorms are computed Fourier-side")


def multi_indices(d, max_degree):
    """All exponent tuples alpha with |alpha| <= max_degree, in a fixed order."""
    out = []
    for alpha in iproduct(range(max_degree + 1), repeat=d):
        if sum(alpha) <= max_degree:
            out.append(alpha)
    out.sort(key=lambda a: (sum(a), a))
    return out


@dataclass(frozen=True)
class PolynomialPart:
    """Polynomial of degree <= k in the monomial basis."""

    d: int
    coefficients: dict  # exponent tuple -> float

    @property
    def degree(self):
        if not self.coefficients:
            return 0
        return max(sum(a) for a in self.coefficients)

    def __call__(self, x):
        x = np.asarray(x, float)
        single = x.ndim == 1
        pts = x[None, :] if single else x
        out = np.zeros(len(pts))
        for alpha, c in self.coefficients.items():
            if c == 0.0:
                continue
            term = np.full(len(pts), c)
            for i, e in enumerate(alpha):
                if e:
                    term *= pts[:, i] ** e
            out += term
        return float(out[0]) if single else out


def zero_polynomial(d):
    return PolynomialPart(d=d, coefficients={})


def derivative_profile(f, omega, k, grid, order=None):
    """Samples of F_omega^{(order)} with order = k+1 by default.

    Realized spectrally from the Fourier slice: the multiplier is
    (i t)^{order} M_d(t), with the standard high-frequency taper.  Warns when
    the taper removes a non-negligible share of the spectral mass.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    order = k + 1 if order is None else order
    t = grid.frequencies
    base = np.abs(radon_slice(f, omega, grid) * (1j * t) ** order * multiplier(f.d, t))
    total = np.sum(base)
    if total > 0:
        removed = np.sum(base * (1.0 - taper(grid))) / total
        if removed > SPECTRAL_MASS_TOL:
            warnings.warn(
                "spectral taper removed %.3g of the derivative profile mass; "
                "increase the grid resolution" % removed)
    prof = radon_transform(f, omega, grid)
    vals = _apply_multiplier_linear(prof.values, grid, f.d, order=order)
    return RidgeProfile(omega=np.asarray(omega, float), grid=grid,
                        values=vals, kind="derivative(%d)" % order)


def _trapezoid_weights(b):
    """Composite trapezoid weights on a sorted node vector."""
    w = np.zeros(len(b))
    if len(b) < 2:
        return w
    gaps = np.diff(b)
    w[:-1] += 0.5 * gaps
    w[1:] += 0.5 * gaps
    return w


def variation_upper_bound(f, k, sphere, grid):
    """Upper bound on the variation norm of the integral term:

        (1/k!) sum_j w_j int_{-1}^{1} |F_{omega_j}^{(k+1)}(b)| db,

    with the b-integral by the trapezoid rule on the sub-grid in [-1, 1].
    """
    mask = grid.knot_mask()
    tw = _trapezoid_weights(grid.nodes[mask])
    total = 0.0
    for wj, omega in zip(sphere.weights, sphere.nodes):
        prof = derivative_profile(f, omega, k, grid)
        total += wj * float(np.dot(tw, np.abs(prof.values[mask])))
    return total / math.factorial(k)


def polynomial_part(f, k, sphere, grid):
    """Degree-<=k polynomial p from the Peano expansion at b = -1:

        p(x) = sum_j w_j sum_{m=0}^{k} F_{omega_j}^{(m)}(-1)/m! (omega_j.x + 1)^m,

    expanded into monomial coefficients.  The derivative values at -1 come
    from spectrally computed profiles interpolated at the knot (spectral
    accuracy; no finite differences of F).
    """
    coeffs = {a: 0.0 for a in multi_indices(f.d, k)}
    for wj, omega in zip(sphere.weights, sphere.nodes):
        for m in range(k + 1):
            prof = derivative_profile(f, omega, k, grid, order=m)
            fm = float(prof.interpolator()(-1.0)) / math.factorial(m)
            # expand (omega.x + 1)^m into monomials
            for alpha in multi_indices(f.d, m):
                j = m - sum(alpha)
                mult = math.factorial(m) / (
                    math.prod(math.factorial(e) for e in alpha) * math.factorial(j))
                w_pow = math.prod(omega[i] ** e for i, e in enumerate(alpha))
                coeffs[alpha] += wj * fm * mult * w_pow
    return PolynomialPart(d=f.d, coefficients=coeffs)


def sobolev_seminorm(f, s, angular_level=6, radial_points=8193, r_max=None):
    """Fourier-side Sobolev seminorm of order s:

        ( (2 pi)^{-d} int |xi|^{2s} |f_hat(xi)|^2 dxi )^{1/2}.

    The angular integral uses a deterministic sphere grid (d <= 3) and the
    radial integral a composite Simpson rule on [0, R], with R grown until
    the integrand has decayed below 1e-14 of its peak.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    d = f.d
    grid = sphere_grid(d, angular_level)

    def shell(r):
        # int_{S^{d-1}} |f_hat(r omega)|^2 domega, vectorized over r
        r = np.asarray(r, float)
        xi = r[:, None, None] * grid.nodes[None, :, :]
        vals = np.abs(f.fourier(xi)) ** 2
        return vals @ grid.weights

    R = r_max if r_max is not None else 16.0
    while True:
        r = np.linspace(0.0, R, radial_points)
        integrand = r ** (2 * s + d - 1) * shell(r)
        peak = integrand.max()
        if peak == 0.0:
            return 0.0
        if integrand[-1] < 1e-14 * peak:
            break
        if r_max is not None or R > 1e4:
            raise ValueError("seminorm integrand has not decayed at the "
                             "radial cutoff; integral may diverge")
        R *= 2.0
    from scipy.integrate import simpson
    total = simpson(integrand, x=r)
    return math.sqrt(total) / (2.0 * np.pi) ** (d / 2.0)

"""Radon slices, Radon transforms, filtered back-projection, reconstruction.

The filtered back-projection operator acts on a profile g by the Fourier
multiplier

    M_d(t) = |t|^{d-1} / (2 (2 pi)^{d-1}),

so that  f(x) = integral over S^{d-1} of (M_d applied to R f(omega, .))
evaluated at omega.x.  The constant is fixed by the round-trip identity
under this library's Fourier convention (see targets module); in one
dimension M_1 = 1/2 and the back-projected profile is f(omega*u)/2.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from scipy.signal import fftconvolve

from .quadrature import LineGrid

# Fraction of Nyquist above which the spectral taper rolls off.
TAPER_START = 0.8


@dataclass(frozen=True)
class RidgeProfile:
    """Samples of a one-dimensional profile along direction omega.

    kind is "radon", "backprojected", or "derivative(j)".
    """

    omega: np.ndarray
    grid: LineGrid
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if len(self.values) != self.grid.N:
            raise ValueError("values length must equal grid count")

    def interpolator(self):
        """Cubic spline through the samples (reconstruction should be
        grid-limited, not interpolation-limited)."""
        return CubicSpline(self.grid.nodes, self.values)

    def __call__(self, u):
        return self.interpolator()(u)


def multiplier(d, t):
    """Back-projection multiplier |t|^{d-1} / (2 (2 pi)^{d-1})."""
    return np.abs(t) ** (d - 1) / (2.0 * (2.0 * np.pi) ** (d - 1))


def taper_window(t, nyquist):
    """Smooth cos^2 roll-off above TAPER_START of the Nyquist frequency.

    Controls high-frequency amplification by the multiplier; the removed
    mass is negligible for targets whose bandwidth sits below the roll-off.
    """
    t = np.abs(t)
    t0 = TAPER_START * nyquist
    width = nyquist - t0
    w = np.ones_like(t)
    hi = t > t0
    w[hi] = np.cos(0.5 * np.pi * (t[hi] - t0) / width) ** 2
    w[t > nyquist] = 0.0
    return w


def taper(grid):
    """Taper window sampled on the grid's dual frequencies."""
    return taper_window(grid.frequencies, grid.nyquist)


@lru_cache(maxsize=64)
def _kernel_samples(L, N, d, order, cutoff, oversample=16):
    """Band-limited spatial kernel of the multiplier (i t)^order * M_d(t).

    Computed on lags m*h for m = -(N-1)..(N-1) by a fine frequency
    quadrature (spacing Nyquist-preserving, period large enough that the
    kernel's own 1/u^2 tails are negligible).  The spectrum is tapered to
    zero at ``cutoff``; keeping the cutoff near the input's own spectral
    content avoids amplifying rounding noise by the t^order growth.
    Cached per grid geometry and cutoff.
    """
    h = 2.0 * L / N
    nf = oversample * N
    t = 2.0 * np.pi * np.fft.fftfreq(nf, d=h)
    spec = (1j * t) ** order * multiplier(d, t) * taper_window(t, cutoff)
    k_per = np.fft.ifft(spec).real / h
    idx = (np.arange(-(N - 1), N) % nf)
    out = k_per[idx]
    out.setflags(write=False)
    return out


def _effective_cutoff(values, grid):
    """Smallest grid frequency whose taper keeps the input's significant band.

    Frequencies where the input spectrum is below 1e-13 of its peak carry
    only rounding noise, so the kernel need not (and should not) pass them.
    """
    spec = np.abs(np.fft.fft(values))
    peak = spec.max()
    if peak == 0.0:
        return grid.nyquist
    t = np.abs(grid.frequencies)
    band = t[spec > 1e-13 * peak].max()
    dt = np.pi / grid.L
    cutoff = math.ceil(band / (TAPER_START * dt)) * dt
    return min(grid.nyquist, max(cutoff, 8.0 * dt))


def _apply_multiplier_linear(values, grid, d, order=0):
    """Apply the multiplier as a zero-padded linear convolution.

    For even d the multiplier has a |t| kink at t = 0 whose filtered tails
    decay slowly; circular (FFT) filtering would fold them back into the
    window, so we convolve with the band-limited kernel instead.  For odd d
    the multiplier is a plain polynomial in t (no kink), and circular
    filtering is exact on the grid.
    """
    cutoff = _effective_cutoff(values, grid)
    if d % 2 == 1:
        t = grid.frequencies
        spec = (np.fft.fft(values) * (1j * t) ** order * multiplier(d, t)
                * taper_window(t, cutoff))
        return np.fft.ifft(spec).real
    kernel = _kernel_samples(grid.L, grid.N, d, order, cutoff)
    return fftconvolve(values, kernel)[grid.N - 1:2 * grid.N - 1] * grid.h


def _check_unit(omega):
    omega = np.asarray(omega, float)
    if abs(np.linalg.norm(omega) - 1.0) > 1e-10:
        raise ValueError("omega must be a unit vector")
    return omega


def radon_slice(f, omega, grid):
    """Fourier-slice data: g_omega_hat(t_m) = f_hat(omega * t_m).

    Returned in the grid's FFT frequency order.
    """
    omega = _check_unit(omega)
    t = grid.frequencies
    return f.fourier(t[:, None] * omega[None, :])


def _spectrum_to_profile(spectrum, grid):
    """Invert a 1-D spectrum tabulated on grid.frequencies to node samples."""
    phase = np.exp(-1j * grid.frequencies * grid.L)
    return np.fft.ifft(spectrum * phase) / grid.h


def radon_transform(f, omega, grid):
    """Samples of R f(omega, b) on the grid, via the Fourier slice theorem."""
    omega = _check_unit(omega)
    if f.bandwidth is not None and grid.nyquist < f.bandwidth:
        warnings.warn(
            "grid Nyquist frequency %.3g is below the target bandwidth %.3g; "
            "Radon samples may alias" % (grid.nyquist, f.bandwidth))
    # Periodization folds tails of R f back into the window; for targets
    # decaying fast beyond L the folded mass is negligible.
    if f.support_radius > 2.0 * grid.L:
        warnings.warn("profile support exceeds twice the grid half-width; "
                      "expect wrap-around error")
    vals = _spectrum_to_profile(radon_slice(f, omega, grid), grid)
    return RidgeProfile(omega=omega, grid=grid, values=vals.real, kind="radon")


def radon_direct(f, omega, b, resolution=200):
    """Hyperplane quadrature of f over {x : omega.x = b}, d in {2, 3}.

    Independent of the spectral route; serves as its oracle.
    """
    omega = _check_unit(omega)
    d = f.d
    if d not in (2, 3):
        raise ValueError("radon_direct supports d in {2, 3}")
    r2 = f.support_radius ** 2 - b * b
    if r2 <= 0:
        return 0.0
    r = np.sqrt(r2)
    u, w = leggauss(resolution)
    u = u * r
    w = w * r
    if d == 2:
        perp = np.array([-omega[1], omega[0]])
        pts = b * omega[None, :] + u[:, None] * perp[None, :]
        return float(np.dot(w, f.evaluate(pts)))
    # d == 3: orthonormal basis of the plane through b*omega
    ref = np.array([1.0, 0.0, 0.0])
    if abs(np.dot(ref, omega)) > 0.9:
        ref = np.array([0.0, 1.0, 0.0])
    e1 = ref - np.dot(ref, omega) * omega
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(omega, e1)
    uu, vv = np.meshgrid(u, u, indexing="ij")
    ww = np.outer(w, w)
    pts = (b * omega[None, :]
           + uu.ravel()[:, None] * e1[None, :]
           + vv.ravel()[:, None] * e2[None, :])
    return float(np.dot(ww.ravel(), f.evaluate(pts)))


def backproject_filter(profile, d, mode="linear"):
    """Apply the back-projection multiplier M_d to a radon profile.

    mode "linear" (default) filters by zero-padded convolution with the
    band-limited kernel, which is accurate for compactly supported inputs.
    mode "circular" applies the multiplier on the grid's discrete spectrum;
    pure grid harmonics are then exact eigenfunctions.
    """
    if profile.kind != "radon":
        raise ValueError("backproject_filter expects a radon-kind profile")
    grid = profile.grid
    if mode == "linear":
        vals = _apply_multiplier_linear(profile.values, grid, d)
    elif mode == "circular":
        spec = np.fft.fft(profile.values) * multiplier(d, grid.frequencies) * taper(grid)
        vals = np.fft.ifft(spec).real
    else:
        raise ValueError("mode must be 'linear' or 'circular'")
    return RidgeProfile(omega=profile.omega, grid=grid, values=vals,
                        kind="backprojected")


def backprojected_profile(f, omega, grid):
    """F_omega = M_d applied to R f(omega, .)."""
    prof = radon_transform(f, omega, grid)
    return backproject_filter(prof, f.d)


def reconstruct(f, x, sphere, grid):
    """Filtered back-projection estimate of f at x (single point or batch).

    Returns sum_j w_j F_{omega_j}(omega_j . x) with cubic interpolation of
    each back-projected profile; directions are reduced in fixed order.
    """
    x = np.asarray(x, float)
    single = x.ndim == 1
    pts = x[None, :] if single else x
    out = np.zeros(len(pts))
    for wj, omega in zip(sphere.weights, sphere.nodes):
        prof = backprojected_profile(f, omega, grid)
        out += wj * prof.interpolator()(pts @ omega)
    return float(out[0]) if single else out


def sinogram_rows(f, sphere, grid):
    """Yield (omega_index, b, value) rows for a CSV sinogram dump."""
    for j, omega in enumerate(sphere.nodes):
        prof = radon_transform(f, omega, grid)
        for b, v in zip(grid.nodes, prof.values):
            yield j, b, v

"""Sine integral and the truncated-sinc (Lanczos window) slit state.

The sinc main lobe truncated at its first zeros is the experimentally
preparable stand-in for the cosine minimum-uncertainty state.  Its
uncertainty product exceeds the sharp bound by the exact factor

    gamma = (2/sqrt(3)) * sqrt(1 - 1/(pi*Si(2*pi))) = 1.0168880...

Everything here reduces to the sine integral Si(x) = int_0^x sin(t)/t dt,
implemented to full double accuracy with a small-argument Pade approximant
and the auxiliary-function asymptotic form

    Si(x) = pi/2 - f(x)*cos(x) - g(x)*sin(x),   x > 4,

using the classic rational approximations for f and g (relative error
below 1e-16 on their range).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument

# Rational-approximation coefficients for the auxiliary functions f, g and
# the small-argument Pade form of Si (Cephes/Boost lineage, |x| >= 4 resp.
# |x| <= 4).
_F_NUM = (
    1.0, 7.44437068161936700618e2, 1.96396372895146869801e5,
    2.37750310125431834034e7, 1.43073403821274636888e9,
    4.33736238870432522765e10, 6.40533830574022022911e11,
    4.20968180571076940208e12, 1.00795182980368574617e13,
    4.94816688199951963482e12, -4.94701168645415959931e11,
)
_F_DEN = (
    1.0, 7.46437068161927678031e2, 1.97865247031583951450e5,
    2.41535670165126845144e7, 1.47478952192985464958e9,
    4.58595115847765779830e10, 7.08501308149515401563e11,
    5.06084464593475076774e12, 1.43468549171581016479e13,
    1.11535493509914254097e13,
)
_G_NUM = (
    1.0, 8.1359520115168615e2, 2.35239181626478200e5,
    3.12557570795778731e7, 2.06297595146763354e9,
    6.83052205423625007e10, 1.09049528450362786e12,
    7.57664583257834349e12, 1.81004487464664575e13,
    6.43291613143049485e12, -1.36517137670871689e12,
)
_G_DEN = (
    1.0, 8.19595201151451564e2, 2.40036752835578777e5,
    3.26026661647090822e7, 2.23355543278099360e9,
    7.87465017341829930e10, 1.39866710696414565e12,
    1.17164723371736605e13, 4.01839087307656620e13,
    3.99653257887490811e13,
)
_SI_NUM = (
    1.0, -4.54393409816329991e-2, 1.15457225751016682e-3,
    -1.41018536821330254e-5, 9.43280809438713025e-8,
    -3.53201978997168357e-10, 7.08240282274875911e-13,
    -6.05338212010422477e-16,
)
_SI_DEN = (
    1.0, 1.01162145739225565e-2, 4.99175116169755106e-5,
    1.55654986308745614e-7, 3.28067571055789734e-10,
    4.5049097575386581e-13, 3.21107051193712168e-16,
)


def _poly(coeffs, y):
    acc = np.full_like(y, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * y + c
    return acc


def sine_integral(x):
    """Si(x) = int_0^x sin(t)/t dt; odd in x, absolute accuracy < 1e-12."""
    xa = np.asarray(x, dtype=float)
    ax = np.abs(xa)
    x2 = ax * ax
    small = x2 <= 16.0
    # small branch
    xs = np.where(small, ax, 1.0)
    si_small = xs * _poly(_SI_NUM, xs * xs) / _poly(_SI_DEN, xs * xs)
    # large branch via auxiliary functions of y = 1/x^2
    xl = np.where(small, 5.0, ax)
    y = 1.0 / (xl * xl)
    f = _poly(_F_NUM, y) / (xl * _poly(_F_DEN, y))
    g = y * _poly(_G_NUM, y) / _poly(_G_DEN, y)
    si_large = np.pi / 2.0 - f * np.cos(xl) - g * np.sin(xl)
    out = np.sign(xa) * np.where(small, si_small, si_large)
    return float(out) if np.isscalar(x) else out


SI_PI = float(sine_integral(np.pi))
SI_2PI = float(sine_integral(2.0 * np.pi))


def sinc(x):
    """sin(x)/x with the removable singularity at 0 evaluated as 1."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


@dataclass(frozen=True)
class LanczosState:
    """Truncated-sinc slit state of width delta_x (amplitude zero at the
    slit edges, which sit at the first zeros of the sinc)."""

    slit_width: float

    def __post_init__(self):
        if not self.slit_width > 0:
            raise InvalidArgument(f"slit_width must be positive, got {self.slit_width}")


def eval_lanczos_position(x, state: LanczosState):
    """Normalized position amplitude sqrt(pi/(Si(2pi)*dx)) * sinc(2pi x/dx).

    Returns 0 outside the slit (the preparation truncates there).
    """
    dx = state.slit_width
    xa = np.asarray(x, dtype=float)
    amp = np.sqrt(np.pi / (SI_2PI * dx)) * sinc(2.0 * np.pi * xa / dx)
    out = np.where(np.abs(xa) <= dx / 2.0, amp, 0.0)
    return float(out) if np.isscalar(x) else out


def lanczos_gamma() -> float:
    """Exact excess factor of the truncated-sinc uncertainty product:
    sigma_p * delta_x = gamma * pi * hbar."""
    return 2.0 / np.sqrt(3.0) * np.sqrt(1.0 - 1.0 / (np.pi * SI_2PI))


def eval_lanczos_momentum_density(k, state: LanczosState):
    """Wavenumber density of the truncated-sinc state.

    (dx / (8 pi^2 Si(2pi))) * [Si(dx*k/2 + pi) - Si(dx*k/2 - pi)]^2;
    even in k and normalized over the real line.
    """
    dx = state.slit_width
    u = np.asarray(k, dtype=float) * dx / 2.0
    dsi = sine_integral(u + np.pi) - sine_integral(u - np.pi)
    out = dx / (8.0 * np.pi**2 * SI_2PI) * dsi**2
    return float(out) if np.isscalar(k) else out


def _segment_gl_nodes(a: float, b: float, max_panel: float, order: int = 16):
    """Gauss-Legendre nodes/weights tiling [a, b] with panels <= max_panel."""
    npanel = max(1, int(np.ceil((b - a) / max_panel)))
    edges = np.linspace(a, b, npanel + 1)
    xg, wg = np.polynomial.legendre.leggauss(order)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    nodes = mid[:, None] + half[:, None] * xg[None, :]
    weights = half[:, None] * wg[None, :]
    return nodes.ravel(), weights.ravel()


def lanczos_band_weight(state: LanczosState, k_max: float) -> float:
    """Probability mass of the momentum density inside |k| <= k_max."""
    if k_max <= 0:
        return 0.0
    # integrand oscillates with period 4*pi/dx in k; panels of a quarter period
    nodes, weights = _segment_gl_nodes(0.0, k_max, np.pi / state.slit_width)
    vals = eval_lanczos_momentum_density(nodes, state)
    return 2.0 * float(np.dot(weights, vals))


def lanczos_band_second_moment(state: LanczosState, k_max: float) -> float:
    """int_{|k| <= k_max} k^2 * density(k) dk, by panelwise Gauss-Legendre."""
    if k_max <= 0:
        return 0.0
    nodes, weights = _segment_gl_nodes(0.0, k_max, np.pi / state.slit_width)
    vals = nodes**2 * eval_lanczos_momentum_density(nodes, state)
    return 2.0 * float(np.dot(weights, vals))


def lanczos_weight_tail_bound(state: LanczosState, k_max: float) -> float:
    """Certified upper bound on the probability mass beyond |k| > k_max.

    Uses the two-term asymptotics of Si with remainder <= 4/v^3, so with
    u = dx*k/2 the bracket in the density is at most
    2pi/(u^2-pi^2) + 4pi*u/(u^2-pi^2)^2 + 8/(u-pi)^3.
    Valid for dx*k_max/2 > 2*pi.
    """
    dx = state.slit_width
    U = dx * k_max / 2.0
    if U <= 2.0 * np.pi:
        raise InvalidArgument("tail bound requires dx*k_max/2 > 2*pi")

    def bracket(u):
        return (2*np.pi/(u**2 - np.pi**2)
                + 4*np.pi*u/(u**2 - np.pi**2)**2
                + 8/(u - np.pi)**3)

    # integrand (in u) is <= C * bracket(u)^2, decreasing; bound the integral
    # by the leading 1/(3 (U-pi)^3) behavior with the bracket inflated at U
    C = 1.0 / (4.0 * np.pi**2 * SI_2PI)  # density du-measure prefactor (both tails)
    lead = bracket(U) / (2.0 * np.pi / (U**2 - np.pi**2))  # inflation factor >= 1
    integral = (2.0 * np.pi) ** 2 * lead**2 / (3.0 * (U - np.pi) ** 3)
    return 2.0 * C * integral


def lanczos_second_moment_tail_bound(state: LanczosState, k_max: float) -> float:
    """Certified upper bound on int_{|k| > k_max} k^2 density dk."""
    dx = state.slit_width
    U = dx * k_max / 2.0
    if U <= 2.0 * np.pi:
        raise InvalidArgument("tail bound requires dx*k_max/2 > 2*pi")
    # u^2 * bracket(u)^2 <= (2pi)^2 * lead^2 * u^2/(u^2-pi^2)^2 <= that /(U-pi)
    lead = ((2*np.pi/(U**2 - np.pi**2) + 4*np.pi*U/(U**2 - np.pi**2)**2
             + 8/(U - np.pi)**3) / (2*np.pi/(U**2 - np.pi**2)))
    C = 1.0 / (4.0 * np.pi**2 * SI_2PI)
    integral_u = (2.0 * np.pi) ** 2 * lead**2 / (U - np.pi)
    # back to k units: k^2 dk = (2/dx)^3 u^2 du
    return 2.0 * C * integral_u * (2.0 / dx) ** 2

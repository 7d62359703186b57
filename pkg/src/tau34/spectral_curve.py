"""Genus-zero spectral curve, three-sheet uniformization and g-functions.

The curve is parameterized by

    lam(u) = u^3 - (3/2) s u - 3 mu/(5 eta - 3 s)
    Y(u)   = u^4 + (5 eta/3 - 2 s) u^2 - 4 mu/(5 eta - 3 s) u + s^2/2 - 5 eta s/3

with s the branch-equation root, and g(u) is the antiderivative of
Y(u) lam'(u) normalized so that the sheet restrictions g_j(lam) = g(u_j(lam))
match the exponential phases theta_j at infinity up to O(lam^(-1/3)).

Note: the only explicit degree-7 form of g we use is the antiderivative
itself; the constant of integration is -2*c*a^4 (c the constant term of
lam, a = sqrt(s/2)), which kills the lam^0 term of every g_j at infinity.

Sheets are cut along (-inf, beta] (1|2 gluing) and [alpha, inf) (2|3
gluing), alpha = lam(-a), beta = lam(a).  Side limits on the cuts are exact
(conjugate-pair assignment), not epsilon offsets.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly

from . import _kernels
from .param_domain import Params, DomainError, solve_sigma

OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)

#: branch-point exclusion radius for uniformize()
BRANCH_POINT_TOL = 1e-10


class OnBranchPoint(ValueError):
    """lambda within BRANCH_POINT_TOL of a branch point."""


class BranchCutError(ValueError):
    """Evaluation on a cut without a side specification."""


@dataclass(frozen=True)
class SpectralCurve:
    params: Params
    sigma: float
    a: float
    lam_coeffs: np.ndarray      # ascending, degree 3
    Y_coeffs: np.ndarray        # ascending, degree 4
    g_coeffs: np.ndarray        # ascending, degree 7
    alpha: float
    beta: float

    @property
    def c(self):
        """Constant term of lam(u)."""
        return float(self.lam_coeffs[0])

    @property
    def b(self):
        """-(u^2 coefficient) of Y, i.e. b = 2 s - 5 eta / 3."""
        return 2.0 * self.sigma - 5.0 * self.params.eta / 3.0


@dataclass(frozen=True)
class BranchCoeffs:
    case: str                   # 'generic' | 'boundary-mu' | 'gamma-plus' | 'gamma-minus'
    rho_alpha: float = math.nan
    rho_beta: float = math.nan
    rho_hat_beta: float = math.nan
    rho_hat: float = math.nan
    b_coeff: float = math.nan   # (3/5) b, the gamma-minus amplitude


def build_curve(p, sigma=None):
    """Construct the curve at p; sigma may be supplied for boundary points."""
    if sigma is None:
        sigma = solve_sigma(p).sigma
    eta, mu = p.eta, p.mu
    den = 5.0 * eta - 3.0 * sigma
    c = -3.0 * mu / den if mu != 0.0 else 0.0
    a = math.sqrt(sigma / 2.0) if sigma > 0 else 0.0
    lam = np.array([c, -1.5 * sigma, 0.0, 1.0])
    Y = np.array([0.5 * sigma**2 - (5.0 / 3.0) * eta * sigma,
                  (4.0 / 3.0) * c,
                  (5.0 / 3.0) * eta - 2.0 * sigma,
                  0.0,
                  1.0])
    g = npoly.polyint(npoly.polymul(Y, npoly.polyder(lam)))
    g[0] = -2.0 * c * a**4
    alpha = float(npoly.polyval(-a, lam).real)
    beta = float(npoly.polyval(a, lam).real)
    return SpectralCurve(params=p, sigma=sigma, a=a, lam_coeffs=lam,
                         Y_coeffs=Y, g_coeffs=g, alpha=alpha, beta=beta)


def _cut_side_roots(curve, x, cut):
    """Exact side limits of (u1, u2, u3) for real x on a cut.

    On [alpha, inf) sheets 2 and 3 carry the conjugate pair (upper side:
    u2 = x0 - i y0, u3 = x0 + i y0 with y0 > 0); on (-inf, beta] sheets 1
    and 2 do (upper side: u1 = x0 + i y0, u2 = x0 - i y0).
    """
    r = np.roots([1.0, 0.0, float(curve.lam_coeffs[1]),
                  float(curve.lam_coeffs[0]) - x])
    i_real = int(np.argmin(np.abs(r.imag)))
    real_root = complex(r[i_real].real, 0.0)
    pair = [r[i] for i in range(3) if i != i_real]
    lo = min(pair, key=lambda z: z.imag)
    hi = max(pair, key=lambda z: z.imag)
    lo = complex(lo.real, -abs(lo.imag))
    hi = complex(hi.real, abs(hi.imag))
    if cut == "alpha":
        return np.array([real_root, lo, hi])
    return np.array([hi, lo, real_root])


def uniformize_all(curve, lam):
    """Sheet-resolved roots (3, ...) for an array of lambda values."""
    return _kernels.sheet_roots(curve.a**2, curve.c, lam)


def uniformize(curve, lam, sheet, side=None):
    """The root of lam(u) = lam on the given sheet (1, 2 or 3).

    For real lam on a cut of the requested sheet, `side` ('+' or '-')
    selects the boundary value; '+' is the upper half-plane limit.
    """
    if sheet not in (1, 2, 3):
        raise ValueError("sheet must be 1, 2 or 3")
    lam = complex(lam)
    scale = 1.0 + abs(lam)
    if min(abs(lam - curve.alpha), abs(lam - curve.beta)) < BRANCH_POINT_TOL * scale:
        raise OnBranchPoint(f"lambda = {lam} is at a branch point")
    if lam.imag == 0.0:
        on_alpha_cut = lam.real > curve.alpha and sheet in (2, 3)
        on_beta_cut = lam.real < curve.beta and sheet in (1, 2)
        if on_alpha_cut or on_beta_cut:
            if side not in ("+", "-"):
                raise BranchCutError(
                    f"lambda = {lam.real:g} lies on a cut of sheet {sheet}; "
                    "pass side='+' or side='-'")
            roots = _cut_side_roots(curve, lam.real,
                                    "alpha" if on_alpha_cut else "beta")
            u = roots[sheet - 1]
            # u_j(x - i0) = conj(u_j(x + i0)): sheets commute with conjugation
            return complex(u) if side == "+" else complex(u).conjugate()
    u = complex(uniformize_all(curve, np.array([lam]))[sheet - 1, 0])
    return u


def lam_of_u(curve, u):
    return npoly.polyval(u, curve.lam_coeffs)


def Y_of_u(curve, u):
    return npoly.polyval(u, curve.Y_coeffs)


def g_of_u(curve, u):
    return npoly.polyval(u, curve.g_coeffs)


def g_sheet(curve, lam, sheet, side=None):
    """g_j(lambda) = g(u_j(lambda))."""
    return complex(g_of_u(curve, uniformize(curve, lam, sheet, side=side)))


def g_sheets_all(curve, lam):
    """All three g_j over an array of lambda (vectorized, off-cut samples)."""
    u = uniformize_all(curve, lam)
    return g_of_u(curve, u)


def theta_phase(lam, j, p, side=None):
    """theta_j(lam) = (3/7) w^(j-1) lam^(7/3) + w^(1-j) [eta lam^(5/3)
    + mu lam^(2/3)] + w^(j-1) nu lam^(1/3), principal lam^(1/3).

    On the negative real axis the principal branch is discontinuous, so a
    side ('+'/'-') is required there.
    """
    lam = complex(lam)
    if lam == 0:
        raise ValueError("theta_phase requires lam != 0")
    if lam.imag == 0.0 and lam.real < 0.0:
        if side == "+":
            lam = complex(lam.real, +0.0)
        elif side == "-":
            return theta_phase(lam.conjugate(), j, p, side="+").conjugate()
        else:
            raise BranchCutError("negative real lambda needs side='+'/'-'")
    t = lam ** (1.0 / 3.0)
    w = OMEGA ** (j - 1)
    wi = OMEGA ** (1 - j)
    return ((3.0 / 7.0) * w * t**7 + wi * p.eta * t**5 + wi * p.mu * t**2
            + w * p.nu * t)


def theta_hat(lam, p):
    """Diagonal of the half-plane-permuted phase matrix, as a 3-tuple.

    Upper half-plane (and the real axis limit from above): (th1, th3, th2);
    lower half-plane: (th1, th2, th3).
    """
    lam = complex(lam)
    upper = lam.imag >= 0.0
    th = [theta_phase(lam, j, p, side="+" if lam.imag == 0 else None)
          for j in (1, 2, 3)]
    return (th[0], th[2], th[1]) if upper else (th[0], th[1], th[2])


def branch_coeffs(curve, case=None):
    """Closed-form local amplitudes of the g-differences at the branch points.

    generic:   (g3-g2) ~ +-i rho_a (lam-alpha)^(3/2),  (g2-g1) ~ rho_b (lam-beta)^(3/2)
    boundary-mu: beta exponent becomes 5/2 with amplitude rho_hat_beta
    gamma-plus:  both exponents 5/2 with common amplitude rho_hat
    gamma-minus: alpha = beta = 0, amplitude (3/5) b on lam^(5/3)
    """
    p = curve.params
    a = curve.a
    b = curve.b
    c = curve.c
    if case is None:
        if curve.sigma < 1e-12:
            case = "gamma-minus"
        elif abs(curve.sigma - 5.0 * p.eta / 3.0) < 1e-10 * (1.0 + abs(p.eta)):
            case = "gamma-plus"
        else:
            from .param_domain import eval_P
            _, dP = eval_P(curve.sigma, p)
            case = "generic" if abs(dP) > 1e-8 * (1.0 + curve.sigma**2) \
                else "boundary-mu"
    if case == "gamma-minus":
        return BranchCoeffs(case=case, b_coeff=0.6 * b)
    f = 6.0 * a**3 - 3.0 * a * b
    pref = -8.0 / (9.0 * math.sqrt(3.0 * a))
    rho_alpha = pref * (f - 2.0 * c)
    if case == "generic":
        return BranchCoeffs(case=case, rho_alpha=rho_alpha,
                            rho_beta=pref * (f + 2.0 * c))
    hat_pref = 8.0 * math.sqrt(3.0) / (135.0 * a**3.5)
    if case == "boundary-mu":
        return BranchCoeffs(case=case, rho_alpha=rho_alpha,
                            rho_hat_beta=hat_pref * (2.0 * a * b - c))
    if case == "gamma-plus":
        # c -> 0 limit of the boundary-mu amplitude: 2ab, at both points
        return BranchCoeffs(case=case, rho_hat=hat_pref * 2.0 * a * b)
    raise DomainError(f"unknown branch-coefficient case {case!r}")


# ---------------------------------------------------------------------------
# high-precision evaluation (mpmath): used by asymptotic-fit diagnostics where
# double precision hits the cancellation floor of g_j - theta_j.
# ---------------------------------------------------------------------------

def _mp_context(dps):
    import mpmath
    mp = mpmath.mp.clone()
    mp.dps = dps
    return mpmath, mp


def _mp_g_coeffs(curve, mp):
    """Rebuild (lam1, lam0, g_coeffs) in mp arithmetic.

    The doubles sigma/eta/mu are promoted exactly and the polynomial algebra
    redone in mp, so that differences like g_i - g_j near a branch point are
    not limited by the 1e-16 rounding of the stored double coefficients.
    """
    s = mp.mpf(curve.sigma)
    eta = mp.mpf(curve.params.eta)
    mu = mp.mpf(curve.params.mu)
    c = -3 * mu / (5 * eta - 3 * s) if mu != 0 else mp.mpf(0)
    a2 = s / 2
    lam1 = -mp.mpf(3) / 2 * s
    Y = [s * s / 2 - mp.mpf(5) / 3 * eta * s, mp.mpf(4) / 3 * c,
         mp.mpf(5) / 3 * eta - 2 * s, mp.mpf(0), mp.mpf(1)]
    dlam = [lam1, mp.mpf(0), mp.mpf(3)]
    prod = [mp.mpf(0)] * (len(Y) + len(dlam) - 1)
    for i, yi in enumerate(Y):
        for j, dj in enumerate(dlam):
            prod[i + j] += yi * dj
    g = [-2 * c * a2 * a2] + [prod[k] / (k + 1) for k in range(len(prod))]
    return lam1, c, g


def _mp_sheet_value(curve, lam, sheet, dps=50):
    """(u_sheet(lam), g(u_sheet(lam))) with mpmath, Newton-refined root."""
    mpmath, mp = _mp_context(dps)
    lam1, lam0, g = _mp_g_coeffs(curve, mp)
    seed = uniformize(curve, lam, sheet)
    u = mp.mpc(seed)
    p0 = lam0 - mp.mpc(lam)
    for _ in range(80):
        f = u * (u * u + lam1) + p0
        fp = 3 * u * u + lam1
        du = f / fp
        u -= du
        if abs(du) < mp.mpf(10) ** (-dps + 4) * (1 + abs(u)):
            break
    acc = mp.mpc(0)
    for ck in reversed(g):
        acc = acc * u + ck
    return u, acc, mp


def g_sheet_mp(curve, lam, sheet, dps=50):
    """High-precision g_j(lam); returns an mpmath complex value."""
    _, val, _ = _mp_sheet_value(curve, lam, sheet, dps=dps)
    return val


def theta_phase_mp(lam, j, p, dps=50):
    mpmath, mp = _mp_context(dps)
    lam = mp.mpc(lam)
    t = lam ** (mp.mpf(1) / 3)
    w = mp.exp(2j * mp.pi / 3) ** (j - 1)
    wi = mp.exp(2j * mp.pi / 3) ** (1 - j)
    return ((mp.mpf(3) / 7) * w * t**7 + wi * p.eta * t**5 + wi * p.mu * t**2
            + w * p.nu * t)


def check_g_asymptotics(curve, radii=None, arg_upper=0.9, arg_lower=-0.9,
                        dps=50):
    """Log-log decay fit of |g_j - theta_perm(j)| on each sheet/half-plane.

    Returns a dict keyed by (sheet, 'upper'|'lower') with entries
    (slope, max_residual); the matching claim is slope = -1/3.
    """
    if radii is None:
        radii = np.logspace(3, 6, 24)
    report = {}
    for half, argv in (("upper", arg_upper), ("lower", arg_lower)):
        perm = {1: 1, 2: 3, 3: 2} if half == "upper" else {1: 1, 2: 2, 3: 3}
        for sheet in (1, 2, 3):
            diffs = []
            for r in radii:
                lam = r * cmath.exp(1j * argv)
                gj = g_sheet_mp(curve, lam, sheet, dps=dps)
                th = theta_phase_mp(lam, perm[sheet], curve.params, dps=dps)
                diffs.append(float(abs(gj - th)))
            diffs = np.array(diffs)
            slope = np.polyfit(np.log(radii), np.log(diffs), 1)[0]
            report[(sheet, half)] = (float(slope), float(diffs.max()))
    return report


def _g_difference_mp(curve, lam, pair, dps):
    gi = g_sheet_mp(curve, lam, pair[0], dps=dps)
    gj = g_sheet_mp(curve, lam, pair[1], dps=dps)
    return gi - gj


def fit_branch_exponent(curve, point="alpha", n_radii=12, scale_lo=1e-4,
                        scale_hi=1e-2, direction=None, dps=50):
    """Power law |g_i - g_j| = rho * r^p near a branch point.

    The exponent is fitted on log-spaced radii in [scale_lo, scale_hi] *
    (1 + |anchor|) along the bisector of the local sector.  The prefactor is
    then extracted in the near field (r ~ 1e-8 * scale, where the 1 + O(r)
    correction is negligible) with the exponent snapped to the nearest half
    integer.  Returns (p_fit, rho).  Generic exponent 3/2 (amplitudes
    rho_alpha / rho_beta), 5/2 on the critical strata.
    """
    anchor = curve.alpha if point == "alpha" else curve.beta
    pair = (3, 2) if point == "alpha" else (2, 1)
    if direction is None:
        direction = 5.0 * math.pi / 6.0 if point == "alpha" else math.pi / 4.0
    scale = 1.0 + abs(anchor)
    radii = np.logspace(math.log10(scale_lo), math.log10(scale_hi),
                        n_radii) * scale
    vals = []
    for r in radii:
        lam = anchor + r * cmath.exp(1j * direction)
        vals.append(float(abs(_g_difference_mp(curve, lam, pair, dps))))
    q = np.polyfit(np.log(radii), np.log(np.array(vals)), 1)
    p_fit = float(q[0])
    p_snap = round(2.0 * p_fit) / 2.0
    rho = 0.0
    for r in (1e-8 * scale, 2e-8 * scale):
        lam = anchor + r * cmath.exp(1j * direction)
        rho += float(abs(_g_difference_mp(curve, lam, pair, dps))) / r**p_snap
    return p_fit, rho / 2.0

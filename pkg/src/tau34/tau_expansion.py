"""Leading tau-function data and the recursive expansion machinery.

Contents:
  * closed forms of the leading Hamiltonian densities h1, h2, h5 and of the
    leading free energy varpi0 / one-loop factor chi;
  * the order-by-order solution (u_k, v_k) of the rescaled string equation,
    carried as nu-derivative jets so residual evaluation is analytic;
  * the flow-compatibility and tau-differential consistency checks;
  * the Appendix-style Hamiltonians evaluated on a solution plus Darboux
    coordinates;
  * the quartic two-matrix-model resolvent equation and its multiscaling
    bridge to the branch equation.

All scalar formulas are dtype-generic (floats or mpmath): residual-scaling
tests at hbar = 1e-4 sit below double precision, so jets can be built in
mpmath via the dps argument.
"""
import math
from dataclasses import dataclass

from . import param_domain as pd
from .series import Jet


@dataclass(frozen=True)
class LeadingHamiltonians:
    h1_0: float
    h2_0: float
    h5_0: float


@dataclass(frozen=True)
class TauLeading:
    varpi0: float
    chi: float

    def log_tau_leading(self, hbar):
        """hbar^-2 varpi0 - (1/24) log chi (overall constant excluded)."""
        return self.varpi0 / hbar**2 - math.log(self.chi) / 24.0


@dataclass(frozen=True)
class ExpansionJet:
    """u_k, v_k at a point with nu-derivatives up to order 4 - 2k."""
    params: object
    order: int
    u: tuple        # u[k] = (value, d/dnu, d2/dnu2, ...) for k <= order
    v: tuple

    @property
    def u0(self):
        return self.u[0][0]

    @property
    def v0(self):
        return self.v[0][0]


@dataclass(frozen=True)
class HamiltonianValues:
    H1: float
    H2: float
    H5: float
    Q_U: float
    Q_V: float
    Q_W: float
    P_U: float
    P_V: float
    P_W: float


def leading_hamiltonians(p, sigma=None):
    """h1, h2, h5 (closed forms at the branch-equation root)."""
    if sigma is None:
        sigma = pd.solve_sigma(p).sigma
    eta, mu = p.eta, p.mu
    den = 5.0 * eta - 3.0 * sigma
    h1 = -sigma**3 * (20.0 * eta - 9.0 * sigma) / 24.0
    h2 = -mu * sigma**2
    h5 = (5.0 / 48.0) * sigma**5 * (2.0 * eta - sigma)
    if mu != 0.0:
        h1 += 2.0 * mu**2 * (6.0 * sigma - 5.0 * eta) / den**2
        h2 += 16.0 * mu**3 / den**3
        h5 += 2.5 * mu**2 * sigma**2 * (5.0 * eta - 4.0 * sigma) / den**2 \
            - 30.0 * mu**4 / den**4
    return LeadingHamiltonians(h1_0=h1, h2_0=h2, h5_0=h5)


def tau_leading(p, sigma=None):
    """varpi0 and chi; chi = -2(5 eta - 3 s) dP/ds identically."""
    if sigma is None:
        sigma = pd.solve_sigma(p).sigma
    eta, mu = p.eta, p.mu
    den = 5.0 * eta - 3.0 * sigma
    varpi0 = -sigma**5 * (54.0 * sigma**2 - 245.0 * eta * sigma
                          + 280.0 * eta**2) / 1344.0
    chi = sigma * den**2
    if mu != 0.0:
        varpi0 += (-mu**2 * sigma**2 * (50.0 * eta**2 - 80.0 * eta * sigma
                                        + 27.0 * sigma**2) / (8.0 * den**2)
                   + mu**4 * (25.0 * eta - 24.0 * sigma) / den**4)
        chi -= 72.0 * mu**2 / den**2
    return TauLeading(varpi0=varpi0, chi=chi)


def h1_first_correction(p, sigma=None):
    """First hbar^2 correction of the nu-Hamiltonian density on mu = 0.

    Closed form (9 s - 5 eta) / (6 s^2 (5 eta - 3 s)^2), obtained by feeding
    the order-hbar^2 jet through the Darboux representation of the
    t1-Hamiltonian.  Serves as the independent oracle for the first-residue
    pairing check in `parametrix`.
    """
    if p.mu != 0.0:
        raise pd.DomainError("closed form available on the mu = 0 slice only")
    if sigma is None:
        sigma = pd.solve_sigma(p).sigma
    s, e = sigma, p.eta
    return (9.0 * s - 5.0 * e) / (6.0 * s**2 * (5.0 * e - 3.0 * s) ** 2)


# ---------------------------------------------------------------------------
# recursive expansion of the rescaled string equation
# ---------------------------------------------------------------------------

def _sigma_refined(p, mp):
    """Branch-equation root as an mp float (Newton from the double root)."""
    s = mp.mpf(pd.solve_sigma(p).sigma)
    eta, mu, nu = map(mp.mpf, (p.eta, p.mu, p.nu))
    for _ in range(80):
        den = 5 * eta - 3 * s
        val = nu + s**3 / 2 - mp.mpf(5) / 4 * eta * s * s + 6 * mu * mu / den**2
        dp = mp.mpf(3) / 2 * s * s - mp.mpf(5) / 2 * eta * s + 36 * mu * mu / den**3
        step = val / dp
        s -= step
        if abs(step) < mp.mpf(10) ** (-mp.dps + 4) * (1 + abs(s)):
            break
    return s


def _nu_tower(sigma, eta, mu, depth):
    """[s, s', s'', ...] with ' = d/dnu, generic scalar type."""
    den = 5 * eta - 3 * sigma
    P1 = 1.5 * sigma**2 - 2.5 * eta * sigma
    P2 = 3 * sigma - 2.5 * eta
    P3 = P1 * 0 + 3
    P4 = P1 * 0
    if mu != 0:
        m2 = mu * mu
        P1 = P1 + 36 * m2 / den**3
        P2 = P2 + 324 * m2 / den**4
        P3 = P3 + 3888 * m2 / den**5
        P4 = P4 + 58320 * m2 / den**6
    n1, n2, n3, n4 = -P1, -P2, -P3, -P4
    tower = [sigma, 1 / n1]
    if depth >= 2:
        tower.append(-n2 / n1**3)
    if depth >= 3:
        tower.append((3 * n2**2 - n1 * n3) / n1**5)
    if depth >= 4:
        tower.append((-15 * n2**3 + 10 * n1 * n2 * n3 - n1**2 * n4) / n1**7)
    return tower[: depth + 1]


def _jet_derivative(jet):
    """Jet of f' given the jet of f (one order lower)."""
    return Jet([(k + 1) * c for k, c in enumerate(jet.c[1:])])


def expansion_jet(p, K=1, dps=None):
    """Solve the string-equation expansion through order hbar^(2K), K <= 2.

    u0 = s, v0 = -2 mu/(5 eta - 3 s); the order-hbar^(2k) equations are 2x2
    linear systems with the matrix whose determinant is
    (5 eta - 3 s) dP/ds != 0 on the domain.  Each u_k, v_k is carried with
    nu-derivatives up to order 4 - 2k.
    """
    if not 0 <= K <= 2:
        raise ValueError("expansion order K must be 0, 1 or 2")
    if dps is not None:
        import mpmath
        mp = mpmath.mp.clone()
        mp.dps = dps
        sigma = _sigma_refined(p, mp)
        eta, mu = mp.mpf(p.eta), mp.mpf(p.mu)
    else:
        sigma = pd.solve_sigma(p).sigma
        eta, mu = p.eta, p.mu

    depth = 4
    tower = _nu_tower(sigma, eta, mu, depth)
    u0 = Jet.from_derivatives(tower)
    v0 = (-2 * mu) / (5 * eta - 3 * u0) if mu != 0 else u0 * 0
    series_u = [u0]
    series_v = [v0]
    for k in (1, 2):
        if K < k:
            break
        uk_1 = series_u[k - 1]
        vk_1 = series_v[k - 1]
        m11 = 1.5 * u0 * u0 - 2.5 * eta * u0
        m12 = 3 * v0
        m21 = -1.5 * v0
        m22 = 2.5 * eta - 1.5 * u0
        if k == 1:
            du = _jet_derivative(u0)
            ddu = _jet_derivative(du)
            r1 = 0.375 * du * du + 0.75 * u0 * ddu - (5.0 / 12.0) * eta * ddu
            r2 = -_jet_derivative(_jet_derivative(v0))
        else:
            u1, v1 = series_u[1], series_v[1]
            du0 = _jet_derivative(u0)
            ddu0 = _jet_derivative(du0)
            d4u0 = _jet_derivative(_jet_derivative(ddu0))
            du1 = _jet_derivative(u1)
            ddu1 = _jet_derivative(du1)
            ddv1 = _jet_derivative(_jet_derivative(v1))
            r1 = (-1.5 * u0 * u1 * u1 - 1.5 * v1 * v1 + 1.25 * eta * u1 * u1
                  + 0.75 * du0 * du1 + 0.75 * (u0 * ddu1 + u1 * ddu0)
                  - (5.0 / 12.0) * eta * ddu1 - d4u0 / 12.0)
            r2 = 1.5 * u1 * v1 - ddv1
        det = m11 * m22 - m12 * m21
        series_u.append((r1 * m22 - m12 * r2) / det)
        series_v.append((m11 * r2 - r1 * m21) / det)

    def tup(jet, upto):
        return tuple(jet.derivative(m) for m in range(upto + 1))

    u_out = tuple(tup(series_u[k], depth - 2 * k) for k in range(K + 1))
    v_out = tuple(tup(series_v[k], depth - 2 * k) for k in range(K + 1))
    return ExpansionJet(params=p, order=K, u=u_out, v=v_out)


def string_residual(p, jet, hbar):
    """Absolute residuals of the two rescaled string-equation lines.

    The truncated series u = sum u_k hbar^(2k) (and v) is inserted into

        r1 = (5/2) eta v - (3/2) u v + mu + hbar^2 v''
        r2 = u^3/2 + (3/2) v^2 - (5/4) eta u^2 + nu
             - hbar^2 ((3/8)(u')^2 + (3/4) u u'' - (5/12) eta u'')
             + hbar^4 u''''/12

    with every derivative taken from the jet (analytic, no finite
    differences).  A jet of order K leaves residuals O(hbar^(2K+2)).
    """
    h2 = hbar * hbar

    def series_val(tab, m):
        # m-th nu-derivative of the truncated series; drop orders whose
        # recorded depth does not reach m (their contribution is beyond the
        # jet's documented accuracy)
        tot = 0.0
        for k, derivs in enumerate(tab):
            if m < len(derivs):
                tot = tot + derivs[m] * h2**k
        return tot

    u, du, ddu = (series_val(jet.u, m) for m in range(3))
    d4u = series_val(jet.u, 4)
    v = series_val(jet.v, 0)
    ddv = series_val(jet.v, 2)
    eta, mu, nu = p.eta, p.mu, p.nu
    r1 = 2.5 * eta * v - 1.5 * u * v + mu + h2 * ddv
    r2 = (u**3 / 2 + 1.5 * v * v - 1.25 * eta * u * u + nu
          - h2 * (0.375 * du * du + 0.75 * u * ddu - (5.0 / 12.0) * eta * ddu)
          + h2 * h2 * d4u / 12.0)
    return abs(r1), abs(r2)


def flow_compatibility(p):
    """Residuals of the three leading-order flow identities.

      (i)   du0/dmu + 2 dv0/dnu
      (ii)  dv0/dmu + u0 du0/dnu
      (iii) du0/deta - d/dnu [u0^3/4 - v0^2/2 - (5/3) eta u0^2] - 4/3

    computed from the implicit-differentiation jets (no finite differences).
    """
    jets = pd.sigma_jets(p, depth=1)
    s, sp_ = jets.dnu
    eta, mu = p.eta, p.mu
    den = 5.0 * eta - 3.0 * s
    v0 = -2.0 * mu / den
    dv0_dnu = -6.0 * mu * sp_ / den**2
    dv0_dmu = -2.0 / den - 6.0 * mu * jets.dmu / den**2
    r1 = jets.dmu + 2.0 * dv0_dnu
    r2 = dv0_dmu + s * sp_
    bracket = 0.75 * s * s * sp_ - v0 * dv0_dnu - (10.0 / 3.0) * eta * s * sp_
    r3 = jets.deta - bracket - 4.0 / 3.0
    return r1, r2, r3


def dlogtau_consistency(p, step=1e-5):
    """Residuals of the six tau-differential identities at p.

    Gradient identities (central differences of varpi0, relative scale):
        d varpi0/d nu - h1/2, d varpi0/d mu - h2/2, d varpi0/d eta - h5/2
    and closedness cross-partials of (h1, h2, h5)/2 in (nu, mu, eta).
    """
    h = leading_hamiltonians(p)

    def fd(func, var, f_h=None):
        hh = step * (1.0 + abs(getattr(p, var)))
        d = {"eta": (hh, 0, 0), "mu": (0, hh, 0), "nu": (0, 0, hh)}[var]
        pp = pd.Params(p.eta + d[0], p.mu + d[1], p.nu + d[2])
        pm = pd.Params(p.eta - d[0], p.mu - d[1], p.nu - d[2])
        return (func(pp) - func(pm)) / (2.0 * hh)

    grad = (
        fd(lambda q: tau_leading(q).varpi0, "nu") - 0.5 * h.h1_0,
        fd(lambda q: tau_leading(q).varpi0, "mu") - 0.5 * h.h2_0,
        fd(lambda q: tau_leading(q).varpi0, "eta") - 0.5 * h.h5_0,
    )
    closed = (
        fd(lambda q: leading_hamiltonians(q).h1_0, "mu")
        - fd(lambda q: leading_hamiltonians(q).h2_0, "nu"),
        fd(lambda q: leading_hamiltonians(q).h1_0, "eta")
        - fd(lambda q: leading_hamiltonians(q).h5_0, "nu"),
        fd(lambda q: leading_hamiltonians(q).h2_0, "eta")
        - fd(lambda q: leading_hamiltonians(q).h5_0, "mu"),
    )
    return grad, closed


def hamiltonians_on_solution(ujet, vjet, t1, t2, t5):
    """Literal evaluation of the on-solution Hamiltonians H1, H2, H5 and the
    Darboux coordinates, given (U, U', U'', U''') and (V, V')."""
    U, Up, Upp, Uppp = ujet
    V, Vp = vjet
    H1 = (-Up * Uppp / 12.0 + Upp**2 / 24.0 + 0.375 * U * Up**2
          + 0.5 * Vp**2 - U**4 / 8.0 - 1.5 * U * V**2
          - (5.0 / 6.0) * t5 * (0.25 * Up**2 - 0.5 * U**3 - 3.0 * V**2)
          + 0.5 * t1 * U**2)
    H2 = (Uppp * Vp / 6.0 - 0.5 * V * U * Upp + 0.25 * V * Up**2
          - U * Up * Vp + U**3 * V + V**3
          + (5.0 / 6.0) * t5 * (Upp - 3.0 * U**2) * V
          + (1.0 / 3.0) * t2 * (Upp - 3.0 * U**2) + 2.0 * t1 * V)
    H5 = (Up * Upp * Uppp / 144.0 + Vp * Uppp / 12.0 - U**2 * Up * Uppp / 16.0
          + U * Uppp**2 / 144.0 + U * Up**2 * Upp / 16.0
          - 0.25 * U * V * Up * Vp + 0.375 * V**4
          - Up**4 / 128.0 - U**6 / 16.0 + Upp**3 / 432.0 + U**4 * Upp / 12.0
          + 3.0 * U**3 * Up**2 / 32.0 - U**3 * V**2 / 8.0
          - U**2 * Upp**2 / 32.0 + U**2 * Vp**2 / 8.0
          - Upp * Vp**2 / 12.0 - V**2 * Up**2 / 16.0
          + (5.0 / 6.0) * t5 * (1.5 * U**2 * V**2 + U * Upp / 8.0
                                - 0.5 * U * Vp**2 - Up**2 * Upp / 12.0
                                - 0.5 * V**2 * Upp - 7.0 * U**3 * Upp / 12.0
                                - 0.75 * Up**2 * U**2 + U * Up * Uppp / 3.0
                                + 0.5 * V * Up * Vp + 0.625 * U**5
                                - Uppp**2 / 36.0)
          + 0.5 * t2 * (U**2 * V + Upp * V / 3.0 - Up * Vp)
          + 0.5 * t1 * (V**2 - 0.25 * Up**2 - 0.5 * U**3 + U * Upp / 3.0)
          - (5.0 / 3.0) * t5 * t2 * U * V
          + (5.0 / 3.0) * t5 * t1 * (U**2 - Upp / 3.0)
          + (25.0 / 36.0) * t5**2 * (U**2 * Upp + 3.0 * U * V**2
                                     - 1.5 * U**4 - Upp**2 / 6.0
                                     - 2.0 * Vp**2 - 8.0 * t2 * V)
          - (125.0 / 18.0) * t5**3 * V - (10.0 / 9.0) * t5 * t2**2
          - (2.0 / 3.0) * t1**2)
    return HamiltonianValues(
        H1=H1, H2=H2, H5=H5,
        Q_U=U - (4.0 / 3.0) * t5, Q_V=V, Q_W=Up,
        P_U=0.25 * (3.0 * U * Up - Uppp / 3.0 - (7.0 / 3.0) * t5 * Up),
        P_V=Vp,
        P_W=Upp / 12.0 - t5 * U / 6.0 + (7.0 / 18.0) * t5**2)


# ---------------------------------------------------------------------------
# quartic two-matrix model bridge
# ---------------------------------------------------------------------------

MULTISCALE_C1 = 9.0 / 164.0
MULTISCALE_C2 = 2.0 / 3.0
MULTISCALE_C5 = 5.0 / 12.0
CRITICAL_TAU = 0.25
CRITICAL_T = -5.0 / 72.0


def matrix_model_ideal(sigma, t, tau, H):
    """The resolvent algebraic equation of the quartic two-matrix model.

    J = -t - tau^2 sigma (sigma^2-3)/9 - sigma/(3 (1+sigma)^2)
        + (2/3) (sigma/(1-sigma^2))^2 (cosh H - 1)

    Rational inputs with H = 0 are evaluated exactly (Fraction arithmetic
    passes through); the cosh term is only active for H != 0.
    """
    if abs(1 + sigma) < 1e-14:
        raise ZeroDivisionError("sigma = -1 is a pole of the equation")
    out = (-t - tau**2 * sigma * (sigma**2 - 3) / 9
           - sigma / (3 * (1 + sigma) ** 2))
    if H != 0:
        if abs(1 - sigma**2) < 1e-14:
            raise ZeroDivisionError("sigma = +-1 is a pole of the cosh term")
        out += (2.0 / 3.0) * (sigma / (1 - sigma**2)) ** 2 \
            * (math.cosh(H) - 1.0)
    return out


def multiscaling_point(p, eps):
    """(tau, t, H) of the multiscaling family at N^(-2/7) = eps.

    The combination is tuned so that inserting sigma = 1 + s1 eps + ... into
    the resolvent equation makes orders eps^0..eps^2 vanish identically and
    reproduces the branch equation for s1 = 5 eta/3 - s at order eps^3.
    (H scales as N^(-5/7) = eps^(5/2), entering only through cosh H - 1.)
    """
    c1, c2, c5 = MULTISCALE_C1, MULTISCALE_C2, MULTISCALE_C5
    tau = CRITICAL_TAU - c5 * p.eta * eps + c1 * p.nu * eps**3 / 9.0
    t = (CRITICAL_T - c5 * p.eta * eps / 9.0 - c1 * p.nu * eps**3
         + 2.0 * c5**2 * p.eta**2 * eps**2 / 9.0
         + 8.0 * c5**3 * p.eta**3 * eps**3 / 9.0)
    H = c2 * p.mu * eps**2.5
    return tau, t, H


def multiscaling_sigma1(p, eps, sigma=None, dps=40):
    """(sigma(eps) - 1)/eps for the resolvent root near sigma = 1.

    Converges to 5 eta/3 - s as eps -> 0 (s the branch-equation root).
    Solved in mpmath: near the critical point the equation value is O(eps^3)
    out of O(1) cancellations, far below double resolution for small eps.
    """
    import mpmath
    mp = mpmath.mp.clone()
    mp.dps = dps
    if sigma is None:
        sigma = pd.solve_sigma(p).sigma
    s1 = 5.0 * p.eta / 3.0 - sigma
    e = mp.mpf(eps)
    c1, c2, c5 = (mp.mpf(9) / 164, mp.mpf(2) / 3, mp.mpf(5) / 12)
    eta, mu, nu = map(mp.mpf, (p.eta, p.mu, p.nu))
    tau = mp.mpf(1) / 4 - c5 * eta * e + c1 * nu * e**3 / 9
    t = (mp.mpf(-5) / 72 - c5 * eta * e / 9 - c1 * nu * e**3
         + 2 * c5**2 * eta**2 * e**2 / 9 + 8 * c5**3 * eta**3 * e**3 / 9)
    H = c2 * mu * e ** mp.mpf("2.5")

    def f(sg):
        out = (-t - tau**2 * sg * (sg * sg - 3) / 9
               - sg / (3 * (1 + sg) ** 2))
        if mu != 0:
            out += (mp.mpf(2) / 3) * (sg / (1 - sg * sg)) ** 2 \
                * (mp.cosh(H) - 1)
        return out

    x0 = mp.mpf(1) + s1 * e
    root = mp.findroot(f, (x0, x0 * (1 + mp.mpf(10) ** (-8))),
                       solver="secant", tol=mp.mpf(10) ** (-2 * dps + 10))
    return float((root - 1) / e)

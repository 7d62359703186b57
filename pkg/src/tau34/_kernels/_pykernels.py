"""Numpy fallback for the hot kernel: sheet-resolved roots of the curve cubic.

The spectral curve is lam(u) = u^3 - 3*a2*u + c0.  For each sample lam the
three roots are computed by complex Cardano (plus two Newton polish steps)
and assigned to sheets by the hyperbola-region rule: the preimages of the
three sheets in the u-plane are separated by the curve 3x^2 - y^2 = 3*a2
(x = Re u, y = Im u).  Sheet 2 is the middle region, sheet 1 the right
component, sheet 3 the left one.  The rule agrees with the asymptotic
labels u1 ~ lam^(1/3), u2 ~ w^{+-2} lam^(1/3), u3 ~ w^{+-1} lam^(1/3)
(w = exp(2i pi/3)) on the respective half-planes.
"""
import numpy as np

BACKEND = "numpy"

_OMEGA = np.exp(2j * np.pi / 3)


def cubic_roots(a2, c0, lam):
    """All roots of u^3 - 3*a2*u + (c0 - lam) = 0, shape lam.shape + (3,)."""
    lam = np.asarray(lam, dtype=np.complex128)
    p = np.complex128(-3.0 * a2)
    q = c0 - lam
    disc = np.sqrt(q * q / 4.0 + p**3 / 27.0)
    # pick the Cardano cube whose magnitude avoids cancellation
    c3a = -q / 2.0 + disc
    c3b = -q / 2.0 - disc
    c3 = np.where(np.abs(c3a) >= np.abs(c3b), c3a, c3b)
    cval = c3 ** (1.0 / 3.0)
    roots = np.empty(lam.shape + (3,), dtype=np.complex128)
    for k in range(3):
        ck = cval * _OMEGA**k
        with np.errstate(divide="ignore", invalid="ignore"):
            u = ck - p / (3.0 * ck)
        u = np.where(np.abs(ck) < 1e-300, (-q) ** (1.0 / 3.0) * _OMEGA**k, u)
        for _ in range(2):
            f = u * (u * u + p) + q
            fp = 3.0 * u * u + p
            step = np.where(np.abs(fp) > 1e-300, f / fp, 0.0)
            u = u - step
        roots[..., k] = u
    return roots


def sheet_roots(a2, c0, lam):
    """Sheet-assigned roots, shape (3,) + lam.shape (sheets 1, 2, 3)."""
    lam = np.atleast_1d(np.asarray(lam, dtype=np.complex128))
    flat = lam.ravel()
    r = cubic_roots(a2, c0, flat)
    region = 3.0 * r.real**2 - r.imag**2 - 3.0 * a2
    n = flat.shape[0]
    idx = np.arange(n)
    i2 = np.argmin(region, axis=-1)
    out = np.empty((3, n), dtype=np.complex128)
    out[1] = r[idx, i2]
    mask = np.ones_like(region, dtype=bool)
    mask[idx, i2] = False
    rest = r[mask].reshape(n, 2)
    hi = np.argmax(rest.real, axis=-1)
    out[0] = rest[idx, hi]
    out[2] = rest[idx, 1 - hi]
    return out.reshape((3,) + lam.shape)

"""High-precision reference values for the test suite.

Run once with ``python tools/oracle.py``; the printed numbers are frozen into
``tests/``.  Uses mpmath only here, never at runtime, and never calls into the
``nrvolkov`` package so the values stay independent of the code they check.
"""
import mpmath as mp

mp.mp.dps = 60


def loggamma_stirling(z, shift=60, terms=40):
    """Principal log-gamma via upward recurrence plus the Stirling series."""
    z = mp.mpc(z)
    acc = mp.mpc(0)
    w = z
    for _ in range(shift):
        acc += mp.log(w)
        w += 1
    s = (w - mp.mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    for k in range(1, terms):
        b = mp.bernoulli(2 * k)
        s += b / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
    return s - acc


def hyp1f1_series(a, b, z):
    """Plain Kummer series summed until the partial sum stagnates at 60 digits."""
    a, b, z = mp.mpc(a), mp.mpc(b), mp.mpc(z)
    total = mp.mpc(1)
    term = mp.mpc(1)
    j = 0
    quiet = 0
    while quiet < 3:
        term *= (a + j) / (b + j) * z / (j + 1)
        j += 1
        new = total + term
        quiet = quiet + 1 if abs(term) < mp.mpf(10) ** -70 * abs(new) else 0
        total = new
    return total


def psi_exact(p, a, sigma, kappa, normalized=True):
    xi, up, ze, ta = (mp.mpf(v) for v in p)
    kx, ky, kz = (mp.mpf(v) for v in kappa)
    sigma, a = mp.mpf(sigma), mp.mpf(a)
    energy = (kx**2 + ky**2 + kz**2) / (2 * sigma)
    n = sigma - mp.mpf(1) / 2 + kz - 1j * kx
    m = -2 * kz - 2 * sigma
    u = mp.exp(1j * (ze - ta))
    phase = mp.exp(-1j * energy * ta - 1j * (kx * xi + ky * up + kz * ze) - 1j * a * u)
    val = phase * hyp1f1_series(-n, m + 1, 2j * a * u)
    if not normalized:
        val *= mp.exp(loggamma_stirling(n + m + 1) - loggamma_stirling(n + 1)
                      - loggamma_stirling(m + 1))
    return val


def psi_pert2(p, a, sigma, kappa):
    xi, up, ze, ta = (mp.mpf(v) for v in p)
    kx, ky, kz = (mp.mpf(v) for v in kappa)
    sigma, a = mp.mpf(sigma), mp.mpf(a)
    energy = (kx**2 + ky**2 + kz**2) / (2 * sigma)
    c1 = 2 * kx / (2 * kz + 2 * sigma - 1)
    c2 = (2 * kz + 4 * kx**2 + 2 * sigma - 1) / (4 * (sigma - 1 + kz) * (2 * kz + 2 * sigma - 1))
    trans = mp.exp(-1j * (kx * xi + ky * up))
    t0 = mp.exp(-1j * kz * ze - 1j * energy * ta)
    t1 = mp.exp(-1j * (kz - 1) * ze - 1j * (energy + 1) * ta)
    t2 = mp.exp(-1j * (kz - 2) * ze - 1j * (energy + 2) * ta)
    return trans * (t0 + a * c1 * t1 + a**2 * c2 * t2)


def show(label, v):
    v = mp.mpc(v)
    print(f"{label}: {mp.nstr(v.real, 25)} {mp.nstr(v.imag, 25)}")


if __name__ == "__main__":
    lg = loggamma_stirling(1 + 1j)
    show("loggamma(1+1i) stirling", lg)
    show("loggamma(1+1i) mpmath  ", mp.loggamma(1 + 1j))
    show("loggamma(-2.5+0.5i)     ", loggamma_stirling(mp.mpc(-2.5, 0.5)))
    show("loggamma(-2.5+0.5i) mp  ", mp.loggamma(mp.mpc(-2.5, 0.5)))
    f = hyp1f1_series(mp.mpc(2.5, -1), mp.mpc(-3.2, 0.5), mp.mpc(1, 1))
    show("1F1(2.5-1i;-3.2+0.5i;1+1i)", f)
    show("mpmath hyp1f1            ", mp.hyp1f1(mp.mpc(2.5, -1), mp.mpc(-3.2, 0.5), mp.mpc(1, 1)))
    show("L_2^0(1) via series      ", hyp1f1_series(-2, 1, 1))
    p = (0.1, 0.2, 0.3, 0.4)
    show("psi_exact normalized a=0.05", psi_exact(p, 0.05, 5, (0.3, 0.2, 0.4)))
    show("psi_exact raw a=0.05       ", psi_exact(p, 0.05, 5, (0.3, 0.2, 0.4), normalized=False))
    show("psi_pert2 a=0.02           ", psi_pert2(p, 0.02, 5, (0.3, 0.2, 0.4)))
    # CODATA 2018 reduced Compton wavelength of the electron
    lambda_c_bar = mp.mpf("3.8615926796e-13")
    lam = mp.mpf("800e-9")
    print("sigma SI 800nm via Compton:", mp.nstr(lam / (2 * mp.pi * lambda_c_bar), 20))

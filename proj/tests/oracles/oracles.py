# SPDX-License-Identifier: Apache-2.0
"""Reference values frozen into the C++ tests.

Independent of the C++ code: numpy/scipy only. Run with `python3 oracles.py`.
"""
import numpy as np
from scipy import special


def pade(n, alpha=np.pi / 2):
    j = np.arange(1, n + 1)
    a = 2.0 / (2 * n + 1) * np.sin(j * np.pi / (2 * n + 1)) ** 2
    b = np.cos(j * np.pi / (2 * n + 1)) ** 2
    e = np.exp(-1j * alpha)
    A = np.exp(-1j * alpha / 2) * a / (1 + b * (e - 1)) ** 2
    B = b * e / (1 + b * (e - 1))
    C0 = np.exp(1j * alpha / 2) * (1 + np.sum(a * (e - 1) / (1 + b * (e - 1))))
    R0 = C0 + np.sum(A / B)
    return a, b, A, B, C0, R0


def pade_sqrt(z, n):
    a, b, A, B, C0, R0 = pade(n)
    return R0 - np.sum(A / (B * (1 + B * z)))


def print_pade():
    a, b, A, B, C0, R0 = pade(1)
    print(f"pade N=1: a={a[0]!r} b={b[0]!r} A={A[0]!r} B={B[0]!r} C0={C0!r} R0={R0!r}")
    for z in (3.0, -1 - 0.5j):
        v = pade_sqrt(z, 8)
        exact = np.sqrt(1 + z + 0j)
        print(f"pade N=8 z={z}: value={v!r} exact={exact!r} err={abs(v - exact)!r}")


def collapsed_rule(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1)
    w = 0.5 * w
    u, v = np.meshgrid(x, x, indexing="ij")
    wu, wv = np.meshgrid(w, w, indexing="ij")
    s = u
    t = v * (1 - u)
    return np.stack([s.ravel(), t.ravel()], 1), (wu * wv * (1 - u)).ravel()


def pair_blocks(ta, tb, kappa, n=20):
    pts, wts = collapsed_rule(n)

    def setup(tri):
        tri = np.asarray(tri, float)
        e1, e2 = tri[1] - tri[0], tri[2] - tri[0]
        area = 0.5 * np.linalg.norm(np.cross(e1, e2))
        x = tri[0] + pts[:, :1] * e1 + pts[:, 1:] * e2
        w = wts * 2 * area
        lengths = [np.linalg.norm(tri[(k + 1) % 3] - tri[(k + 2) % 3]) for k in range(3)]
        return tri, area, x, w, lengths

    va, Aa, xa, wa, la = setup(ta)
    vb, Ab, xb, wb, lb = setup(tb)
    d = xa[:, None, :] - xb[None, :, :]
    r = np.linalg.norm(d, axis=2)
    G = np.exp(1j * kappa * r) / (4 * np.pi * r)
    gradG = (G * (1j * kappa - 1 / r) / r)[:, :, None] * d
    W = wa[:, None] * wb[None, :]
    E = np.zeros((3, 3), complex)
    C = np.zeros((3, 3), complex)
    for i in range(3):
        f = la[i] / (2 * Aa) * (xa - va[i])
        divf = la[i] / Aa
        for j in range(3):
            g = lb[j] / (2 * Ab) * (xb - vb[j])
            divg = lb[j] / Ab
            dot = np.einsum("ik,jk->ij", f, g)
            E[i, j] = -np.sum(W * G * (1j * kappa * dot + divf * divg / (1j * kappa)))
            cr = np.cross(gradG, g[None, :, :])
            C[i, j] = -np.sum(W * np.einsum("ik,ijk->ij", f, cr))
    return E, C


PAIR_A = [(0.0, 0.0, 0.0), (0.15, 0.0, 0.0), (0.03, 0.13, 0.01)]
PAIR_B = [(0.9, 0.4, 0.5), (1.02, 0.45, 0.52), (0.95, 0.55, 0.44)]


def print_pair():
    E, C = pair_blocks(PAIR_A, PAIR_B, np.pi)
    E40, C40 = pair_blocks(PAIR_A, PAIR_B, np.pi, 40)
    print("pair order-20 vs order-40 max rel diff:",
          np.max(np.abs(E - E40)) / np.max(np.abs(E)), np.max(np.abs(C - C40)) / np.max(np.abs(C)))
    for name, M in (("efie", E), ("mfie", C)):
        for i in range(3):
            print(name, i, ", ".join(f"{{{M[i, j].real!r}, {M[i, j].imag!r}}}" for j in range(3)))


def mie_rcs(x, theta, plane):
    nmax = int(np.ceil(x + 10 * x ** (1 / 3) + 10))
    n = np.arange(1, nmax + 1)
    psi = x * special.spherical_jn(n, x)
    dpsi = special.spherical_jn(n, x) + x * special.spherical_jn(n, x, derivative=True)
    h = special.spherical_jn(n, x) + 1j * special.spherical_yn(n, x)
    dh = (special.spherical_jn(n, x, derivative=True) + 1j * special.spherical_yn(n, x, derivative=True))
    xi = x * h
    dxi = h + x * dh
    a = dpsi / dxi
    b = psi / xi
    out = []
    for t in theta:
        mu = np.cos(t)
        pi_n = np.zeros(nmax + 1)
        tau_n = np.zeros(nmax + 1)
        pi_n[1] = 1.0
        for k in range(2, nmax + 1):
            pi_n[k] = ((2 * k - 1) * mu * pi_n[k - 1] - k * pi_n[k - 2]) / (k - 1)
        for k in range(1, nmax + 1):
            tau_n[k] = k * mu * pi_n[k] - (k + 1) * pi_n[k - 1]
        f = (2 * n + 1) / (n * (n + 1))
        s1 = np.sum(f * (a * pi_n[1:] + b * tau_n[1:]))
        s2 = np.sum(f * (a * tau_n[1:] + b * pi_n[1:]))
        s = s2 if plane == "E" else s1
        out.append(abs(s) ** 2)
    return np.array(out)


def print_mie():
    k = np.pi
    th = np.array([0.0, np.pi / 2, np.pi])
    for plane in ("E", "H"):
        rcs = 4 * np.pi / k ** 2 * mie_rcs(k, th, plane)
        print(f"mie kappa=pi R=1 plane {plane} theta 0,90,180:", ", ".join(repr(v) for v in rcs))
    x = 0.1
    back = 4 * np.pi / x ** 2 * mie_rcs(x, [np.pi], "E")[0]
    print(f"mie x=0.1 backscatter/(pi a^2) = {back / np.pi!r}  Rayleigh 9x^4 = {9 * x ** 4!r}")


def print_misc():
    print("eps(kappa=pi, R=1) =", repr(0.39 * np.pi ** (1 / 3)))
    print("eps(kappa=8pi, R=1) =", repr(0.39 * (8 * np.pi) ** (1 / 3)))
    c = np.array([1 / 3, 1 / 3, 0.0])
    print("RWG at centroid of unit right triangle, edge opposite origin:", repr(np.sqrt(2) / (2 * 0.5) * c))


if __name__ == "__main__":
    print_pade()
    print_pair()
    print_mie()
    print_misc()

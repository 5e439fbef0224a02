"""Independent high-precision oracle for the angular Levy constants.

I(alpha) is summed from its Fourier/dilogarithm series, the angular density
is integrated directly along the ray arg(1 + z) = phi, and the second moment
is re-integrated from that density. Values printed here are frozen into
tests/test_levy_angular.cpp. Run:  python3 tests/oracles/angular_constants.py
"""
from mpmath import mp, mpf, gamma, pi, quad, nsum, inf, sin, cos, sqrt

mp.dps = 30


def c_nu(a):
    return a * 2 ** (a - 1) * gamma(1 + a / 2) / (pi * gamma(1 - a / 2))


def clock_k(a):
    return 2 ** (-a) * gamma(1 - a / 2) / gamma(1 + a / 2)


def polar_integral_series(a):
    # int_{-pi}^{pi} arg(1 + r e^{i psi})^2 dpsi = pi Li2(r^2)                 (r < 1)
    #                                            = pi (4 z2 - 4 Li2(1/r) + Li2(1/r^2)) (r > 1)
    s1 = nsum(lambda n: 1 / (n**2 * (2 * n - a)), [1, inf])
    s2 = nsum(lambda n: 1 / (n**2 * (n + a)), [1, inf])
    s3 = nsum(lambda n: 1 / (n**2 * (2 * n + a)), [1, inf])
    return pi * (s1 + 2 * pi**2 / (3 * a) - 4 * s2 + s3)


def angular_density_radial(a, phi):
    pts = [0, cos(phi) if cos(phi) > 0 else 0, 1, 2, inf]
    return c_nu(a) * quad(lambda r: r / ((r - cos(phi)) ** 2 + sin(phi) ** 2) ** (1 + a / 2), pts)


if __name__ == "__main__":
    for a in [mpf("0.5"), mpf(1), mpf("1.5")]:
        I = polar_integral_series(a)
        k = c_nu(a) * I
        print(f"alpha={a}")
        print(f"  C_nu={c_nu(a)} K={clock_k(a)} I={I}")
        print(f"  k={k} r={k * clock_k(a)}")
        print(f"  L_tilde={c_nu(a) * sqrt(pi) * gamma((1 + a) / 2) / gamma(1 + a / 2)}")
        print(f"  1-D stable Levy constant={gamma(1 + a) * sin(pi * a / 2) / pi}")
        for phi in [mpf("0.1"), mpf(1), mpf(3), pi]:
            print(f"  pi~({phi})={angular_density_radial(a, phi)}")
        k1d = 2 * quad(lambda p: p**2 * angular_density_radial(a, p),
                       [0, mpf("1e-6"), mpf("0.01"), 0.5, pi / 2, pi])
        print(f"  second moment (1-D)={k1d}")

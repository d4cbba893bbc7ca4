"""Taylor coefficients of the Riemann-Siegel correction functions C0..C4.

Psi(p) = cos(2*pi*(p^2 - p - 1/16)) / cos(2*pi*p), expanded in x = p - 1/2.
Run with mpmath installed; output is pasted into src/riemann_siegel_coeffs.rs.
"""
import mpmath as mp

mp.mp.dps = 120
ORDER = 90  # Taylor order of Psi
KEEP = 60   # coefficients emitted per C_k


def psi_series():
    x2pi = 2 * mp.pi
    # cos(2 pi x^2 - 5 pi / 8) = cos(5pi/8) cos(2pi x^2) + sin(5pi/8) sin(2pi x^2)
    num = [mp.mpf(0)] * (ORDER + 1)
    c, s = mp.cos(5 * mp.pi / 8), mp.sin(5 * mp.pi / 8)
    for k in range(0, ORDER // 2 + 1):
        # cos(2pi x^2) term x^{4k}, sin(2pi x^2) term x^{4k+2}
        if 4 * k <= ORDER:
            num[4 * k] += c * (-1) ** k * x2pi ** (2 * k) / mp.factorial(2 * k)
        if 4 * k + 2 <= ORDER:
            num[4 * k + 2] += s * (-1) ** k * x2pi ** (2 * k + 1) / mp.factorial(2 * k + 1)
    sec = [mp.mpf(0)] * (ORDER + 1)
    for k in range(0, ORDER // 2 + 1):
        sec[2 * k] = abs(mp.eulernum(2 * k)) * x2pi ** (2 * k) / mp.factorial(2 * k)
    out = [mp.mpf(0)] * (ORDER + 1)
    for i in range(ORDER + 1):
        for j in range(ORDER + 1 - i):
            out[i + j] += num[i] * sec[j]
    # cos(2 pi p) = -cos(2 pi x)
    return [-v for v in out]


PSI = psi_series()


def deriv(d):
    return [PSI[j + d] * mp.factorial(j + d) / mp.factorial(j) for j in range(ORDER + 1 - d)]


def combo(terms):
    res = [mp.mpf(0)] * (KEEP)
    for coef, d in terms:
        ser = deriv(d)
        for j in range(KEEP):
            res[j] += coef * ser[j]
    return res


pi = mp.pi
C = [
    combo([(1, 0)]),
    combo([(-1 / (96 * pi ** 2), 3)]),
    combo([(1 / (64 * pi ** 2), 2), (1 / (18432 * pi ** 4), 6)]),
    combo([(-1 / (64 * pi ** 2), 1), (-1 / (3840 * pi ** 4), 5), (-1 / (5308416 * pi ** 6), 9)]),
    combo([(1 / (128 * pi ** 2), 0), (mp.mpf(19) / (24576 * pi ** 4), 4),
           (mp.mpf(11) / (5898240 * pi ** 6), 8), (1 / (2038431744 * pi ** 8), 12)]),
]

if __name__ == "__main__":
    for k, ser in enumerate(C):
        # drop coefficients whose contribution on |x| <= 1/2 is below 1e-24
        last = max(j for j, v in enumerate(ser) if abs(v) * mp.mpf(0.5) ** j > mp.mpf(10) ** -24)
        print(f"pub(crate) const C{k}: [f64; {last + 1}] = [")
        for v in ser[: last + 1]:
            print(f"    {mp.nstr(v, 17, min_fixed=-1, max_fixed=-1)},")
        print("];")

"""Arbitrary-precision reference values frozen into the test suite.

Everything here is computed with mpmath at 30+ digits and is independent of
the Rust evaluation paths. Rerun to regenerate `oracle_values.txt`.
"""
import random

import mpmath as mp

mp.mp.dps = 30


def s1_littlewood(t):
    """S1(t) = (1/pi) int_{1/2}^inf log|zeta(s+it)| ds - (1/pi) int_{1/2}^inf log|zeta(s)| ds."""
    f = lambda s: mp.log(abs(mp.zeta(mp.mpf(s) + 1j * t)))
    g = lambda s: mp.log(abs(mp.zeta(s)))
    head = mp.quad(f, mp.linspace(0.5, 4, 15) + [8, 16, 40, 80])
    base = mp.quad(g, [0.5, 1, 2, 4, 8, 16, 40, 80])
    return (head - base) / mp.pi


def gram_sums(t0, t1):
    """Z^2(g_n)Z^2(g_{n+1}) and Z^4(g_n) summed over Gram points g_n in [t0, t1)."""
    nu = int(mp.floor(mp.siegeltheta(t0) / mp.pi)) - 1
    while mp.grampoint(nu) < t0:
        nu += 1
    first, zs = nu, []
    while mp.grampoint(nu) < t1:
        zs.append(mp.siegelz(mp.grampoint(nu)))
        nu += 1
    zs.append(mp.siegelz(mp.grampoint(nu)))
    pair = sum(zs[i] ** 2 * zs[i + 1] ** 2 for i in range(len(zs) - 1))
    fourth = sum(z ** 4 for z in zs[:-1])
    return first, len(zs) - 1, pair, fourth


def main():
    out = []
    emit = lambda k, v: out.append(f"{k} = {mp.nstr(v, 20)}")
    emit("gram_1", mp.findroot(lambda t: mp.siegeltheta(t) - mp.pi, 23))
    emit("gram_2", mp.findroot(lambda t: mp.siegeltheta(t) - 2 * mp.pi, 27))
    emit("theta_100", mp.siegeltheta(100))
    emit("theta_deriv_100", mp.diff(mp.siegeltheta, 100))
    emit("zeta_half", mp.zeta(0.5))
    emit("zeta_075_1000_re", mp.re(mp.zeta(mp.mpc(0.75, 1000))))
    emit("zeta_075_1000_im", mp.im(mp.zeta(mp.mpc(0.75, 1000))))
    emit("first_zero", mp.zetazero(1).imag)
    emit("n_zeros_100", mp.nzeros(100))
    emit("n_zeros_1000", mp.nzeros(1000))
    emit("n_zeros_10000", mp.nzeros(10000))
    emit("s1_littlewood_const", mp.quad(lambda s: mp.log(abs(mp.zeta(s))), [0.5, 1, 2, 4, 8, 16, 40, 80]) / mp.pi)
    emit("s1_100", s1_littlewood(100))
    emit("s1_1000", s1_littlewood(1000))
    for t in (250, 1000, 5000, 20000):
        emit(f"z_{t}", mp.siegelz(t))
    # Z at 20 pseudo-random Gram indices in [5e3, 1e4)
    rng = random.Random(20251016)
    lo = int(mp.ceil(mp.siegeltheta(5000) / mp.pi))
    hi = int(mp.floor(mp.siegeltheta(10000) / mp.pi))
    for i in range(20):
        nu = rng.randrange(lo, hi)
        g = mp.grampoint(nu)
        out.append(f"gram_z {nu} {mp.nstr(g, 20)} {mp.nstr(mp.siegelz(g), 20)}")
    first, count, pair, fourth = gram_sums(1000, 2000)
    out.append(f"gram_first_nu_1000 = {first}")
    out.append(f"gram_count_1000_2000 = {count}")
    emit("gram_pair_1000_2000", pair)
    emit("gram_fourth_1000_2000", fourth)
    print("\n".join(out))


if __name__ == "__main__":
    main()

"""Regenerate the constant tables hard-coded in mlbeta.numeric_kernel.

Development-time helper; needs mpmath. Run: python tools/gamma_tables.py
"""

import mpmath as mp

mp.mp.prec = 300


def dd(x):
    hi = float(x)
    return hi, float(x - mp.mpf(hi))


def main():
    print("_LN2 =", dd(mp.log(2)))
    print("_HALF_LN_2PI =", dd(mp.log(2 * mp.pi) / 2))
    print("_LN_PI =", dd(mp.log(mp.pi)))
    print("_EULER =", dd(mp.euler))
    print("_ONE_MINUS_EULER =", dd(1 - mp.euler))
    print("_HALF_ZETA2 =", dd(mp.zeta(2) / 2))
    print("_HALF_ZETA2_M1 =", dd((mp.zeta(2) - 1) / 2))
    print("_TAYLOR_AT_1 =", tuple(float((-1) ** k * mp.zeta(k) / k) for k in range(3, 32)))
    print("_TAYLOR_AT_2 =", tuple(float((-1) ** k * (mp.zeta(k) - 1) / k) for k in range(3, 32)))
    print("_STIRLING =", tuple(float(mp.bernoulli(2 * k) / (2 * k * (2 * k - 1))) for k in range(1, 10)))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Independent high-precision oracles (mpmath) for optimal revenue and the
# adaptive-deviation gain. Regenerate with: python3 gen_oracles.py
import json

import mpmath as mp

mp.mp.dps = 30


def gpareto(k):
    k = mp.mpf(k)
    return {
        "S": lambda x: (1 + k * x) ** (-1 / k),
        "pdf": lambda x: (1 + k * x) ** (-1 / k - 1),
        "phi": lambda x: (1 - k) * x - 1,
        "r": 1 / (1 - k),
    }


def exponential():
    return {
        "S": lambda x: mp.e ** (-x),
        "pdf": lambda x: mp.e ** (-x),
        "phi": lambda x: x - 1,
        "r": mp.mpf(1),
    }


def uniform01():
    return {
        "S": lambda x: 1 - x,
        "pdf": lambda x: mp.mpf(1),
        "phi": lambda x: 2 * x - 1,
        "r": mp.mpf("0.5"),
        "hi": mp.mpf(1),
    }


def revenue(d, n):
    # E[max phi+] = int_r^hi phi(x) d(F(x)^n)
    hi = d.get("hi", mp.inf)
    F = lambda x: 1 - d["S"](x)
    return mp.quad(lambda x: d["phi"](x) * n * F(x) ** (n - 1) * d["pdf"](x),
                   [d["r"], hi])


def adaptive_gain(d, T, f):
    # Direct 2-D integral over (v_A, v_B) with v_A >= T:
    #   +f on v_B > v_A + f, -f on v_A <= v_B <= v_A + f.
    def inner(a):
        plus = mp.quad(d["pdf"], [a + f, mp.inf])
        minus = mp.quad(d["pdf"], [a, a + f])
        return f * (plus - minus) * d["pdf"](a)
    return mp.quad(inner, [T, 2 * T, 10 * T, mp.inf])


def main():
    out = {"revenue": [], "adaptive_gain": []}
    dists = {"exponential(1)": exponential(), "gpareto(0.25)": gpareto("0.25"),
             "gpareto(0.5)": gpareto("0.5"), "uniform(0,1)": uniform01()}
    for name, d in dists.items():
        for n in (1, 2, 3):
            out["revenue"].append({"distribution": name, "n": n,
                                   "value": float(revenue(d, n))})
    for name, d, f in (("gpareto(0.5)", gpareto("0.5"), 2),
                       ("exponential(1)", exponential(), 1)):
        for T in (2, 5, 10, 20, 50, 100):
            out["adaptive_gain"].append({"distribution": name, "collateral": f,
                                         "threshold": T,
                                         "value": float(adaptive_gain(d, T, f))})
    with open("oracles.json", "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()

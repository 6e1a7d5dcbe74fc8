"""Brute-force reference values for the bundled reliability example.

Enumerates every run over the full port set at horizon 2 and evaluates the
contracts and implementations directly as Python predicates. Shares nothing
with the C++ engine; the numbers printed here are frozen into the C++ tests.
"""
from fractions import Fraction
from itertools import product

H = 2
PORTS = ["a", "f1", "f2", "f3", "x", "y"]
RATE = {"f1": Fraction(1, 10), "f2": Fraction(1, 5), "f3": Fraction(1, 100)}


def runs(ports):
    for bits in product([False, True], repeat=len(ports) * H):
        yield {p: bits[i * H:(i + 1) * H] for i, p in enumerate(ports)}


def always(f):
    return lambda r: all(f(r, t) for t in range(H))


def never(f):
    return lambda r: not any(f(r, t) for t in range(H))


def weight(port, hist):
    p = RATE[port]
    w = Fraction(1)
    for v in hist:
        w *= p if v else 1 - p
    return w


def level(impl, guarantee, pports):
    """Measure of probabilistic histories whose every compatible impl run is in guarantee."""
    bad = set()
    for r in runs(PORTS):
        if impl(r) and not guarantee(r):
            bad.add(tuple(r[p] for p in pports))
    total = Fraction(0)
    for omega in product(list(product([False, True], repeat=H)), repeat=len(pports)):
        if omega not in bad:
            w = Fraction(1)
            for p, h in zip(pports, omega):
                w *= weight(p, h)
            total += w
    return total


def good_universal(guarantee, pports):
    bad = set()
    for r in runs(PORTS):
        if not guarantee(r):
            bad.add(tuple(r[p] for p in pports))
    return bad


m1 = always(lambda r, t: r["x"][t] == (r["a"][t] or r["f1"][t]))
m2 = always(lambda r, t: r["y"][t] == (r["x"][t] or r["f2"][t]))
never_f3 = never(lambda r, t: r["f3"][t])
g1 = lambda r: (not never_f3(r)) or never(lambda r, t: (not r["a"][t]) and r["x"][t])(r)
g2 = always(lambda r, t: r["y"][t] == r["x"][t])
g_stated = lambda r: (not never_f3(r)) or never(lambda r, t: (not r["a"][t]) and r["y"][t])(r)
g_prime = never(lambda r, t: (not r["a"][t]) and r["y"][t])

alpha = level(m1, g1, ["f1"])
beta = level(m2, g2, ["f2"])
both = lambda r: m1(r) and m2(r)
composed = level(both, lambda r: g1(r) and g2(r), ["f1", "f2"])
vs_prime = level(both, g_prime, ["f1", "f2", "f3"])
vs_stated = level(both, g_stated, ["f1", "f2"])

pp = ["f1", "f2", "f3"]
bad1 = good_universal(g_stated, pp)
bad2 = good_universal(g_prime, pp)
p_g1 = Fraction(0)
p_g12 = Fraction(0)
for omega in product(list(product([False, True], repeat=H)), repeat=3):
    w = Fraction(1)
    for p, h in zip(pp, omega):
        w *= weight(p, h)
    if omega not in bad1:
        p_g1 += w
        if omega not in bad2:
            p_g12 += w
bad_comp = good_universal(lambda r: g1(r) and g2(r), pp)

print("alpha", alpha)
print("beta", beta)
print("alpha*beta", alpha * beta)
print("composed", composed)
print("vs_stated", vs_stated)
print("vs_prime", vs_prime)
print("gamma_stated p_g1", p_g1, "gamma", p_g12 / p_g1 if p_g1 else "degenerate")
print("composed-guarantee conditioning histories", 64 - len(bad_comp))

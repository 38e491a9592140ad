"""Brute-force reference implementations used only by the tests.

Nothing here calls into ``walkslab.csequence`` or ``walkslab.walks``; ladders
are enumerated term by term from the fundamental-sequence rule.
"""

from walkslab.ordinal import ZERO, Ordinal


def fund(b, n):
    g_terms, (e, k) = b.terms[:-1], b.terms[-1]
    g = Ordinal(g_terms + (((e, k - 1),) if k > 1 else ()))

    def plus(x, exp, coef):
        if coef == 0:
            return x
        if x.terms and x.terms[-1][0] == exp:
            return Ordinal(x.terms[:-1] + ((exp, x.terms[-1][1] + coef),))
        return Ordinal(x.terms + ((exp, coef),))

    if e.terms[-1][0].terms == ():
        # e is a successor
        e0, c0 = e.terms[-1]
        ep = Ordinal(e.terms[:-1] + (((e0, c0 - 1),) if c0 > 1 else ()))
        return plus(g, ep, n)
    return plus(g, fund(e, n), 1)


def ladder_below(b, a):
    """C_b & a by enumeration."""
    if not a.terms:
        return []
    last_e = b.terms[-1][0]
    if not last_e.terms:
        terms = b.terms[:-1] + (((ZERO, b.terms[-1][1] - 1),) if b.terms[-1][1] > 1 else ())
        g = Ordinal(terms)
        return sorted({ZERO, g} & {x for x in (ZERO, g) if x < a})
    out = {ZERO}
    n = 0
    while True:
        x = fund(b, n)
        if not x < a:
            break
        out.add(x)
        n += 1
    return sorted(out)


def ladder_min_above(b, a):
    if not a.terms:
        return ZERO
    last_e = b.terms[-1][0]
    if not last_e.terms:
        return Ordinal(b.terms[:-1] + (((ZERO, b.terms[-1][1] - 1),) if b.terms[-1][1] > 1 else ()))
    n = 0
    while True:
        x = fund(b, n)
        if not x < a:
            return x
        n += 1


def naive_walk(a, b):
    """(upper, step maxima, weights) by enumeration."""
    upper, maxima, weights = [], [], []
    while b != a:
        below = ladder_below(b, a)
        upper.append(b)
        weights.append(len(below))
        if a.terms:
            maxima.append(below[-1])
        b = ladder_min_above(b, a)
    return upper, maxima, weights


def naive_rho1(a, b):
    if a == b:
        return 0
    return max(len(ladder_below(b, a)), naive_rho1(a, ladder_min_above(b, a)))


def naive_lower(a, b):
    if a == b:
        return set()
    m = ladder_below(b, a)[-1]
    rest = naive_lower(a, ladder_min_above(b, a))
    return {x for x in rest if x >= m} | {m}


def naive_osc(a, b):
    L = sorted(naive_lower(a, b))
    count = 0
    for i in range(1, len(L)):
        p, x = L[i - 1], L[i]
        if naive_rho1(p, a) <= naive_rho1(p, b) and naive_rho1(x, a) > naive_rho1(x, b):
            count += 1
    return count


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def naive_star(m):
    if m == 0:
        return 0
    primes = [p for p in range(2, 200) if is_prime(p)]
    for i, p in enumerate(primes):
        if m % p:
            return i
    raise AssertionError("m too large for naive oracle")

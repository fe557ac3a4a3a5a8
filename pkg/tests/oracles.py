"""Independent reference computations; nothing here touches cnslab algorithms."""
from functools import lru_cache
from itertools import combinations

import sympy as sp


def subset_rows(p, values):
    rows = [set() for _ in range(len(values) + 1)]
    for k in range(len(values) + 1):
        for c in combinations(values, k):
            rows[k].add(sum(c) % p)
    return rows


def top_coefficient(nvars, n_roots, vandermonde, plus_cutoff, monomial):
    """Integer coefficient of prod X_i^monomial[i] in S^n_roots * V * Plus."""
    X = sp.symbols(f"x1:{nvars + 1}")
    P = sp.Poly(sum(X), *X) ** n_roots if n_roots else sp.Poly(1, *X)
    for j in range(nvars):
        for i in range(j):
            if vandermonde:
                P = P * sp.Poly(X[j] - X[i], *X)
            if plus_cutoff is not None and j + 1 > plus_cutoff:
                P = P * sp.Poly(X[j] + X[i], *X)
    return int(P.coeff_monomial(tuple(monomial)))


def is_prime_trial(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True

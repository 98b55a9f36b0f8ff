"""Oracles independent of the library's Weyl-basis construction."""

import itertools
from fractions import Fraction

from flagherm.rootsys import neg
from flagherm.scalars import sqrt_rational
from helpers import a_root


def elementary(n, i, j):
    return {(i, j): 1}


def mat_commutator(x, y):
    out = {}
    for (a, b), u in x.items():
        for (c, d), v in y.items():
            if b == c:
                out[a, d] = out.get((a, d), 0) + u * v
            if d == a:
                out[c, b] = out.get((c, b), 0) - u * v
    return {k: v for k, v in out.items() if v}


def a_family_oracle(rank):
    """n_{a,b} from elementary matrices E_ij, with B(E_ij, E_ji) = 2(rank+1) from the ad-trace."""
    size = rank + 1
    kappa = ad_trace_killing_sl(size)
    out = {}
    pairs = [(i, j) for i in range(size) for j in range(size) if i != j]

    def root_of(i, j):
        lo, hi = min(i, j), max(i, j)
        r = a_root(rank, lo + 1, hi + 1)
        return r if i < j else neg(r)

    for (i, j), (k, l) in itertools.product(pairs, repeat=2):
        c = mat_commutator(elementary(size, i, j), elementary(size, k, l))
        if len(c) == 1:
            ((p, q), coef), = c.items()
            if p != q:
                # X = E / sqrt(kappa): n = coef * sqrt(kappa) / kappa
                out[root_of(i, j), root_of(k, l)] = sqrt_rational(Fraction(1, kappa)) * coef
    return out


def ad_trace_killing_sl(size):
    """tr(ad E_01 ad E_10) on sl(size), computed in the basis E_ij (i != j), H_k."""
    basis = [((i, j), elementary(size, i, j)) for i in range(size) for j in range(size) if i != j]
    hs = [{(k, k): 1, (k + 1, k + 1): -1} for k in range(size - 1)]

    def coords(m):
        off = [m.get(key, 0) for key, _ in basis]
        # diagonal d_0..d_{n-1} = sum_k h_k (e_k - e_{k+1})  ->  h_k = d_0 + ... + d_k
        diag = [m.get((k, k), 0) for k in range(size)]
        h = list(itertools.accumulate(diag))[: size - 1]
        return off + h

    vecs = [m for _, m in basis] + hs
    x, y = elementary(size, 0, 1), elementary(size, 1, 0)
    tr = 0
    for idx, v in enumerate(vecs):
        tr += coords(mat_commutator(x, mat_commutator(y, v)))[idx]
    return tr

"""Compiled inner loop of the floating-point row sampler.

Mirrors RowConditional._float_law (the numpy reference) coordinate by
coordinate; the tables LA, NEG and the suffix sums come from
RowConditional._float_setup.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def sample_row_float(x, base, U, LA, NEG, SLA, SNEG, SLT, unif):
    m = len(x) - 1
    nU = len(U)
    logF = np.zeros(nU)
    out = np.empty(m, dtype=np.int64)
    T = np.empty((nU, m))
    S = np.empty((nU, m))
    for i in range(m):
        lo = x[i + 1]
        hi = x[i]
        if hi - lo > 1:
            p = m - i
            hiU = hi - base
            lo_end = lo - base
            for u in range(hiU):
                for c in range(p):
                    T[u, c] = SLA[u, i] - LA[u, i + c] - SLT[i + c, i] + logF[u]
                    par = (SNEG[u, i] - NEG[u, i + c] + c) & 1
                    S[u, c] = 1.0 - 2.0 * par
            a = np.ones(p)
            if p > 1:
                nl = p - 1
                M = np.zeros((nl, p))
                for k in range(i + 1, m):
                    r = k - i - 1
                    u0 = x[k + 1] - base
                    u1 = x[k] - base
                    sc = -np.inf
                    for u in range(u0, u1):
                        for c in range(p):
                            if T[u, c] > sc:
                                sc = T[u, c]
                    for u in range(u0, u1):
                        for c in range(p):
                            M[r, c] += S[u, c] * np.exp(T[u, c] - sc)
                sol = np.linalg.solve(M[:, 1:], -M[:, 0])
                for c in range(nl):
                    a[c + 1] = sol[c]
            nc = hi - lo
            logw = np.empty(nc)
            sg = np.empty(nc)
            for j in range(nc):
                u = lo_end + j
                rm = -np.inf
                for c in range(p):
                    if T[u, c] > rm:
                        rm = T[u, c]
                z = 0.0
                for c in range(p):
                    z += S[u, c] * np.exp(T[u, c] - rm) * a[c]
                sg[j] = np.sign(z)
                logw[j] = rm + np.log(abs(z)) if z != 0.0 else -np.inf
            top = 0
            for j in range(1, nc):
                if logw[j] > logw[top]:
                    top = j
            total = 0.0
            w = np.empty(nc)
            for j in range(nc):
                if sg[j] == sg[top]:
                    w[j] = np.exp(logw[j] - logw[top])
                else:
                    w[j] = 0.0
                total += w[j]
            target = unif[i] * total
            acc = 0.0
            idx = nc - 1
            for j in range(nc):
                acc += w[j]
                if target < acc:
                    idx = j
                    break
            v = lo + idx
        else:
            v = lo
        out[i] = v
        for u in range(lo - base):
            logF[u] += np.log(v - U[u])
    return out

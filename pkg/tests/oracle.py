"""A dense floating-point oracle written independently of the package.

Everything is built from the Koszul rule on basis vectors: for homogeneous
operators A_k and basis vectors x_k,

    (A_1 (x) ... (x) A_L)(x_1 (x) ... (x) x_L)
        = (-1)^{sum_k |A_k| (|x_1| + ... + |x_{k-1}|)} A_1 x_1 (x) ... (x) A_L x_L.

A family X = sum_ab E_ab (x) X^{ab} is normalized so that its single-leg
operator has X^{ab} as its (a, b) block.  Only numpy and plain formulas are
used; nothing is imported from superyang.
"""

import itertools

import numpy as np


def grades(M, N):
    return [0] * M + [1] * N


def tbar(a, M, N):
    return M + 1 - a if a <= M else 2 * M + N + 1 - a


def theta(M, N):
    """Canonical signs for N even."""
    out = []
    for a in range(1, M + N + 1):
        out.append(1 if a <= M else (1 if (2 * M + N + 1) / 2 - a > 0 else -1))
    return out


def sigma(a, b, g, th):
    return (-1) ** (g[a - 1] * (g[b - 1] + 1)) * th[a - 1] * th[b - 1]


def koszul_kron(ops, parities, space_grades):
    """Matrix of the graded tensor product of homogeneous operators."""
    full = ops[0]
    for op in ops[1:]:
        full = np.kron(full, op)
    signs = []
    for idx in itertools.product(*[range(len(sg)) for sg in space_grades]):
        e, seen = 0, 0
        for k, i in enumerate(idx):
            e += parities[k] * seen
            seen += space_grades[k][i]
        signs.append(-1.0 if e % 2 else 1.0)
    return full @ np.diag(signs)


def unit(a, b, K):
    E = np.zeros((K, K))
    E[a - 1, b - 1] = 1.0
    return E


def place(blocks, g, vg, leg, legs=2):
    """X on leg `leg` of (C^K)^{legs} (x) V, from its blocks X^{ab}."""
    K = len(g)
    d = len(vg)
    out = 0.0
    for (a, b), X in blocks.items():
        if not np.any(X):
            continue
        p = (g[a - 1] + g[b - 1]) % 2
        ops, pars, spaces = [], [], []
        for k in range(1, legs + 1):
            ops.append(unit(a, b, K) if k == leg else np.eye(K))
            pars.append(p if k == leg else 0)
            spaces.append(g)
        ops.append(X)
        pars.append(p)
        spaces.append(vg)
        out = out + (-1) ** (p * g[b - 1]) * koszul_kron(ops, pars, spaces)
    if isinstance(out, float):
        return np.zeros((K**legs * d, K**legs * d))
    return out


def perm(g, d):
    """P(e_i (x) e_j (x) w) = (-1)^{[i][j]} e_j (x) e_i (x) w."""
    K = len(g)
    P = np.zeros((K * K * d, K * K * d))
    for i in range(K):
        for j in range(K):
            s = -1.0 if g[i] and g[j] else 1.0
            for w in range(d):
                P[(j * K + i) * d + w, (i * K + j) * d + w] = s
    return P


def t1(A, M, N, th, d_rest):
    """Transpose on the first auxiliary leg: block (a, b) -> (bbar, abar)
    with sign sigma(a, b).  d_rest is the size of everything after leg 1."""
    K = M + N
    g = grades(M, N)
    out = np.zeros_like(A)
    for a in range(1, K + 1):
        for b in range(1, K + 1):
            blk = A[(a - 1) * d_rest:a * d_rest, (b - 1) * d_rest:b * d_rest]
            ab, bb = tbar(a, M, N), tbar(b, M, N)
            out[(bb - 1) * d_rest:bb * d_rest, (ab - 1) * d_rest:ab * d_rest] += sigma(a, b, g, th) * blk
    return out


def blocks_of(X, K, d):
    return {(a, b): X[(a - 1) * d:a * d, (b - 1) * d:b * d] for a in range(1, K + 1) for b in range(1, K + 1)}


def defining_pi(M, N):
    """pi^{ab} = -(-1)^{[a][b]} E_ba, for which T(u) = I - P/u."""
    K = M + N
    g = grades(M, N)
    return {(a, b): -((-1) ** (g[a - 1] * g[b - 1])) * unit(b, a, K)
            for a in range(1, K + 1) for b in range(1, K + 1)}


def T_matrix(pi, K, d, u):
    T = np.eye(K * d)
    for (a, b), X in pi.items():
        T[(a - 1) * d:a * d, (b - 1) * d:b * d] += X / u
    return T


def S_matrix(pi, M, N, u, th=None):
    K = M + N
    d = next(iter(pi.values())).shape[0]
    th = th or theta(M, N)
    T = T_matrix(pi, K, d, u)
    tauT = t1(T_matrix(pi, K, d, -u), M, N, th, d)
    return T @ tauT


def rtt_residual(pi, M, N, u, v):
    K = M + N
    g = grades(M, N)
    d = next(iter(pi.values())).shape[0]
    vg = g if d == K else [0] * d
    P = perm(g, d)
    R = np.eye(K * K * d) - P / (u - v)
    T1 = place(blocks_of(T_matrix(pi, K, d, u), K, d), g, vg, 1)
    T2 = place(blocks_of(T_matrix(pi, K, d, v), K, d), g, vg, 2)
    return np.abs(R @ T1 @ T2 - T2 @ T1 @ R).max()


def reflection_residual(S_u, S_v, M, N, th, vg, u, v):
    K = M + N
    g = grades(M, N)
    d = len(vg)
    P = perm(g, d)
    Q = t1(P, M, N, th, K * d)
    R = np.eye(K * K * d) - P / (u - v)
    Rp = np.eye(K * K * d) + Q / (u + v)
    S1 = place(blocks_of(S_u, K, d), g, vg, 1)
    S2 = place(blocks_of(S_v, K, d), g, vg, 2)
    return np.abs(R @ S1 @ Rp @ S2 - S2 @ Rp @ S1 @ R).max()


def comS_residual(S_u, S_v, M, N, th, vg, u, v):
    """[S_1(u), S_2(v)] against the three-term matrix commutator."""
    K = M + N
    g = grades(M, N)
    d = len(vg)
    P = perm(g, d)
    Q = t1(P, M, N, th, K * d)
    S1 = place(blocks_of(S_u, K, d), g, vg, 1)
    S2 = place(blocks_of(S_v, K, d), g, vg, 2)
    lhs = S1 @ S2 - S2 @ S1
    rhs = ((P @ S1 @ S2 - S2 @ S1 @ P) / (u - v) - (S1 @ Q @ S2 - S2 @ Q @ S1) / (u + v)
           + (P @ S1 @ Q @ S2 - S2 @ Q @ S1 @ P) / (u * u - v * v))
    return np.abs(lhs - rhs).max()


def symmetry_residual(pi, M, N, u, th=None):
    K = M + N
    th = th or theta(M, N)
    d = next(iter(pi.values())).shape[0]
    lhs = t1(S_matrix(pi, M, N, -u, th), M, N, th, d)
    S_u, S_m = S_matrix(pi, M, N, u, th), S_matrix(pi, M, N, -u, th)
    return np.abs(lhs - (S_u + (S_u - S_m) / (2 * u))).max()

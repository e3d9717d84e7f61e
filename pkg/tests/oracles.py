"""Brute-force reference implementations shared by the unit and acceptance tests."""

import itertools

from locmod.galois_lattice import matmul


def omega_sample(W):
    """All of Omega if finite, else products of generator powers in -1..1."""
    G = W.omega_group()
    if G.order is not None:
        return W.omega_elements()
    gens = W.omega_generators()
    out = set()
    for exps in itertools.product((-1, 0, 1), repeat=len(gens)):
        x = W.identity()
        for g, k in zip(gens, exps):
            if k:
                x = W.multiply(x, g if k > 0 else W.inverse(g))
        out.add(x)
    return sorted(out, key=lambda x: x.key)


def bfs_lengths(W, radius, start=None):
    """Word-metric distance from Omega, by breadth-first search on right multiplication."""
    frontier = omega_sample(W) if start is None else list(start)
    dist = {t: 0 for t in frontier}
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in W.simple_reflections:
                y = W.multiply(x, s)
                if y not in dist:
                    dist[y] = r
                    nxt.append(y)
        frontier = nxt
    return dist


def subword_leq(W, y, x):
    """y <= x iff y is a product of a subword of a reduced word of x (same Omega part)."""
    word, tau = W.reduced_word(x)
    target = W.multiply(y, W.inverse(tau))
    acc = {W.identity()}
    for i in word:
        acc |= {W.multiply(z, W.simple(i)) for z in acc}
    return target in acc


def random_action(rng, max_rank=6, max_e=6):
    """A random gamma with gamma^e = 1: a conjugate of signed cyclic blocks."""
    n = rng.randint(1, max_rank)
    e = rng.randint(1, max_e)
    blocks, size = [], 0
    while size < n:
        k = rng.choice([d for d in range(1, e + 1) if e % d == 0 and d <= n - size])
        # a signed k-cycle has order 2k
        blocks.append((k, rng.choice([1, -1]) if e % (2 * k) == 0 else 1))
        size += k
    g = [[0] * n for _ in range(n)]
    pos = 0
    for k, sign in blocks:
        for i in range(k):
            g[pos + (i + 1) % k][pos + i] = 1
        if sign == -1:
            g[pos][pos + k - 1] = -1
        pos += k
    # conjugate by a product of elementary matrices, tracking the inverse exactly
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Uinv = [row[:] for row in U]
    for _ in range(3):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= c * row[i]
    assert matmul(U, Uinv) == [[int(i == j) for j in range(n)] for i in range(n)]
    return matmul(matmul(U, g), Uinv), e


def permutation_action(perm):
    """Permutation matrix of perm with its order."""
    n = len(perm)
    P = [[int(perm[j] == i) for j in range(n)] for i in range(n)]
    e, Q = 1, P
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    while Q != ident:
        Q = matmul(Q, P)
        e += 1
    return P, e

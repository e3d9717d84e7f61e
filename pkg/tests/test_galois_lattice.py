import random

import pytest
from hypothesis import given, settings, strategies as st

from locmod import DomainError, LatticeWithAction, smith_normal_form
from locmod.galois_lattice import (FgAbelianGroup, coinvariants, cyclic_h1, cyclic_h2,
                                   direct_sum, h1_order_by_minors, h2_order_by_minors,
                                   kernel_basis, matmul, quotient)
from locmod.root_data import build_root_datum, pinned_automorphism
from locmod.galois_lattice import kottwitz_pi1
from oracles import permutation_action, random_action

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(n)] for _ in range(m)]


def _det(M):
    if not M:
        return 1
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]])
               for j in range(len(M)))


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_snf_is_a_factorization(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    off = [D[i][j] for i in range(len(D)) for j in range(len(D[0])) if i != j]
    assert not any(off)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_basis_is_killed(M):
    n = len(M[0])
    for v in kernel_basis(M, n):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


def test_quotient_with_torsion():
    q = quotient(2, [[2, 0], [0, 3]])
    assert q.group.order == 6
    q = quotient(3, [[1, -1, 0]])
    assert q.group.free_rank == 2 and q.group.order is None
    x = q.project([1, 0, 0])
    assert x == q.project([0, 1, 0])


def test_group_arithmetic():
    G = FgAbelianGroup(1, (2, 4))
    x = G.normalize([3, 5, 7])
    assert x == (3, 1, 3)
    assert G.scale(4, x) == (12, 0, 0)
    assert G.element_order((0, 1, 2)) == 2
    assert G.annihilated_by(4) is False  # free part


@pytest.mark.parametrize("perm", [[1, 0], [1, 2, 0], [1, 0, 3, 2], [1, 2, 3, 0], [0, 2, 1]])
def test_h1_vanishes_on_permutation_modules(perm):
    X = LatticeWithAction(*permutation_action(perm))
    assert cyclic_h1(X).is_trivial


def test_sign_module():
    X = LatticeWithAction([[-1]], 2)
    assert cyclic_h1(X).order == 2
    assert cyclic_h2(X).is_trivial
    T = LatticeWithAction([[1]], 2)
    assert cyclic_h1(T).is_trivial
    assert cyclic_h2(T).order == 2


def test_random_actions_cohomology_laws():
    rng = random.Random(2024)
    for _ in range(100):
        g, e = random_action(rng)
        X = LatticeWithAction(g, e)
        H1, H2 = cyclic_h1(X), cyclic_h2(X)
        assert H1.order is not None and H2.order is not None
        assert H1.annihilated_by(e) and H2.annihilated_by(e)
        assert H1.order == h1_order_by_minors(X)
        assert H2.order == h2_order_by_minors(X)


def test_direct_sum_is_additive():
    X = LatticeWithAction([[-1]], 2)
    Y = LatticeWithAction([[0, -1], [1, -1]], 3)
    S = direct_sum(X, Y)
    assert S.order == 6
    assert cyclic_h1(S).order == cyclic_h1(LatticeWithAction(X.gamma, 6)).order * \
        cyclic_h1(LatticeWithAction(Y.gamma, 6)).order


def test_coinvariants_keep_torsion():
    G, q = coinvariants(LatticeWithAction([[0, 1], [1, 0]], 2))
    assert G.free_rank == 1 and G.torsion == ()
    G, q = coinvariants(LatticeWithAction([[-1]], 2))
    assert G.free_rank == 0 and G.order == 2


def test_action_validation():
    with pytest.raises(DomainError):
        LatticeWithAction([[1, 1], [0, 1]], 2)
    with pytest.raises(DomainError):
        LatticeWithAction([[1, 0]], 1)
    with pytest.raises(DomainError):
        LatticeWithAction([[1]], 0)


@pytest.mark.parametrize("spec, order, free", [
    ("GL3", None, 1), ("SL3", 1, 0), ("PGL2", 2, 0), ("PGL3", 3, 0), ("GSp4", None, 1),
])
def test_pi1_split(spec, order, free):
    G = kottwitz_pi1(build_root_datum(spec))
    assert G.free_rank == free
    if order is not None:
        assert G.order == order


def test_pi1_with_automorphism():
    rd = build_root_datum({"type": "A", "rank": 3, "lattice": "ad"})
    gam = pinned_automorphism(rd, [2, 1, 0])
    assert kottwitz_pi1(rd, gam).order == 2
    rd = build_root_datum("GL4")
    gam = pinned_automorphism(rd, [2, 1, 0])
    G = kottwitz_pi1(rd, gam)
    assert G.free_rank == 0 and G.order == 2

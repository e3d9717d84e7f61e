import numpy as np
import pytest

from locmod import _kernels, make_iwahori_weyl
from locmod.lattice_chain import _annihilator, field, subspaces

pytestmark = pytest.mark.skipif(not _kernels._HAVE_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("n, d, q", [(3, 1, 2), (3, 2, 3), (4, 2, 2), (4, 1, 4)])
def test_compat_kernels_agree(n, d, q):
    F = field(q)
    subs = subspaces(n, d, q)
    N = len(subs)
    ann = np.array([_annihilator(F, S, n) for S in subs], dtype=np.int64).reshape(N, n - d, n)
    img = np.array(subs, dtype=np.int64)
    a = _kernels._subspace_compat_nb(ann, img, F.add, F.mul)
    b = _kernels.subspace_compat_numpy(ann, img, F.add, F.mul)
    assert np.array_equal(a, b)
    # with the identity map, compat[a, b] says S_b is inside S_a: only the diagonal
    assert np.array_equal(a, np.eye(N, dtype=np.uint8))


@pytest.mark.parametrize("spec", ["GL3", "GSp4", "C2"])
def test_length_kernels_agree(spec):
    W = make_iwahori_weyl(spec)
    rng = np.random.default_rng(1)
    T = rng.integers(-5, 6, size=(500, W.ngens), dtype=np.int64)
    F = rng.integers(0, len(W.relative.weyl), size=500, dtype=np.int64)
    a = _kernels._batch_lengths_nb(W._pairing, T, F, W._positive)
    b = _kernels.batch_lengths_numpy(W._pairing, T, F, W._positive)
    assert np.array_equal(a, b)

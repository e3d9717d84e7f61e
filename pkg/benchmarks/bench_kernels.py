"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--q 3] [--batch 200000]

Both paths are run on the same inputs and their outputs compared before any
timing is reported.
"""

import argparse
import time

import numpy as np

from locmod import _kernels, make_iwahori_weyl
from locmod.lattice_chain import _annihilator, _matvec, field, gsp_shape, standard_transitions, subspaces


def compat_inputs(n, d, q):
    """Annihilators and images under the first transition map of the maximal chain."""
    F = field(q)
    subs = subspaces(n, d, q)
    N = len(subs)
    ann = np.array([_annihilator(F, S, n) for S in subs], dtype=np.int64).reshape(N, n - d, n)
    psi = standard_transitions(gsp_shape(n, "maximal"))[0]
    img = np.array([[_matvec(F, psi, row) for row in S] for S in subs], dtype=np.int64)
    return ann, img.reshape(N, d, n), F.add, F.mul


def length_inputs(spec, batch, seed=0):
    W = make_iwahori_weyl(spec)
    rng = np.random.default_rng(seed)
    trans = rng.integers(-6, 7, size=(batch, W.ngens), dtype=np.int64)
    finite = rng.integers(0, len(W.relative.weyl), size=batch, dtype=np.int64)
    return W._pairing, trans, finite, W._positive


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--batch", type=int, default=200_000)
    args = ap.parse_args()
    if not _kernels._HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    cases = [
        (f"subspace_compat n=4 d=2 q={args.q}", compat_inputs(4, 2, args.q),
         _kernels._subspace_compat_nb, _kernels.subspace_compat_numpy),
        (f"batch_lengths GSp6 x{args.batch}", length_inputs("GSp6", args.batch),
         _kernels._batch_lengths_nb, _kernels.batch_lengths_numpy),
    ]
    print(f"{'kernel':<36}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, inputs, nb_fn, np_fn in cases:
        nb_fn(*inputs)  # compile or load from cache outside the timing
        t_nb, out_nb = best_of(nb_fn, inputs, args.repeat)
        t_np, out_np = best_of(np_fn, inputs, args.repeat)
        if not np.array_equal(np.asarray(out_nb), np.asarray(out_np)):
            raise SystemExit(f"{name}: numba and numpy outputs differ")
        print(f"{name:<36}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()

"""Time the transfer-matrix assembly kernel: compiled extension versus numpy fallback.

Usage::

    python benchmarks/bench_transfer.py [--repeat 5]

Only the kernel call is timed (sparse-matrix construction is shared by both
backends). Results are checked to agree before timings are reported.
"""

import argparse
import timeit

import scipy.sparse as sp

from braidlab import _kernels
from braidlab.basis import all_digits
from braidlab.params import random_param_set
from braidlab.transfer import _bar_array, _jets

CASES = [(2, 8, 0), (2, 10, 0), (3, 7, 0), (4, 6, 0), (4, 6, 2), (6, 5, 0)]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if "cython" not in _kernels.BACKENDS:
        print("compiled backend not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'N':>3} {'r':>3} {'order':>5} {'entries':>9} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for N, r, order in CASES:
        p = random_param_set(N, 0)
        inputs = (N, r, _jets(p, 0.4 + 0.1j, order), _bar_array(N), all_digits(N, r))
        out = {name: fn(*inputs) for name, fn in _kernels.BACKENDS.items()}
        dim = N**r
        mats = [sp.csr_matrix((v, (i, j)), shape=(dim, dim)) for i, j, v in out.values()]
        if abs(mats[0] - mats[1]).max() > 1e-12 * max(1.0, abs(mats[0]).max()):
            raise AssertionError(f"backends disagree at N={N}, r={r}, order={order}")
        times = {
            name: min(timeit.repeat(lambda fn=fn: fn(*inputs), number=1, repeat=args.repeat)) * 1e3
            for name, fn in _kernels.BACKENDS.items()
        }
        entries = len(out["python"][0])
        print(
            f"{N:>3} {r:>3} {order:>5} {entries:>9} {times['python']:>10.2f} {times['cython']:>10.2f}"
            f" {times['python'] / times['cython']:>8.1f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

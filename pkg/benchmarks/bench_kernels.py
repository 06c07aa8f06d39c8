"""Time the dictionary passes on the compiled and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--config 3,2 3,3]

Also checks that both backends produce the same vectors.
"""
import argparse
import time

import numpy as np

from wreath_observable.dictionary import KVectorDictionary
from wreath_observable.kernels import available_backends
from wreath_observable.states import SpaceConfig


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--config", nargs="+", default=["3,2", "3,3"], help="n,m pairs")
    args = parser.parse_args(argv)
    backends = available_backends()
    rng = np.random.default_rng(0)
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>2} {'m':>2} {'columns':>9} {'dimension':>10} {'backend':>8} "
          f"{'matvec ms':>10} {'rmatvec ms':>11}")
    for spec in args.config:
        n, m = (int(v) for v in spec.split(","))
        cfg = SpaceConfig(n, m)
        dicts = {b: KVectorDictionary(cfg, backend=b) for b in backends}
        x = rng.standard_normal(cfg.swap_count * cfg.kspace_dim)
        y = rng.standard_normal(cfg.dimension)
        ref = None
        timings = {}
        for name, d in dicts.items():
            out = (d.matvec(x), d.rmatvec(y))
            if ref is None:
                ref = out
            else:
                assert np.allclose(out[0], ref[0]) and np.allclose(out[1], ref[1]), name
            tm = best_of(lambda: d.matvec(x), args.repeat) * 1e3
            tr = best_of(lambda: d.rmatvec(y), args.repeat) * 1e3
            timings[name] = tm + tr
            print(f"{n:>2} {m:>2} {d.n_columns:>9} {cfg.dimension:>10} {name:>8} {tm:>10.2f} {tr:>11.2f}")
        if len(timings) == 2:
            print(f"      speedup cython/python: {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()

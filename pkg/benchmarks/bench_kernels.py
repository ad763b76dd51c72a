"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel rows import both backends directly.  The end-to-end row checks the
CAR relations of a few induced maps in a fresh interpreter per backend, so
no cached tables leak between runs.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from cuntzcar import _kernels_py
from cuntzcar.identities import random_balanced, random_car

try:
    from cuntzcar import _speedups
except ImportError:
    _speedups = None


def _inputs(seed=0):
    rng = random.Random(seed)
    cars = [(random_car(8, rng, terms=6, max_degree=5)._terms, random_car(8, rng, terms=6, max_degree=5)._terms)
            for _ in range(40)]
    words = [(random_balanced(8, rng, max_depth=3, terms=6)._terms, random_balanced(8, rng, max_depth=3, terms=6)._terms)
             for _ in range(40)]
    masks = [tuple(rng.getrandbits(10) << 1 for _ in range(4)) for _ in range(2000)]
    return cars, words, masks


_WORKLOAD = """
import random, time
from cuntzcar.scalars import random_exact_unitary
from cuntzcar.transform import NonlinearTransform, verify_car_relations
rng = random.Random(1)
start = time.perf_counter()
for p in (1, 2, 3):
    for _ in range(3):
        t = NonlinearTransform(p, random_exact_unitary(2 ** p, rng, rotations=2))
        assert verify_car_relations(t, 2 * p).passed
print(time.perf_counter() - start)
"""


def _workload(name):
    env = dict(os.environ)
    env.pop("CUNTZCAR_PURE_PYTHON", None)
    if name == "python":
        env["CUNTZCAR_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    cars, words, masks = _inputs()
    backends = [("python", _kernels_py)] + ([("cython", _speedups)] if _speedups else [])
    cases = {
        "car_monomial_product x2000": lambda k: [k.car_monomial_product(*m) for m in masks],
        "car_mul x40": lambda k: [k.car_mul(x, y) for x, y in cars],
        "cuntz_mul x40": lambda k: [k.cuntz_mul(x, y) for x, y in words],
    }
    print(f"{'case':<28}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _speedups else ""))
    rows = [(label, [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends])
            for label, fn in cases.items()]
    rows.append(("induced-map CAR check", [_workload(name) for name, _ in backends]))
    for label, times in rows:
        row = f"{label:<28}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)
    if not _speedups:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()

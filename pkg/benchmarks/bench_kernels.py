"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--sizes 64 256 1024] [--repeat 5]

Kernel timings call both modules directly; the end-to-end row runs the ODE
kernel check in a subprocess with and without ``MINMOD_PURE=1``.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from minmod import _kernels_py as pure

try:
    from minmod import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None


def cases(n, rng):
    a = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(n)]
    b = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(n)]
    unit = [1] + a[1:]
    floats = [float(x) for x in a]
    return {
        "cauchy": lambda m: m.cauchy(a, b, n),
        "series_inverse": lambda m: m.series_inverse(unit, n),
        "series_power(1/5)": lambda m: m.series_power(unit, Fraction(1, 5), min(n, 128), Fraction(1)),
        "divisor_sums(11)": lambda m: m.divisor_sums(11, n),
        "divide_one_minus": lambda m: [m.divide_one_minus([1] + [0] * (n - 1), k, n) for k in range(1, 40)],
        "horner": lambda m: m.horner(floats, 0.3 + 0.2j),
    }


def best(fn, module, repeat):
    return min(timeit.repeat(lambda: fn(module), number=1, repeat=repeat))


END_TO_END = ("from minmod import ode, characters as c;"
              "[ode.apply(ode.derive_alphas(nu), c.character(nu, s, 120)) "
              "for nu in (5, 7, 9, 11, 13) for s in range(1, (nu + 1) // 2)]")


def end_to_end(pure_backend):
    env = dict(os.environ)
    if pure_backend:
        env["MINMOD_PURE"] = "1"
    else:
        env.pop("MINMOD_PURE", None)
    code = f"import time; t = time.perf_counter(); {END_TO_END}; print(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--skip-end-to-end", action="store_true")
    args = p.parse_args()
    if compiled is None:
        sys.exit("compiled kernels are not built; reinstall with Cython available")

    rng = random.Random(0)
    print(f"{'kernel':<20}{'n':>6}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for n in args.sizes:
        for name, fn in cases(n, rng).items():
            if fn(pure) != fn(compiled) and name != "horner":
                sys.exit(f"backends disagree on {name} at n={n}")
            tp, tc = best(fn, pure, args.repeat), best(fn, compiled, args.repeat)
            print(f"{name:<20}{n:>6}{tp * 1e3:>14.3f}{tc * 1e3:>14.3f}{tp / tc:>9.1f}x")
    if not args.skip_end_to_end:
        tp, tc = end_to_end(True), end_to_end(False)
        print(f"{'ODE kernel check':<20}{120:>6}{tp * 1e3:>14.1f}{tc * 1e3:>14.1f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()

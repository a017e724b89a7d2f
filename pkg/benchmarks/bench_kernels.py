"""Time the compiled F_p kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --degree 200 --repeat 5
"""

import argparse
import random
import timeit

from modfermat.fp import backends

P = 2147483629


def _poly(rng, deg):
    return [rng.randrange(P) for _ in range(deg)] + [1 + rng.randrange(P - 1)]


def cases(rng, deg):
    a, b, m = _poly(rng, deg), _poly(rng, deg), _poly(rng, deg // 2)
    return {
        "fp_mul": lambda k: k.fp_mul(a, b, P),
        "fp_divmod": lambda k: k.fp_divmod(k.fp_mul(a, b, P), m, P),
        "fp_gcd": lambda k: k.fp_gcd(a, b, P),
        "fp_resultant": lambda k: k.fp_resultant(a, b, P),
        "fp_powmod": lambda k: k.fp_powmod([0, 1], P, m, P),
        "fp_ddf": lambda k: k.fp_ddf(m, P),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=120)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    ks = backends()
    if "cython" not in ks:
        print("compiled kernels not built; run: python3 setup.py build_ext --inplace")
    names = sorted(ks)
    print(f"degree {args.degree}, p = {P}, best of {args.repeat}")
    print(f"{'kernel':<14}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases(random.Random(args.seed), args.degree).items():
        times = {}
        for n in names:
            k = ks[n]
            times[n] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:<14}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()

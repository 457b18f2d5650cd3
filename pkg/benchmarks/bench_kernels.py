"""Time the compiled kernels against the pure-Python fallback on approximate data.

    python benchmarks/bench_kernels.py [--repeat 5] [--pieces 400]
"""
import argparse
import random
import timeit
from fractions import Fraction

from gaborstep import kernels
from gaborstep.gabor import GaborSystem, frame_energy, harmonic_window
from gaborstep.stepfn import StepFunction


def random_approx(rng, lo, hi, den, pieces):
    cuts = sorted(rng.sample(range(lo * den, hi * den + 1), pieces + 1))
    return StepFunction([(Fraction(u, den), Fraction(v, den), rng.uniform(-2, 2))
                         for u, v in zip(cuts, cuts[1:])])


def cases(pieces, rng):
    f = random_approx(rng, -20, 20, 16, pieces)
    g = random_approx(rng, 0, 8, 16, pieces // 4)
    den = kernels.grid_denominator(f, g)
    fg, gg = kernels.to_grid(f, den), kernels.to_grid(g, den)
    sys_ = GaborSystem(g, 1, 1)
    harm = GaborSystem(harmonic_window(256), 1, 1, approx=True)
    return {
        "fold": lambda: kernels.fold(*fg, den),
        "cross_fold": lambda: kernels.cross_fold(fg, gg, 3 * den, den),
        "circle_extrema": lambda: kernels.circle_extrema((0, 1, 3, 7, 12), 200_000),
        "frame_energy": lambda: frame_energy(f, sys_),
        "frame_energy_harmonic": lambda: frame_energy(harmonic_window(64).to_approx(), harm),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--pieces", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled kernels not built; only the Python backend is timed")
    backends = ["python"] + (["cython"] if kernels.compiled_available() else [])
    table = cases(args.pieces, random.Random(args.seed))
    print(f"{'kernel':24s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in table.items():
        times = []
        for b in backends:
            with kernels.use_backend(b):
                fn()
                times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        row = f"{name:24s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()

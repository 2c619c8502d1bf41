"""Wall-time comparison: compiled transform kernels vs the pure-Python path.

Times single-abscissa transform evaluations and full Euler inversions at the
worked-example parameters.

Run with:
    python benchmarks/bench_backends.py [--repeat 5] [--inner 200]
"""

import argparse
import timeit
from functools import partial

import koufpt._backend as backend
from koufpt.inversion import EulerConfig, euler_invert
from koufpt.model import KouParams
from koufpt.transforms import TransformInputs, _fpt_python, _joint_python, fpt_transform

PARAMS = KouParams(mu=0.1, sigma=0.2, lam=3.0, eta1=50.0, eta2=100.0 / 3.0, p=0.5)
FPT = TransformInputs(params=PARAMS, b=0.3)
JOINT = TransformInputs(params=PARAMS, b=0.3, a=0.2)
ALPHA = 7.0 + 9.42477796076938j


def bench(label, fn, repeat, inner):
    times = timeit.repeat(fn, repeat=repeat, number=inner)
    best_us = min(times) / inner * 1e6
    print(f"{label: <38} {best_us: >10.2f} us/call")
    return best_us


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--inner", type=int, default=200)
    args = parser.parse_args(argv)

    rows = {}
    q = PARAMS
    rows["fpt python"] = bench(
        "fpt transform, pure python", lambda: _fpt_python(FPT, ALPHA), args.repeat, args.inner
    )
    rows["joint python"] = bench(
        "joint transform, pure python", lambda: _joint_python(JOINT, ALPHA), args.repeat, args.inner
    )
    if backend.kernel is not None:
        rows["fpt cython"] = bench(
            "fpt transform, cython",
            lambda: backend.kernel.fpt_value(q.mu, q.sigma, q.lam, q.eta1, q.eta2, q.p, 0.3, ALPHA),
            args.repeat,
            args.inner,
        )
        rows["joint cython"] = bench(
            "joint transform, cython",
            lambda: backend.kernel.joint_value(
                q.mu, q.sigma, q.lam, q.eta1, q.eta2, q.p, 0.2, 0.3, ALPHA
            ),
            args.repeat,
            args.inner,
        )

    cfg = EulerConfig()
    bench(
        "euler inversion, pure python path",
        lambda: euler_invert(partial(_fpt_python, FPT), 1.0, cfg),
        args.repeat,
        max(1, args.inner // 10),
    )
    bench(
        f"euler inversion, active backend ({backend.backend_name()})",
        lambda: euler_invert(partial(fpt_transform, FPT), 1.0, cfg),
        args.repeat,
        max(1, args.inner // 10),
    )

    if backend.kernel is not None:
        print(f"\nspeedup fpt:   {rows['fpt python'] / rows['fpt cython']:.1f}x")
        print(f"speedup joint: {rows['joint python'] / rows['joint cython']:.1f}x")
    else:
        print("\ncompiled extension not built; only the pure-Python path was timed")


if __name__ == "__main__":
    main()

"""Compare the compiled and numpy kernel backends on cnn-s shaped workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import os
import subprocess
import sys
import time

import numpy as np

from isnn import _fallback


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(rng):
    x1 = rng.random((128, 1, 28, 28))
    x2 = rng.random((128, 16, 14, 14))
    g2 = rng.random((128 * 14 * 14, 16 * 9))
    p = rng.random((128, 32, 14, 14))
    return {
        "im2col conv1 (128x1x28x28)": lambda m: m.im2col(x1, 3, 1, 1),
        "im2col conv2 (128x16x14x14)": lambda m: m.im2col(x2, 3, 1, 1),
        "col2im conv2": lambda m: m.col2im(g2, 128, 16, 14, 14, 3, 1, 1),
        "maxpool fwd (128x32x14x14)": lambda m: m.maxpool_forward(p, 2),
        "maxpool fwd+bwd": lambda m: m.maxpool_backward(np.ones((128, 32, 7, 7)), m.maxpool_forward(p, 2)[1],
                                                        14, 14, 2),
    }


STEP_SNIPPET = """
import time, numpy as np
from isnn import BACKEND
from isnn.nn import build_model
from isnn.nn import tensor as T
m = build_model("cnn-s", rng=np.random.default_rng(0))
rng = np.random.default_rng(1)
x, y = rng.random((128, 1, 28, 28)), rng.integers(0, 10, 128)
best = 1e9
for _ in range({repeat}):
    t = time.perf_counter()
    tr = m.record(x)
    tr.backward(T.softmax_cross_entropy(tr.logits, y))
    best = min(best, time.perf_counter() - t)
print(BACKEND, best * 1e3)
"""


def train_step_ms(pure, repeat):
    env = dict(os.environ, ISNN_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", STEP_SNIPPET.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        compiled = importlib.import_module("isnn._kernels")
    except ImportError:
        compiled = None
        print("compiled extension not built; only the numpy backend is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<30}{'cython ms':>12}{'numpy ms':>12}{'speedup':>10}  identical")
    for name, fn in workloads(rng).items():
        t_py = best_of(lambda: fn(_fallback), args.repeat) * 1e3
        if compiled is None:
            print(f"{name:<30}{'-':>12}{t_py:12.2f}")
            continue
        t_c = best_of(lambda: fn(compiled), args.repeat) * 1e3
        a, b = fn(compiled), fn(_fallback)
        same = all(np.array_equal(u, v) for u, v in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        print(f"{name:<30}{t_c:12.2f}{t_py:12.2f}{t_py / t_c:10.2f}  {same}")
    print()
    for pure in (False, True):
        backend, ms = train_step_ms(pure, args.repeat)
        print(f"cnn-s forward+backward, batch 128, backend {backend:<7}{ms:10.2f} ms")


if __name__ == "__main__":
    main()

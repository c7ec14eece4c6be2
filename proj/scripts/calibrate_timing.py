"""Probe fixture candidates across the size schedule and report class fits.

Mirrors the engine's estimator: min-of-repeats wall times, empty-program
baseline subtraction, noise floor, log-space least-squares per class.
"""
import math
import subprocess
import sys
import tempfile
import time

SIZES = [1 << k for k in range(8, 21)]
REPEATS = 8
BASELINE_RUNS = REPEATS + 3
TIMEOUT_S = 10.0
FLOORS_MS = (5.0, 10.0, 15.0)

CLASSES = {
    "O(1)": lambda n: 1.0,
    "O(log n)": lambda n: math.log(n),
    "O(n)": lambda n: float(n),
    "O(n log n)": lambda n: n * math.log(n),
    "O(n^2)": lambda n: float(n) ** 2,
    "O(n^3)": lambda n: float(n) ** 3,
}


def min_wall(argv, inp, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        r = subprocess.run(argv, input=inp, capture_output=True, timeout=TIMEOUT_S)
        dt = (time.perf_counter() - t0) * 1000.0
        if r.returncode != 0:
            raise RuntimeError(f"{argv} failed: {r.stderr[:200]}")
        if best is None or dt < best:
            best = dt
    return best


def fit(points):
    out = {}
    for name, g in CLASSES.items():
        logs = [math.log(t) - math.log(g(n)) for n, t in points]
        mean = sum(logs) / len(logs)
        ssr = sum((e - mean) ** 2 for e in logs)
        out[name] = math.sqrt(ssr / len(logs))
    return sorted(out.items(), key=lambda kv: kv[1])


def probe(problem, cand):
    base = f"fixtures/appendix_c/{problem}"
    gen = f"{base}/generator.py"
    prog = f"{base}/candidates/{cand}.py"

    with tempfile.NamedTemporaryFile(suffix=".py", mode="w") as empty:
        empty.write("")
        empty.flush()
        baseline = min_wall([sys.executable, empty.name], b"", BASELINE_RUNS)

    print(f"{problem} / {cand}  (baseline {baseline:.1f}ms)", flush=True)
    raw_points = []
    for n in SIZES:
        r = subprocess.run([sys.executable, gen], input=f"{n} 1\n".encode(),
                           capture_output=True, timeout=120)
        assert r.returncode == 0, r.stderr[:200]
        inp = r.stdout
        try:
            t = min_wall([sys.executable, prog], inp, REPEATS)
        except subprocess.TimeoutExpired:
            print(f"    n=2^{n.bit_length()-1}: TIMEOUT", flush=True)
            break
        corr = t - baseline
        raw_points.append((n, corr))
        print(f"    n=2^{n.bit_length()-1}: raw {t:9.2f}ms corr {corr:9.2f}ms", flush=True)

    for floor in FLOORS_MS:
        pts = [(n, t) for n, t in raw_points if t >= floor]
        if len(pts) < 4:
            print(f"  floor {floor:4.1f}ms: {len(pts)} pts - insufficient", flush=True)
            continue
        ranked = fit(pts)
        top = ", ".join(f"{k}={v:.3f}" for k, v in ranked[:3])
        print(f"  floor {floor:4.1f}ms: {len(pts)} pts: {top}", flush=True)


def main():
    jobs = [(p, c)
            for p in ("c1_pair_stacking", "c2_twice_subsequence", "c3_min_cost_sort")
            for c in ("after", "before")]
    for p, c in jobs:
        probe(p, c)


if __name__ == "__main__":
    main()

"""Compiled versus pure-Python polynomial kernels.

Micro-benchmarks call both kernel modules directly on the same random
inputs; the end-to-end benchmark runs one relation check in a subprocess
per backend (``QZALG_PURE=1`` selects the fallback at import).

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from qzalg import _polykern as pure

try:
    from qzalg import _polykern_c as compiled
except ImportError:
    compiled = None

END_TO_END = """
import time
from qzalg import kernels
from qzalg.harness import run_check
chk = {"id": "b", "kind": "relations", "construction": {"id": "fj", "params": {"type_": "A", "rank": 2}},
       "mode_bound": 2, "window": 2}
t = time.perf_counter()
reports = run_check(chk)
assert all(r.verdict == "pass" for r in reports)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def _poly(rng, deg, size=9):
    p = [rng.randint(-size, size) for _ in range(deg)] + [rng.choice([-1, 1]) * rng.randint(1, size)]
    return tuple(p)


def _normal(a, av, B):
    # the Laurent kernels expect normalized (num, val, den) triples
    num, den, lo = pure.ladd(a, av, B, (), 0, 1)
    return num, lo, den


def cases(seed=1):
    rng = random.Random(seed)
    polys = [(_poly(rng, rng.randint(2, 12)), _poly(rng, rng.randint(2, 12))) for _ in range(200)]
    common = [(_poly(rng, 3), _poly(rng, 4), _poly(rng, 4)) for _ in range(100)]
    gcd_in = [(pure.pmul(g, a), pure.pmul(g, b)) for g, a, b in common]
    lau = [_normal(a, rng.randint(-4, 4), rng.choice([1, 2, 6])) + _normal(b, rng.randint(-4, 4), rng.choice([1, 3]))
           for a, b in polys[:100]]
    return {
        "pmul": (lambda m: [m.pmul(a, b) for a, b in polys]),
        "padd": (lambda m: [m.padd(a, b) for a, b in polys]),
        "pgcd": (lambda m: [m.pgcd(a, b) for a, b in gcd_in]),
        "ladd": (lambda m: [m.ladd(*x) for x in lau]),
        "lmul": (lambda m: [m.lmul(*x) for x in lau]),
    }


def micro(repeat):
    rows = []
    for name, fn in cases().items():
        t_pure = min(timeit.repeat(lambda: fn(pure), number=5, repeat=repeat))
        t_comp = min(timeit.repeat(lambda: fn(compiled), number=5, repeat=repeat)) if compiled else None
        if compiled:
            assert fn(pure) == fn(compiled), f"backends disagree on {name}"
        rows.append({"kernel": name, "pure_s": t_pure, "compiled_s": t_comp,
                     "speedup": (t_pure / t_comp) if t_comp else None})
    return rows


def end_to_end():
    out = {}
    for label, env in (("pure", {"QZALG_PURE": "1"}), ("compiled", {})):
        r = subprocess.run([sys.executable, "-c", END_TO_END], capture_output=True, text=True,
                           env={**os.environ, **env}, check=True)
        backend, secs = r.stdout.split()
        out[label] = {"backend": backend, "seconds": float(secs)}
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    ap.add_argument("--json", help="write the results here")
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernel not built; only the pure backend is timed")
    rows = micro(args.repeat)
    print(f"{'kernel':8} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for r in rows:
        comp = f"{r['compiled_s']:13.4f}" if r["compiled_s"] else f"{'-':>13}"
        sp = f"{r['speedup']:7.1f}x" if r["speedup"] else f"{'-':>8}"
        print(f"{r['kernel']:8} {r['pure_s']:10.4f} {comp} {sp}")
    result = {"micro": rows}
    if not args.skip_end_to_end:
        e2e = end_to_end()
        result["end_to_end"] = e2e
        p, c = e2e["pure"]["seconds"], e2e["compiled"]["seconds"]
        print(f"relations A2 (mode bound 2, window 2): pure {p:.2f} s "
              f"[{e2e['pure']['backend']}], compiled {c:.2f} s [{e2e['compiled']['backend']}], "
              f"speedup {p / c:.2f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Imports the compiled extension and exercises each group of bindings.

Usage: python3 python/smoke_test.py [path/to/libffzeta.so]

Without an argument the newest build under target/ is used.
"""

import importlib.util
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def find_library():
    if len(sys.argv) > 1:
        return Path(sys.argv[1])
    found = [
        p
        for profile in ("release", "debug")
        for p in (ROOT / "target" / profile).glob("libffzeta.*")
        if p.suffix in (".so", ".dylib")
    ]
    if not found:
        sys.exit("no libffzeta build found; run `cargo build -p ffzeta-py` first")
    return max(found, key=lambda p: p.stat().st_mtime)


def load(lib):
    tmp = Path(tempfile.mkdtemp())
    target = tmp / "ffzeta.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("ffzeta", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    ff = load(find_library())

    # index combinatorics
    assert ff.g_map([1, 2, 2, 1]) == [1, 3, 5]
    assert ff.g_inverse([1, 3, 5], 6) == [1, 2, 2, 1]
    assert ff.dim_lower_bound(10, 3, 3) == (3, 2)
    fam = ff.independent_family(5, 2, 3)
    assert fam == [[5], [2, 3], [4, 1]], fam
    assert ff.is_g_independent(fam)
    assert len(ff.q_admissible_partitions(7, 3)) > 0

    # ζ(1) and log(1) coincide
    z = ff.mzv(3, [1], 40)
    lg = ff.carlitz_log(3, "1", 40)
    assert z.agrees_with(lg)
    assert (z - lg).valuation is None
    assert z.q == 3 and z.precision == 40 and z.valuation == 0

    # ζ(q−1) is a rational multiple of π̃^{q−1}
    ratio = ff.mzv(3, [2], 60) / ff.period_power(3, 1, 60)
    assert ratio.valuation is not None

    h = ff.at_polynomial(3, 4)
    assert isinstance(h["table"], list) and h["pretty"]

    out = ff.hunt(3, ["zeta:1", "log:1"], 0, 60)
    assert len(out["certificates"]) == 1, out
    report = ff.independence_report(3, fam, 4, 150)
    assert report["verdict"] == "consistent", report["summary"]

    try:
        ff.mzv(6, [1], 5)
    except ValueError:
        pass
    else:
        raise AssertionError("q = 6 accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()

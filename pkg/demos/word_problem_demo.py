"""Word problem via relative curve shortening, on Z * Z^2.

Loads the presentation, shortens a few words step by step, and times the
solver on progressively longer trivial words to show the sub-quadratic
growth that makes the rewriting approach usable.
"""

import random
import time
from pathlib import Path

from relconj import shortening, tables, words
from relconj.presentation import parse_presentation

HERE = Path(__file__).resolve().parent

p = parse_presentation((HERE / "presentations" / "zxz2.txt").read_text())
t = tables.precompute(p)
print(f"group {p.label}: hyperbolic {sorted(p.hyperbolic_generators)}, "
      f"parabolic Z^2 on {sorted(p.parabolics[0].generators)}")
print(f"working constants: delta={t.profile.delta}, "
      f"k={shortening.resolve_k(p, tables=t)}")

for w in ["xyXY", "axXA", "xyX", "axyXYA", "aaxAA"]:
    res = shortening.shorten(p, w, tables=t)
    verdict = "trivial" if res.output == "" else f"shortens to {res.output!r}"
    print(f"  {w!r:12} -> {verdict} in {len(res.steps)} steps")
    for s in res.steps:
        print(f"      [{s.justification}] {s.before!r} -> {s.after!r} "
              f"at {s.start}..{s.end}")

print("\ncyclic shortening (conjugacy normal form):")
for w in ["axA", "xxxxyAXXXY", "yx"]:
    res = shortening.cyclic_shorten(p, w, tables=t)
    print(f"  {w!r:14} -> alpha={res.output!r} conjugator={res.conjugator!r} "
          f"({res.iterations} seam passes)")

print("\ntimings on random trivial words (insert g g^-1 pairs):")
rng = random.Random(0)
letters = sorted(p.alphabet)
for n in [512, 2048, 8192]:
    w = ""
    while len(w) < n:
        c = rng.choice(letters)
        i = rng.randrange(len(w) + 1)
        w = w[:i] + c + words.inverse(c) + w[i:]
    t0 = time.perf_counter()
    assert shortening.word_problem(p, w, tables=t)
    print(f"  n={n:5d}: {(time.perf_counter() - t0) * 1000:7.1f} ms")

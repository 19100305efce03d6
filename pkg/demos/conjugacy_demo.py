"""Conjugacy decision and search across the three reference groups.

Classification (hyperbolic vs parabolic), certificates with verified
witnesses, the bounded conjugacy class of a parabolic element, and the
torsion behaviour in Z * C2.
"""

from pathlib import Path

from relconj import conjugacy, tables, words
from relconj.presentation import parse_presentation

HERE = Path(__file__).resolve().parent


def load(name):
    p = parse_presentation((HERE / "presentations" / name).read_text())
    return p, tables.precompute(p)


pF, tF = load("free2.txt")
pG2, tG2 = load("zxz2.txt")
pZC2, tZC2 = load("zc2.txt")

print("classification in Z * Z^2:")
for w in ["axA", "a", "xy", "axya", ""]:
    c = conjugacy.classify(pG2, tG2, w)
    where = f"P_{c.index} rep={c.representative!r}" \
        if c.verdict == "parabolic" and not c.identity else ""
    print(f"  {w!r:8} -> {('identity' if c.identity else c.verdict)} {where}")

print("\ndecide / search, free group F(a, b):")
for u, v in [("ab", "ba"), ("a", "b"), ("abab", "baba")]:
    cert = conjugacy.decide(pF, tF, u, v)
    line = f"  {u!r} ~ {v!r}? {cert.answer}"
    if cert.answer == "conjugate":
        g = cert.witness
        check = words.free_reduce(words.mul(g, u, words.inverse(g),
                                            words.inverse(v)))
        line += f"  witness g={g!r}  (g u g^-1 v^-1 -> {check!r})"
    else:
        line += f"  ({cert.reason})"
    print(line)

print("\nparabolic pairs in Z * Z^2:")
for u, v in [("axxA", "xx"), ("x", "y")]:
    cert = conjugacy.decide(pG2, tG2, u, v)
    extra = f"witness {cert.witness!r}" if cert.witness is not None \
        else cert.reason
    print(f"  {u!r} ~ {v!r}? {cert.answer}  ({extra}, regime {cert.regime})")

print("\nbounded conjugacy class of 'x' in the Gamma-ball of radius 3:")
for m, g in sorted(conjugacy.bounded_class(pG2, tG2, "x", 3).items()):
    print(f"  {m!r:6} = g x g^-1 with g = {g!r}")

print("\ntorsion parabolic in Z * C2 (t has order two):")
res = conjugacy.decide(pZC2, tZC2, "tat", "a")
print(f"  'tat' ~ 'a'? {res.answer}, witness {res.witness!r}")
cls = sorted(conjugacy.bounded_class(pZC2, tZC2, "t", 3))
print(f"  conjugates of 't' within radius 3: {cls}")

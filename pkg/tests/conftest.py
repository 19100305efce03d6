"""Shared fixtures: the three reference presentations and their tables.

F is the free group of rank two (hyperbolic, no parabolics), G2 is Z * Z^2
(one hyperbolic letter against a rank-two free-abelian parabolic), ZC2 is
Z * C2 (a finite parabolic with torsion), and C5 is the cyclic group of
order five given by a relator, which exercises the injected-triviality-test
code path.  Tables are built once per session; the working constants are
pinned inside the presentation texts so every derived value in the tests is
reproducible.
"""

import os

import pytest

from relconj import conjugacy, tables
from relconj.presentation import parse_presentation

F_TEXT = """\
# Free group of rank two: hyperbolic, no parabolic subgroups.
group free2
hyperbolic a b
constants delta=0 c2=2 c3=2 c7=2 budget=1000000 nlin=1 mlin=0 r6=3
"""

G2_TEXT = """\
# Z * Z^2: one hyperbolic generator, one rank-two free-abelian parabolic.
group g2
hyperbolic a
parabolic free_abelian 2
letters x y
constants delta=1 c2=2 c3=2 c7=2 budget=1000000 nlin=1 mlin=0 threshold=3 r4=1 r5=1 r6=2 r9=2
"""

ZC2_TEXT = """\
# Z * C2: infinite-order hyperbolic generator against a finite parabolic.
group zc2
hyperbolic a
parabolic finite 2
letters t
table 0 1
table 1 0
constants delta=1 c2=1 c3=1 c7=1 budget=200000 threshold=3 r4=1 r5=1 r6=2 r9=2
"""

C5_TEXT = """\
# Cyclic group of order five, presented with a relator.
group c5
hyperbolic a
relator aaaaa
constants delta=2 c2=2 c3=2 c7=2 budget=100000
"""


def c5_trivial(w):
    """Exact triviality test for the order-five relator group."""
    return (w.count("a") - w.count("A")) % 5 == 0


@pytest.fixture(scope="session")
def pF():
    return parse_presentation(F_TEXT)


@pytest.fixture(scope="session")
def pG2():
    return parse_presentation(G2_TEXT)


@pytest.fixture(scope="session")
def pZC2():
    return parse_presentation(ZC2_TEXT)


@pytest.fixture(scope="session")
def pC5():
    return parse_presentation(C5_TEXT)


@pytest.fixture(scope="session")
def tF(pF):
    return tables.precompute(pF)


@pytest.fixture(scope="session")
def tG2(pG2):
    return tables.precompute(pG2)


@pytest.fixture(scope="session")
def tZC2(pZC2):
    return tables.precompute(pZC2)


@pytest.fixture(scope="session")
def engF(pF, tF):
    return conjugacy.ConjugacyEngine(pF, tF)


@pytest.fixture(scope="session")
def engG2(pG2, tG2):
    return conjugacy.ConjugacyEngine(pG2, tG2)


@pytest.fixture(scope="session")
def pres_dir(tmp_path_factory):
    """Presentation files on disk for the command line tests."""
    d = tmp_path_factory.mktemp("presentations")
    for name, text in (("free2.txt", F_TEXT), ("zxz2.txt", G2_TEXT),
                       ("zc2.txt", ZC2_TEXT), ("c5.txt", C5_TEXT)):
        (d / name).write_text(text)
    return d


@pytest.fixture(scope="session")
def g2_cache(pres_dir, pG2, tG2, tmp_path_factory):
    """Warm tables cache for G2 so command line tests skip the rebuild."""
    path = tmp_path_factory.mktemp("cache") / "g2.tables"
    tables.save_tables(os.fspath(path), tG2)
    return os.fspath(path)

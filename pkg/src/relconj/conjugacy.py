"""Hyperbolic/parabolic classification and the conjugacy decision built on
the precomputed tables.

Conventions.  Every internal conjugator is carried in right form: a step
from x to y stores c with y = c^-1 * x * c, so chains compose by plain
concatenation.  The public witness of a certificate is converted once at
the boundary to g = c^-1 with v = g * u * g^-1.  Every "conjugate" answer
is verified through the word problem before the certificate is issued; a
failed verification is an internal error, never a silent downgrade.

Negative answers are honest relative to the working radii of the profile:
their reasons name the search that was exhausted (class-mismatch,
long-search-exhausted, short-table-miss, parabolic-tables-miss) and the
certificate records the profile hash the answer depends on.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import metric_oracle, shortening, words
from .errors import NotConjugateError, RelconjError
from .parabolic_oracles import oracles_for
from .presentation import HYPERBOLIC, RelativePresentation
from .tables import PrecomputedTables, profile_hash

CLASS_MISMATCH = "class-mismatch"
LONG_EXHAUSTED = "long-search-exhausted"
SHORT_MISS = "short-table-miss"
PARABOLIC_MISS = "parabolic-tables-miss"

LONG = "long"
SHORT = "short-hyperbolic"
PARABOLIC = "parabolic"


@dataclass(frozen=True)
class Classification:
    """Verdict for one word.  representative = conjugator^-1 * word *
    conjugator in G; for a parabolic verdict it is a word in the parabolic
    alphabet, for a hyperbolic one the canonical cyclic form."""

    word: str
    verdict: str  # "hyperbolic" or "parabolic"
    identity: bool
    index: int
    representative: str
    conjugator: str


@dataclass(frozen=True)
class ConjugacyCertificate:
    u: str
    v: str
    answer: str  # "conjugate" or "not-conjugate"
    witness: str  # g with v = g * u * g^-1; None for a negative answer
    reason: str  # exhausted search for a negative answer, else None
    regime: str  # long / short-hyperbolic / parabolic; None off both paths
    lbar: int  # max relative length of the linear shortenings
    length: int  # max relative length of the cyclic forms
    profile: str  # hash of the profile the answer is relative to
    verified: bool

    def to_record(self) -> str:
        def fmt(x):
            return "-" if x is None else x

        return ("answer=%s witness=%s reason=%s regime=%s lbar=%d L=%d "
                "profile=%s verified=%d") % (
                    self.answer, fmt(self.witness), fmt(self.reason),
                    fmt(self.regime), self.lbar, self.length, self.profile,
                    1 if self.verified else 0)


def _rotations(w: str):
    return [(w[:i], w[i:] + w[:i]) for i in range(max(1, len(w)))]


class ConjugacyEngine:
    """Per-presentation caches shared across many decide() calls: cyclic
    shortenings, classifications, rotation normal-form maps, and core
    search results keyed by the canonical cyclic forms."""

    def __init__(self, p: RelativePresentation, tables: PrecomputedTables,
                 trivial=None):
        self.p = p
        self.tables = tables
        self.trivial = trivial
        self.k = tables.profile.k
        self.oracles = oracles_for(p)
        key = p.shortlex_key
        self.l4_sorted = tuple(sorted(tables.l4.members, key=key))
        merged = set()
        for ws in tables.l2.values():
            merged.update(ws)
        self.l2_sorted = tuple(sorted(merged, key=key))
        self._cyc = {}
        self._lin = {}
        self._cls = {}
        self._rot = {}
        self._core = {}

    def cyclic(self, w: str):
        res = self._cyc.get(w)
        if res is None:
            res = shortening.cyclic_shorten(self.p, w, k=self.k,
                                            trivial=self.trivial)
            self._cyc[w] = res
        return res

    def linear_rel(self, w: str) -> int:
        val = self._lin.get(w)
        if val is None:
            out = shortening.shorten(self.p, w, k=self.k,
                                     trivial=self.trivial).output
            val = words.raw_relative_length(self.p, out)
            self._lin[w] = val
        return val

    def classification(self, w: str) -> Classification:
        res = self._cls.get(w)
        if res is None:
            res = classify(self.p, self.tables, w, engine=self)
            self._cls[w] = res
        return res

    def rotmap(self, w: str) -> dict:
        """normal form of each rotation -> least rotation prefix."""
        table = self._rot.get(w)
        if table is None:
            table = {}
            for prefix, rot in _rotations(w):
                table.setdefault(words.normalize(self.p, rot), prefix)
            self._rot[w] = table
        return table

    def core(self, alpha: str, beta: str, regime: str):
        key = (alpha, beta, regime)
        res = self._core.get(key)
        if res is None:
            scan = self.l4_sorted if regime == LONG else self.l2_sorted
            miss = LONG_EXHAUSTED if regime == LONG else SHORT_MISS
            res = self._scan(alpha, beta, scan, miss, regime)
            self._core[key] = res
        return res

    def _scan(self, alpha, beta, candidates, miss, regime):
        """First conjugator x (shortlex order, identity first) and rotation
        pair with x * rot_a * x^-1 = rot_b; right-form result."""
        p = self.p
        beta_map = self.rotmap(beta)
        for x in candidates:
            xi = words.inverse(x)
            for pa, ra in _rotations(alpha):
                t = words.normalize(p, words.mul(x, ra, xi))
                pb = beta_map.get(t)
                if pb is not None:
                    return ("conjugate",
                            words.mul(pa, xi, words.inverse(pb)))
        if regime == SHORT:
            z_u = words.normalize(p, alpha)
            z_v = words.normalize(p, beta)
            if z_u in self.tables.l8_set and z_v in self.tables.l8_set:
                c = self.tables.l88_pair(z_u, z_v)
                if c is not None:
                    return ("conjugate", c)
        return ("not-conjugate", miss)


def _engine(p, tables, engine, trivial):
    if engine is not None:
        return engine
    return ConjugacyEngine(p, tables, trivial)


def _check_conjugation(p, tables, trivial, conj, rep, w, what):
    residue = words.mul(conj, rep, words.inverse(conj), words.inverse(w))
    if not shortening.word_problem(p, residue, tables=tables, trivial=trivial):
        raise RelconjError("%s produced an invalid conjugator" % what)


def classify(p: RelativePresentation, tables: PrecomputedTables, w: str,
             engine=None) -> Classification:
    """Hyperbolic or parabolic, decided on the cyclic shortening: a pure
    parabolic cyclic form is parabolic outright, a long cyclic form is
    hyperbolic outright, and the remaining short mixed forms are parabolic
    exactly when the geodesic table projects them into a parabolic list."""
    eng = _engine(p, tables, engine, None)
    res = eng.cyclic(w)
    alpha, a = res.output, res.conjugator
    if alpha == "":
        verdict = "parabolic" if p.parabolics else "hyperbolic"
        return Classification(w, verdict, True, None, "", a)
    kinds = {p.letter_kind[c] for c in alpha}
    if len(kinds) == 1 and HYPERBOLIC not in kinds:
        index = kinds.pop()
        rep = eng.oracles[index].geodesic_form(alpha)
        _check_conjugation(p, tables, eng.trivial, a, rep, w, "classification")
        return Classification(w, "parabolic", False, index, rep, a)
    rel = words.raw_relative_length(p, alpha)
    if rel <= tables.profile.threshold:
        z = words.normalize(p, alpha)
        hit = tables.l10_witness.get(z)
        if hit is not None:
            index, q, c = hit
            conj = words.mul(a, c)
            _check_conjugation(p, tables, eng.trivial, conj, q, w,
                               "classification")
            return Classification(w, "parabolic", False, index, q, conj)
    return Classification(w, "hyperbolic", False, None, alpha, a)


def _parabolic_core(eng: ConjugacyEngine, cu: Classification,
                    cv: Classification):
    """Right-form conjugator between parabolic representatives: the direct
    subgroup search first, then the exhaustive walk through the conjugates
    inside B_i matched against the within-subgroup pair list."""
    tables = eng.tables
    if cu.index == cv.index:
        orc = eng.oracles[cu.index]
        t = orc.conjugate(cu.representative, cv.representative)
        if t is not None:
            return ("conjugate", orc.geodesic_form(words.inverse(t)))

    def reachable(cls):
        orc = eng.oracles[cls.index]
        out = []
        for t in tables.l3[cls.index]:
            y = orc.conjugate(cls.representative, t)
            if y is not None:
                out.append((t, words.inverse(y)))
        return out

    for pu, c1 in reachable(cu):
        for pv, c2 in reachable(cv):
            c11 = tables.l11_pair(cu.index, pu, cv.index, pv)
            if c11 is not None:
                return ("conjugate",
                        words.mul(c1, c11, words.inverse(c2)))
    return ("not-conjugate", PARABOLIC_MISS)


def decide(p: RelativePresentation, tables: PrecomputedTables, u: str,
           v: str, engine=None) -> ConjugacyCertificate:
    """Full conjugacy decision: classify both words, reject class
    mismatches, then run the regime search picked by the larger cyclic
    relative length.  Positive answers carry a verified witness."""
    eng = _engine(p, tables, engine, None)
    cu = eng.classification(u)
    cv = eng.classification(v)
    lbar = max(eng.linear_rel(u), eng.linear_rel(v))
    length = max(words.raw_relative_length(p, cu.representative),
                 words.raw_relative_length(p, cv.representative))
    phash = profile_hash(tables.profile)

    def negative(reason, regime=None):
        return ConjugacyCertificate(u, v, "not-conjugate", None, reason,
                                    regime, lbar, length, phash, False)

    def positive(core_conj, regime):
        total = words.mul(cu.conjugator, core_conj,
                          words.inverse(cv.conjugator))
        g = words.inverse(total)
        residue = words.mul(g, u, words.inverse(g), words.inverse(v))
        if not shortening.word_problem(p, residue, tables=tables,
                                       trivial=eng.trivial):
            raise RelconjError("conjugacy witness failed verification")
        return ConjugacyCertificate(u, v, "conjugate", g, None, regime,
                                    lbar, length, phash, True)

    if cu.identity or cv.identity:
        if cu.identity and cv.identity:
            return positive("", None)
        return negative(CLASS_MISMATCH)
    if cu.verdict != cv.verdict:
        return negative(CLASS_MISMATCH)
    if cu.verdict == "parabolic":
        state, payload = _parabolic_core(eng, cu, cv)
        if state == "conjugate":
            return positive(payload, PARABOLIC)
        return negative(payload, PARABOLIC)
    regime = LONG if length > tables.profile.threshold else SHORT
    state, payload = eng.core(cu.representative, cv.representative, regime)
    if state == "conjugate":
        return positive(payload, regime)
    return negative(payload, regime)


def search(p: RelativePresentation, tables: PrecomputedTables, u: str,
           v: str, certificate=None, engine=None) -> str:
    """The verified witness g with v = g * u * g^-1.  Accepts a matching
    certificate from decide() to skip re-deciding; raises
    NotConjugateError otherwise.  The parabolic regime's witness comes out
    of the subgroup oracle's conjugating-element search."""
    cert = certificate
    if cert is None or cert.u != u or cert.v != v:
        cert = decide(p, tables, u, v, engine=engine)
    if cert.answer != "conjugate":
        raise NotConjugateError(cert.reason)
    return cert.witness


def bounded_class(p: RelativePresentation, tables: PrecomputedTables,
                  u: str, radius: int, engine=None, trivial=None) -> dict:
    """Conjugates of u inside the Gamma-ball of the radius: canonical word
    -> verified witness."""
    eng = _engine(p, tables, engine, trivial)
    index = metric_oracle.ball(p, radius, trivial=trivial,
                               budget=tables.profile.budget)
    out = {}
    for x in sorted(index.elements, key=p.shortlex_key):
        cert = decide(p, tables, u, x, engine=eng)
        if cert.answer == "conjugate":
            out[x] = cert.witness
    return out

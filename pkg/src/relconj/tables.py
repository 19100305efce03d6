"""The constants profile and the precomputed lists the decision engine
consults: parabolic element lists L1-L3, filtered balls L4-L6, the geodesic
list L8 with its conjugate-pair index L88/L12 and parabolic projection L10,
the plain ball L9, per-parabolic constants K_i, bounded conjugacy classes,
and the trivial-loop table for the word problem.

Working-constants mode: every radius has a formula default taken from the
profile's delta and C-constants (86*delta+3 and friends).  Those formula
values are astronomically large for honest inputs, so each radius can be
overridden in the profile; algorithms state their guarantees relative to
the working values and certificates record the profile hash.  The derived
quantities K^hyp_4delta = |B(4delta, 2*C3)|*(16*delta+2) and
K_4delta = K^hyp_4delta + sum |S_i|^C3 are always computed from the true
formula radii (they are reports, not enumeration bounds).

Table construction assumes a relator-free presentation: there the filtered
ball of canonical alternating words enumerates group elements exactly, and
conjugacy grouping by canonical cyclic form (least rotation of the cyclic
shortening, compared on normal forms) is exact.  Presentations with
relators use the shortening and oracle layers directly and do not get
tables.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, fields, replace

from . import metric_oracle, shortening, words
from .errors import (
    BudgetExceededError,
    OracleUnavailableError,
    RelconjError,
)
from .parabolic_oracles import oracles_for
from .presentation import (
    HYPERBOLIC,
    RelativePresentation,
    presentation_hash,
)

_FORMULA = {
    "threshold": lambda c: 86 * c.delta + 3,
    "r4": lambda c: 7 * c.delta + 1,
    "r5": lambda c: 16 * c.delta + 1,
    "r6": lambda c: 2 * (274 * c.delta + 9),
    "r8": lambda c: 2 * c.c3,
    "r9": lambda c: 4 * c.delta * c.c3,
    "rbcc": lambda c: 4 * c.delta,
    "rloops": lambda c: 2 * c.delta * c.c2,
}


@dataclass(frozen=True)
class ConstantsProfile:
    """delta and the BCP constants C(2), C(3), C(7,2delta), plus working
    radii (None = the formula value) and the linear-bound coefficients."""

    delta: int = 1
    c2: int = 2
    c3: int = 2
    c7: int = 2
    budget: int = 1_000_000
    nlin: int = 1  # conjugator length slope, fitted on the reference groups
    mlin: int = 0  # conjugator length offset, fitted on the reference groups
    threshold: int = None  # hyperbolic/parabolic dichotomy, 86*delta+3
    r4: int = None  # relative radius of L4, 7*delta+1
    r5: int = None  # relative radius of L5, 16*delta+1
    r6: int = None  # relative radius of L6, 2*(274*delta+9)
    r8: int = None  # component cap of L8, 2*C(3)
    r9: int = None  # Gamma radius of L9, 4*delta*C(3)
    rbcc: int = None  # relative radius of the BCC ball, 4*delta
    rloops: int = None  # Gamma cap of the trivial-loop search, 2*delta*C(2)
    k_i: tuple = None  # per-parabolic K_i; computed by precompute when None

    def __post_init__(self):
        for name, formula in _FORMULA.items():
            if getattr(self, name) is None:
                object.__setattr__(self, name, formula(self))
        if self.delta < 0 or self.budget < 0:
            raise RelconjError("delta and budget must be nonnegative")
        if self.c2 > self.c3:
            raise RelconjError("profiles require C(2) <= C(3)")

    @property
    def k(self) -> int:
        return 8 * self.delta + 1


_PROFILE_KEYS = tuple(
    f.name for f in fields(ConstantsProfile) if f.name != "k_i"
)


def profile_from_pairs(pairs, overrides=None) -> ConstantsProfile:
    """Profile from (key, value) pairs (the presentation's constants block),
    with optional override pairs applied on top."""
    merged = {}
    for key, value in list(pairs) + list(overrides or []):
        if key not in _PROFILE_KEYS:
            raise RelconjError("unknown constant %r" % key)
        merged[key] = value
    return ConstantsProfile(**merged)


def profile_for(p: RelativePresentation, overrides=None) -> ConstantsProfile:
    return profile_from_pairs(p.constants, overrides)


def serialize_profile(c: ConstantsProfile) -> str:
    parts = ["%s=%d" % (key, getattr(c, key)) for key in _PROFILE_KEYS]
    if c.k_i is not None:
        parts.append("k_i=" + ",".join(str(v) for v in c.k_i))
    return " ".join(parts)


def profile_hash(c: ConstantsProfile) -> str:
    return hashlib.sha256(serialize_profile(c).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class FilteredBall:
    """B(r1, r2): canonical words of relative length <= r1 whose parabolic
    components all have Gamma-length <= r2."""

    rel_radius: int
    comp_bound: int
    members: frozenset


def enumerate_filtered_ball(p: RelativePresentation, r1: int, r2: int,
                            budget=None, label="filtered ball") -> FilteredBall:
    """Exhaustive B(r1, r2) for a relator-free presentation, one canonical
    word per group element (alternating syllables, canonical run forms)."""
    if not p.is_free_product:
        raise OracleUnavailableError(
            "filtered-ball enumeration needs a relator-free presentation"
        )
    budget = 1_000_000 if budget is None else budget
    oracles = oracles_for(p)
    hyp = [c for c in p.alphabet if p.letter_kind[c] == HYPERBOLIC]
    par = {i: [w for w in orc.ball(r2) if w] for i, orc in oracles.items()}
    members = []

    def extend(w, last_kind, last_letter, rel):
        members.append(w)
        if len(members) > budget:
            raise BudgetExceededError(label, budget)
        if rel == r1:
            return
        for c in hyp:
            if last_kind == HYPERBOLIC and c == words.inverse(last_letter):
                continue
            extend(w + c, HYPERBOLIC, c, rel + 1)
        for i, elts in par.items():
            if last_kind == i:
                continue
            for q in elts:
                extend(w + q, i, None, rel + 1)

    extend("", None, None, 0)
    return FilteredBall(r1, r2, frozenset(members))


def cyclic_canonical(p: RelativePresentation, w: str, k: int):
    """Conjugacy key for a relator-free presentation: the shortlex-least
    normal form over all rotations of the cyclic shortening of w, plus the
    conjugator c with key = c^-1 * w * c.  Conjugate elements share the key
    (cyclically reduced free-product elements are conjugate exactly when
    they are syllable rotations of each other, and rotation plus
    normalization realizes that)."""
    res = shortening.cyclic_shorten(p, w, k=k)
    alpha = res.output
    best = words.normalize(p, alpha)
    best_j = 0
    for j in range(1, len(alpha)):
        cand = words.normalize(p, alpha[j:] + alpha[:j])
        if p.shortlex_key(cand) < p.shortlex_key(best):
            best, best_j = cand, j
    return best, words.mul(res.conjugator, alpha[:best_j])


class PrecomputedTables:
    """Immutable bundle of every precomputed list; see precompute()."""

    def __init__(self, p_hash, profile, l1, l2, l3, l4, l5, l6, l8, l9,
                 l7, l88_key, l10_witness, bcc_members, bcc_key,
                 k_hyp_4delta, k_4delta, trivial_loops):
        self.p_hash = p_hash
        self.profile = profile
        self.l1 = l1  # dict index -> tuple of parabolic words, |.| <= C(2)
        self.l2 = l2  # ... <= C(7,2delta)
        self.l3 = l3  # ... <= C(3); this is also B_i
        self.l4 = l4
        self.l5 = l5
        self.l6 = l6
        self.l8 = l8  # tuple, sorted canonical relative geodesics
        self.l9 = l9  # frozenset, Gamma ball words
        self.l7 = l7  # dict (i, q1, q2) -> right-form conjugator in P_i
        self.l88_key = l88_key  # dict l8 member -> (class key, conjugator)
        self.l10_witness = l10_witness  # dict member -> (index, q, conjugator)
        self.bcc_members = bcc_members
        self.bcc_key = bcc_key  # dict member -> (class key, conjugator)
        self.k_hyp_4delta = k_hyp_4delta
        self.k_4delta = k_4delta
        self.trivial_loops = trivial_loops
        self.l8_set = frozenset(l8)
        self.l11 = frozenset(l7)
        self.l10 = frozenset(l10_witness)
        classes = {}
        for m, (key, _) in bcc_key.items():
            classes.setdefault(key, []).append(m)
        self.bcc = {
            key: tuple(sorted(ms)) for key, ms in sorted(classes.items())
        }
        self.bcc_class = {}
        for key, ms in self.bcc.items():
            rep = min(ms)
            for m in ms:
                self.bcc_class[m] = rep

    @property
    def b_i(self):
        return self.l3

    def l88_pair(self, z1: str, z2: str):
        """Right-form conjugator c with z2 = c^-1 * z1 * c for a conjugate
        pair of L8 members, else None."""
        e1, e2 = self.l88_key.get(z1), self.l88_key.get(z2)
        if e1 is None or e2 is None or e1[0] != e2[0]:
            return None
        return words.mul(e1[1], words.inverse(e2[1]))

    def l11_pair(self, i: int, q1: str, j: int, q2: str):
        if i != j:
            return None
        return self.l7.get((i, q1, q2))

    def bcc_witness(self, m: str):
        """Right-form conjugator from m to its class representative."""
        key, c = self.bcc_key[m]
        rep = self.bcc_class[m]
        return words.mul(c, words.inverse(self.bcc_key[rep][1]))

    def sizes(self) -> dict:
        out = {}
        for name in ("l1", "l2", "l3"):
            out[name] = sum(len(v) for v in getattr(self, name).values())
        for name in ("l4", "l5", "l6"):
            out[name] = len(getattr(self, name).members)
        out["l7"] = len(self.l7)
        out["l8"] = len(self.l8)
        out["l9"] = len(self.l9)
        out["l10"] = len(self.l10)
        out["l11"] = len(self.l11)
        out["l88_classes"] = len({k for k, _ in self.l88_key.values()})
        out["bcc"] = len(self.bcc_members)
        out["bcc_classes"] = len(self.bcc)
        out["trivial_loops"] = len(self.trivial_loops)
        return out


def _check_budget(label, n, budget):
    if n > budget:
        raise BudgetExceededError(label, budget)


def _trivial_loops(p, profile, trivial):
    """Nonempty k-local geodesic words of relative length <= 2*delta (and
    Gamma length <= the working cap) that represent the identity."""
    if profile.rloops == 0:
        return frozenset()
    check = metric_oracle.triviality_test(p, trivial)
    out = []
    frontier = [""]
    for _ in range(profile.rloops):
        nxt = []
        for w in frontier:
            for c in p.alphabet:
                if w and w[-1] == words.inverse(c):
                    continue
                nxt.append(w + c)
        _check_budget("trivial_loops", len(out) + len(nxt), profile.budget)
        for w in nxt:
            if words.raw_relative_length(p, w) > 2 * profile.delta:
                continue
            if not check(w):
                continue
            if shortening.is_local_geodesic(p, w, profile.k, trivial=trivial):
                out.append(w)
        frontier = nxt
    return frozenset(out)


def precompute(p: RelativePresentation, profile=None, trivial=None) -> PrecomputedTables:
    """Build every table for a relator-free presentation under the profile's
    working radii.  Loudly reports which list overflowed the budget."""
    profile = profile_for(p) if profile is None else profile
    budget = profile.budget
    oracles = oracles_for(p)

    def par_lists(radius, label):
        out = {}
        total = 0
        for i, orc in oracles.items():
            ball = tuple(orc.ball(radius))
            total += len(ball)
            _check_budget(label, total, budget)
            out[i] = ball
        return out

    l1 = par_lists(profile.c2, "l1")
    l2 = par_lists(profile.c7, "l2")
    l3 = par_lists(profile.c3, "l3")

    l4 = enumerate_filtered_ball(p, profile.r4, profile.c7, budget, "l4")
    l5 = enumerate_filtered_ball(p, profile.r5, profile.c2, budget, "l5")
    l6 = enumerate_filtered_ball(p, profile.r6, profile.c7, budget, "l6")

    l8_ball = enumerate_filtered_ball(p, profile.threshold, profile.r8,
                                      budget, "l8")
    l8 = tuple(sorted((w for w in l8_ball.members
                       if metric_oracle.is_relative_geodesic(p, w)),
                      key=p.shortlex_key))

    l9 = frozenset(metric_oracle.ball(p, profile.r9, trivial=trivial,
                                      budget=budget).elements)

    # within-subgroup conjugate pairs and their conjugators (right form)
    l7 = {}
    for i, ball in l3.items():
        orc = oracles[i]
        for q1 in ball:
            for q2 in ball:
                t = orc.conjugate(q1, q2)
                if t is not None:
                    l7[(i, q1, q2)] = orc.geodesic_form(words.inverse(t))
    _check_budget("l7", len(l7), budget)

    l88_key = {w: cyclic_canonical(p, w, profile.k) for w in l8}

    parabolic_keys = {}
    for i in sorted(l3):
        for q in l3[i]:
            if not q:
                continue
            key, c = cyclic_canonical(p, q, profile.k)
            parabolic_keys.setdefault(key, (i, q, c))
    l10_witness = {}
    for w in l8:
        key, c_w = l88_key[w]
        hit = parabolic_keys.get(key)
        if hit is not None:
            i, q, c_q = hit
            l10_witness[w] = (i, q, words.mul(c_w, words.inverse(c_q)))

    bcc_ball = enumerate_filtered_ball(p, profile.rbcc, profile.c3,
                                       budget, "bcc")
    bcc_members = tuple(sorted(bcc_ball.members, key=p.shortlex_key))
    bcc_key = {w: cyclic_canonical(p, w, profile.k) for w in bcc_members}

    k_i = tuple(oracles[i].conjugacy_bound(profile.c3) for i in sorted(oracles))
    formula_ball = enumerate_filtered_ball(p, 4 * profile.delta,
                                           2 * profile.c3, budget,
                                           "k_hyp_4delta")
    k_hyp_4delta = len(formula_ball.members) * (16 * profile.delta + 2)
    k_4delta = k_hyp_4delta + sum(
        len(par.generators) ** profile.c3 for par in p.parabolics
    )

    tables = PrecomputedTables(
        presentation_hash(p),
        replace(profile, k_i=k_i) if profile.k_i is None else profile,
        l1, l2, l3, l4, l5, l6, l8, l9, l7, l88_key, l10_witness,
        bcc_members, bcc_key, k_hyp_4delta, k_4delta,
        _trivial_loops(p, profile, trivial),
    )
    return tables


def compute_M(p: RelativePresentation, tables: PrecomputedTables, u: str) -> int:
    """min over t in [u]_{P_i} intersect B_i of the least |y|_Gamma with
    u = y*t*y^-1 in P_i; zero when u is not a word in one parabolic
    alphabet, when u already lies in B_i, or when the intersection is
    empty."""
    p.check_word(u)
    kinds = {p.letter_kind[c] for c in u}
    if len(kinds) != 1 or HYPERBOLIC in kinds:
        return 0
    i = kinds.pop()
    orc = oracles_for(p)[i]
    if len(orc.geodesic_form(u)) <= tables.profile.c3:
        return 0
    best = None
    for t in tables.l3[i]:
        if orc.conjugate(u, t) is None:
            continue
        y = orc.min_conjugator(t, u)
        if best is None or len(y) < best:
            best = len(y)
    return 0 if best is None else best


# ---------------------------------------------------------------------------
# cache files

_MAGIC = b"RCT1"


def _w_str(fh, s: str):
    data = s.encode()
    fh.write(struct.pack("<I", len(data)))
    fh.write(data)


def _r_str(fh) -> str:
    (n,) = struct.unpack("<I", fh.read(4))
    return fh.read(n).decode()


def _w_list(fh, items):
    fh.write(struct.pack("<I", len(items)))
    for s in items:
        _w_str(fh, s)


def _r_list(fh):
    (n,) = struct.unpack("<I", fh.read(4))
    return [_r_str(fh) for _ in range(n)]


def save_tables(path, tables: PrecomputedTables):
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        _w_str(fh, tables.p_hash)
        _w_str(fh, serialize_profile(tables.profile))
        for ldict in (tables.l1, tables.l2, tables.l3):
            fh.write(struct.pack("<I", len(ldict)))
            for i in sorted(ldict):
                fh.write(struct.pack("<I", i))
                _w_list(fh, ldict[i])
        for ball in (tables.l4, tables.l5, tables.l6):
            fh.write(struct.pack("<II", ball.rel_radius, ball.comp_bound))
            _w_list(fh, sorted(ball.members))
        _w_list(fh, tables.l8)
        _w_list(fh, sorted(tables.l9))
        fh.write(struct.pack("<I", len(tables.l7)))
        for (i, q1, q2), c in sorted(tables.l7.items()):
            fh.write(struct.pack("<I", i))
            for s in (q1, q2, c):
                _w_str(fh, s)
        fh.write(struct.pack("<I", len(tables.l88_key)))
        for w in sorted(tables.l88_key):
            key, c = tables.l88_key[w]
            for s in (w, key, c):
                _w_str(fh, s)
        fh.write(struct.pack("<I", len(tables.l10_witness)))
        for w in sorted(tables.l10_witness):
            i, q, c = tables.l10_witness[w]
            _w_str(fh, w)
            fh.write(struct.pack("<I", i))
            _w_str(fh, q)
            _w_str(fh, c)
        _w_list(fh, tables.bcc_members)
        fh.write(struct.pack("<I", len(tables.bcc_key)))
        for w in sorted(tables.bcc_key):
            key, c = tables.bcc_key[w]
            for s in (w, key, c):
                _w_str(fh, s)
        fh.write(struct.pack("<II", tables.k_hyp_4delta, tables.k_4delta))
        _w_list(fh, sorted(tables.trivial_loops))


def load_tables(path, p: RelativePresentation, profile=None) -> PrecomputedTables:
    """Load a cache, refusing one built for another presentation or (when a
    profile is supplied) another profile."""
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise RelconjError("%s is not a tables cache" % path)
        p_hash = _r_str(fh)
        if p_hash != presentation_hash(p):
            raise RelconjError("tables cache was built for a different presentation")
        profile_text = _r_str(fh)
        stored = profile_from_pairs(
            (kv.split("=")[0], _parse_profile_value(kv))
            for kv in profile_text.split()
            if not kv.startswith("k_i=")
        )
        for kv in profile_text.split():
            if kv.startswith("k_i="):
                stored = replace(
                    stored,
                    k_i=tuple(int(v) for v in kv[4:].split(",") if v),
                )
        if profile is not None and profile_hash(replace(stored, k_i=None)) != \
                profile_hash(replace(profile, k_i=None)):
            raise RelconjError("tables cache was built with a different profile")

        def r_pardict():
            (n,) = struct.unpack("<I", fh.read(4))
            out = {}
            for _ in range(n):
                (i,) = struct.unpack("<I", fh.read(4))
                out[i] = tuple(_r_list(fh))
            return out

        l1, l2, l3 = r_pardict(), r_pardict(), r_pardict()
        balls = []
        for _ in range(3):
            r1, r2 = struct.unpack("<II", fh.read(8))
            balls.append(FilteredBall(r1, r2, frozenset(_r_list(fh))))
        l4, l5, l6 = balls
        l8 = tuple(_r_list(fh))
        l9 = frozenset(_r_list(fh))
        (n,) = struct.unpack("<I", fh.read(4))
        l7 = {}
        for _ in range(n):
            (i,) = struct.unpack("<I", fh.read(4))
            q1, q2, c = _r_str(fh), _r_str(fh), _r_str(fh)
            l7[(i, q1, q2)] = c
        (n,) = struct.unpack("<I", fh.read(4))
        l88_key = {}
        for _ in range(n):
            w, key, c = _r_str(fh), _r_str(fh), _r_str(fh)
            l88_key[w] = (key, c)
        (n,) = struct.unpack("<I", fh.read(4))
        l10_witness = {}
        for _ in range(n):
            w = _r_str(fh)
            (i,) = struct.unpack("<I", fh.read(4))
            l10_witness[w] = (i, _r_str(fh), _r_str(fh))
        bcc_members = tuple(_r_list(fh))
        (n,) = struct.unpack("<I", fh.read(4))
        bcc_key = {}
        for _ in range(n):
            w, key, c = _r_str(fh), _r_str(fh), _r_str(fh)
            bcc_key[w] = (key, c)
        k_hyp, k4 = struct.unpack("<II", fh.read(8))
        trivial_loops = frozenset(_r_list(fh))
    return PrecomputedTables(p_hash, stored, l1, l2, l3, l4, l5, l6, l8, l9,
                             l7, l88_key, l10_witness, bcc_members, bcc_key,
                             k_hyp, k4, trivial_loops)


def _parse_profile_value(kv: str) -> int:
    return int(kv.split("=", 1)[1])

"""Pair analysis: hearts, cohearts, kernels, and the projectivity laws.

Given an orthogonal pair of subcategories (complete with its defining short
exact sequences or triangles), this module computes the associated heart,
the coheart and its dual, the kernel of the heart functor H, and the flags
the verification commands report:

* whether the heart has enough projectives (resp. injectives), checked by
  explicit covers inside the heart;
* whether the coheart/kernel pair satisfies the pair law of the ambient
  context, checked by orthogonality plus decomposition searches;
* the agreement of the two routes (the central biconditional), plus a
  battery of structural invariants with re-checkable witnesses.

Module-context answers are conclusive.  Derived-context answers follow the
verdict convention True / False / None, with None confined to the window
boundary; analyses list every inconclusive spot in `caveats`.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import Mat, in_span, kernel_basis, rank
from .modcat import (
    Interval,
    Mor,
    Obj,
    _obj_with_assignment,
    ext01,
    extension_closure,
    extension_conflation,
    indecomposables,
    is_injective,
    is_projective,
    left_approximation,
    op_interval,
    opposite,
    projective_intervals,
    syzygy_interval,
)
from .dercat import (
    DMor,
    DObj,
    ShiftedInterval,
    Window,
    cocone,
    cone,
    dhom01,
    dhom_dim,
    precompose_matrix,
    postcompose_matrix,
)
from .pairs import (
    DERIVED,
    MODULE,
    ConflationWitness,
    SubcatSpec,
    conflation_into_exists,
    conflation_onto_exists,
    extension_candidates,
    is_functorially_finite_derived,
    is_functorially_finite_module,
    perp_ext_left_module,
    perp_ext_right_module,
    perp_view_derived,
    qhom_pairs_derived,
    qhom_pairs_module,
    qhom_reduce_derived,
    qhom_reduce_module,
    spec_view,
    star_exists,
    star_exists_cone,
    verdict_view,
)


class HeartSearchError(Exception):
    """A bounded search ran out of candidates; carries the bounds used."""


# --- the pair ----------------------------------------------------------------

@dataclass(frozen=True)
class CotorsionPair:
    """An orthogonal pair (U, V) in one of the two contexts.

    Module context: `alg` a serial algebra, u_members / v_members interval
    tuples.  Derived context: `alg` hereditary, `window` set, u_spec /
    v_spec subcategory specifications (v_spec may be None, meaning V is
    computed as the right Ext-complement of U).
    """

    context: str
    alg: object
    u_members: tuple = ()
    v_members: tuple = ()
    window: Window = None
    u_spec: SubcatSpec = None
    v_spec: SubcatSpec = None

    @classmethod
    def module_pair(cls, alg, u_members, v_members=None):
        u = tuple(sorted(set(u_members), key=lambda iv: iv.key()))
        if v_members is None:
            v = tuple(perp_ext_right_module(alg, u))
        else:
            v = tuple(sorted(set(v_members), key=lambda iv: iv.key()))
        return cls(context=MODULE, alg=alg, u_members=u, v_members=v)

    @classmethod
    def derived_pair(cls, alg, window, u_spec, v_spec=None):
        return cls(context=DERIVED, alg=alg, window=window,
                   u_spec=u_spec, v_spec=v_spec)

    def key(self):
        if self.context == MODULE:
            return tuple(str(iv) for iv in self.u_members)
        return tuple(sorted(str(s) for s in self.u_spec.items))


# --- verification of the pair axioms ----------------------------------------

def verify_cotorsion_pair(pair: CotorsionPair, mult_factor: int = 1):
    """Check the pair axioms; returns (verdict, report).

    Module: Ext-orthogonality on all member pairs, double-complement
    closure, and both defining short exact sequences for every
    indecomposable (witnesses recorded).  Derived: orthogonality on
    confirmed members, closure on the trust window, and the defining
    triangle for every trust-window object; verdict None when only the
    boundary blocks a conclusion.
    """
    if pair.context == MODULE:
        return _verify_module_pair(pair, mult_factor)
    return _verify_derived_pair(pair)


def _verify_module_pair(pair, mult_factor):
    alg = pair.alg
    u, v = list(pair.u_members), list(pair.v_members)
    report = {"orthogonality_violations": [], "closure_u": None,
              "closure_v": None, "onto": {}, "into": {}, "missing": []}
    for x in u:
        for y in v:
            if ext01(alg, x, y):
                report["orthogonality_violations"].append((str(x), str(y)))
    report["closure_u"] = list(perp_ext_left_module(alg, v)) == u
    report["closure_v"] = list(perp_ext_right_module(alg, u)) == v
    ok = (not report["orthogonality_violations"]
          and report["closure_u"] and report["closure_v"])
    for iv in indecomposables(alg):
        b = Obj([iv])
        onto = conflation_onto_exists(alg, b, u, v, mult_factor)
        into = conflation_into_exists(alg, b, v, u, mult_factor)
        if onto is None or into is None:
            report["missing"].append(str(iv))
            ok = False
        else:
            report["onto"][str(iv)] = onto.as_json()
            report["into"][str(iv)] = into.as_json()
    return ok, report


def _safe_star(search, alg, t, x_view, y_view, caveats, label):
    """Run a decomposition search, converting a cap overflow into an
    inconclusive verdict plus a caveat."""
    try:
        return search(alg, t, x_view, y_view)
    except ValueError as e:
        caveats.append(f"{label} at {t}: {e}")
        return None, None


def _verify_derived_pair(pair):
    alg, window = pair.alg, pair.window
    u_view, v_view = derived_views(pair)
    report = {"orthogonality_violations": [], "closure_mismatch": [],
              "star": {}, "inconclusive": [], "caveats": []}
    for x in u_view.members:
        for y in v_view.members:
            if dhom01(alg, x, y.shift(1)):
                report["orthogonality_violations"].append((str(x), str(y)))
    u_closed = perp_view_derived(alg, window, v_view, "ext", "left")
    v_closed = perp_view_derived(alg, window, u_view, "ext", "right")
    for t in window.objects(alg):
        if not window.in_trust(t):
            continue
        for view, closed in ((u_view, u_closed), (v_view, v_closed)):
            a, b = view.test(t), closed.test(t)
            if a is not None and b is not None and a != b:
                report["closure_mismatch"].append(str(t))
    v1 = shifted_view(alg, window, v_view, 1, "V[1]")
    verdict = True
    for t in window.objects(alg):
        if not window.in_trust(t):
            continue
        vd, wit = _safe_star(star_exists_cone, alg, t, u_view, v1,
                             report["caveats"], "pair decomposition")
        report["star"][str(t)] = vd if wit is None else wit.as_json()
        if vd is False:
            verdict = False
        elif vd is None:
            report["inconclusive"].append(str(t))
    if report["orthogonality_violations"] or report["closure_mismatch"]:
        verdict = False
    if verdict is True and report["inconclusive"]:
        verdict = None
    return verdict, report


def derived_views(pair: CotorsionPair):
    """(U view, V view) for a derived pair; V computed from U when
    unspecified."""
    alg, window = pair.alg, pair.window
    u_view = spec_view(alg, window, pair.u_spec, "U")
    if pair.v_spec is not None:
        v_view = spec_view(alg, window, pair.v_spec, "V")
    else:
        v_view = perp_view_derived(alg, window, u_view, "ext", "right", "V")
    return u_view, v_view


def shifted_view(alg, window, view, k: int, name=""):
    """The view of view[k]: t belongs iff t shifted down by k belongs."""
    verdicts = {}
    for t in window.objects(alg):
        verdicts[t] = view.test(t.shift(-k))
    return verdict_view(window, verdicts, name)


def enumerate_cotorsion_pairs(alg, mult_factor: int = 1):
    """All module-context pairs (U, V) on the algebra, canonically ordered.

    Candidate U runs over sets of indecomposables containing the
    projectives; U must be recovered by the double complement, and every
    indecomposable must admit both defining sequences.  The derived
    context has no enumeration (the window never exhausts the category) —
    build derived pairs explicitly instead.
    """
    projs = set(projective_intervals(alg))
    optional = [iv for iv in indecomposables(alg) if iv not in projs]
    seen = set()
    out = []
    for r in range(len(optional) + 1):
        for combo in itertools.combinations(optional, r):
            u = tuple(sorted(projs | set(combo), key=lambda iv: iv.key()))
            if u in seen:
                continue
            v = tuple(perp_ext_right_module(alg, u))
            if tuple(perp_ext_left_module(alg, v)) != u:
                continue
            seen.add(u)
            pair = CotorsionPair.module_pair(alg, u, v)
            ok, _ = verify_cotorsion_pair(pair, mult_factor)
            if ok:
                out.append(pair)
    out.sort(key=lambda p: p.key())
    return out


# --- quotient-category calculators -------------------------------------------

class ModuleHomCalc:
    """Hom spaces of the module category modulo maps factoring through the
    additive closure of w_members."""

    def __init__(self, alg, w_members):
        self.alg = alg
        self.w = sorted(set(w_members), key=lambda iv: iv.key())
        self._live = {}

    def mk(self, indec_list):
        return Obj(list(indec_list))

    def mk_single(self, indec):
        return Obj([indec])

    def with_assignment(self, indec_list):
        return _obj_with_assignment(list(indec_list))

    def slots(self, x):
        return x.slots

    def live(self, x, y):
        key = (x, y)
        if key not in self._live:
            basis, killed = qhom_pairs_module(self.alg, x, y, self.w)
            dead = set(killed)
            self._live[key] = tuple(p for p in basis if p not in dead)
        return self._live[key]

    def dim(self, x, y):
        return len(self.live(x, y))

    def gen(self, x, y, pair):
        return Mor.from_coords(self.alg, x, y, {pair: 1})

    def make(self, x, y, coords):
        return Mor.from_coords(self.alg, x, y, dict(coords))

    def compose(self, g, f):
        return g.compose(f)

    def reduce(self, m):
        return qhom_reduce_module(self.alg, m, self.w)

    def src(self, m):
        return m.src

    def tgt(self, m):
        return m.tgt


class DerivedHomCalc:
    """Hom spaces of the shifted-interval category modulo the additive
    closure of w_members."""

    def __init__(self, alg, w_members):
        self.alg = alg
        self.w = sorted(set(w_members), key=lambda si: si.key())
        self._live = {}

    def mk(self, indec_list):
        return DObj(list(indec_list))

    def mk_single(self, indec):
        return DObj([indec])

    def with_assignment(self, indec_list):
        obj = DObj(list(indec_list))
        used = set()
        perm = []
        for it in indec_list:
            for s, slot in enumerate(obj.slots):
                if slot == it and s not in used:
                    perm.append(s)
                    used.add(s)
                    break
        return obj, perm

    def slots(self, x):
        return x.slots

    def live(self, x, y):
        key = (x, y)
        if key not in self._live:
            basis, killed = qhom_pairs_derived(self.alg, x, y, self.w)
            dead = set(killed)
            self._live[key] = tuple(p for p in basis if p not in dead)
        return self._live[key]

    def dim(self, x, y):
        return len(self.live(x, y))

    def gen(self, x, y, pair):
        return DMor(self.alg, x, y, {pair: 1})

    def make(self, x, y, coords):
        return DMor(self.alg, x, y, dict(coords))

    def compose(self, g, f):
        return g.compose(f)

    def reduce(self, m):
        return qhom_reduce_derived(self.alg, m, self.w)

    def src(self, m):
        return m.src

    def tgt(self, m):
        return m.tgt


def q_post_matrix(calc, t, g):
    """Matrix of qHom(t, src g) -> qHom(t, tgt g), u -> g∘u, live bases."""
    src, tgt = calc.src(g), calc.tgt(g)
    cols = calc.live(t, src)
    rows = calc.live(t, tgt)
    idx = {p: r for r, p in enumerate(rows)}
    m = Mat.zero(len(rows), len(cols))
    for c, pair in enumerate(cols):
        comp = calc.compose(g, calc.gen(t, src, pair))
        for key, coeff in calc.reduce(comp).items():
            if key in idx:
                m.data[idx[key]][c] = Fraction(coeff)
    return m


def q_pre_matrix(calc, g, t):
    """Matrix of qHom(tgt g, t) -> qHom(src g, t), u -> u∘g, live bases."""
    src, tgt = calc.src(g), calc.tgt(g)
    cols = calc.live(tgt, t)
    rows = calc.live(src, t)
    idx = {p: r for r, p in enumerate(rows)}
    m = Mat.zero(len(rows), len(cols))
    for c, pair in enumerate(cols):
        comp = calc.compose(calc.gen(tgt, t, pair), g)
        for key, coeff in calc.reduce(comp).items():
            if key in idx:
                m.data[idx[key]][c] = Fraction(coeff)
    return m


def _is_bijective(m: Mat):
    return m.rows == m.cols and rank(m) == m.rows


# --- representable cokernels and kernels in the heart ------------------------

def _coeff_vectors(length, pool=(1, -1), support_cap=8):
    """Nonzero coefficient vectors over the pool, by increasing support."""
    if length > support_cap:
        raise HeartSearchError(
            f"coefficient search space of dimension {length} exceeds the "
            f"cap {support_cap}")
    for size in range(1, length + 1):
        for positions in itertools.combinations(range(length), size):
            for values in itertools.product(pool, repeat=size):
                vec = [0] * length
                for p, val in zip(positions, values):
                    vec[p] = val
                yield vec


def heart_cokernel(calc, heart_indecs_list, f, support_cap=8):
    """Representing object and map for the cokernel of f in the heart.

    For every heart indecomposable q, the kernel of qHom(B, q) -> qHom(A, q)
    is the functor the cokernel must corepresent.  Candidate objects are
    bounded by those kernel dimensions; candidate projections come from the
    kernel of the induced map on qHom(B, Q); acceptance verifies the full
    universal property against every heart indecomposable.  Raises
    HeartSearchError when the bounded search is exhausted.
    """
    a, b = calc.src(f), calc.tgt(f)
    targets = {}
    for q in heart_indecs_list:
        qo = calc.mk_single(q)
        pre = q_pre_matrix(calc, f, qo)      # qHom(B,q) -> qHom(A,q)
        targets[q] = (kernel_basis(pre), calc.live(b, qo))
    dims = {q: len(targets[q][0]) for q in heart_indecs_list}
    if all(d == 0 for d in dims.values()):
        zero_obj = calc.mk([])
        return zero_obj, calc.make(b, zero_obj, {}), {"dims": {}}
    ranges = [range(0, dims[q] + 1) for q in heart_indecs_list]
    combos = sorted(itertools.product(*ranges), key=lambda c: (sum(c), c))
    for counts in combos:
        if sum(counts) == 0:
            continue
        parts = [q for q, m in zip(heart_indecs_list, counts)
                 for _ in range(m)]
        q_obj = calc.mk(parts)
        if any(calc.dim(q_obj, calc.mk_single(q)) != dims[q]
               for q in heart_indecs_list):
            continue
        big = q_pre_matrix(calc, f, q_obj)   # qHom(B,Q) -> qHom(A,Q)
        null = kernel_basis(big)
        live_bq = calc.live(b, q_obj)
        try:
            vectors = _coeff_vectors(len(null), support_cap=support_cap)
            for coeffs in vectors:
                vec = [sum(Fraction(cf) * null[k][i]
                           for k, cf in enumerate(coeffs))
                       for i in range(len(live_bq))]
                coords = {live_bq[i]: vec[i]
                          for i in range(len(live_bq)) if vec[i]}
                if not coords:
                    continue
                pi = calc.make(b, q_obj, coords)
                if _corepresents(calc, heart_indecs_list, pi, q_obj,
                                 targets):
                    return q_obj, pi, {"dims": dims}
        except HeartSearchError:
            raise
    raise HeartSearchError(
        f"no representing cokernel found; kernel dims "
        f"{ {str(k): v for k, v in dims.items()} }, support cap "
        f"{support_cap}")


def _corepresents(calc, heart_indecs_list, pi, q_obj, targets):
    for q in heart_indecs_list:
        qo = calc.mk_single(q)
        kern, live_bq = targets[q]
        m = q_pre_matrix(calc, pi, qo)       # qHom(Q,q) -> qHom(B,q)
        if m.cols != len(kern):
            return False
        cols = [[m.data[r][c] for r in range(m.rows)] for c in range(m.cols)]
        for col in cols:
            if not in_span(kern, len(live_bq), col):
                return False
        if rank(m) != len(kern):
            return False
    return True


def heart_kernel(calc, heart_indecs_list, f, support_cap=8):
    """Representing object and map for the kernel of f in the heart (dual
    search, tested by qHom from each heart indecomposable)."""
    a, b = calc.src(f), calc.tgt(f)
    targets = {}
    for q in heart_indecs_list:
        qo = calc.mk_single(q)
        post = q_post_matrix(calc, qo, f)    # qHom(q,A) -> qHom(q,B)
        targets[q] = (kernel_basis(post), calc.live(qo, a))
    dims = {q: len(targets[q][0]) for q in heart_indecs_list}
    if all(d == 0 for d in dims.values()):
        zero_obj = calc.mk([])
        return zero_obj, calc.make(zero_obj, a, {}), {"dims": {}}
    ranges = [range(0, dims[q] + 1) for q in heart_indecs_list]
    combos = sorted(itertools.product(*ranges), key=lambda c: (sum(c), c))
    for counts in combos:
        if sum(counts) == 0:
            continue
        parts = [q for q, m in zip(heart_indecs_list, counts)
                 for _ in range(m)]
        q_obj = calc.mk(parts)
        if any(calc.dim(calc.mk_single(q), q_obj) != dims[q]
               for q in heart_indecs_list):
            continue
        big = q_post_matrix(calc, q_obj, f)  # qHom(Q,A) -> qHom(Q,B)
        null = kernel_basis(big)
        live_qa = calc.live(q_obj, a)
        for coeffs in _coeff_vectors(len(null), support_cap=support_cap):
            vec = [sum(Fraction(cf) * null[k][i]
                       for k, cf in enumerate(coeffs))
                   for i in range(len(live_qa))]
            coords = {live_qa[i]: vec[i]
                      for i in range(len(live_qa)) if vec[i]}
            if not coords:
                continue
            incl = calc.make(q_obj, a, coords)
            if _represents(calc, heart_indecs_list, incl, q_obj, targets):
                return q_obj, incl, {"dims": dims}
    raise HeartSearchError(
        f"no representing kernel found; kernel dims "
        f"{ {str(k): v for k, v in dims.items()} }, support cap "
        f"{support_cap}")


def _represents(calc, heart_indecs_list, incl, q_obj, targets):
    for q in heart_indecs_list:
        qo = calc.mk_single(q)
        kern, live_qa = targets[q]
        m = q_post_matrix(calc, qo, incl)    # qHom(q,Q) -> qHom(q,A)
        if m.cols != len(kern):
            return False
        cols = [[m.data[r][c] for r in range(m.rows)] for c in range(m.cols)]
        for col in cols:
            if not in_span(kern, len(live_qa), col):
                return False
        if rank(m) != len(kern):
            return False
    return True


# --- the analysis ------------------------------------------------------------

@dataclass
class PairAnalysis:
    pair: CotorsionPair
    mult_factor: int = 1
    caveats: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def _cache(self, key, build):
        if key not in self.data:
            self.data[key] = build()
        return self.data[key]


def analyze(pair: CotorsionPair, mult_factor: int = 1) -> PairAnalysis:
    ana = PairAnalysis(pair, mult_factor)
    if pair.context == DERIVED:
        u_view, v_view = derived_views(pair)
        ana.data["u_view"], ana.data["v_view"] = u_view, v_view
    return ana


# -- class listings --

def w_members(ana: PairAnalysis):
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            return tuple(sorted(set(pair.u_members) & set(pair.v_members),
                                key=lambda iv: iv.key()))
        return tuple(w_view(ana).members)
    return ana._cache("w", build)


def w_view(ana: PairAnalysis):
    def build():
        pair = ana.pair
        u, v = ana.data["u_view"], ana.data["v_view"]
        verdicts = {}
        for t in pair.window.objects(pair.alg):
            a, b = u.test(t), v.test(t)
            if a is False or b is False:
                verdicts[t] = False
            elif a is True and b is True:
                verdicts[t] = True
            else:
                verdicts[t] = None
        return verdict_view(pair.window, verdicts, "W")
    return ana._cache("w_view", build)


def membership_plus(ana: PairAnalysis):
    """Per-object verdicts for the first heart-membership condition (the
    wide end of the defining sequence lands in the additive closure of
    W)."""
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            w = list(w_members(ana))
            v = list(pair.v_members)
            out = {}
            for iv in indecomposables(pair.alg):
                wit = conflation_onto_exists(pair.alg, Obj([iv]), w, v,
                                             ana.mult_factor)
                out[iv] = (wit is not None, wit)
            return out
        wv = w_view(ana)
        v1 = shifted_view(pair.alg, pair.window, ana.data["v_view"], 1,
                          "V[1]")
        out = {}
        for t in pair.window.objects(pair.alg):
            out[t] = _safe_star(star_exists_cone, pair.alg, t, wv, v1,
                                ana.caveats, "plus membership")
        return out
    return ana._cache("tplus", build)


def membership_minus(ana: PairAnalysis):
    """Per-object verdicts for the second heart-membership condition."""
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            w = list(w_members(ana))
            u = list(pair.u_members)
            out = {}
            for iv in indecomposables(pair.alg):
                wit = conflation_into_exists(pair.alg, Obj([iv]), w, u,
                                             ana.mult_factor)
                out[iv] = (wit is not None, wit)
            return out
        wv = w_view(ana)
        um1 = shifted_view(pair.alg, pair.window, ana.data["u_view"], -1,
                           "U[-1]")
        out = {}
        for t in pair.window.objects(pair.alg):
            out[t] = _safe_star(star_exists, pair.alg, t, um1, wv,
                                ana.caveats, "minus membership")
        return out
    return ana._cache("tminus", build)


def tplus_view(ana: PairAnalysis):
    def build():
        verdicts = {t: e[0] for t, e in membership_plus(ana).items()}
        return verdict_view(ana.pair.window, verdicts, "T+")
    return ana._cache("tplus_view", build)


def tminus_view(ana: PairAnalysis):
    def build():
        verdicts = {t: e[0] for t, e in membership_minus(ana).items()}
        return verdict_view(ana.pair.window, verdicts, "T-")
    return ana._cache("tminus_view", build)


def heart_indecs(ana: PairAnalysis):
    """Indecomposables of the heart: in both membership classes, not in W.
    Derived context: listed over the trust window; inconclusive membership
    inside the trust window becomes a caveat."""
    def build():
        pair = ana.pair
        plus, minus = membership_plus(ana), membership_minus(ana)
        wset = set(w_members(ana))
        out = []
        if pair.context == MODULE:
            for iv in indecomposables(pair.alg):
                if plus[iv][0] and minus[iv][0] and iv not in wset:
                    out.append(iv)
            return tuple(out)
        for t in pair.window.objects(pair.alg):
            if not pair.window.in_trust(t):
                continue
            p, m = plus[t][0], minus[t][0]
            if p is None or m is None:
                ana.caveats.append(
                    f"heart membership of {t} inconclusive inside trust")
            if p is True and m is True and t not in wset:
                out.append(t)
        return tuple(out)
    return ana._cache("heart", build)


def heart_calc(ana: PairAnalysis):
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            return ModuleHomCalc(pair.alg, w_members(ana))
        return DerivedHomCalc(pair.alg, w_members(ana))
    return ana._cache("calc", build)


def heart_hom_table(ana: PairAnalysis):
    def build():
        calc = heart_calc(ana)
        hs = heart_indecs(ana)
        return {(x, y): calc.dim(calc.mk_single(x), calc.mk_single(y))
                for x in hs for y in hs}
    return ana._cache("heart_hom", build)


# -- coheart and dual coheart --

def coheart(ana: PairAnalysis):
    """Module: members of U with no extensions by other members of U.
    Derived: the view of objects that are down-shifts of U members and
    support no maps into U."""
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            u = list(pair.u_members)
            return tuple(c for c in u
                         if all(ext01(pair.alg, c, x) == 0 for x in u))
        alg, window = pair.alg, pair.window
        u_view = ana.data["u_view"]
        um1 = shifted_view(alg, window, u_view, -1, "U[-1]")
        no_maps = perp_view_derived(alg, window, u_view, "hom", "left")
        verdicts = {}
        for t in window.objects(alg):
            a, b = um1.test(t), no_maps.test(t)
            if a is False or b is False:
                verdicts[t] = False
            elif a is True and b is True:
                verdicts[t] = True
            else:
                verdicts[t] = None
        return verdict_view(window, verdicts, "C")
    return ana._cache("coheart", build)


def coheart_members(ana: PairAnalysis):
    if ana.pair.context == MODULE:
        return list(coheart(ana))
    return [t for t in coheart(ana).members if ana.pair.window.in_trust(t)]


def dual_coheart(ana: PairAnalysis):
    """Module: members of V not extended by other members of V.  Derived:
    the view of objects that are up-shifts of V members and receive no
    maps from V."""
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            v = list(pair.v_members)
            return tuple(d for d in v
                         if all(ext01(pair.alg, x, d) == 0 for x in v))
        alg, window = pair.alg, pair.window
        v_view = ana.data["v_view"]
        v1 = shifted_view(alg, window, v_view, 1, "V[1]")
        no_maps = perp_view_derived(alg, window, v_view, "hom", "right")
        verdicts = {}
        for t in window.objects(alg):
            a, b = v1.test(t), no_maps.test(t)
            if a is False or b is False:
                verdicts[t] = False
            elif a is True and b is True:
                verdicts[t] = True
            else:
                verdicts[t] = None
        return verdict_view(window, verdicts, "D")
    return ana._cache("dual_coheart", build)


def dual_coheart_members(ana: PairAnalysis):
    if ana.pair.context == MODULE:
        return list(dual_coheart(ana))
    return [t for t in dual_coheart(ana).members
            if ana.pair.window.in_trust(t)]


def cosyzygy_interval(alg, iv: Interval):
    """Cokernel of the minimal injective envelope; None when iv is
    injective.  Computed through the opposite algebra."""
    if is_injective(alg, iv):
        return None
    op = opposite(alg)
    s = syzygy_interval(op, op_interval(alg, iv))
    return op_interval(op, s) if s is not None else None


def omega_coheart(ana: PairAnalysis):
    """Module context: syzygies of the non-projective coheart members."""
    if ana.pair.context != MODULE:
        raise ValueError("syzygies of the coheart are module-context")

    def build():
        alg = ana.pair.alg
        out = {}
        for c in coheart(ana):
            if is_projective(alg, c):
                continue
            out[c] = syzygy_interval(alg, c)
        return out
    return ana._cache("omega_coheart", build)


def omega_dual_coheart(ana: PairAnalysis):
    if ana.pair.context != MODULE:
        raise ValueError("cosyzygies of the dual coheart are module-context")

    def build():
        alg = ana.pair.alg
        out = {}
        for d in dual_coheart(ana):
            if is_injective(alg, d):
                continue
            out[d] = cosyzygy_interval(alg, d)
        return out
    return ana._cache("omega_dual_coheart", build)


# -- the heart functor --

def _ordered_candidates(cands, order):
    if order == "lex":
        return list(cands)
    by_size = {}
    for part, cls in cands:
        by_size.setdefault(len(part.slots), []).append((part, cls))
    out = []
    for size in sorted(by_size):
        out.extend(reversed(by_size[size]))
    return out


def _module_universal_coreflection(ana, conf, minus_list):
    """Composition with the projection of the candidate sequence must be a
    qHom bijection from every membership-minus indecomposable."""
    calc = heart_calc(ana)
    for y in minus_list:
        m = q_post_matrix(calc, Obj([y]), conf.proj)
        if not _is_bijective(m):
            return False
    return True


def _module_universal_reflection(ana, conf, plus_list):
    """Precomposition with the inclusion of the candidate sequence must be
    a qHom bijection into every membership-plus indecomposable."""
    calc = heart_calc(ana)
    for z in plus_list:
        m = q_pre_matrix(calc, conf.incl, Obj([z]))
        if not _is_bijective(m):
            return False
    return True


def h_object_module(ana: PairAnalysis, b: Obj, order="lex"):
    """Heart image of b: coreflect into the minus class along a V-sub
    sequence, then reflect into the plus class along a U-quotient sequence,
    both accepted only with their universal property verified; the value
    drops W summands.

    Returns (value, report).  Raises HeartSearchError on exhaustion."""
    pair = ana.pair
    alg = pair.alg
    plus, minus = membership_plus(ana), membership_minus(ana)
    wset = set(w_members(ana))
    minus_list = [iv for iv in indecomposables(alg) if minus[iv][0]]
    plus_list = [iv for iv in indecomposables(alg) if plus[iv][0]]
    minus_set, plus_set = frozenset(minus_list), frozenset(plus_list)
    report = {}

    bminus = None
    if all(iv in minus_set for iv in b.slots):
        bminus = b
        report["coreflection"] = None
    else:
        cands = extension_candidates(alg, b, pair.v_members, "sub",
                                     ana.mult_factor)
        for part, cls in _ordered_candidates(cands, order):
            conf = extension_conflation(alg, b, part, cls, with_maps=True)
            if not all(iv in minus_set for iv in conf.mid.slots):
                continue
            if _module_universal_coreflection(ana, conf, minus_list):
                bminus = conf.mid
                report["coreflection"] = ConflationWitness(
                    part, conf.mid, b, tuple(sorted(cls.items()))).as_json()
                break
        if bminus is None:
            raise HeartSearchError(
                f"no coreflection found for {b} within multiplicity "
                f"factor {ana.mult_factor}")

    x_obj = None
    if all(iv in plus_set for iv in bminus.slots):
        x_obj = bminus
        report["reflection"] = None
    else:
        cands = extension_candidates(alg, bminus, pair.u_members, "quot",
                                     ana.mult_factor)
        for part, cls in _ordered_candidates(cands, order):
            conf = extension_conflation(alg, part, bminus, cls,
                                        with_maps=True)
            if not all(iv in plus_set and iv in minus_set
                       for iv in conf.mid.slots):
                continue
            if _module_universal_reflection(ana, conf, plus_list):
                x_obj = conf.mid
                report["reflection"] = ConflationWitness(
                    bminus, conf.mid, part,
                    tuple(sorted(cls.items()))).as_json()
                break
        if x_obj is None:
            raise HeartSearchError(
                f"no reflection found for {b} within multiplicity "
                f"factor {ana.mult_factor}")

    value = Obj([iv for iv in x_obj.slots if iv not in wset])
    report["ambient"] = [str(iv) for iv in x_obj.slots]
    return value, report


def _derived_h_candidates(ana, fixed: DObj, pool, vary):
    """(partner, coords) candidates for the connecting map of a triangle
    against the fixed object.  vary='sub': maps fixed -> partner[1];
    vary='quot': maps partner[-1] -> fixed.  Multiplicities are bounded by
    hom dimensions; coordinates are 0/1 patterns whose varied-side lines
    are nonzero, deduplicated across isomorphic slots."""
    alg = ana.pair.alg
    eligible = []
    for s in sorted(set(pool), key=lambda x: x.key()):
        if vary == "sub":
            cap = dhom_dim(alg, fixed, DObj([s.shift(1)]))
        else:
            cap = dhom_dim(alg, DObj([s.shift(-1)]), fixed)
        if cap:
            eligible.append((s, cap * ana.mult_factor))
    ranges = [range(0, cap + 1) for _, cap in eligible]
    combos = sorted(itertools.product(*ranges), key=lambda c: (sum(c), c))
    out = []
    for counts in combos:
        parts = [s for (s, _), m in zip(eligible, counts) for _ in range(m)]
        part = DObj(parts)
        if not parts:
            out.append((part, {}))
            continue
        shifted = part.shift(1) if vary == "sub" else part.shift(-1)
        options = []
        for pj in shifted.slots:
            if vary == "sub":
                hits = [i for i, fi in enumerate(fixed.slots)
                        if dhom01(alg, fi, pj)]
            else:
                hits = [i for i, fi in enumerate(fixed.slots)
                        if dhom01(alg, pj, fi)]
            if not hits:
                options = None
                break
            options.append([combo for r in range(1, len(hits) + 1)
                            for combo in itertools.combinations(hits, r)])
        if options is None:
            continue
        for choice in itertools.product(*options):
            ok = True
            for j in range(1, len(shifted.slots)):
                if (shifted.slots[j] == shifted.slots[j - 1]
                        and choice[j] <= choice[j - 1]):
                    ok = False
                    break
            if not ok:
                continue
            coords = {}
            for j, support in enumerate(choice):
                for i in support:
                    if vary == "sub":
                        coords[(i, j)] = 1
                    else:
                        coords[(j, i)] = 1
            out.append((part, coords))
    return out


def _derived_coreflection_universal(ana, b, vpart, delta, minus_view):
    """Long-exact-sequence certificate: composing with the connecting map
    kills every map from the minus class, and composing with its downshift
    reaches all of Hom(y, V')."""
    alg, window = ana.pair.alg, ana.pair.window
    saw_unknown = False
    for t in window.objects(alg):
        to = DObj([t])
        if not (dhom_dim(alg, to, b) or dhom_dim(alg, to, vpart.shift(1))
                or dhom_dim(alg, to, vpart)):
            continue
        v = minus_view.test(t)
        if v is None:
            saw_unknown = True
            continue
        if v is False:
            continue
        if not postcompose_matrix(alg, delta, to).is_zero():
            return False, saw_unknown
        m2 = postcompose_matrix(alg, delta.shift(-1), to)
        if rank(m2) != dhom_dim(alg, to, vpart):
            return False, saw_unknown
    return True, saw_unknown


def _derived_reflection_universal(ana, bminus, upart, gamma, plus_view):
    """Dual certificate: precomposing with the connecting map kills every
    map into the plus class, and precomposing with its upshift reaches all
    of Hom(U', z)."""
    alg, window = ana.pair.alg, ana.pair.window
    saw_unknown = False
    for t in window.objects(alg):
        to = DObj([t])
        if not (dhom_dim(alg, bminus, to)
                or dhom_dim(alg, upart.shift(-1), to)
                or dhom_dim(alg, upart, to)):
            continue
        v = plus_view.test(t)
        if v is None:
            saw_unknown = True
            continue
        if v is False:
            continue
        if not precompose_matrix(alg, gamma, to).is_zero():
            return False, saw_unknown
        m2 = precompose_matrix(alg, gamma.shift(1), to)
        if rank(m2) != dhom_dim(alg, upart, to):
            return False, saw_unknown
    return True, saw_unknown


def h_object_derived(ana: PairAnalysis, b: DObj, order="lex"):
    """Heart image of b in the derived context.  Requires W = 0 on the
    window: a nonzero W removes the plain long-exact-sequence
    certificates, so the computation reports inconclusive instead of
    guessing."""
    pair = ana.pair
    alg = pair.alg
    if w_members(ana):
        return None, {"status": "inconclusive",
                      "reason": "nonzero W in the derived context"}
    plus, minus = tplus_view(ana), tminus_view(ana)
    v_view, u_view = ana.data["v_view"], ana.data["u_view"]
    report = {}

    bminus = None
    boundary = False
    if all(minus.test(s) is True for s in b.slots):
        bminus = b
        report["coreflection"] = None
    else:
        for part, coords in _ordered_candidates(
                _derived_h_candidates(ana, b, v_view.members, "sub"),
                order):
            if not part.slots:
                continue
            delta = DMor(alg, b, part.shift(1), coords)
            cand = cocone(alg, delta)
            verdicts = [minus.test(s) for s in cand.slots]
            if any(v is False for v in verdicts):
                continue
            if any(v is None for v in verdicts):
                boundary = True
                continue
            ok, saw_unknown = _derived_coreflection_universal(
                ana, b, part, delta, minus)
            if saw_unknown:
                boundary = True
                continue
            if ok:
                bminus = cand
                report["coreflection"] = {
                    "sub": [str(s) for s in part.slots],
                    "map": [[i, j, str(c)]
                            for (i, j), c in sorted(coords.items())]}
                break
        if bminus is None:
            if boundary:
                return None, {"status": "inconclusive",
                              "reason": f"coreflection of {b} blocked by "
                                        f"the window boundary"}
            raise HeartSearchError(
                f"no coreflection found for {b} within multiplicity "
                f"factor {ana.mult_factor}")

    x_obj = None
    boundary = False
    if all(plus.test(s) is True for s in bminus.slots):
        x_obj = bminus
        report["reflection"] = None
    else:
        for part, coords in _ordered_candidates(
                _derived_h_candidates(ana, bminus, u_view.members, "quot"),
                order):
            if not part.slots:
                continue
            gamma = DMor(alg, part.shift(-1), bminus, coords)
            cand = cone(alg, gamma)
            verdicts = [plus.test(s) for s in cand.slots]
            verdicts += [minus.test(s) for s in cand.slots]
            if any(v is False for v in verdicts):
                continue
            if any(v is None for v in verdicts):
                boundary = True
                continue
            ok, saw_unknown = _derived_reflection_universal(
                ana, bminus, part, gamma, plus)
            if saw_unknown:
                boundary = True
                continue
            if ok:
                x_obj = cand
                report["reflection"] = {
                    "quot": [str(s) for s in part.slots],
                    "map": [[i, j, str(c)]
                            for (i, j), c in sorted(coords.items())]}
                break
        if x_obj is None:
            if boundary:
                return None, {"status": "inconclusive",
                              "reason": f"reflection of {bminus} blocked "
                                        f"by the window boundary"}
            raise HeartSearchError(
                f"no reflection found for {bminus} within multiplicity "
                f"factor {ana.mult_factor}")

    report["ambient"] = [str(s) for s in x_obj.slots]
    report["status"] = "ok"
    return x_obj, report


def h_object(ana: PairAnalysis, b, order="lex"):
    """Heart image of an ambient object, with witnesses."""
    if ana.pair.context == MODULE:
        return h_object_module(ana, b, order)
    return h_object_derived(ana, b, order)


# -- kernel of the heart functor --

def kernel_members(ana: PairAnalysis):
    """Module context: two independent computations of the kernel class
    (extension closure of the two sides; vanishing heart image), asserted
    equal."""
    def build():
        pair = ana.pair
        if pair.context != MODULE:
            raise ValueError("use kernel_view in the derived context")
        closure = set(extension_closure(
            pair.alg, list(pair.u_members) + list(pair.v_members)))
        by_h = set()
        for iv in indecomposables(pair.alg):
            value, _ = h_object_module(ana, Obj([iv]))
            if not value.slots:
                by_h.add(iv)
        if closure != by_h:
            raise AssertionError(
                "kernel routes disagree: closure "
                f"{sorted(str(i) for i in closure)} vs heart-image "
                f"{sorted(str(i) for i in by_h)}")
        return tuple(sorted(closure, key=lambda iv: iv.key()))
    return ana._cache("kernel", build)


def kernel_view(ana: PairAnalysis, cross_check=True):
    """Derived context: triangle-decomposition verdicts per window object,
    cross-checked against vanishing heart image on the trust window."""
    def build():
        pair = ana.pair
        alg, window = pair.alg, pair.window
        u_view, v_view = ana.data["u_view"], ana.data["v_view"]
        verdicts = {}
        for t in window.objects(alg):
            vd, _ = _safe_star(star_exists_cone, alg, t, u_view, v_view,
                               ana.caveats, "kernel decomposition")
            verdicts[t] = vd
        if cross_check:
            for t in window.objects(alg):
                if not window.in_trust(t) or verdicts[t] is None:
                    continue
                value, rep = h_object_derived(ana, DObj([t]))
                if value is None:
                    ana.caveats.append(
                        f"kernel cross-check at {t} skipped: "
                        f"{rep['reason']}")
                    continue
                if (not value.slots) != verdicts[t]:
                    raise AssertionError(
                        f"kernel routes disagree at {t}: decomposition "
                        f"{verdicts[t]}, heart image {value}")
        return verdict_view(window, verdicts, "K")
    return ana._cache("kernel_view", build)


def kernel_members_list(ana: PairAnalysis):
    if ana.pair.context == MODULE:
        return list(kernel_members(ana))
    return [t for t in kernel_view(ana).members
            if ana.pair.window.in_trust(t)]


# -- heart projectives / injectives --

def heart_projective_images(ana: PairAnalysis):
    """Heart images of the coheart syzygies (module context) or of the
    coheart members themselves (derived context)."""
    def build():
        pair = ana.pair
        out = {}
        if pair.context == MODULE:
            for c, om in omega_coheart(ana).items():
                if om is None:
                    continue
                value, _ = h_object_module(ana, Obj([om]))
                out[c] = value
            return out
        for c in coheart_members(ana):
            value, rep = h_object_derived(ana, DObj([c]))
            if value is None:
                ana.caveats.append(
                    f"heart image of coheart member {c} inconclusive: "
                    f"{rep['reason']}")
                continue
            out[c] = value
        return out
    return ana._cache("proj_images", build)


def heart_injective_images(ana: PairAnalysis):
    def build():
        pair = ana.pair
        out = {}
        if pair.context == MODULE:
            for d, om in omega_dual_coheart(ana).items():
                if om is None:
                    continue
                value, _ = h_object_module(ana, Obj([om]))
                out[d] = value
            return out
        for d in dual_coheart_members(ana):
            value, rep = h_object_derived(ana, DObj([d]))
            if value is None:
                ana.caveats.append(
                    f"heart image of dual coheart member {d} inconclusive: "
                    f"{rep['reason']}")
                continue
            out[d] = value
        return out
    return ana._cache("inj_images", build)


def heart_projective_indecs(ana: PairAnalysis):
    out = set()
    for value in heart_projective_images(ana).values():
        out.update(value.slots)
    wset = set(w_members(ana))
    return tuple(sorted((x for x in out if x not in wset),
                        key=lambda x: x.key()))


def heart_injective_indecs(ana: PairAnalysis):
    out = set()
    for value in heart_injective_images(ana).values():
        out.update(value.slots)
    wset = set(w_members(ana))
    return tuple(sorted((x for x in out if x not in wset),
                        key=lambda x: x.key()))


def _cover_map(calc, sources, h):
    """The everything-at-once map into h: one copy of each source per live
    quotient-category generator into h.  Every map from the additive
    closure of the sources factors through it."""
    h_obj = calc.mk_single(h)
    parts, tgt_slots = [], []
    for p in sources:
        po = calc.mk_single(p)
        for pair_key in calc.live(po, h_obj):
            parts.append(p)
            tgt_slots.append(pair_key[1])
    src, perm = calc.with_assignment(parts)
    coords = {}
    for k, j in enumerate(tgt_slots):
        coords[(perm[k], j)] = 1
    return calc.make(src, h_obj, coords)


def _cocover_map(calc, h, sources):
    """Dual: the everything-at-once map from h into copies of the
    sources."""
    h_obj = calc.mk_single(h)
    parts, src_slots = [], []
    for p in sources:
        po = calc.mk_single(p)
        for pair_key in calc.live(h_obj, po):
            parts.append(p)
            src_slots.append(pair_key[0])
    tgt, perm = calc.with_assignment(parts)
    coords = {}
    for k, i in enumerate(src_slots):
        coords[(i, perm[k])] = 1
    return calc.make(h_obj, tgt, coords)


def enough_projectives_check(ana: PairAnalysis):
    """Does every heart indecomposable admit a heart epimorphism from the
    candidate projectives?  Checked by the universal cover map: its heart
    cokernel must vanish.  Independent of the pair-law route."""
    def build():
        calc = heart_calc(ana)
        hs = list(heart_indecs(ana))
        ps = list(heart_projective_indecs(ana))
        witnesses = {}
        verdict = True
        for h in hs:
            f = _cover_map(calc, ps, h)
            try:
                q_obj, _, _ = heart_cokernel(calc, hs, f)
            except HeartSearchError as e:
                ana.caveats.append(f"cover cokernel search for {h}: {e}")
                if verdict is True:
                    verdict = None
                continue
            witnesses[str(h)] = {
                "cover_from": [str(s) for s in calc.slots(calc.src(f))],
                "cokernel": [str(s) for s in calc.slots(q_obj)],
            }
            if calc.slots(q_obj):
                verdict = False
        return verdict, witnesses
    return ana._cache("enough_proj", build)


def enough_injectives_check(ana: PairAnalysis):
    def build():
        calc = heart_calc(ana)
        hs = list(heart_indecs(ana))
        js = list(heart_injective_indecs(ana))
        witnesses = {}
        verdict = True
        for h in hs:
            f = _cocover_map(calc, h, js)
            try:
                q_obj, _, _ = heart_kernel(calc, hs, f)
            except HeartSearchError as e:
                ana.caveats.append(f"cocover kernel search for {h}: {e}")
                if verdict is True:
                    verdict = None
                continue
            witnesses[str(h)] = {
                "cocover_into": [str(s) for s in calc.slots(calc.tgt(f))],
                "kernel": [str(s) for s in calc.slots(q_obj)],
            }
            if calc.slots(q_obj):
                verdict = False
        return verdict, witnesses
    return ana._cache("enough_inj", build)


def heart_projectivity_test(ana: PairAnalysis, h):
    """Does h lift along the canonical cover of every heart
    indecomposable?  (Surjectivity of the induced quotient-Hom map.)"""
    calc = heart_calc(ana)
    hs = list(heart_indecs(ana))
    ps = list(heart_projective_indecs(ana))
    h_obj = calc.mk_single(h)
    for b in hs:
        e = _cover_map(calc, ps, b)
        m = q_post_matrix(calc, h_obj, e)
        if rank(m) != calc.dim(h_obj, calc.mk_single(b)):
            return False
    return True


def heart_injectivity_test(ana: PairAnalysis, h):
    calc = heart_calc(ana)
    hs = list(heart_indecs(ana))
    js = list(heart_injective_indecs(ana))
    h_obj = calc.mk_single(h)
    for b in hs:
        e = _cocover_map(calc, b, js)
        m = q_pre_matrix(calc, e, h_obj)
        if rank(m) != calc.dim(calc.mk_single(b), h_obj):
            return False
    return True


# -- pair-law checks on (coheart, kernel) and (kernel, dual coheart) --

def coheart_kernel_pair_check(ana: PairAnalysis):
    """Does (coheart, kernel) satisfy the pair law of the ambient context?
    Module: Ext-orthogonality, complement relations, and both defining
    sequences per indecomposable.  Derived: Hom-orthogonality on confirmed
    members plus the decomposition triangle per trust object."""
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            alg = pair.alg
            c = list(coheart(ana))
            k = list(kernel_members(ana))
            report = {"orthogonality_violations": [], "missing": []}
            for x in c:
                for y in k:
                    if ext01(alg, x, y):
                        report["orthogonality_violations"].append(
                            (str(x), str(y)))
            report["coheart_is_left_complement"] = (
                perp_ext_left_module(alg, k)
                == sorted(c, key=lambda i: i.key()))
            report["kernel_is_right_complement"] = (
                perp_ext_right_module(alg, c)
                == sorted(k, key=lambda i: i.key()))
            onto, into = {}, {}
            for iv in indecomposables(alg):
                b = Obj([iv])
                w_onto = conflation_onto_exists(alg, b, c, k,
                                                ana.mult_factor)
                w_into = conflation_into_exists(alg, b, k, c,
                                                ana.mult_factor)
                if w_onto is None or w_into is None:
                    report["missing"].append(str(iv))
                else:
                    onto[str(iv)] = w_onto.as_json()
                    into[str(iv)] = w_into.as_json()
            report["onto"], report["into"] = onto, into
            verdict = (not report["orthogonality_violations"]
                       and not report["missing"]
                       and report["coheart_is_left_complement"]
                       and report["kernel_is_right_complement"])
            return verdict, report
        alg, window = pair.alg, pair.window
        c_view, k_view = coheart(ana), kernel_view(ana)
        report = {"orthogonality_violations": [], "star": {},
                  "inconclusive": []}
        for x in c_view.members:
            for y in k_view.members:
                if dhom_dim(alg, DObj([x]), DObj([y])):
                    report["orthogonality_violations"].append(
                        (str(x), str(y)))
        verdict = True
        for t in window.objects(alg):
            if not window.in_trust(t):
                continue
            vd, wit = _safe_star(star_exists_cone, alg, t, c_view, k_view,
                                 ana.caveats,
                                 "coheart/kernel decomposition")
            report["star"][str(t)] = vd if wit is None else wit.as_json()
            if vd is False:
                verdict = False
            elif vd is None:
                report["inconclusive"].append(str(t))
        if report["orthogonality_violations"]:
            verdict = False
        if verdict is True and report["inconclusive"]:
            verdict = None
        return verdict, report
    return ana._cache("ck_pair", build)


def kernel_dual_pair_check(ana: PairAnalysis):
    """The dual pair (kernel, dual coheart), for the enough-injectives
    law."""
    def build():
        pair = ana.pair
        if pair.context == MODULE:
            alg = pair.alg
            k = list(kernel_members(ana))
            d = list(dual_coheart(ana))
            report = {"orthogonality_violations": [], "missing": []}
            for x in k:
                for y in d:
                    if ext01(alg, x, y):
                        report["orthogonality_violations"].append(
                            (str(x), str(y)))
            onto, into = {}, {}
            for iv in indecomposables(alg):
                b = Obj([iv])
                w_onto = conflation_onto_exists(alg, b, k, d,
                                                ana.mult_factor)
                w_into = conflation_into_exists(alg, b, d, k,
                                                ana.mult_factor)
                if w_onto is None or w_into is None:
                    report["missing"].append(str(iv))
                else:
                    onto[str(iv)] = w_onto.as_json()
                    into[str(iv)] = w_into.as_json()
            report["onto"], report["into"] = onto, into
            verdict = (not report["orthogonality_violations"]
                       and not report["missing"])
            return verdict, report
        alg, window = pair.alg, pair.window
        k_view, d_view = kernel_view(ana), dual_coheart(ana)
        report = {"orthogonality_violations": [], "star": {},
                  "inconclusive": []}
        for x in k_view.members:
            for y in d_view.members:
                if dhom_dim(alg, DObj([x]), DObj([y])):
                    report["orthogonality_violations"].append(
                        (str(x), str(y)))
        verdict = True
        for t in window.objects(alg):
            if not window.in_trust(t):
                continue
            vd, wit = _safe_star(star_exists, alg, t, k_view, d_view,
                                 ana.caveats, "kernel/dual decomposition")
            report["star"][str(t)] = vd if wit is None else wit.as_json()
            if vd is False:
                verdict = False
            elif vd is None:
                report["inconclusive"].append(str(t))
        if report["orthogonality_violations"]:
            verdict = False
        if verdict is True and report["inconclusive"]:
            verdict = None
        return verdict, report
    return ana._cache("kd_pair", build)


# -- the equivalent-conditions lattice --

def approximation_conditions(ana: PairAnalysis):
    """The equivalent conditions tied to the pair law: heart objects
    decompose over (coheart, kernel); the pair law itself; left kernel
    approximations exist everywhere / on the heart.  Each condition is
    computed by its own procedure; agreement is recorded, not forced."""
    def build():
        pair = ana.pair
        out = {}
        if pair.context == MODULE:
            alg = pair.alg
            c = list(coheart(ana))
            k = list(kernel_members(ana))
            hs = list(heart_indecs(ana))
            out["heart_decomposes_over_coheart_kernel"] = all(
                conflation_onto_exists(alg, Obj([h]), c, k,
                                       ana.mult_factor) is not None
                for h in hs)
            out["pair_law"] = coheart_kernel_pair_check(ana)[0]
            # finite additive classes of modules always admit left
            # approximations; record the minimal targets on the heart
            out["kernel_approximations_everywhere"] = True
            out["kernel_approximations_on_heart"] = True
            out["heart_approximation_targets"] = {
                str(h): [str(s) for s in
                         left_approximation(alg, Obj([h]), k)[2].slots]
                for h in hs}
        else:
            alg, window = pair.alg, pair.window
            c_view, k_view = coheart(ana), kernel_view(ana)
            hs = list(heart_indecs(ana))
            verdicts = []
            for h in hs:
                vd, _ = _safe_star(star_exists_cone, alg, h, c_view,
                                   k_view, ana.caveats,
                                   "heart decomposition")
                verdicts.append(vd)
            out["heart_decomposes_over_coheart_kernel"] = (
                None if any(v is None for v in verdicts)
                else all(v is True for v in verdicts))
            out["pair_law"] = coheart_kernel_pair_check(ana)[0]

            def left_approx_verdict(objs):
                verdict = True
                for t in objs:
                    for delta in (0, 1):
                        for iv in indecomposables(alg):
                            s = ShiftedInterval(iv, t.degree + delta)
                            if not dhom01(alg, t, s):
                                continue
                            if k_view.test(s) is None:
                                verdict = None
                return verdict

            trust = [t for t in window.objects(alg) if window.in_trust(t)]
            out["kernel_approximations_everywhere"] = left_approx_verdict(
                trust)
            out["kernel_approximations_on_heart"] = left_approx_verdict(hs)
        conclusive = {out[key] for key in
                      ("heart_decomposes_over_coheart_kernel", "pair_law",
                       "kernel_approximations_everywhere",
                       "kernel_approximations_on_heart")
                      if out[key] is not None}
        out["consistent"] = len(conclusive) <= 1
        return out
    return ana._cache("lattice", build)


# -- structural invariants --

def invariants(ana: PairAnalysis):
    """Re-checkable structural facts recorded alongside the main flags."""
    def build():
        pair = ana.pair
        out = {}
        if pair.context == MODULE:
            alg = pair.alg
            c = sorted(coheart(ana), key=lambda i: i.key())
            d = sorted(dual_coheart(ana), key=lambda i: i.key())
            k = list(kernel_members(ana))
            out["coheart_is_ext_perp_of_kernel"] = (
                perp_ext_left_module(alg, k) == c)
            out["dual_coheart_is_ext_perp_of_kernel"] = (
                perp_ext_right_module(alg, k) == d)
            u_rigid = all(ext01(alg, x, y) == 0
                          for x in pair.u_members for y in pair.u_members)
            out["u_rigid"] = u_rigid
            if u_rigid:
                out["rigid_specialization"] = (
                    tuple(c) == tuple(pair.u_members)
                    and set(k) == set(pair.v_members))
            calc = heart_calc(ana)
            projs = list(projective_intervals(alg))
            images = heart_projective_images(ana)
            dims_ok = True
            for c1, h1 in images.items():
                for c2, h2 in images.items():
                    basis, killed = qhom_pairs_module(
                        alg, Obj([c1]), Obj([c2]), projs)
                    if len(basis) - len(killed) != calc.dim(h1, h2):
                        dims_ok = False
            out["coheart_hom_dims_transfer"] = dims_ok
            seqs = {}
            ok = True
            for x in heart_projective_indecs(ana):
                wit = conflation_into_exists(alg, Obj([x]),
                                             list(pair.u_members), c,
                                             ana.mult_factor)
                if wit is None:
                    ok = False
                else:
                    seqs[str(x)] = wit.as_json()
            out["projective_images_left_sequences"] = ok
            out["left_sequence_witnesses"] = seqs
            ff, _ = is_functorially_finite_module(alg, pair.u_members)
            out["u_functorially_finite"] = ff
            return out
        alg, window = pair.alg, pair.window
        c_view = coheart(ana)
        k_view = kernel_view(ana)
        hom_perp = perp_view_derived(alg, window, k_view, "hom", "left")
        mismatch = []
        for t in window.objects(alg):
            if not window.in_trust(t):
                continue
            a, b = c_view.test(t), hom_perp.test(t)
            if a is not None and b is not None and a != b:
                mismatch.append(str(t))
        out["coheart_is_hom_perp_of_kernel"] = not mismatch
        out["coheart_perp_mismatches"] = mismatch
        d_view = dual_coheart(ana)
        hom_perp_r = perp_view_derived(alg, window, k_view, "hom", "right")
        mismatch_d = []
        for t in window.objects(alg):
            if not window.in_trust(t):
                continue
            a, b = d_view.test(t), hom_perp_r.test(t)
            if a is not None and b is not None and a != b:
                mismatch_d.append(str(t))
        out["dual_coheart_is_hom_perp_of_kernel"] = not mismatch_d
        out["dual_coheart_perp_mismatches"] = mismatch_d
        u_view = ana.data["u_view"]
        rigid = True
        for x in u_view.members:
            for y in u_view.members:
                if dhom01(alg, x, y.shift(1)):
                    rigid = False
                    break
            if not rigid:
                break
        out["u_rigid"] = rigid
        if rigid:
            um1 = shifted_view(alg, window, u_view, -1, "U[-1]")
            v_view = ana.data["v_view"]
            spec_ok = True
            for t in window.objects(alg):
                if not window.in_trust(t):
                    continue
                if um1.test(t) != c_view.test(t):
                    spec_ok = False
                if v_view.test(t) != k_view.test(t):
                    spec_ok = False
            out["rigid_specialization"] = spec_ok
        calc = heart_calc(ana)
        images = heart_projective_images(ana)
        dims_ok = True
        for c1, h1 in images.items():
            for c2, h2 in images.items():
                if dhom_dim(alg, DObj([c1]), DObj([c2])) != calc.dim(h1,
                                                                     h2):
                    dims_ok = False
        out["coheart_hom_dims_transfer"] = dims_ok
        ffu, _ = is_functorially_finite_derived(alg, window, u_view)
        out["u_functorially_finite"] = ffu
        return out
    return ana._cache("invariants", build)


# -- theorem verification --

def verify_theorem(ana: PairAnalysis, with_equivalence=True):
    """The central biconditional, both sides computed independently:

        heart has enough projectives from the coheart images
            <=>  (coheart, kernel) satisfies the pair law.

    Returns a report with both verdicts, their agreement, the
    module-category equivalence check when both hold, and the invariant
    battery."""
    heart_side, cover_wit = enough_projectives_check(ana)
    pair_side, pair_rep = coheart_kernel_pair_check(ana)
    report = {
        "context": ana.pair.context,
        "enough_projectives": heart_side,
        "pair_law": pair_side,
        "agreement": (heart_side == pair_side
                      if None not in (heart_side, pair_side) else None),
        "covers": cover_wit,
        "pair_report": {key: val for key, val in pair_rep.items()
                        if key not in ("onto", "into", "star")},
        "lattice": approximation_conditions(ana),
        "invariants": invariants(ana),
    }
    lift = {str(h): heart_projectivity_test(ana, h)
            for h in heart_indecs(ana)}
    report["projectivity_tests"] = lift
    if heart_side is True:
        proj_set = {str(x) for x in heart_projective_indecs(ana)}
        report["projectives_all_from_coheart"] = (
            {h for h, ok in lift.items() if ok} == proj_set)
    if heart_side is True and pair_side is True and with_equivalence:
        from . import funcat
        report["equivalence"] = funcat.verify_equivalence(ana)
    report["caveats"] = list(ana.caveats)
    return report


def verify_theorem_exact(ana: PairAnalysis, with_equivalence=True):
    if ana.pair.context != MODULE:
        raise ValueError("exact-context verification needs a module pair")
    return verify_theorem(ana, with_equivalence)


def verify_theorem_triangulated(ana: PairAnalysis, with_equivalence=True):
    if ana.pair.context != DERIVED:
        raise ValueError("triangulated verification needs a derived pair")
    return verify_theorem(ana, with_equivalence)


def verify_dual_theorem(ana: PairAnalysis):
    """Dual biconditional: enough injectives from the dual coheart images
    <=> (kernel, dual coheart) satisfies the pair law."""
    heart_side, wit = enough_injectives_check(ana)
    pair_side, _ = kernel_dual_pair_check(ana)
    return {
        "enough_injectives": heart_side,
        "dual_pair_law": pair_side,
        "agreement": (heart_side == pair_side
                      if None not in (heart_side, pair_side) else None),
        "cocovers": wit,
        "caveats": list(ana.caveats),
    }


# -- opposite-context transport --

def op_shifted(alg, si: ShiftedInterval) -> ShiftedInterval:
    return ShiftedInterval(op_interval(alg, si.iv), -si.degree)


def opposite_pair(pair: CotorsionPair) -> CotorsionPair:
    """The same pair seen in the opposite context: the sides swap and
    transport member by member.  Derived pairs transport the computed
    member lists of both sides (patterns do not cross the duality)."""
    if pair.context == MODULE:
        op = opposite(pair.alg)
        return CotorsionPair.module_pair(
            op,
            [op_interval(pair.alg, iv) for iv in pair.v_members],
            [op_interval(pair.alg, iv) for iv in pair.u_members])
    op = opposite(pair.alg)
    op_window = Window(-pair.window.d_max, -pair.window.d_min,
                       pair.window.margin)
    u_view, v_view = derived_views(pair)
    op_u = SubcatSpec(
        context=DERIVED,
        items=frozenset(op_shifted(pair.alg, s) for s in v_view.members))
    op_v = SubcatSpec(
        context=DERIVED,
        items=frozenset(op_shifted(pair.alg, s) for s in u_view.members))
    return CotorsionPair.derived_pair(op, op_window, op_u, op_v)


def opposite_analysis(ana: PairAnalysis):
    """Analysis of the transported pair in the opposite context, plus the
    correspondence checks (hearts match; the injective law here is the
    projective law there)."""
    pair = ana.pair
    op_pair = opposite_pair(pair)
    op_ana = analyze(op_pair, ana.mult_factor)
    checks = {}
    if pair.context == MODULE:
        alg = pair.alg
        heart_here = {str(op_interval(alg, h)) for h in heart_indecs(ana)}
        heart_there = {str(h) for h in heart_indecs(op_ana)}
        checks["heart_matches"] = heart_here == heart_there
        checks["dual_coheart_matches_opposite_coheart"] = (
            {str(op_interval(alg, d)) for d in dual_coheart(ana)}
            == {str(c) for c in coheart(op_ana)})
        kd, _ = kernel_dual_pair_check(ana)
        ck_op, _ = coheart_kernel_pair_check(op_ana)
        checks["dual_pair_law_swaps"] = (kd == ck_op
                                         if None not in (kd, ck_op)
                                         else None)
    else:
        alg = pair.alg
        heart_here = {str(op_shifted(alg, h)) for h in heart_indecs(ana)}
        heart_there = {str(h) for h in heart_indecs(op_ana)}
        checks["heart_matches"] = heart_here == heart_there
    ei, _ = enough_injectives_check(ana)
    ep_op, _ = enough_projectives_check(op_ana)
    checks["enough_injectives_swaps"] = (ei == ep_op
                                         if None not in (ei, ep_op)
                                         else None)
    return op_ana, checks

"""Finite-dimensional algebras presented by vertices and composable
generators, their block representations, and the comparison functor
Hom(P, -) from a quotient category to the representations of the
endomorphism algebra of P.

Conventions.  An algebra is spanned by one idempotent per vertex plus the
listed generators; a generator ``g`` runs from vertex ``src(g)`` to vertex
``tgt(g)`` and the product ``g * h`` is the composite ``g after h``,
defined exactly when ``src(g) == tgt(h)``.  A right module assigns to each
vertex ``x`` a block of dimension ``dims[x]`` and to each generator
``g: a -> b`` a matrix ``mats[g]`` of shape ``dims[a] x dims[b]`` acting
on column vectors: the action of ``g`` sends block ``b`` into block ``a``.
Multiplicativity then reads ``mats[g * h] = mats[h] @ mats[g]``.
"""

import itertools
from fractions import Fraction

from .exactfield import Mat, GFElem, rank, kernel_basis, in_span, solve
from .modcat import is_projective, projective_intervals
from .hearts import (
    MODULE, ModuleHomCalc, DerivedHomCalc, q_post_matrix, q_pre_matrix,
    heart_calc, heart_indecs, heart_projective_indecs,
    heart_projective_images, coheart_members,
)


class FunctorSearchError(Exception):
    pass


# --- algebras ----------------------------------------------------------------

class FinAlgebra:
    """Basic algebra given by vertices, generators and a product table.

    ``vertices`` are hashable labels.  ``gens`` is a tuple of
    ``(src_index, tgt_index, label)`` triples.  ``mult`` maps a composable
    pair ``(i, j)`` of generator indices to a tuple of ``(k, coeff)``
    pairs expressing the product ``gens[i] * gens[j]``; composable pairs
    missing from the table have product zero.
    """

    def __init__(self, vertices, gens, mult):
        self.vertices = tuple(vertices)
        self.gens = tuple((int(s), int(t), lab) for s, t, lab in gens)
        self.mult = {k: tuple((int(g), Fraction(c)) for g, c in v)
                     for k, v in dict(mult).items()}

    @property
    def dim(self):
        return len(self.vertices) + len(self.gens)

    def composable(self, i, j):
        """Whether gens[i] * gens[j] (i after j) is defined."""
        return self.gens[i][0] == self.gens[j][1]

    def gen_counts(self):
        """Number of generators per ordered (src_vertex, tgt_vertex)."""
        out = {}
        for s, t, _ in self.gens:
            out[(s, t)] = out.get((s, t), 0) + 1
        return out

    def _prod(self, i, j):
        """Product gens[i] * gens[j] as a dict gen_index -> coeff."""
        if not self.composable(i, j):
            raise ValueError(f"generators {i} and {j} are not composable")
        return {k: c for k, c in self.mult.get((i, j), ()) if c}

    def check(self):
        """Structural violations: bad table keys, endpoint mismatches,
        non-associative triples.  Empty list means consistent."""
        bad = []
        ng = len(self.gens)
        for (i, j), terms in self.mult.items():
            if not (0 <= i < ng and 0 <= j < ng):
                bad.append(f"table key ({i},{j}) out of range")
                continue
            if not self.composable(i, j):
                bad.append(f"table key ({i},{j}) is not composable")
                continue
            src, tgt = self.gens[j][0], self.gens[i][1]
            for k, _ in terms:
                if self.gens[k][0] != src or self.gens[k][1] != tgt:
                    bad.append(
                        f"product ({i},{j}) has term {k} with wrong ends")
        if bad:
            return bad
        for i in range(ng):
            for j in range(ng):
                if not self.composable(i, j):
                    continue
                for k in range(ng):
                    if not self.composable(j, k):
                        continue
                    left, right = {}, {}
                    for m, c in self._prod(i, j).items():
                        for n, d in self._prod(m, k).items():
                            left[n] = left.get(n, Fraction(0)) + c * d
                    for m, c in self._prod(j, k).items():
                        for n, d in self._prod(i, m).items():
                            right[n] = right.get(n, Fraction(0)) + c * d
                    left = {n: c for n, c in left.items() if c}
                    right = {n: c for n, c in right.items() if c}
                    if left != right:
                        bad.append(f"associativity fails on ({i},{j},{k})")
        return bad


def end_algebra(calc, objs):
    """Endomorphism algebra of the direct sum of ``objs`` in the quotient
    category of ``calc``.

    Requires the summands to be pairwise distinct with one-dimensional
    endomorphism spaces (true for the interval categories in use), so the
    vertices are the summands and the generators are the live basis maps
    between distinct summands.  Returns ``(algebra, info)`` where ``info``
    carries the single-summand objects and the generator morphisms needed
    to evaluate Hom(P, -).
    """
    objs = list(objs)
    if len(set(objs)) != len(objs):
        raise ValueError("endomorphism-algebra summands must be distinct")
    singles = [calc.mk_single(o) for o in objs]
    for o, so in zip(objs, singles):
        d = calc.dim(so, so)
        if d != 1:
            raise FunctorSearchError(
                f"summand {o} has endomorphism dimension {d}, expected 1")
    gens, gen_mors = [], []
    for i, si in enumerate(singles):
        for j, sj in enumerate(singles):
            if i == j:
                continue
            for pair in calc.live(si, sj):
                gens.append((i, j, (objs[i], objs[j], pair)))
                gen_mors.append(calc.gen(si, sj, pair))
    index = {}
    for g, (s, t, lab) in enumerate(gens):
        index[(s, t, lab[2])] = g
    mult = {}
    for gi, (si_, ti_, labi) in enumerate(gens):
        for gj, (sj_, tj_, labj) in enumerate(gens):
            if si_ != tj_:
                continue
            comp = calc.compose(gen_mors[gi], gen_mors[gj])
            red = calc.reduce(comp)
            terms = []
            for pair, coeff in red.items():
                if not coeff:
                    continue
                if sj_ == ti_:
                    raise FunctorSearchError(
                        "nonzero composite returning to its source summand "
                        "contradicts the one-dimensional endomorphism "
                        "assumption")
                key = (sj_, ti_, pair)
                if key not in index:
                    raise FunctorSearchError(
                        f"composite lands outside the generator basis: {key}")
                terms.append((index[key], Fraction(coeff)))
            if terms:
                mult[(gi, gj)] = tuple(terms)
    fa = FinAlgebra([str(o) for o in objs], gens, mult)
    info = {"objects": tuple(objs), "singles": tuple(singles),
            "gen_mors": tuple(gen_mors), "calc": calc}
    return fa, info


# --- block representations ----------------------------------------------------

class BlockRep:
    """Right module over a FinAlgebra: one block per vertex, one matrix per
    generator ``g: a -> b`` of shape ``dims[a] x dims[b]``."""

    def __init__(self, dims, mats):
        self.dims = tuple(int(d) for d in dims)
        self.mats = dict(mats)

    @property
    def total_dim(self):
        return sum(self.dims)

    def key(self):
        return (self.dims,
                tuple(sorted((g, tuple(map(tuple, m.data)))
                             for g, m in self.mats.items())))


def rep_check(fa, rep, cast=Fraction):
    """Violations of shapes and multiplicativity; a composable pair absent
    from the table must act as zero."""
    bad = []
    for g, (s, t, _) in enumerate(fa.gens):
        m = rep.mats[g]
        if m.rows != rep.dims[s] or m.cols != rep.dims[t]:
            bad.append(f"generator {g} matrix has wrong shape")
    if bad:
        return bad
    for i in range(len(fa.gens)):
        for j in range(len(fa.gens)):
            if not fa.composable(i, j):
                continue
            actual = rep.mats[j] * rep.mats[i]
            expected = Mat.zero(actual.rows, actual.cols)
            for k, coeff in fa.mult.get((i, j), ()):
                expected = expected + rep.mats[k].scale(cast(coeff))
            if not (actual - expected).is_zero():
                bad.append(f"action not multiplicative on pair ({i},{j})")
    return bad


def module_of(info, x):
    """The representation Hom(P, x) of the endomorphism algebra of P: the
    block at vertex ``a`` is the quotient Hom from summand ``a`` to ``x``,
    and a generator acts by precomposition."""
    calc = info["calc"]
    dims = tuple(calc.dim(s, x) for s in info["singles"])
    mats = {g: q_pre_matrix(calc, mor, x)
            for g, mor in enumerate(info["gen_mors"])}
    return BlockRep(dims, mats)


def rep_mod_p(rep, p):
    """Reduce a rational representation modulo p."""
    mats = {}
    for g, m in rep.mats.items():
        mm = Mat(m.rows, m.cols)
        for r in range(m.rows):
            for c in range(m.cols):
                mm.data[r][c] = GFElem(p, m.data[r][c])
        mats[g] = mm
    return BlockRep(rep.dims, mats)


# --- morphism spaces between representations ----------------------------------

def _offsets(fa, repM, repN):
    offs, total = [], 0
    for x in range(len(fa.vertices)):
        offs.append(total)
        total += repN.dims[x] * repM.dims[x]
    return offs, total


def _flatten_blocks(fa, repM, repN, blocks):
    offs, total = _offsets(fa, repM, repN)
    vec = [Fraction(0)] * total
    for x, b in enumerate(blocks):
        dn, dm = repN.dims[x], repM.dims[x]
        for r in range(dn):
            for s in range(dm):
                vec[offs[x] + r * dm + s] = b.data[r][s]
    return vec


def _unflatten_blocks(fa, repM, repN, vec):
    offs, _ = _offsets(fa, repM, repN)
    blocks = []
    for x in range(len(fa.vertices)):
        dn, dm = repN.dims[x], repM.dims[x]
        b = Mat(dn, dm)
        for r in range(dn):
            for s in range(dm):
                b.data[r][s] = vec[offs[x] + r * dm + s]
        blocks.append(b)
    return tuple(blocks)


def intertwiners(fa, repM, repN, one=Fraction(1)):
    """Basis of the space of module maps repM -> repN, as tuples of
    per-vertex blocks ``T_x`` of shape ``dimsN[x] x dimsM[x]`` with
    ``T_a @ matM(g) == matN(g) @ T_b`` for every generator ``g: a -> b``."""
    offs, total = _offsets(fa, repM, repN)
    zero = one * 0
    rows = []
    for g, (a, b, _) in enumerate(fa.gens):
        mg, ng = repM.mats[g], repN.mats[g]
        for r in range(repN.dims[a]):
            for c in range(repM.dims[b]):
                row = [zero] * total
                for s in range(repM.dims[a]):
                    row[offs[a] + r * repM.dims[a] + s] = \
                        row[offs[a] + r * repM.dims[a] + s] + mg.data[s][c]
                for s in range(repN.dims[b]):
                    row[offs[b] + s * repM.dims[b] + c] = \
                        row[offs[b] + s * repM.dims[b] + c] - ng.data[r][s]
                rows.append(row)
    if not rows:
        basis = []
        for k in range(total):
            vec = [zero] * total
            vec[k] = one
            basis.append(vec)
        return [_unflatten_blocks(fa, repM, repN, v) for v in basis]
    system = Mat(len(rows), total, rows)
    return [_unflatten_blocks(fa, repM, repN, v)
            for v in kernel_basis(system)]


def _blocks_are_identity(blocks):
    for b in blocks:
        if not (b - Mat.identity(b.rows)).is_zero():
            return False
    return True


def _space_elements(basis, p):
    """All nonzero elements of the span of ``basis`` block tuples over the
    field with p elements."""
    m = len(basis)
    for coeffs in itertools.product(range(p), repeat=m):
        if not any(coeffs):
            continue
        blocks = []
        for x in range(len(basis[0])):
            acc = Mat.zero(basis[0][x].rows, basis[0][x].cols)
            for c, bas in zip(coeffs, basis):
                if c:
                    acc = acc + bas[x].scale(GFElem(p, c))
            blocks.append(acc)
        yield tuple(blocks)


def _support_shortcut(fa, rep):
    """Sound quick decomposability tests from the support graph: a
    representation supported on several components of the graph whose
    edges are the generators acting nonzero is a direct sum; so is one
    supported on a single vertex of dimension at least two with every
    incident generator acting as zero."""
    supported = [x for x in range(len(fa.vertices)) if rep.dims[x] > 0]
    if len(supported) <= 1:
        if not supported:
            return None
        x = supported[0]
        if rep.dims[x] >= 2:
            for g, (a, b, _) in enumerate(fa.gens):
                if a == x and b == x and not rep.mats[g].is_zero():
                    return None
            return "split"
        return None
    parent = {x: x for x in supported}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g, (a, b, _) in enumerate(fa.gens):
        if a in parent and b in parent and not rep.mats[g].is_zero():
            parent[find(a)] = find(b)
    roots = {find(x) for x in supported}
    return "split" if len(roots) > 1 else None


def is_indecomposable(fa, rep, p, space_cap=4096):
    """Whether a representation over the field with p elements is
    indecomposable, decided by the absence of nontrivial idempotent
    endomorphisms."""
    if rep.total_dim == 0:
        return False
    if _support_shortcut(fa, rep) == "split":
        return False
    basis = intertwiners(fa, rep, rep, one=GFElem(p, 1))
    if p ** len(basis) > space_cap:
        raise FunctorSearchError(
            f"endomorphism space of dimension {len(basis)} exceeds the "
            f"search cap")
    for blocks in _space_elements(basis, p):
        if all(b.is_zero() for b in blocks):
            continue
        if _blocks_are_identity(blocks):
            continue
        if all(((b * b) - b).is_zero() for b in blocks):
            return False
    return True


def reps_isomorphic(fa, repA, repB, p, space_cap=4096):
    """Whether two representations over the field with p elements are
    isomorphic, by searching the morphism space for an invertible
    element."""
    if repA.dims != repB.dims:
        return False
    basis = intertwiners(fa, repA, repB, one=GFElem(p, 1))
    if not basis:
        return repA.total_dim == 0
    if p ** len(basis) > space_cap:
        raise FunctorSearchError(
            f"morphism space of dimension {len(basis)} exceeds the "
            f"search cap")
    for blocks in _space_elements(basis, p):
        if all(rank(b) == b.rows for b in blocks):
            return True
    return False


# --- enumeration of indecomposables over a small field -------------------------

def enumerate_indec_modules(fa, p=2, dim_bound=3, assign_cap=1 << 20,
                            space_cap=4096):
    """All indecomposable representations of the algebra over the field
    with p elements with total dimension at most ``dim_bound``, up to
    isomorphism.  Exhaustive within the bound; raises FunctorSearchError
    when a search space exceeds its cap rather than guessing."""
    nv, ng = len(fa.vertices), len(fa.gens)
    found = []
    dim_vectors = sorted(
        (d for d in itertools.product(range(dim_bound + 1), repeat=nv)
         if 0 < sum(d) <= dim_bound),
        key=lambda d: (sum(d), d))
    for dims in dim_vectors:
        shapes = [(dims[s], dims[t]) for s, t, _ in fa.gens]
        entries = sum(r * c for r, c in shapes)
        if p ** entries > assign_cap:
            raise FunctorSearchError(
                f"assignment space for dimension vector {dims} exceeds "
                f"the cap")
        for flat in itertools.product(range(p), repeat=entries):
            mats, k = {}, 0
            for g, (r, c) in enumerate(shapes):
                m = Mat(r, c)
                for i in range(r):
                    for j in range(c):
                        m.data[i][j] = GFElem(p, flat[k])
                        k += 1
                mats[g] = m
            rep = BlockRep(dims, mats)
            if rep_check(fa, rep, cast=lambda fr: GFElem(p, fr)):
                continue
            if not is_indecomposable(fa, rep, p, space_cap):
                continue
            if any(reps_isomorphic(fa, rep, other, p, space_cap)
                   for other in found if other.dims == rep.dims):
                continue
            found.append(rep)
    return found


# --- the comparison functor ----------------------------------------------------

def functor_on_map(info, m):
    """Blocks of Hom(P, m): postcomposition with m on each Hom(p_a, -)."""
    calc = info["calc"]
    return tuple(q_post_matrix(calc, s, m) for s in info["singles"])


def fully_faithful_table(fa, info, objs):
    """For each ordered pair of objects, compare the quotient Hom
    dimension, the module-map space between their images, and the rank of
    the induced map.  Fully faithful means all three agree everywhere."""
    calc = info["calc"]
    singles = {x: calc.mk_single(x) for x in objs}
    images = {x: module_of(info, singles[x]) for x in objs}
    table, ok = {}, True
    for x in objs:
        for y in objs:
            d_hom = calc.dim(singles[x], singles[y])
            basis = intertwiners(fa, images[x], images[y])
            basis_vecs = [_flatten_blocks(fa, images[x], images[y], b)
                          for b in basis]
            _, total = _offsets(fa, images[x], images[y])
            cols = []
            for pair in calc.live(singles[x], singles[y]):
                mor = calc.gen(singles[x], singles[y], pair)
                blocks = functor_on_map(info, mor)
                col = _flatten_blocks(fa, images[x], images[y], blocks)
                if basis_vecs and not in_span(basis_vecs, total, col):
                    raise FunctorSearchError(
                        "image of a basis map is not a module map")
                cols.append(col)
            mat = Mat(total, len(cols),
                      [[cols[c][r] for c in range(len(cols))]
                       for r in range(total)]) if cols else Mat.zero(total, 0)
            entry = {"hom_dim": d_hom, "map_space_dim": len(basis),
                     "induced_rank": rank(mat)}
            entry["bijective"] = (d_hom == len(basis) == entry["induced_rank"])
            ok = ok and entry["bijective"]
            table[(str(x), str(y))] = entry
    return ok, table, images


def _density_report(fa, images_q, p, space_cap=4096):
    """Reduce the image representations mod p, confirm they stay valid,
    indecomposable and pairwise non-isomorphic, then enumerate all
    indecomposables up to one dimension above the largest image."""
    reps, labels = [], []
    for label, rep in images_q.items():
        rp = rep_mod_p(rep, p)
        bad = rep_check(fa, rp, cast=lambda fr: GFElem(p, fr))
        if bad:
            raise FunctorSearchError(
                f"image of {label} is not multiplicative mod {p}: {bad}")
        reps.append(rp)
        labels.append(label)
    for rp, label in zip(reps, labels):
        if not is_indecomposable(fa, rp, p, space_cap):
            return {"dense": False, "prime": p,
                    "reason": f"image of {label} decomposes mod {p}"}
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if reps_isomorphic(fa, reps[i], reps[j], p, space_cap):
                return {"dense": False, "prime": p,
                        "reason": f"images of {labels[i]} and {labels[j]} "
                                  f"are isomorphic mod {p}"}
    bound = max((r.total_dim for r in reps), default=0) + 1
    all_indec = enumerate_indec_modules(fa, p=p, dim_bound=bound,
                                        space_cap=space_cap)
    extra = []
    for cand in all_indec:
        if not any(reps_isomorphic(fa, cand, r, p, space_cap)
                   for r in reps):
            extra.append(cand.dims)
    return {"dense": not extra, "prime": p, "bound": bound,
            "indec_count": len(all_indec), "image_count": len(reps),
            "extra_dimension_vectors": extra}


# --- the equivalence check -----------------------------------------------------

def stable_coheart_algebra(ana):
    """Endomorphism algebra of the coheart on the source side: in the
    module context the non-projective coheart members in the quotient by
    the projectives, in the triangulated context the coheart members with
    no quotient."""
    pair = ana.pair
    if pair.context == MODULE:
        alg = pair.alg
        objs = sorted((c for c in coheart_members(ana)
                       if not is_projective(alg, c)),
                      key=lambda iv: iv.key())
        calc = ModuleHomCalc(alg, list(projective_intervals(alg)))
        return end_algebra(calc, objs)
    objs = sorted(coheart_members(ana), key=lambda si: si.key())
    calc = DerivedHomCalc(pair.alg, [])
    return end_algebra(calc, objs)


def verify_equivalence(ana, primes=(2, 3, 5), space_cap=4096):
    """Check that Hom(P, -) embeds the heart fully faithfully into the
    representations of the endomorphism algebra of its projectives P, and
    that it is dense among representations over a small field up to the
    relevant dimension; also compare that endomorphism algebra with the
    stable endomorphism algebra of the coheart."""
    report = {"caveats": []}
    hs = list(heart_indecs(ana))
    report["heart_size"] = len(hs)
    if not hs:
        report.update({"ok": True, "trivial": True})
        return report
    ps = list(heart_projective_indecs(ana))
    if not ps:
        report.update({"ok": False,
                       "reason": "no projective objects recorded"})
        return report
    calc = heart_calc(ana)
    fa, info = end_algebra(calc, ps)
    report["algebra_dim"] = fa.dim
    report["algebra_vertices"] = [str(v) for v in fa.vertices]
    report["algebra_gen_count"] = len(fa.gens)
    structure = fa.check()
    if structure:
        report.update({"ok": False, "reason": "algebra inconsistent",
                       "violations": structure})
        return report
    ff_ok, table, images = fully_faithful_table(fa, info, hs)
    report["fully_faithful"] = ff_ok
    report["hom_table"] = {f"{k[0]} -> {k[1]}": v for k, v in table.items()}
    for x in hs:
        bad = rep_check(fa, images[x])
        if bad:
            report.update({"ok": False,
                           "reason": f"image of {x} not multiplicative",
                           "violations": bad})
            return report
    images_q = {str(x): images[x] for x in hs}
    density = None
    for p in primes:
        try:
            density = _density_report(fa, images_q, p, space_cap)
        except (FunctorSearchError, ValueError) as exc:
            report["caveats"].append(f"density check mod {p} failed: {exc}")
            continue
        if density["dense"]:
            break
    report["density"] = density
    if density is not None and density.get("bound") is not None:
        report["caveats"].append(
            f"density certified over the {density['prime']}-element field "
            f"for total dimension <= {density['bound']}")
    try:
        fa2, _ = stable_coheart_algebra(ana)
        cmp_report = {"dim": fa2.dim, "dims_match": fa2.dim == fa.dim,
                      "vertex_count": len(fa2.vertices),
                      "vertex_count_matches":
                          len(fa2.vertices) == len(fa.vertices)}
        cmp_report.update(_quiver_match(ana, fa, fa2))
        report["coheart_algebra"] = cmp_report
    except (FunctorSearchError, ValueError) as exc:
        report["caveats"].append(f"coheart algebra comparison failed: {exc}")
        report["coheart_algebra"] = None
    dense_ok = bool(density and density.get("dense"))
    report["ok"] = ff_ok and dense_ok
    return report


def _quiver_match(ana, fa, fa2):
    """Compare generator counts of the two endomorphism algebras along the
    correspondence sending a coheart member to its heart image, when that
    correspondence is a bijection of single summands."""
    images = heart_projective_images(ana)
    pair = ana.pair
    if pair.context == MODULE:
        keys = sorted((c for c in images), key=lambda iv: iv.key())
    else:
        keys = sorted(images, key=lambda si: si.key())
    if [str(k) for k in keys] != list(fa2.vertices):
        return {"quiver_match": None,
                "quiver_note": "vertex sets do not line up with the "
                               "recorded heart images"}
    slot_map = {}
    for k in keys:
        value = images[k]
        slots = list(value.slots)
        if len(slots) != 1:
            return {"quiver_match": None,
                    "quiver_note": f"heart image of {k} is not a single "
                                   f"summand"}
        slot_map[str(k)] = str(slots[0])
    if sorted(slot_map.values()) != sorted(fa.vertices):
        return {"quiver_match": None,
                "quiver_note": "heart images do not biject onto the "
                               "projective summands"}
    pos = {v: i for i, v in enumerate(fa.vertices)}
    counts1 = fa.gen_counts()
    counts2 = fa2.gen_counts()
    translated = {}
    for (s, t), n in counts2.items():
        key = (pos[slot_map[fa2.vertices[s]]], pos[slot_map[fa2.vertices[t]]])
        translated[key] = translated.get(key, 0) + n
    return {"quiver_match": translated == counts1}

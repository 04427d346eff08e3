"""Finite-dimensional modules over linear serial (Nakayama-type) algebras.

The algebra is the path algebra of 1 <- 2 <- ... <- n modulo "cap" relations:
caps[v] bounds the length of any interval module with top v.  Every
indecomposable is an interval M[a,b] (socle a, top b, valid iff
b-a+1 <= caps[b]), and all Hom/Ext spaces between intervals are 0- or
1-dimensional with canonical generators, which keeps the whole category
combinatorial.  The closed forms used as fast paths here are validated in the
test suite against the independent linear-algebra route (commuting-matrix
solver, pushout cokernels, barcode extraction) before anything trusts them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactfield import Mat, kernel_basis, rank, solve


# --- basic combinatorial data ---

@dataclass(frozen=True, order=True)
class Interval:
    """Interval module M[a,b]: supported on vertices a..b, socle a, top b."""
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < self.a:
            raise ValueError(f"bad interval [{self.a},{self.b}]")

    @property
    def length(self):
        return self.b - self.a + 1

    def key(self):
        return (self.length, self.a)

    def __str__(self):
        return f"[{self.a},{self.b}]"


def parse_interval(s: str) -> Interval:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"cannot parse interval {s!r}")
    parts = s[1:-1].split(",")
    if len(parts) != 2:
        raise ValueError(f"cannot parse interval {s!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"cannot parse interval {s!r}") from None
    return Interval(a, b)


@dataclass(frozen=True)
class Algebra:
    """Linear Nakayama algebra on vertices 1..n with arrows v+1 -> v.

    caps[v-1] is the maximal length of an interval with top v (Loewy length
    of the projective at v).  Admissibility: 1 <= caps[v] <= min(v, caps[v-1]+1),
    so valid intervals are closed under submodules and quotients.
    """
    n: int
    caps: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.caps) != self.n:
            raise ValueError("caps length must equal n")
        prev = 0
        for v, l in enumerate(self.caps, start=1):
            if not (1 <= l <= v):
                raise ValueError(f"cap {l} at vertex {v} out of range")
            if v > 1 and l > prev + 1:
                raise ValueError(f"cap {l} at vertex {v} exceeds cap[{v - 1}]+1")
            prev = l

    @classmethod
    def uniform(cls, n, cap=None):
        """Uniform cap (composite of `cap` consecutive arrows vanishes); hereditary if cap is None."""
        if cap is None:
            cap = n
        return cls(n, tuple(min(v, cap) for v in range(1, n + 1)))

    def valid(self, a, b):
        return 1 <= a <= b <= self.n and b - a + 1 <= self.caps[b - 1]

    def pstart(self, t):
        """Socle vertex of the projective with top t."""
        return t - self.caps[t - 1] + 1


@lru_cache(maxsize=None)
def indecomposables(alg: Algebra):
    """All interval modules, canonically ordered by (length, socle)."""
    ivs = [Interval(a, b) for b in range(1, alg.n + 1) for a in range(1, b + 1)
           if alg.valid(a, b)]
    ivs.sort(key=lambda iv: iv.key())
    return tuple(ivs)


@lru_cache(maxsize=None)
def projective_intervals(alg: Algebra):
    return tuple(Interval(alg.pstart(t), t) for t in range(1, alg.n + 1))


@lru_cache(maxsize=None)
def injective_intervals(alg: Algebra):
    out = []
    for a in range(1, alg.n + 1):
        b = a
        while b + 1 <= alg.n and alg.valid(a, b + 1):
            b += 1
        out.append(Interval(a, b))
    return tuple(out)


def is_projective(alg, iv: Interval):
    return iv.a == alg.pstart(iv.b)


def is_injective(alg, iv: Interval):
    return iv in injective_intervals(alg)


@lru_cache(maxsize=None)
def opposite(alg: Algebra) -> Algebra:
    """Opposite algebra, again linear serial via the vertex flip w = n+1-v."""
    caps = []
    for w in range(1, alg.n + 1):
        a = alg.n + 1 - w
        l = 1
        while l + 1 <= w and alg.valid(a, a + l):
            l += 1
        caps.append(l)
    return Algebra(alg.n, tuple(caps))


def op_interval(alg, iv: Interval) -> Interval:
    """Transport of an interval to the opposite algebra (an involution)."""
    return Interval(alg.n + 1 - iv.b, alg.n + 1 - iv.a)


# --- closed forms (validated against the solver in tests) ---

def hom01(x: Interval, y: Interval) -> int:
    """dim Hom(M[a,b], M[c,d]) for intervals; the map projects then includes."""
    return 1 if x.a <= y.a <= x.b <= y.b else 0


def ext01(alg, x: Interval, y: Interval) -> int:
    """dim Ext1(M[a,b], M[c,d]) = [p_b <= c <= a-1 <= d <= b-1]."""
    p = alg.pstart(x.b)
    return 1 if p <= y.a <= x.a - 1 <= y.b <= x.b - 1 else 0


def syzygy_interval(alg, x: Interval):
    """Kernel of the minimal projective cover; None when x is projective."""
    p = alg.pstart(x.b)
    if p > x.a - 1:
        return None
    return Interval(p, x.a - 1)


def gen_compose01(x: Interval, y: Interval, z: Interval) -> int:
    """can(x->y) followed by can(y->z): equals can(x->z) iff z.a <= x.b, else 0."""
    if not (hom01(x, y) and hom01(y, z)):
        raise ValueError("composing nonexistent generators")
    return 1 if z.a <= x.b else 0


def middle_intervals(alg, x: Interval, y: Interval):
    """Summands of the middle of the nonsplit extension 0 -> y -> E -> x -> 0."""
    if not ext01(alg, x, y):
        raise ValueError(f"Ext1({x},{y}) = 0, no nonsplit extension")
    out = [Interval(y.a, x.b)]
    if x.a <= y.b:
        out.append(Interval(x.a, y.b))
    return out


# --- objects: multisets of intervals ---

class Obj:
    """Finite multiset of intervals, kept in canonical slot order."""

    __slots__ = ("slots",)

    def __init__(self, intervals=()):
        self.slots = tuple(sorted(intervals, key=lambda iv: iv.key()))

    @classmethod
    def from_counts(cls, counts):
        out = []
        for iv, m in counts.items():
            if m < 0:
                raise ValueError("negative multiplicity")
            out.extend([iv] * m)
        return cls(out)

    def counts(self):
        d = {}
        for iv in self.slots:
            d[iv] = d.get(iv, 0) + 1
        return d

    def __add__(self, other):
        return Obj(self.slots + other.slots)

    def __eq__(self, other):
        return isinstance(other, Obj) and self.slots == other.slots

    def __hash__(self):
        return hash(self.slots)

    def __bool__(self):
        return bool(self.slots)

    def __len__(self):
        return len(self.slots)

    def dim(self):
        return sum(iv.length for iv in self.slots)

    def dimvec(self, n):
        out = [0] * (n + 1)
        for iv in self.slots:
            for v in range(iv.a, iv.b + 1):
                out[v] += 1
        return tuple(out[1:])

    def __str__(self):
        if not self.slots:
            return "0"
        cnt = self.counts()
        return " + ".join(f"{iv}" + (f"^{m}" if m > 1 else "")
                          for iv, m in sorted(cnt.items(), key=lambda t: t[0].key()))

    __repr__ = __str__


def positions_at(obj: Obj, v: int):
    """Slot indices contributing a basis vector at vertex v, in slot order."""
    return [k for k, iv in enumerate(obj.slots) if iv.a <= v <= iv.b]


# --- representations (vertexwise linear data) ---

class Rep:
    """dims[v] for v in 1..n plus arrow matrices arr[v]: V_v -> V_{v-1}."""

    def __init__(self, alg, dims, arrows):
        self.alg = alg
        self.dims = tuple(dims)
        if len(self.dims) != alg.n:
            raise ValueError("dims length mismatch")
        self.arrows = dict(arrows)
        for v in range(2, alg.n + 1):
            m = self.arrows.get(v)
            if m is None:
                m = Mat.zero(self.dim(v - 1), self.dim(v))
                self.arrows[v] = m
            if (m.rows, m.cols) != (self.dim(v - 1), self.dim(v)):
                raise ValueError(f"arrow at {v} has wrong shape")

    def dim(self, v):
        return self.dims[v - 1]

    def composite(self, src, dst):
        """Composite map V_src -> V_dst for dst <= src."""
        m = Mat.identity(self.dim(src))
        for v in range(src, dst, -1):
            m = self.arrows[v] * m
        return m

    def check_relations(self):
        for b in range(1, self.alg.n + 1):
            lo = b - self.alg.caps[b - 1]
            if lo >= 1 and self.dim(b) and self.dim(lo):
                if not self.composite(b, lo).is_zero():
                    raise ValueError(f"cap relation violated at top {b}")


def assemble(alg, obj: Obj) -> Rep:
    """Canonical representation of an interval multiset (identity chains)."""
    dims = [len(positions_at(obj, v)) for v in range(1, alg.n + 1)]
    arrows = {}
    for v in range(2, alg.n + 1):
        src = positions_at(obj, v)
        dst = positions_at(obj, v - 1)
        m = Mat.zero(len(dst), len(src))
        for col, slot in enumerate(src):
            iv = obj.slots[slot]
            if iv.a <= v - 1:
                m.data[dst.index(slot)][col] = Fraction(1)
        arrows[v] = m
    for iv in obj.slots:
        if not alg.valid(iv.a, iv.b):
            raise ValueError(f"interval {iv} not a module over this algebra")
    return Rep(alg, dims, arrows)


def decompose(alg, rep: Rep) -> Obj:
    """Barcode of a representation by inclusion-exclusion on composite ranks.

    Raises ValueError if the representation violates the cap relations.
    """
    rep.check_relations()
    n = alg.n
    R = {}
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            R[(i, j)] = rank(rep.composite(j, i)) if rep.dim(j) else 0

    def r(i, j):
        if i < 1 or j > n or i > j:
            return 0
        return R[(i, j)]

    out = []
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            m = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
            if m < 0:
                raise ValueError("inconsistent rank data in barcode")
            out.extend([Interval(i, j)] * m)
    obj = Obj(out)
    if obj.dimvec(n) != rep.dims:
        raise ValueError("barcode does not account for all of the space")
    return obj


def standardize(alg, rep: Rep):
    """Explicit isomorphism rep ~ assemble(obj): returns (obj, to_std, from_std).

    from_std[v] maps the canonical basis of assemble(obj) at vertex v into
    rep coordinates; to_std[v] is its inverse.  Uses a top-down persistence
    sweep with the elder rule so each bar's trajectory is an honest chain.
    """
    rep.check_relations()
    n = alg.n
    bars = []  # dicts: top, vecs {v: list}, alive

    def reduce_against(vec, placed, level, bar=None):
        # eliminate pivots of already-placed bars from vec (propagating up
        # through the bar's recorded trajectory when bar is given)
        for pb in placed:
            pv = pb["vecs"][level]
            piv = pb["pivot"]
            if vec[piv]:
                c = vec[piv] / pv[piv]
                vec = [x - c * y for x, y in zip(vec, pv)]
                if bar is not None:
                    for u in range(level + 1, bar["top"] + 1):
                        bar["vecs"][u] = [x - c * y
                                          for x, y in zip(bar["vecs"][u], pb["vecs"][u])]
        return vec

    for v in range(n, 0, -1):
        placed = []
        alive = [b for b in bars if b["alive"]]
        alive.sort(key=lambda b: -b["top"])
        for bar in alive:
            vec = rep.arrows[v + 1].apply(bar["vecs"][v + 1])
            vec = reduce_against(vec, placed, v, bar)
            if any(vec):
                bar["vecs"][v] = vec
                bar["pivot"] = next(i for i, x in enumerate(vec) if x)
                placed.append(bar)
            else:
                bar["alive"] = False
                bar["death"] = v
        # birth of new bars: complete to a basis of V_v
        for i in range(rep.dim(v)):
            vec = [Fraction(0)] * rep.dim(v)
            vec[i] = Fraction(1)
            vec = reduce_against(vec, placed, v)
            if any(vec):
                nb = {"top": v, "vecs": {v: vec}, "alive": True, "death": None,
                      "pivot": next(i for i, x in enumerate(vec) if x)}
                bars.append(nb)
                placed.append(nb)
    for b in bars:
        if b["alive"]:
            b["death"] = 0
    intervals = [Interval(b["death"] + 1, b["top"]) for b in bars]
    obj = Obj(intervals)
    # match bars to canonical slots (stable within equal intervals)
    remaining = list(range(len(bars)))
    slot_of_bar = {}
    for slot, iv in enumerate(obj.slots):
        for idx in remaining:
            bb = bars[idx]
            if (bb["death"] + 1, bb["top"]) == (iv.a, iv.b):
                slot_of_bar[idx] = slot
                remaining.remove(idx)
                break
    from_std = []
    to_std = []
    for v in range(1, n + 1):
        pos = positions_at(obj, v)
        col_of_slot = {s: c for c, s in enumerate(pos)}
        T = Mat.zero(rep.dim(v), len(pos))
        for idx, slot in slot_of_bar.items():
            bb = bars[idx]
            if bb["death"] + 1 <= v <= bb["top"]:
                for r_ in range(rep.dim(v)):
                    T.data[r_][col_of_slot[slot]] = bb["vecs"][v][r_]
        from_std.append(T)
        to_std.append(mat_inverse(T))
    return obj, to_std, from_std


def mat_inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    data = [row[:] + Mat.identity(n).data[i] for i, row in enumerate(m.data)]
    aug = Mat(n, 2 * n, data)
    from .exactfield import _row_echelon
    pivots = _row_echelon(aug.data, n, 2 * n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    out = Mat(n, n)
    out.data = [row[n:] for row in aug.data]
    return out


# --- morphisms in canonical slot coordinates ---

class Mor:
    """Morphism between canonical objects, stored per-vertex as matrices."""

    __slots__ = ("alg", "src", "tgt", "mats")

    def __init__(self, alg, src: Obj, tgt: Obj, mats):
        self.alg = alg
        self.src = src
        self.tgt = tgt
        self.mats = mats  # list index v-1 -> Mat (tgt dim x src dim at v)

    @classmethod
    def zero(cls, alg, src, tgt):
        mats = [Mat.zero(len(positions_at(tgt, v)), len(positions_at(src, v)))
                for v in range(1, alg.n + 1)]
        return cls(alg, src, tgt, mats)

    @classmethod
    def from_coords(cls, alg, src, tgt, coords):
        """coords: dict (src_slot, tgt_slot) -> coefficient on the canonical generator."""
        m = cls.zero(alg, src, tgt)
        for (i, j), c in coords.items():
            if not c:
                continue
            x, y = src.slots[i], tgt.slots[j]
            if not hom01(x, y):
                raise ValueError(f"no generator {x} -> {y}")
            for v in range(y.a, x.b + 1):
                row = positions_at(tgt, v).index(j)
                col = positions_at(src, v).index(i)
                m.mats[v - 1].data[row][col] = m.mats[v - 1].data[row][col] + Fraction(c)
        return m

    def coords(self):
        """Read off canonical-generator coefficients (valid for true morphisms)."""
        out = {}
        for i, x in enumerate(self.src.slots):
            v = x.b
            col = positions_at(self.src, v).index(i)
            for j, y in enumerate(self.tgt.slots):
                if hom01(x, y):
                    row = positions_at(self.tgt, v).index(j)
                    c = self.mats[v - 1].data[row][col]
                    if c:
                        out[(i, j)] = c
        return out

    def compose(self, other):
        """self after other (other: A -> B, self: B -> C)."""
        if other.tgt != self.src:
            raise ValueError("composition mismatch")
        mats = [a * b for a, b in zip(self.mats, other.mats)]
        return Mor(self.alg, other.src, self.tgt, mats)

    def add(self, other):
        return Mor(self.alg, self.src, self.tgt,
                   [a + b for a, b in zip(self.mats, other.mats)])

    def scale(self, c):
        return Mor(self.alg, self.src, self.tgt, [m.scale(c) for m in self.mats])

    def is_morphism(self):
        """Commutes with arrows (sanity check used by tests)."""
        xs = assemble(self.alg, self.src)
        ys = assemble(self.alg, self.tgt)
        for v in range(2, self.alg.n + 1):
            lhs = self.mats[v - 2] * xs.arrows[v]
            rhs = ys.arrows[v] * self.mats[v - 1]
            if not (lhs - rhs).is_zero():
                return False
        return True

    def is_zero(self):
        return all(m.is_zero() for m in self.mats)


def canonical_gen(alg, src: Obj, tgt: Obj, i, j) -> Mor:
    return Mor.from_coords(alg, src, tgt, {(i, j): 1})


def hom_basis(alg, x: Obj, y: Obj):
    """Canonical basis of Hom(x, y): one generator per admissible slot pair."""
    return [((i, j), canonical_gen(alg, x, y, i, j))
            for i, xi in enumerate(x.slots)
            for j, yj in enumerate(y.slots)
            if hom01(xi, yj)]


def hom_dim(alg, x: Obj, y: Obj) -> int:
    return sum(hom01(xi, yj) for xi in x.slots for yj in y.slots)


def ext1_dim(alg, x: Obj, y: Obj) -> int:
    return sum(ext01(alg, xi, yj) for xi in x.slots for yj in y.slots)


def ext1_pairs(alg, x: Obj, y: Obj):
    """Slot pairs carrying a nonzero extension class (a basis of Ext1)."""
    return [(i, j) for i, xi in enumerate(x.slots) for j, yj in enumerate(y.slots)
            if ext01(alg, xi, yj)]


def hom_space_solver(alg, x: Obj, y: Obj):
    """Independent Hom computation: kernel of the commuting constraints.

    Used by tests as the oracle against the closed form; returns Mor list.
    """
    xs, ys = assemble(alg, x), assemble(alg, y)
    cells = [(v, r, c) for v in range(1, alg.n + 1)
             for r in range(ys.dim(v)) for c in range(xs.dim(v))]
    idx = {cell: k for k, cell in enumerate(cells)}
    rows = []
    for v in range(2, alg.n + 1):
        for r in range(ys.dim(v - 1)):
            for c in range(xs.dim(v)):
                row = [Fraction(0)] * len(cells)
                # (f_{v-1} * xarr)_{rc} - (yarr * f_v)_{rc} = 0
                for k in range(xs.dim(v - 1)):
                    if xs.arrows[v].data[k][c]:
                        row[idx[(v - 1, r, k)]] += xs.arrows[v].data[k][c]
                for k in range(ys.dim(v)):
                    if ys.arrows[v].data[r][k]:
                        row[idx[(v, k, c)]] -= ys.arrows[v].data[r][k]
                if any(row):
                    rows.append(row)
    if not cells:
        return []
    if rows:
        basis = kernel_basis(Mat(len(rows), len(cells), rows))
    else:
        basis = [[Fraction(1) if i == k else Fraction(0) for i in range(len(cells))]
                 for k in range(len(cells))]
    out = []
    for vec in basis:
        mor = Mor.zero(alg, x, y)
        for cell, k in idx.items():
            if vec[k]:
                v, r, c = cell
                mor.mats[v - 1].data[r][c] = vec[k]
        out.append(mor)
    return out


# --- projective covers, syzygies, conflations ---

def projective_cover(alg, x: Obj):
    """(P, epi P -> x) with P the direct sum of minimal covers of the slots."""
    cover_ivs = [Interval(alg.pstart(iv.b), iv.b) for iv in x.slots]
    p_obj, perm = _obj_with_assignment(cover_ivs)
    coords = {(perm[i], i): 1 for i in range(len(x.slots))}
    return p_obj, Mor.from_coords(alg, p_obj, x, coords)


def syzygy(alg, x: Obj) -> Obj:
    out = []
    for iv in x.slots:
        s = syzygy_interval(alg, iv)
        if s is not None:
            out.append(s)
    return Obj(out)


def _obj_with_assignment(intervals):
    """Obj from a list plus the map original-position -> slot index."""
    obj = Obj(intervals)
    used = set()
    perm = {}
    for orig, iv in enumerate(intervals):
        for slot, siv in enumerate(obj.slots):
            if siv == iv and slot not in used:
                perm[orig] = slot
                used.add(slot)
                break
    return obj, perm


def _syzygy_data(alg, b: Obj):
    """Syzygy with slot bookkeeping: (omega, p_obj, iota, pi, omega_slot_of_b_slot)."""
    p_obj, epi = projective_cover(alg, b)
    # epi coords are keyed (p_slot, b_slot); invert to b slot -> p slot
    perm_p = {bi: pj for (pj, bi) in epi.coords()}
    omega_ivs = []
    omega_of = {}
    for i, iv in enumerate(b.slots):
        s = syzygy_interval(alg, iv)
        if s is not None:
            omega_of[i] = len(omega_ivs)
            omega_ivs.append(s)
    omega, perm_o = _obj_with_assignment(omega_ivs)
    omega_slot_of = {i: perm_o[omega_of[i]] for i in omega_of}
    iota_coords = {}
    for i in omega_of:
        iota_coords[(omega_slot_of[i], perm_p[i])] = 1
    iota = Mor.from_coords(alg, omega, p_obj, iota_coords)
    return omega, p_obj, iota, epi, omega_slot_of, perm_p


class Conflation:
    """A short exact sequence 0 -> sub -> mid -> quot -> 0 with explicit maps."""

    __slots__ = ("alg", "sub", "mid", "quot", "incl", "proj")

    def __init__(self, alg, sub, mid, quot, incl: Mor, proj: Mor):
        self.alg = alg
        self.sub = sub
        self.mid = mid
        self.quot = quot
        self.incl = incl
        self.proj = proj

    def verify(self):
        """Exactness by ranks plus dimension additivity."""
        if not self.proj.compose(self.incl).is_zero():
            return False
        for v in range(1, self.alg.n + 1):
            di = len(positions_at(self.sub, v))
            dm = len(positions_at(self.mid, v))
            dq = len(positions_at(self.quot, v))
            if di + dq != dm:
                return False
            if rank(self.incl.mats[v - 1]) != di:
                return False
            if rank(self.proj.mats[v - 1]) != dq:
                return False
        return True


def extension_middle(alg, b: Obj, v: Obj, cls) -> Obj:
    """Middle term of the extension of b by v with the given class.

    cls maps (b_slot, v_slot) to a coefficient; entries must sit on slot pairs
    with nonzero Ext1 (anything else is an input error).  The zero class gives
    b + v.  Computed via the pushout of the syzygy sequence of b along the
    class representative; decomposed by barcode.
    """
    return extension_conflation(alg, b, v, cls, with_maps=False)


def extension_conflation(alg, b: Obj, v: Obj, cls, with_maps=True):
    for (i, j), c in cls.items():
        if not (0 <= i < len(b.slots) and 0 <= j < len(v.slots)):
            raise ValueError(f"class entry on missing slot pair {(i, j)}")
        if c and not ext01(alg, b.slots[i], v.slots[j]):
            raise ValueError(f"class entry on zero Ext pair ({b.slots[i]},{v.slots[j]})")
    cls = {k: Fraction(c) for k, c in cls.items() if c}
    if not cls:
        if not with_maps:
            return b + v
        # assign b-slots and v-slots to disjoint slots of the sum, so the
        # inclusion and projection never hit the same copy of a repeated
        # interval
        mid, perm = _obj_with_assignment(list(b.slots) + list(v.slots))
        nb = len(b.slots)
        incl = Mor.from_coords(alg, v, mid,
                               {(j, perm[nb + j]): 1 for j in range(len(v.slots))})
        proj = Mor.from_coords(alg, mid, b,
                               {(perm[i], i): 1 for i in range(nb)})
        return Conflation(alg, v, mid, b, incl, proj)

    omega, p_obj, iota, epi, omega_slot_of, perm_p = _syzygy_data(alg, b)
    g_coords = {}
    for (i, j), c in cls.items():
        g_coords[(omega_slot_of[i], j)] = c
    g = Mor.from_coords(alg, omega, v, g_coords)

    n = alg.n
    dims = []
    arrows = {}
    # block layout per vertex: P part then v part
    p_rep, v_rep, o_rep = assemble(alg, p_obj), assemble(alg, v), assemble(alg, omega)
    for u in range(1, n + 1):
        dims.append(p_rep.dim(u) + v_rep.dim(u))
    for u in range(2, n + 1):
        m = Mat.zero(dims[u - 2], dims[u - 1])
        pa, va = p_rep.arrows[u], v_rep.arrows[u]
        for r in range(pa.rows):
            for c in range(pa.cols):
                m.data[r][c] = pa.data[r][c]
        for r in range(va.rows):
            for c in range(va.cols):
                m.data[p_rep.dim(u - 1) + r][p_rep.dim(u) + c] = va.data[r][c]
        arrows[u] = m
    # map (iota, -g): Omega -> P + v
    maps = []
    for u in range(1, n + 1):
        m = Mat.zero(dims[u - 1], o_rep.dim(u))
        im, gm = iota.mats[u - 1], g.mats[u - 1]
        for r in range(im.rows):
            for c in range(im.cols):
                m.data[r][c] = im.data[r][c]
        for r in range(gm.rows):
            for c in range(gm.cols):
                m.data[p_rep.dim(u) + r][c] = -gm.data[r][c]
        maps.append(m)
    coker_rep, proj_mats, sect_mats = _cokernel_rep(alg, Rep(alg, dims, arrows), maps)
    mid, to_std, from_std = standardize(alg, coker_rep)
    if not with_maps:
        return mid
    # v -> mid: include into the v block, then project to the cokernel, then to std
    incl_mats = []
    proj_mats_out = []
    for u in range(1, n + 1):
        vi = Mat.zero(dims[u - 1], v_rep.dim(u))
        for r in range(v_rep.dim(u)):
            vi.data[p_rep.dim(u) + r][r] = Fraction(1)
        incl_mats.append(to_std[u - 1] * (proj_mats[u - 1] * vi))
        # mid -> b: section to P+v, then (epi, 0)
        pb = Mat.zero(len(positions_at(b, u)), dims[u - 1])
        em = epi.mats[u - 1]
        for r in range(em.rows):
            for c in range(em.cols):
                pb.data[r][c] = em.data[r][c]
        proj_mats_out.append(pb * (sect_mats[u - 1] * from_std[u - 1]))
    incl = Mor(alg, v, mid, incl_mats)
    proj = Mor(alg, mid, b, proj_mats_out)
    return Conflation(alg, v, mid, b, incl, proj)


def _summand_mor(alg, part: Obj, whole: Obj, include=True):
    """Inclusion of (or projection onto) a canonical direct summand."""
    used = set()
    pairing = {}
    for i, iv in enumerate(part.slots):
        for j, jv in enumerate(whole.slots):
            if jv == iv and j not in used:
                pairing[i] = j
                used.add(j)
                break
    if include:
        return Mor.from_coords(alg, part, whole, {(i, j): 1 for i, j in pairing.items()})
    return Mor.from_coords(alg, whole, part, {(j, i): 1 for i, j in pairing.items()})


def _cokernel_rep(alg, ambient: Rep, image_maps):
    """Cokernel of a map into ambient given by per-vertex matrices.

    Returns (coker_rep, proj_mats, sect_mats): proj is the quotient map in
    chosen coordinates, sect a linear section (not a module map; used only to
    express induced maps that do descend).
    """
    n = alg.n
    proj_mats, sect_mats, dims = [], [], []
    for u in range(1, n + 1):
        im = image_maps[u - 1]
        D = ambient.dim(u)
        # column echelon of the image to find pivot rows
        cols = [[im.data[r][c] for r in range(D)] for c in range(im.cols)]
        reduced = []
        pivots = []
        for col in cols:
            col = col[:]
            for piv, rcol in zip(pivots, reduced):
                if col[piv]:
                    f = col[piv] / rcol[piv]
                    col = [x - f * y for x, y in zip(col, rcol)]
            nz = next((i for i, x in enumerate(col) if x), None)
            if nz is not None:
                reduced.append(col)
                pivots.append(nz)
        free = [r for r in range(D) if r not in pivots]
        dims.append(len(free))
        # projection: subtract image columns to clear pivot rows, keep free rows
        P = Mat.zero(len(free), D)
        for k, fr in enumerate(free):
            P.data[k][fr] = Fraction(1)
        for piv, rcol in zip(pivots, reduced):
            # e_piv maps to -(rest of that reduced column restricted to free rows)/lead
            lead = rcol[piv]
            for k, fr in enumerate(free):
                P.data[k][piv] = P.data[k][piv] - rcol[fr] / lead
        S = Mat.zero(D, len(free))
        for k, fr in enumerate(free):
            S.data[fr][k] = Fraction(1)
        proj_mats.append(P)
        sect_mats.append(S)
    arrows = {}
    for u in range(2, n + 1):
        arrows[u] = proj_mats[u - 2] * (ambient.arrows[u] * sect_mats[u - 1])
    return Rep(alg, dims, arrows), proj_mats, sect_mats


def conflation_check(alg, sub: Obj, mid: Obj, quot: Obj, incl: Mor, proj: Mor):
    """Re-verify a claimed conflation: exactness plus Hom(-, T) left exactness probes."""
    if incl.src != sub or incl.tgt != mid or proj.src != mid or proj.tgt != quot:
        return False
    if not proj.compose(incl).is_zero():
        return False
    conf = Conflation(alg, sub, mid, quot, incl, proj)
    return conf.verify()


# --- approximations ---

def left_approximation(alg, x: Obj, s_indecs):
    """Universal left add(s)-approximation of x plus a minimized variant.

    Returns (target, mor, min_target, min_mor): every map x -> add(s) factors
    through mor by construction (one copy per canonical generator).
    """
    gens = []
    for siv in sorted(set(s_indecs), key=lambda iv: iv.key()):
        for i, xi in enumerate(x.slots):
            if hom01(xi, siv):
                gens.append((i, siv))
    target = Obj([siv for _, siv in gens])
    _, perm = _obj_with_assignment([siv for _, siv in gens])
    coords = {(i, perm[k]): 1 for k, (i, siv) in enumerate(gens)}
    mor = Mor.from_coords(alg, x, target, coords)
    keep = _minimize_approx(alg, x, gens)
    min_target = Obj([gens[k][1] for k in keep])
    _, mperm = _obj_with_assignment([gens[k][1] for k in keep])
    min_coords = {(gens[k][0], mperm[t]): 1 for t, k in enumerate(keep)}
    min_mor = Mor.from_coords(alg, x, min_target, min_coords)
    return target, mor, min_target, min_mor


def _minimize_approx(alg, x, gens, right=False):
    """Greedily drop generator copies that factor through the remaining ones."""
    keep = list(range(len(gens)))
    changed = True
    while changed:
        changed = False
        for k in list(keep):
            rest = [t for t in keep if t != k]
            if _gen_factors(alg, x, gens, k, rest, right):
                keep.remove(k)
                changed = True
                break
    return keep


def _gen_factors(alg, x, gens, k, rest, right):
    i0, s0 = gens[k]
    targetgen = (x.slots[i0], s0) if not right else (s0, x.slots[i0])
    span = []
    for t in rest:
        i1, s1 = gens[t]
        if not right:
            # need x -> s1 -> s0 composing to the (i0, s0) generator
            if i1 != i0:
                # composite through a different x-slot generator cannot produce
                # a map supported on slot i0 alone unless zero; slot-pair basis
                continue
            if hom01(s1, s0) and gen_compose01(x.slots[i1], s1, s0):
                span.append(t)
        else:
            if i1 != i0:
                continue
            if hom01(s0, s1) and gen_compose01(s0, s1, x.slots[i1]):
                span.append(t)
    return bool(span)


def right_approximation(alg, x: Obj, s_indecs):
    """Universal right add(s)-approximation (maps add(s) -> x) plus minimized variant."""
    gens = []
    for siv in sorted(set(s_indecs), key=lambda iv: iv.key()):
        for i, xi in enumerate(x.slots):
            if hom01(siv, xi):
                gens.append((i, siv))
    source = Obj([siv for _, siv in gens])
    _, perm = _obj_with_assignment([siv for _, siv in gens])
    coords = {(perm[k], i): 1 for k, (i, siv) in enumerate(gens)}
    mor = Mor.from_coords(alg, source, x, coords)
    keep = _minimize_approx(alg, x, gens, right=True)
    min_source = Obj([gens[k][1] for k in keep])
    _, mperm = _obj_with_assignment([gens[k][1] for k in keep])
    min_coords = {(mperm[t], gens[k][0]): 1 for t, k in enumerate(keep)}
    min_mor = Mor.from_coords(alg, min_source, x, min_coords)
    return source, mor, min_source, min_mor


# --- extension closure (used by the kernel computation) ---

def extension_closure(alg, seed_intervals):
    """Smallest summand-closed, extension-closed set of intervals containing the seed.

    Closure steps add all summands of middles of extensions with the quotient a
    single member and the sub a multiplicity-free all-nonzero-class sum of
    members; by filtration refinement and summand reduction this generates the
    full extension closure.
    """
    current = set(seed_intervals)
    changed = True
    while changed:
        changed = False
        members = sorted(current, key=lambda iv: iv.key())
        for q in members:
            supp = [s for s in members if ext01(alg, q, s)]
            for r in range(1, len(supp) + 1):
                for combo in itertools.combinations(supp, r):
                    mids = _closure_middle(alg, q, combo)
                    for iv in mids:
                        if iv not in current:
                            current.add(iv)
                            changed = True
            if changed:
                break
    return frozenset(current)


@lru_cache(maxsize=None)
def _closure_middle_cached(alg, q, combo):
    b = Obj([q])
    v = Obj(list(combo))
    cls = {}
    for j, iv in enumerate(v.slots):
        cls[(0, j)] = 1
    mid = extension_middle(alg, b, v, cls)
    return tuple(sorted(set(mid.slots), key=lambda iv: iv.key()))


def _closure_middle(alg, q, combo):
    return _closure_middle_cached(alg, q, tuple(sorted(combo, key=lambda iv: iv.key())))

"""Command-line front end: configuration parsing and validation, shipped
preset configurations, analysis orchestration, ASCII diagram rendering,
JSON report emission, and witness rechecking.

Exit codes: 0 all verifications passed; 1 a verification failed; 2 input
error; 3 inconclusive-only outcome (window-boundary verdicts)."""

import argparse
import json
import sys
import time
from fractions import Fraction

from .modcat import (Algebra, Interval, parse_interval, indecomposables,
                     Obj, opposite, op_interval)
from .dercat import (hereditary_algebra, Window, ShiftedInterval,
                     parse_shifted, DObj, DMor, cone, grid_cell)
from .pairs import (MODULE, DERIVED, SubcatSpec, ConflationWitness,
                    recheck_conflation, recheck_conflation_into)
from . import hearts as hearts
from . import funcat as funcat


class ConfigError(Exception):
    pass


# --- configuration ------------------------------------------------------------

_BOUND_DEFAULTS = {"audit_factor": 1, "prime": 2, "dim_bound": None}


class Config:
    """Validated run configuration; canonical form round-trips through
    JSON exactly."""

    def __init__(self, context, algebra=None, window=None, u=None, v=None,
                 bounds=None):
        self.context = context
        self.algebra = algebra
        self.window = window
        self.u = u
        self.v = v
        self.bounds = bounds

    def __eq__(self, other):
        return isinstance(other, Config) and serialize_config(self) == \
            serialize_config(other)

    def __repr__(self):
        return f"Config({serialize_config(self)})"


def parse_config(data):
    """Validate a config dict; raises ConfigError on any schema problem or
    on references to indecomposables that do not exist in the context."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    allowed = {"context", "algebra", "window", "u", "v", "bounds"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    context = data.get("context")
    if context not in (MODULE, DERIVED):
        raise ConfigError(f"context must be '{MODULE}' or '{DERIVED}'")
    bounds = dict(_BOUND_DEFAULTS)
    for key, val in (data.get("bounds") or {}).items():
        if key not in _BOUND_DEFAULTS:
            raise ConfigError(f"unknown bounds key: {key}")
        bounds[key] = val
    if not isinstance(bounds["audit_factor"], int) or \
            bounds["audit_factor"] < 1:
        raise ConfigError("audit_factor must be a positive integer")
    if not isinstance(bounds["prime"], int) or bounds["prime"] < 2:
        raise ConfigError("prime must be an integer >= 2")
    if bounds["dim_bound"] is not None and (
            not isinstance(bounds["dim_bound"], int)
            or bounds["dim_bound"] < 1):
        raise ConfigError("dim_bound must be a positive integer or null")

    if context == MODULE:
        if data.get("window") is not None:
            raise ConfigError("module context takes 'algebra', not 'window'")
        algebra = data.get("algebra")
        if not isinstance(algebra, dict) or \
                set(algebra) != {"n", "caps"}:
            raise ConfigError("algebra must be {'n': int, 'caps': [ints]}")
        try:
            alg = Algebra(int(algebra["n"]), tuple(algebra["caps"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad algebra: {exc}")
        u = _parse_item_class(data.get("u"), alg, "u")
        v = None
        if data.get("v") is not None:
            v = _parse_item_class(data.get("v"), alg, "v")
        cfg = Config(MODULE,
                     algebra={"n": alg.n, "caps": list(alg.caps)},
                     u={"items": [str(iv) for iv in u]},
                     v=None if v is None else
                       {"items": [str(iv) for iv in v]},
                     bounds=bounds)
        return cfg

    if data.get("algebra") is not None:
        raise ConfigError("derived context takes 'window', not 'algebra'")
    window = data.get("window")
    if not isinstance(window, dict) or \
            set(window) != {"n", "d_min", "d_max", "margin"}:
        raise ConfigError(
            "window must be {'n','d_min','d_max','margin'} with ints")
    try:
        alg = hereditary_algebra(int(window["n"]))
        win = Window(int(window["d_min"]), int(window["d_max"]),
                     int(window["margin"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad window: {exc}")
    u = _parse_spec_class(data.get("u"), alg, win, "u")
    v = None
    if data.get("v") is not None:
        v = _parse_spec_class(data.get("v"), alg, win, "v")
    return Config(DERIVED,
                  window={"n": alg.n, "d_min": win.d_min,
                          "d_max": win.d_max, "margin": win.margin},
                  u=u, v=v, bounds=bounds)


def _parse_item_class(obj, alg, name):
    if not isinstance(obj, dict) or list(obj) != ["items"] or \
            not isinstance(obj["items"], list):
        raise ConfigError(f"'{name}' must be {{'items': [intervals]}}")
    known = set(indecomposables(alg))
    out = []
    for s in obj["items"]:
        try:
            iv = parse_interval(s)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad interval in '{name}': {exc}")
        if iv not in known:
            raise ConfigError(
                f"interval {iv} does not exist for this algebra")
        out.append(iv)
    return sorted(set(out), key=lambda iv: iv.key())


def _parse_spec_class(obj, alg, win, name):
    if not isinstance(obj, dict):
        raise ConfigError(f"'{name}' must be an object with items or "
                          f"patterns")
    try:
        SubcatSpec.from_json(obj, DERIVED)
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad '{name}' class spec: {exc}")
    known = set(indecomposables(alg))
    mentioned = []
    for s in obj.get("items", []):
        mentioned.append(s)
    for pat in obj.get("patterns", []):
        mentioned.extend(pat.get("cell", []))
    canon = {"items": sorted(obj["items"])} if "items" in obj else \
        {"patterns": [dict(sorted(p.items())) for p in obj["patterns"]]}
    for s in mentioned:
        try:
            si = parse_shifted(s)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad shifted interval in '{name}': {exc}")
        if si.iv not in known:
            raise ConfigError(
                f"interval {si.iv} does not exist for this quiver")
    return canon


def serialize_config(cfg):
    out = {"context": cfg.context, "bounds": dict(cfg.bounds)}
    if cfg.context == MODULE:
        out["algebra"] = {"n": cfg.algebra["n"],
                          "caps": list(cfg.algebra["caps"])}
    else:
        out["window"] = dict(cfg.window)
    out["u"] = cfg.u
    if cfg.v is not None:
        out["v"] = cfg.v
    return out


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    return parse_config(data)


def build_pair(cfg):
    """The cotorsion-pair object a config describes."""
    if cfg.context == MODULE:
        alg = Algebra(cfg.algebra["n"], tuple(cfg.algebra["caps"]))
        u = [parse_interval(s) for s in cfg.u["items"]]
        v = None
        if cfg.v is not None:
            v = [parse_interval(s) for s in cfg.v["items"]]
        return hearts.CotorsionPair.module_pair(alg, u, v)
    alg = hereditary_algebra(cfg.window["n"])
    win = Window(cfg.window["d_min"], cfg.window["d_max"],
                 cfg.window["margin"])
    u_spec = SubcatSpec.from_json(cfg.u, DERIVED)
    v_spec = None
    if cfg.v is not None:
        v_spec = SubcatSpec.from_json(cfg.v, DERIVED)
    return hearts.CotorsionPair.derived_pair(alg, win, u_spec, v_spec)


# --- presets -------------------------------------------------------------------

_PRESETS = {
    "nakayama-a5": {
        "context": "module",
        "algebra": {"n": 5, "caps": [1, 2, 3, 4, 4]},
        "u": {"items": ["[1,1]", "[1,2]", "[1,3]", "[1,4]", "[2,5]",
                        "[4,4]", "[5,5]", "[4,5]", "[3,5]"]},
    },
    "nakayama-a5-dual": {
        "context": "module",
        "algebra": {"n": 5, "caps": [1, 2, 3, 4, 4]},
        "u": {"items": ["[1,1]", "[1,2]", "[1,3]", "[1,4]", "[2,5]",
                        "[4,5]", "[5,5]"]},
    },
    "derived-a4": {
        "context": "derived",
        "window": {"n": 4, "d_min": -9, "d_max": 11, "margin": 8},
        "u": {"patterns": [
            {"cell": ["[1,1]@0", "[1,2]@0", "[2,2]@0"], "period": 1},
            {"cell": ["[2,3]@2", "[3,3]@2", "[1,3]@2"], "period": 1,
             "min_degree": 2},
        ]},
    },
}


def preset_config(name):
    if name not in _PRESETS:
        raise ConfigError(
            f"unknown preset '{name}'; available: {sorted(_PRESETS)}")
    return parse_config(_PRESETS[name])


# --- JSON plumbing ---------------------------------------------------------------

def jsonify(x):
    """Best-effort canonical JSON form: Fractions and domain objects become
    strings, mappings get string keys, tuples become lists."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonify(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items = sorted(items, key=json.dumps)
        return items
    as_json = getattr(x, "as_json", None)
    if callable(as_json):
        return jsonify(as_json())
    return str(x)


def dumps_report(report):
    return json.dumps(jsonify(report), indent=2, sort_keys=True)


def _flatten_flags(report):
    """The decisive verdicts that drive the exit code."""
    flags = []

    def add(*vals):
        flags.extend(vals)

    pair = report.get("pair")
    if pair:
        add(pair.get("verdict"))
    th = report.get("theorem")
    if th:
        add(th.get("enough_projectives"), th.get("pair_law"),
            th.get("agreement"))
        add((th.get("lattice") or {}).get("consistent"))
        if "projectives_all_from_coheart" in th:
            add(th["projectives_all_from_coheart"])
        inv = th.get("invariants") or {}
        for key in ("coheart_is_ext_perp_of_kernel",
                    "dual_coheart_is_ext_perp_of_kernel",
                    "coheart_is_hom_perp_of_kernel",
                    "dual_coheart_is_hom_perp_of_kernel",
                    "coheart_hom_dims_transfer",
                    "projective_images_left_sequences",
                    "u_functorially_finite"):
            if key in inv:
                add(inv[key])
        eq = th.get("equivalence")
        if eq is not None:
            add(eq.get("ok"))
    dt = report.get("dual_theorem")
    if dt:
        add(dt.get("enough_injectives"), dt.get("dual_pair_law"),
            dt.get("agreement"))
    for entry in report.get("theorems", []):
        add(entry.get("agreement"))
    for check in (report.get("opposite_checks") or {}).values():
        add(check)
    return flags


def exit_code_for(report):
    flags = _flatten_flags(report)
    if any(f is False for f in flags):
        return 1
    if any(f is None for f in flags):
        return 3
    return 0


# --- report assembly -------------------------------------------------------------

def _class_listings(ana):
    pair = ana.pair
    out = {}
    if pair.context == MODULE:
        out["u"] = [str(x) for x in pair.u_members]
        out["v"] = [str(x) for x in pair.v_members]
    else:
        u_view, v_view = hearts.derived_views(pair)
        win = pair.window
        out["u"] = sorted(str(s) for s in u_view.members
                          if win.in_trust(s))
        out["v"] = sorted(str(s) for s in v_view.members
                          if win.in_trust(s))
    out["w"] = [str(x) for x in hearts.w_members(ana)]
    out["heart"] = [str(x) for x in hearts.heart_indecs(ana)]
    out["coheart"] = [str(x) for x in hearts.coheart_members(ana)]
    out["dual_coheart"] = [str(x) for x in hearts.dual_coheart_members(ana)]
    out["kernel"] = [str(x) for x in hearts.kernel_members_list(ana)]
    out["heart_projectives"] = [str(x)
                                for x in hearts.heart_projective_indecs(ana)]
    out["heart_injectives"] = [str(x)
                               for x in hearts.heart_injective_indecs(ana)]
    return out


def _h_image_section(ana):
    """Heart images of the coheart side, with their search witnesses."""
    pair = ana.pair
    out = {}
    if pair.context == MODULE:
        for c, om in hearts.omega_coheart(ana).items():
            value, rep = hearts.h_object_module(ana, Obj([om]))
            out[str(c)] = {"syzygy": str(om),
                           "value": [str(s) for s in value.slots],
                           "witness": rep}
        return out
    for c in hearts.coheart_members(ana):
        value, rep = hearts.h_object_derived(ana, DObj([c]))
        out[str(c)] = {
            "value": None if value is None
            else [str(s) for s in value.slots],
            "witness": rep}
    return out


def gamma_summary(ana):
    """The endomorphism algebra of the heart projectives, as
    {dim, quiver {vertices, arrows, relations}}."""
    ps = list(hearts.heart_projective_indecs(ana))
    if not ps:
        return None
    fa, _ = funcat.end_algebra(hearts.heart_calc(ana), ps)
    arrows = [f"g{i}: {fa.vertices[s]} -> {fa.vertices[t]}"
              for i, (s, t, _) in enumerate(fa.gens)]
    relations = []
    for i in range(len(fa.gens)):
        for j in range(len(fa.gens)):
            if not fa.composable(i, j):
                continue
            terms = fa.mult.get((i, j), ())
            if not terms:
                relations.append(f"g{i}.g{j} = 0")
            else:
                rhs = " + ".join(
                    f"g{k}" if c == 1 else f"({c})*g{k}" for k, c in terms)
                relations.append(f"g{i}.g{j} = {rhs}")
    return {"dim": fa.dim,
            "quiver": {"vertices": list(fa.vertices), "arrows": arrows,
                       "relations": relations}}


def run_analyze(cfg, audit_factor=None):
    """Full pipeline on one pair: axioms, classes, heart images, theorem,
    dual theorem, endomorphism-algebra summary."""
    t0 = time.time()
    factor = audit_factor or cfg.bounds["audit_factor"]
    pair = build_pair(cfg)
    verdict, pair_rep = hearts.verify_cotorsion_pair(pair, factor)
    ana = hearts.analyze(pair, factor)
    report = {
        "command": "analyze",
        "config": serialize_config(cfg),
        "context": pair.context,
        "audit_factor": factor,
        "counts": {"indecomposables": len(indecomposables(pair.alg))},
        "pair": {"verdict": verdict, "report": pair_rep},
    }
    t1 = time.time()
    report["classes"] = _class_listings(ana)
    report["h_images"] = _h_image_section(ana)
    report["theorem"] = hearts.verify_theorem(ana)
    report["theorem_pair_witnesses"] = {
        k: v for k, v in hearts.coheart_kernel_pair_check(ana)[1].items()
        if k in ("onto", "into", "star")}
    report["dual_theorem"] = hearts.verify_dual_theorem(ana)
    report["dual_pair_witnesses"] = {
        k: v for k, v in hearts.kernel_dual_pair_check(ana)[1].items()
        if k in ("onto", "into", "star")}
    report["gamma"] = gamma_summary(ana)
    report["caveats"] = sorted(set(ana.caveats))
    report["timing_seconds"] = {"pair_axioms": round(t1 - t0, 3),
                                "total": round(time.time() - t0, 3)}
    return report


def run_enumerate(cfg, verify_theorems=False):
    """All cotorsion pairs on the configured algebra (module context),
    optionally with the theorem battery on each."""
    if cfg.context != MODULE:
        raise ConfigError("enumerate requires a module-context config")
    t0 = time.time()
    alg = Algebra(cfg.algebra["n"], tuple(cfg.algebra["caps"]))
    pairs = hearts.enumerate_cotorsion_pairs(alg, cfg.bounds["audit_factor"])
    report = {
        "command": "enumerate",
        "config": serialize_config(cfg),
        "count": len(pairs),
        "pairs": [{"u": [str(x) for x in p.u_members],
                   "v": [str(x) for x in p.v_members]} for p in pairs],
    }
    if verify_theorems:
        entries = []
        negatives = []
        for p in pairs:
            ana = hearts.analyze(p, cfg.bounds["audit_factor"])
            th = hearts.verify_theorem(ana)
            entry = {
                "u": [str(x) for x in p.u_members],
                "enough_projectives": th["enough_projectives"],
                "pair_law": th["pair_law"],
                "agreement": th["agreement"],
                "equivalence_ok": (th.get("equivalence") or {}).get("ok"),
            }
            if th["enough_projectives"] is False:
                negatives.append(entry["u"])
            entries.append(entry)
        report["theorems"] = entries
        report["negative_instances"] = negatives
        report["negative_instance_note"] = (
            "no negative instance observed" if not negatives
            else f"{len(negatives)} negative instances observed")
    report["timing_seconds"] = {"total": round(time.time() - t0, 3)}
    return report


def run_dual(cfg):
    """Transport the pair to the opposite context and check the duality
    correspondences."""
    t0 = time.time()
    pair = build_pair(cfg)
    ana = hearts.analyze(pair, cfg.bounds["audit_factor"])
    op_ana, checks = hearts.opposite_analysis(ana)
    op_pair = op_ana.pair
    report = {
        "command": "dual",
        "config": serialize_config(cfg),
        "context": pair.context,
        "dual_theorem": hearts.verify_dual_theorem(ana),
        "opposite_checks": checks,
        "opposite_context": {
            "u": [str(x) for x in (
                op_pair.u_members if pair.context == MODULE
                else sorted(hearts.derived_views(op_pair)[0].members,
                            key=lambda s: s.key()))],
            "heart": [str(x) for x in hearts.heart_indecs(op_ana)],
        },
        "caveats": sorted(set(ana.caveats) | set(op_ana.caveats)),
    }
    report["timing_seconds"] = {"total": round(time.time() - t0, 3)}
    return report


# --- ASCII rendering -------------------------------------------------------------

_BLANK = " "
_EMPTY = "·"      # ·
_MEMBER = "∘"     # ∘
_COHEART = "•"    # •
_HEART = "★"      # ★


def _module_cells(alg):
    """interval -> (row, char column); rows list short intervals first, the
    staggering follows the standard diagonal layout."""
    cells = {}
    for iv in indecomposables(alg):
        length = iv.b - iv.a + 1
        cells[str(iv)] = (length, (iv.a - 1) * 2 + (length - 1))
    return cells


def _derived_cells(alg, win):
    cells = {}
    for si in win.objects(alg):
        col, row = grid_cell(alg.n, si)
        cells[str(si)] = (row, col)
    mincol = min(c for _, c in cells.values())
    return {k: (r, c - mincol) for k, (r, c) in cells.items()}


def _grid_text(cells, marker_of):
    taken = {}
    for key, cell in cells.items():
        if cell in taken:
            raise AssertionError(
                f"grid cell collision: {key} and {taken[cell]}")
        taken[cell] = key
    rows = max(r for r, _ in cells.values())
    width = max(c for _, c in cells.values()) + 1
    lines = []
    for r in range(1, rows + 1):
        line = [_BLANK] * width
        for key, (row, col) in cells.items():
            if row == r:
                line[col] = marker_of(key)
        lines.append("".join(line).rstrip())
    return "\n".join(lines)


def render_ascii(report):
    """Diagram pages for a report: one grid per recorded class (marker ∘),
    then a combined grid (★ heart, • coheart, ∘ u-class).  Distinct
    membership sets always render distinct grids: every object owns its
    own cell."""
    config = report.get("config") or {}
    classes = report.get("classes") or {}
    context = report.get("context")
    if context == MODULE:
        alg = Algebra(config["algebra"]["n"],
                      tuple(config["algebra"]["caps"]))
        cells = _module_cells(alg)
    elif context == DERIVED:
        alg = hereditary_algebra(config["window"]["n"])
        win = Window(config["window"]["d_min"], config["window"]["d_max"],
                     config["window"]["margin"])
        cells = _derived_cells(alg, win)
    else:
        raise ValueError("report carries no renderable context")
    sections = []
    for name in ("u", "v", "coheart", "dual_coheart", "heart"):
        members = set(classes.get(name) or [])
        text = _grid_text(
            cells, lambda k: _MEMBER if k in members else _EMPTY)
        sections.append(f"[{name}]\n{text}")
    heart = set(classes.get("heart") or [])
    coheart = set(classes.get("coheart") or [])
    uclass = set(classes.get("u") or [])

    def combined(key):
        if key in heart:
            return _HEART
        if key in coheart:
            return _COHEART
        if key in uclass:
            return _MEMBER
        return _EMPTY

    sections.append("[combined]  legend: "
                    f"{_HEART} heart  {_COHEART} coheart  {_MEMBER} u  "
                    f"{_EMPTY} other\n" + _grid_text(cells, combined))
    return "\n\n".join(sections) + "\n"


# --- witness rechecking ------------------------------------------------------------

def _alg_of_config(config):
    if config.get("algebra"):
        return Algebra(config["algebra"]["n"],
                       tuple(config["algebra"]["caps"])), None
    win = Window(config["window"]["d_min"], config["window"]["d_max"],
                 config["window"]["margin"])
    return hereditary_algebra(config["window"]["n"]), win


def _conflation_from_json(data):
    return ConflationWitness(
        Obj([parse_interval(s) for s in data["sub"]]),
        Obj([parse_interval(s) for s in data["mid"]]),
        Obj([parse_interval(s) for s in data["quot"]]),
        tuple(((int(i), int(j)), Fraction(c))
              for i, j, c in data["class"]))


def _star_structural(alg, t_str, wit):
    """Rebuild the recorded triangle map and confirm its cone; returns
    (structure_ok, first_labels, third_labels)."""
    t = parse_shifted(t_str)
    first = DObj([parse_shifted(s) for s in wit["first"]])
    third = DObj([parse_shifted(s) for s in wit["third"]])
    coords = {(int(i), int(j)): Fraction(c) for i, j, c in wit["map"]}
    if wit["kind"] == "evaluation":
        f = DMor(alg, first, DObj([t]), coords)
        ok = cone(alg, f) == third
    elif wit["kind"] == "cocone":
        f = DMor(alg, DObj([t]), third, coords)
        ok = cone(alg, f).shift(-1) == first
    else:
        ok = False
    return ok, [str(s) for s in first.slots], [str(s) for s in third.slots]


def run_recheck(report):
    """Re-validate every recorded witness in a report without re-running
    any searches.  Conflation witnesses are rebuilt from their extension
    classes and re-verified; triangle witnesses are rebuilt from their
    maps and their classes confirmed against the report's own listings."""
    config = report.get("config") or {}
    alg, _ = _alg_of_config(config)
    out = {"command": "recheck", "conflations_checked": 0,
           "stars_checked": 0, "failed": [], "membership_unconfirmed": [],
           "skipped": []}

    def check_conflations(path, table, style):
        for key, wit in (table or {}).items():
            out["conflations_checked"] += 1
            try:
                w = _conflation_from_json(wit)
                ok = (recheck_conflation(alg, w) if style == "onto"
                      else recheck_conflation_into(alg, w))
            except (ValueError, KeyError, TypeError):
                ok = False
            if not ok:
                out["failed"].append(f"{path}[{key}]")

    def check_stars(path, table, first_class, third_class):
        for t_str, wit in (table or {}).items():
            if not isinstance(wit, dict):
                continue
            out["stars_checked"] += 1
            try:
                ok, first, third = _star_structural(alg, t_str, wit)
            except (ValueError, KeyError, TypeError):
                ok, first, third = False, [], []
            if not ok:
                out["failed"].append(f"{path}[{t_str}]")
                continue
            if first_class is None:
                continue
            for label in first:
                if label not in first_class:
                    out["membership_unconfirmed"].append(
                        f"{path}[{t_str}]: {label}")
            for label in third:
                if label not in third_class:
                    out["membership_unconfirmed"].append(
                        f"{path}[{t_str}]: {label}")

    classes = report.get("classes") or {}
    pair_rep = (report.get("pair") or {}).get("report") or {}
    if report.get("context") == MODULE:
        check_conflations("pair.onto", pair_rep.get("onto"), "onto")
        check_conflations("pair.into", pair_rep.get("into"), "into")
        tw = report.get("theorem_pair_witnesses") or {}
        check_conflations("theorem.onto", tw.get("onto"), "onto")
        check_conflations("theorem.into", tw.get("into"), "into")
        dw = report.get("dual_pair_witnesses") or {}
        check_conflations("dual.onto", dw.get("onto"), "onto")
        check_conflations("dual.into", dw.get("into"), "into")
        inv = (report.get("theorem") or {}).get("invariants") or {}
        check_conflations("invariants.left_sequences",
                          inv.get("left_sequence_witnesses"), "into")
        for label, entry in (report.get("h_images") or {}).items():
            wit = entry.get("witness") or {}
            for stage in ("coreflection", "reflection"):
                data = wit.get(stage)
                if data is None:
                    continue
                out["conflations_checked"] += 1
                try:
                    ok = recheck_conflation(alg, _conflation_from_json(data))
                except (ValueError, KeyError, TypeError):
                    ok = False
                if not ok:
                    out["failed"].append(f"h_images[{label}].{stage}")
    else:
        # pair-defining triangles: classes straight from the config specs
        try:
            pair = build_pair(parse_config(config))
            u_view, v_view = hearts.derived_views(pair)
            win = pair.window
            u_named = {str(s) for s in u_view.members}
            v1_named = {str(s.shift(1)) for s in v_view.members}
        except ConfigError:
            u_named = v1_named = None
        check_stars("pair.star", pair_rep.get("star"), u_named, v1_named)
        tw = report.get("theorem_pair_witnesses") or {}
        check_stars("theorem.star", tw.get("star"),
                    set(classes.get("coheart") or []),
                    set(classes.get("kernel") or []))
        dw = report.get("dual_pair_witnesses") or {}
        check_stars("dual.star", dw.get("star"),
                    set(classes.get("kernel") or []),
                    set(classes.get("dual_coheart") or []))
        for label, entry in (report.get("h_images") or {}).items():
            out["skipped"].append(
                f"h_images[{label}]: triangle-stage witnesses carry no "
                f"standalone recheck form")
    out["ok"] = not out["failed"]
    return out


# --- entry point --------------------------------------------------------------------

def _write_or_print(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="heartcheck",
        description="Verification engine for hearts of cotorsion pairs on "
                    "serial module categories and bounded derived windows.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full battery on one pair")
    p_analyze.add_argument("--config", required=True)
    p_analyze.add_argument("--report")
    p_analyze.add_argument("--ascii", action="store_true")
    p_analyze.add_argument("--audit-bounds", type=int, default=None,
                           metavar="FACTOR")

    p_enum = sub.add_parser("enumerate",
                            help="all cotorsion pairs on the algebra")
    p_enum.add_argument("--config", required=True)
    p_enum.add_argument("--report")
    p_enum.add_argument("--verify-theorems", action="store_true")

    p_preset = sub.add_parser("preset", help="print a shipped config")
    p_preset.add_argument("name")
    p_preset.add_argument("--config-out")

    p_recheck = sub.add_parser("recheck",
                               help="re-validate the witnesses in a report")
    p_recheck.add_argument("--report", required=True)

    p_dual = sub.add_parser("dual",
                            help="opposite-context transport checks")
    p_dual.add_argument("--config", required=True)
    p_dual.add_argument("--report", dest="report_out")

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            if args.audit_bounds is not None and args.audit_bounds < 1:
                raise ConfigError("--audit-bounds must be >= 1")
            cfg = load_config(args.config)
            report = run_analyze(cfg, args.audit_bounds)
            _write_or_print(dumps_report(report), args.report)
            if args.ascii:
                print(render_ascii(report))
            return exit_code_for(report)
        if args.command == "enumerate":
            cfg = load_config(args.config)
            report = run_enumerate(cfg, args.verify_theorems)
            _write_or_print(dumps_report(report), args.report)
            return exit_code_for(report)
        if args.command == "preset":
            cfg = preset_config(args.name)
            text = json.dumps(serialize_config(cfg), indent=2,
                              sort_keys=True)
            _write_or_print(text, args.config_out)
            return 0
        if args.command == "recheck":
            try:
                with open(args.report, "r", encoding="utf-8") as fh:
                    report = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read report: {exc}")
            result = run_recheck(report)
            print(dumps_report(result))
            if result["failed"]:
                return 1
            if result["membership_unconfirmed"]:
                return 3
            return 0
        if args.command == "dual":
            cfg = load_config(args.config)
            report = run_dual(cfg)
            _write_or_print(dumps_report(report), args.report_out)
            return exit_code_for(report)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

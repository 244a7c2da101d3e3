"""Command-line surface: reproducible construction and verification runs.

Every subcommand echoes its configuration (including the seed) into a
machine-readable report; identical configurations produce byte-identical
reports apart from the timing field.  Exit codes: 0 when nothing failed,
1 when at least one check failed, 2 for configuration errors.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import blocks as blocks_mod
from . import walks
from .embeddings import CubeModel, build_SN, build_Fn, build_sym, delta_h_generating_set
from .geometry import CubeGeometry
from .perms import Permutation
from .schreier_sims import group_order

SCHEMA = "altgen-report-1"


def thread_count():
    """Worker cap from ALTGEN_THREADS; results never depend on its value."""
    try:
        return max(1, int(os.environ.get("ALTGEN_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class CheckRecord:
    name: str
    citation: str
    computed: object
    bound: object = None
    verdict: str = "pass"   # pass | fail | reported-only

    def as_dict(self):
        return {
            "name": self.name,
            "citation": self.citation,
            "computed": _jsonable(self.computed),
            "bound": _jsonable(self.bound),
            "verdict": self.verdict,
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, Permutation):
        return x.table.tolist()  # sequence-of-indices, 0-based
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Report:
    config: dict
    records: list = field(default_factory=list)
    started: float = field(default_factory=time.time)

    def add(self, record):
        self.records.append(record)

    def check(self, name, citation, computed, bound=None, ok=None, reported=False):
        if reported:
            verdict = "reported-only"
        else:
            verdict = "pass" if ok else "fail"
        self.add(CheckRecord(name, citation, computed, bound, verdict))

    def exit_code(self):
        return 1 if any(r.verdict == "fail" for r in self.records) else 0

    def as_json(self):
        body = {
            "schema": SCHEMA,
            "config": _jsonable(self.config),
            "records": [r.as_dict() for r in sorted(self.records, key=lambda r: r.name)],
            "timing_seconds": round(time.time() - self.started, 3),
        }
        return json.dumps(body, indent=1, sort_keys=True)

    def emit(self, out_path=None):
        text = self.as_json()
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text + "\n")
        print(text)
        return self.exit_code()


# -- gens.json -------------------------------------------------------------------


def _ring_element_hex(el):
    # bit (copy, row, col) flattened copy-major, then packed to bytes
    s = el.s
    bits = ((el.rows[:, :, None] >> np.arange(s, dtype=np.uint32)) & 1)
    return {"m": el.m, "s": s,
            "rows": np.packbits(bits.astype(np.uint8).ravel()).tobytes().hex()}


def _el3_to_json(el):
    return {"blocks": [[_ring_element_hex(el.blocks[i][j]) for j in range(3)]
                       for i in range(3)]}


def write_gens_json(genset, path):
    model = genset.model
    data = {
        "schema": "altgen-gens-1",
        "s": model.s,
        "d": model.d,
        "K": model.K,
        "N": str(model.N),
        "regime": genset.regime,
        "name": genset.name,
        "count": len(genset),
        "generators": [],
    }
    for spec in genset.specs:
        entry = {"label": spec.label, "axis": spec.axis,
                 "provenance": spec.provenance, "kind": spec.kind}
        data["generators"].append(entry)
    if genset.el3_elements is not None:
        data["involution_set"] = [_el3_to_json(el) for el in genset.el3_elements]
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)


# -- the transitive-group helper ---------------------------------------------------


def fixed_point_free_element(h_gens, seed=0, budget=4096, max_length=64):
    """Element of the generated transitive group without fixed points.

    Verifies transitivity by orbit closure first; then random products of
    increasing length until one is fixed-point-free.  Such an element exists
    in every transitive group.
    """
    if not h_gens:
        raise ValueError("need at least one generator")
    K = h_gens[0].n
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in h_gens:
                for y in (int(g(x)), int(g.inverse()(x))):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    if len(seen) != K:
        raise ValueError(f"group is not transitive (orbit size {len(seen)} of {K})")

    rng = np.random.default_rng(seed)
    length = 4
    for attempt in range(budget):
        word = Permutation.identity(K)
        for _ in range(length):
            word = word * h_gens[rng.integers(len(h_gens))]
        if len(word.support()) == K:
            return word
        if attempt and attempt % 256 == 0 and length < max_length:
            length *= 2
    raise RuntimeError(f"no fixed-point-free element found within budget {budget}")


# -- small desk bases ---------------------------------------------------------------


def desk_base(m):
    """A small generating set of Alt(m) for window embeddings."""
    if m < 3:
        raise ValueError("need at least 3 points")
    three = Permutation.from_cycles(m, [(0, 1, 2)])
    if m % 2:
        cyc = Permutation.from_cycles(m, [tuple(range(m))])
    else:
        cyc = Permutation.from_cycles(m, [tuple(range(1, m))])
    return [three, cyc]


# -- subcommands --------------------------------------------------------------------


def cmd_construct(args):
    report = Report(config=_config(args))
    genset = build_SN(args.s, args.d)
    report.check("generator-count", "union of the involution set over all axes",
                 len(genset), ok=True)
    report.check("regime", "explicit bounds hold for s > 6 at d = 6",
                 genset.regime, reported=True)
    if genset.materializable:
        report.check("all-even", "product-group elements act evenly",
                     genset.all_even(), ok=genset.all_even())
    if args.out:
        write_gens_json(genset, args.out)
        report.check("gens-json", "serialized generating set", args.out, ok=True)
    return report.emit(args.report)


def cmd_construct_general(args):
    report = Report(config=_config(args))
    n, m = args.n, args.base_m
    base = desk_base(m)
    specs, windows = build_Fn(n, base, m)
    bound = blocks_mod.factor_count_bound(n, m)
    report.check("window-count", "at most 3 ceil(n/m) + 3 window images",
                 len(windows), bound=bound, ok=len(windows) <= bound)
    report.check("generator-count", "union bound: windows times base size",
                 len(specs), bound=len(windows) * len(base),
                 ok=len(specs) <= len(windows) * len(base))
    if args.sym:
        specs = build_sym(n, specs)
        report.check("odd-extension", "one odd generator extends to the full group",
                     specs[-1].label, ok=True)
    if n <= 2000:
        perms = [s.payload for s in specs]
        order = group_order(perms, limit=max(2000, n))
        import math
        expect = math.factorial(n) if args.sym else math.factorial(n) // 2
        report.check("generated-order", "the window images generate the target group",
                     str(order), bound=str(expect), ok=order == expect)
    return report.emit(args.report)


def cmd_schreier(args):
    from .graphs import schreier_graph, write_edge_list
    report = Report(config=_config(args))
    genset = build_SN(args.s, args.d)
    graph = schreier_graph(genset)
    report.check("vertices", "action graph on the cube points", graph.n, ok=True)
    report.check("degree", "generator applications counted with multiplicity",
                 graph.degree, ok=True)
    conn = graph.is_connected()
    report.check("connected", "the involution set generates a transitive group",
                 conn, ok=conn)
    if args.out:
        if graph.n * graph.degree > 5 * 10**7:
            report.check("edge-list", "export skipped: too large", args.out,
                         reported=True)
        else:
            write_edge_list(graph, args.out)
            report.check("edge-list", "text export", args.out, ok=True)
    return report.emit(args.report)


def cmd_spectral(args):
    from .graphs import schreier_graph, read_edge_list
    from .spectral import spectral_gap
    report = Report(config=_config(args))
    if args.edges:
        graph = read_edge_list(args.edges)
    else:
        graph = schreier_graph(build_SN(args.s, args.d))
    rep = spectral_gap(graph, method=args.method, tol=args.tol, seed=args.seed)
    report.check("gap", "spectral gap of the normalized adjacency",
                 rep.gap, reported=True)
    report.check("gap-positive", "expansion requires a positive gap",
                 rep.gap, bound=0.0, ok=rep.gap > 0)
    report.check("kazhdan-bracket", "averaging lower bound and eigenvector upper "
                 "bound, for this permutation representation only",
                 [rep.kazhdan_lower, rep.kazhdan_upper], reported=True)
    report.check("cheeger-sandwich", "half the gap never exceeds the sweep bound",
                 {"half_gap": rep.gap / 2, "sweep": rep.cheeger_upper},
                 ok=rep.cheeger_upper is None or rep.gap / 2 <= rep.cheeger_upper + 1e-12)
    return report.emit(args.report)


def cmd_mixing(args):
    from .graphs import schreier_graph
    report = Report(config=_config(args))
    genset = build_SN(args.s, args.d)
    model = genset.model
    if args.averaging:
        op = walks.averaging_operator(model)
        steps, curve = walks.mixing_time_points(op, model, tol=args.tol, lazy=False)
    else:
        graph = schreier_graph(genset)
        steps, curve = walks.mixing_time_points(graph.matvec, model, tol=args.tol)
    report.check("mixing-steps", "lazy walk total-variation mixing time",
                 steps, reported=True)
    monotone = all(curve[i + 1] <= curve[i] + 1e-12 for i in range(len(curve) - 1))
    report.check("tv-monotone", "lazy-walk distance to uniform never increases",
                 monotone, ok=monotone)
    report.check("tv-curve-tail", "last distances", curve[-3:], reported=True)
    return report.emit(args.report)


def cmd_characters(args):
    from . import characters as ch
    report = Report(config=_config(args))
    n = args.n
    defect_rows = []
    for L in range(1, n + 1):
        defect_rows.append((L, ch.column_orthogonality_defect(n, L)))
    ok = all(d == 0 for _, d in defect_rows)
    report.check("column-orthogonality", "squared column sums equal the "
                 "centralizer order", {str(L): d for L, d in defect_rows}, ok=ok)
    if args.l is not None and args.l >= 6:
        viol = ch.roichman_violations(n, args.l)
        report.check("character-bound", "cycle-class character bound",
                     len(viol), bound=0, ok=not viol)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("partition,class,value\n")
            for L in range(1, n + 1):
                for parts, value in ch.character_column(n, L).items():
                    name = ".".join(map(str, parts))
                    fh.write(f"{name},cycle{L},{value}\n")
        report.check("table-csv", "character table export", args.out, ok=True)
    return report.emit(args.report)


def cmd_certify(args):
    from . import certify as ce
    report = Report(config=_config(args))
    nodes = ce.derive_paper_constants()
    for name, node in nodes.items():
        lo, hi = node.interval()
        report.check(f"constant.{name}", node.citation,
                     [str(lo), str(hi)],
                     ok=node.all_checks_pass())
    decay = ce.derive_decay_chain()
    for desc, ok in decay["checks"]:
        report.check(f"decay.{desc}", "exponent and split arithmetic", ok, ok=ok)
    report.check("decay.samples", "exponent factor grows with the side length",
                 decay["samples"], reported=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(ce.tree_to_json(nodes))
        report.check("tree-json", "derivation tree export", args.out, ok=True)
    return report.emit(args.report)


def cmd_factor(args):
    report = Report(config=_config(args))
    rng = np.random.default_rng(args.seed)
    if args.what == "gem":
        from .ring import random_el3, gem_factor
        worst = 0
        for _ in range(args.count):
            g = random_el3(args.s, args.m, rng)
            word = gem_factor(g)
            assert word.verify()
            worst = max(worst, len(word))
        report.check("gem-words", "every element is a product of at most 17 "
                     "generalized elementary matrices",
                     {"count": args.count, "max_length": worst}, bound=17,
                     ok=worst <= 17)
    elif args.what == "butterfly":
        from .words import butterfly_factor
        for _ in range(args.count):
            g = Permutation.random(args.rows * args.cols, rng)
            butterfly_factor(g, args.rows, args.cols)
        report.check("butterfly", "grid permutations split into "
                     "row/column/row stages", args.count, ok=True)
    elif args.what == "blocks":
        worst = 0
        for _ in range(args.count):
            while True:
                g = Permutation.random(args.n, rng)
                if g.parity == 0:
                    break
            factors, _ = blocks_mod.block_factor(g, args.base_m)
            worst = max(worst, len(factors))
        bound = blocks_mod.factor_count_bound(args.n, args.base_m)
        report.check("block-words", "window factor count bound",
                     {"count": args.count, "max_factors": worst}, bound=bound,
                     ok=worst <= bound)
    elif args.what == "word47":
        from .words import conjugacy_word47, standard_cycle_length
        model = CubeModel(args.s, args.d)
        length, _ = standard_cycle_length(model.K, model.d)
        succ = 0
        for _ in range(args.trials):
            pts = rng.choice(model.N, size=length, replace=False)
            order = rng.permutation(length)
            c = Permutation.from_cycles(model.N, [[int(pts[i]) for i in order]])
            word = conjugacy_word47(model, c)
            if word is None:
                continue
            assert word.product() == c
            succ += 1
        report.check("word47-exact", "conjugation word reproduces the cycle "
                     "exactly on success", {"trials": args.trials, "successes": succ},
                     ok=True)
        report.check("word47-success-rate", "greedy face-moving succeeds with "
                     "high probability only at large sides",
                     succ / args.trials if args.trials else None, reported=True)
    return report.emit(args.report)


def cmd_verify(args):
    report = Report(config=_config(args))
    suites = args.suite.split(",") if args.suite != "all" else \
        ["certify", "characters", "gem", "blocks", "walk", "words", "spectral"]
    rng = np.random.default_rng(args.seed)

    if "certify" in suites:
        from . import certify as ce
        nodes = ce.derive_paper_constants()
        ok = all(n.all_checks_pass() for n in nodes.values())
        report.check("certify.chain", "all derived constants verify", ok, ok=ok)
        decay = ce.derive_decay_chain()
        report.check("certify.decay", "exponent and split arithmetic",
                     decay["checks"], ok=all(o for _, o in decay["checks"]))

    if "characters" in suites:
        from . import characters as ch
        bad = []
        for n in range(8, min(args.n or 10, 14) + 1):
            for L in range(6, n + 1):
                bad.extend(ch.roichman_violations(n, L))
        report.check("characters.bound", "no violations of the cycle-class "
                     "character bound", len(bad), bound=0, ok=not bad)

    if "gem" in suites:
        from .ring import random_el3, gem_factor
        worst = 0
        count = args.samples or 200
        for s in (1, 2):
            for m in (1, 2):
                sub = np.random.default_rng(args.seed + 13 * s + m)
                for _ in range(count // 4):
                    word = gem_factor(random_el3(s, m, sub))
                    assert word.verify()
                    worst = max(worst, len(word))
        report.check("gem.letters", "word length bound", worst, bound=17,
                     ok=worst <= 17)

    if "blocks" in suites:
        worst = 0
        for _ in range(args.trials or 25):
            while True:
                g = Permutation.random(50, rng)
                if g.parity == 0:
                    break
            factors, _ = blocks_mod.block_factor(g, 10)
            worst = max(worst, len(factors))
        report.check("blocks.count", "window factor count", worst, bound=18,
                     ok=worst <= 18)

    if "walk" in suites:
        sweep_model = CubeModel(args.s or 1, args.d or 6)
        dist = walks.full_sweep(walks.ExactDistribution.point_mass(sweep_model, 0))
        report.check("walk.sweep-uniform", "a full axis sweep is exactly uniform",
                     str(dist.tv_to_uniform()), bound="0",
                     ok=dist.tv_to_uniform() == 0)
        # the block-averaging fractions live on the six-axis model
        model = CubeModel(args.s or 1, 6)
        h = args.h or 9
        geo = model.geometry
        start = [geo.index((0, 0, 0, i % geo.K, i // geo.K, 0)) for i in range(h)]
        cfg = walks.WalkConfig(seed=args.seed, samples=args.samples or 2000, h=h)
        stats = walks.tuple_walk(model, cfg, np.array(start, dtype=np.int64))
        bound = 1 - h * h / (2 * geo.K ** 3)
        sigma = walks.binomial_sigma(bound, cfg.samples)
        report.check("walk.b1-fraction", "distinct-coordinate fraction after the "
                     "first averaging block",
                     {"empirical": stats.b1_fraction, "analytic": bound,
                      "sigma": sigma},
                     bound=bound - 3 * sigma,
                     ok=stats.b1_fraction >= bound - 3 * sigma)

    if "words" in suites:
        from .words import grid_route, face_restriction
        model = CubeModel(args.s or 1, args.d or 6)
        L_face = model.K ** (model.d - 1)
        trials = args.trials or 3
        ok = True
        for _ in range(trials):
            sigma = rng.permutation(L_face).astype(np.int64)
            word = grid_route(model, sigma)
            got = face_restriction(model, word.product())
            ok = ok and np.array_equal(got, sigma) and len(word) == 4 * model.d - 5
        report.check("words.route-exact", "face routing is exact with the "
                     "stated letter count", trials, ok=ok)

    if "spectral" in suites:
        from .graphs import schreier_graph
        from .spectral import spectral_gap
        genset = build_SN(args.s or 1, args.d or 2)
        graph = schreier_graph(genset)
        rep = spectral_gap(graph, seed=args.seed)
        report.check("spectral.gap", "positive spectral gap", rep.gap,
                     bound=0.0, ok=rep.gap > 0)

    return report.emit(args.report)


def _config(args):
    cfg = {k: v for k, v in vars(args).items()
           if k not in ("func", "report") and v is not None}
    cfg["threads"] = thread_count()
    return cfg


def build_parser():
    p = argparse.ArgumentParser(
        prog="altgen",
        description="expander generating sets for alternating groups: "
                    "construction and verification")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--report", help="also write the JSON report here")

    sp = sub.add_parser("construct", help="build the cube generating set")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--d", type=int, default=6)
    sp.add_argument("--out", help="write gens.json here")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("construct-general", help="window-embedded set for any degree")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--base-m", type=int, required=True, dest="base_m")
    sp.add_argument("--sym", action="store_true", help="add one odd generator")
    common(sp)
    sp.set_defaults(func=cmd_construct_general)

    sp = sub.add_parser("schreier", help="action graph on the cube points")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--d", type=int, default=6)
    sp.add_argument("--out", help="write the edge list here")
    common(sp)
    sp.set_defaults(func=cmd_schreier)

    sp = sub.add_parser("spectral", help="spectral gap of a graph")
    sp.add_argument("--s", type=int)
    sp.add_argument("--d", type=int, default=6)
    sp.add_argument("--edges", help="edge-list file instead of a constructed set")
    sp.add_argument("--method", default="auto",
                    choices=["auto", "dense", "power", "lanczos"])
    sp.add_argument("--tol", type=float, default=1e-12)
    common(sp)
    sp.set_defaults(func=cmd_spectral)

    sp = sub.add_parser("mixing", help="lazy-walk mixing time on the points")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--averaging", action="store_true",
                    help="use the full averaging sweep instead of the walk")
    common(sp)
    sp.set_defaults(func=cmd_mixing)

    sp = sub.add_parser("characters", help="character tables and the cycle bound")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--out", help="write the CSV table here")
    common(sp)
    sp.set_defaults(func=cmd_characters)

    sp = sub.add_parser("certify", help="derive and verify the constant chain")
    sp.add_argument("--out", help="write the derivation tree here")
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("factor", help="exercise a factorization")
    sp.add_argument("what", choices=["gem", "butterfly", "blocks", "word47"])
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--d", type=int, default=6)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--base-m", type=int, default=10, dest="base_m")
    sp.add_argument("--rows", type=int, default=3)
    sp.add_argument("--cols", type=int, default=4)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--trials", type=int, default=5)
    common(sp)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("verify", help="run one or more verification suites")
    sp.add_argument("--suite", default="certify",
                    help="comma list: certify,characters,gem,blocks,walk,words,"
                         "spectral, or 'all'")
    sp.add_argument("--s", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--h", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--limit", type=int)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 2 for usage errors already
        raise
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

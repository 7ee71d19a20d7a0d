"""Command-line front end: input parsing, the full analysis report, and
coloring enumeration over a regular digraph.

Reports are byte-deterministic: canonical orderings everywhere, every
rational serialized exactly as "p/q" (bare integers allowed), matrices as
string arrays with index legends.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd

from .errors import (BudgetExceeded, KernelWalkError, NotAperiodic,
                     NotRegular, NotStronglyConnected, ParseError)
from .observables import (build_observables, friedman_check, identity_suite,
                          level2_relation_table, observables_from_generators,
                          projection_identities, projections)
from .ratlinalg import RationalMatrix, abel_limit
from .semigroup import (generate, kernel, minimal_rank, order_profile,
                        rees_structure)
from .tensor2 import omega_tensor
from .transforms import Transformation
from .walkmeasure import haar_check, normalize_weights, walk_limit
from .zeon import SubsetIndex, a_level, kernel_rank_zeon, omega_level


def rat(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rats(seq) -> list:
    return [rat(x) for x in seq]


def mat_json(M: RationalMatrix, row_index=None, col_index=None) -> dict:
    if row_index is None:
        row_index = [str(i + 1) for i in range(M.rows)]
    if col_index is None:
        col_index = [str(j + 1) for j in range(M.cols)]
    return {"row_index": list(row_index), "col_index": list(col_index),
            "rows": [rats(row) for row in M.data]}


def _subset_labels(n, level):
    return [f"({','.join(map(str, s))})" for s in SubsetIndex(n, level)]


def _pair_labels(n):
    return [f"({i},{j})" for i in range(1, n + 1) for j in range(1, n + 1)]


@dataclass(frozen=True)
class ProblemSpec:
    colors: tuple
    weights: tuple
    level_cap: int
    warnings: tuple = ()

    @property
    def n(self):
        return self.colors[0].degree


_WORD = re.compile(r"\[[^\[\]]*\]")


def _parse_color(item) -> Transformation:
    if isinstance(item, str):
        return Transformation.parse(item)
    if isinstance(item, (list, tuple)):
        try:
            return Transformation(tuple(int(x) for x in item))
        except (TypeError, ValueError) as e:
            raise ParseError(f"bad color {item!r}: {e}") from None
    raise ParseError(f"bad color {item!r}")


def _parse_rationals(value) -> tuple:
    if isinstance(value, str):
        parts = [p for p in re.split(r"[,\s]+", value.strip()) if p]
    else:
        parts = list(value)
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational list {value!r}: {e}") from None


def _union_successors(colors, n):
    return [sorted({c(v) for c in colors}) for v in range(1, n + 1)]


def _strongly_connected(colors, n) -> bool:
    succ = _union_successors(colors, n)
    pred = [[] for _ in range(n)]
    for v, outs in enumerate(succ):
        for w in outs:
            pred[w - 1].append(v + 1)
    for nbrs in (succ, pred):
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in nbrs[v - 1]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) < n:
            return False
    return True


def _period(colors, n) -> int:
    """gcd of cycle lengths of the union digraph; assumes strong connectivity."""
    succ = _union_successors(colors, n)
    level = {1: 0}
    queue = [1]
    head = 0
    g = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in succ[v - 1]:
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
            else:
                g = gcd(g, level[v] + 1 - level[w])
    return abs(g) if g else 0


def _validate_against_adjacency(colors, adjacency):
    n = len(adjacency)
    if any(len(row) != n for row in adjacency):
        raise NotRegular("adjacency matrix is not square")
    if any(not isinstance(x, int) or x < 0 for row in adjacency for x in row):
        raise NotRegular("adjacency entries must be nonnegative integers")
    d = len(colors)
    sums = [sum(row) for row in adjacency]
    if any(s != d for s in sums):
        raise NotRegular(f"out-degrees {sums} do not all equal {d}")
    counts = [[0] * n for _ in range(n)]
    for c in colors:
        for v in range(1, n + 1):
            counts[v - 1][c(v) - 1] += 1
    if counts != [list(row) for row in adjacency]:
        raise NotRegular("colors do not partition the adjacency edges")


def parse_spec(path=None, text=None, weights=None, level_cap=None,
               strict=True) -> ProblemSpec:
    """Problem input from a JSON or plain-text file.

    Text form: 'colors: [451314] [245631]' plus an optional 'weights:'
    line.  JSON form: {"colors": [...], "weights": [...], "adjacency":
    [[...]]}; an adjacency matrix, when present, must be d-out regular
    with the colors partitioning its edges.  Keyword weights override the
    file.  Strong connectivity of the union digraph is an error under
    strict=True and a warning otherwise; a nontrivial period is always
    only a warning (the limits are Cesaro-type and exist regardless).
    """
    if text is None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    colors = None
    file_weights = None
    adjacency = None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if doc is not None:
        if not isinstance(doc, dict):
            raise ParseError("top-level JSON must be an object")
        unknown = set(doc) - {"colors", "weights", "adjacency", "level_cap"}
        if unknown:
            raise ParseError(f"unknown keys {sorted(unknown)}")
        if "colors" not in doc:
            raise ParseError("missing 'colors'")
        colors = tuple(_parse_color(c) for c in doc["colors"])
        if "weights" in doc:
            file_weights = _parse_rationals(doc["weights"])
        if "level_cap" in doc:
            level_cap = level_cap if level_cap is not None else int(doc["level_cap"])
        adjacency = doc.get("adjacency")
    else:
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise ParseError(f"expected 'key: value', got {raw!r}")
            key = key.strip().lower()
            if key == "colors":
                words = _WORD.findall(value)
                if not words:
                    raise ParseError(f"no color words in {raw!r}")
                colors = tuple(Transformation.parse(w) for w in words)
            elif key == "weights":
                file_weights = _parse_rationals(value)
            elif key in ("level-cap", "level_cap"):
                if level_cap is None:
                    level_cap = int(value.strip())
            else:
                raise ParseError(f"unknown key {key!r}")
        if colors is None:
            raise ParseError("missing 'colors:' line")
    if len({c.degree for c in colors}) != 1:
        raise ParseError("colors have mixed degrees")
    n = colors[0].degree
    if adjacency is not None:
        _validate_against_adjacency(colors, adjacency)
    if weights is None:
        weights = file_weights
    try:
        weights = normalize_weights(len(colors), weights)
    except ValueError as e:
        raise ParseError(str(e)) from None
    warnings = []
    if not _strongly_connected(colors, n):
        if strict:
            raise NotStronglyConnected("union digraph is not strongly connected")
        warnings.append("union digraph is not strongly connected")
    else:
        p = _period(colors, n)
        if p != 1:
            warnings.append(f"union digraph has period {p}; limits are "
                            "Cesaro averages")
    if level_cap is None:
        level_cap = min(n, 6)
    level_cap = max(1, min(level_cap, n))
    return ProblemSpec(colors=colors, weights=weights, level_cap=level_cap,
                       warnings=tuple(warnings))


def analyze(spec: ProblemSpec) -> dict:
    """Full pipeline report; 'all_ok' aggregates every assertion."""
    colors = spec.colors
    weights = spec.weights
    n = spec.n
    S = generate(colors)
    K = kernel(S)
    ks = rees_structure(K)
    r_image, witness = minimal_rank(colors)
    r_zeon = kernel_rank_zeon(colors, weights)
    ranks_agree = ks.rank == r_image == r_zeon
    mu = walk_limit(S, weights, structure=ks)
    haar = haar_check(mu)
    obs = build_observables(mu, colors, weights)
    O2 = omega_tensor(colors, 2, weights)

    zeon_levels = []
    zeon_omega2 = None
    levels_ok = True
    for level in range(1, spec.level_cap + 1):
        Ol = abel_limit(a_level(colors, level, weights))
        if level == 2:
            zeon_omega2 = Ol
        tr = Ol.trace()
        labels = _subset_labels(n, level)
        entry = {"level": level, "trace": rat(tr),
                 "omega": mat_json(Ol, labels, labels)}
        if tr == 1:
            m = Ol.rows
            pi_l = RationalMatrix.ones(1, m) * Ol
            u_l = Ol * RationalMatrix.ones(m, 1)
            norm = (pi_l * u_l)[0, 0]
            entry["outer_product_form"] = norm != 0 and (
                Fraction(1, 1) / norm) * (u_l * pi_l) == Ol
            levels_ok &= entry["outer_product_form"]
        zeon_levels.append(entry)
    if zeon_omega2 is None:
        zeon_omega2 = omega_level(colors, 2, weights)

    idrep = identity_suite(obs, measure=mu, zeon_omega2=zeon_omega2)
    table = level2_relation_table(obs, O2)
    ps = projections(mu)
    pid = projection_identities(ps, obs, mu)
    fr = friedman_check(colors, weights, measure=mu)

    all_ok = (ranks_agree and haar["product_form"] and idrep["all_ok"]
              and all(e["ok"] for e in table) and pid["all_ok"]
              and fr["all_ok"] and levels_ok)

    pair_labels = _pair_labels(n)
    report = {
        "input": {
            "n": n,
            "colors": [str(c) for c in colors],
            "weights": rats(weights),
            "level_cap": spec.level_cap,
            "warnings": list(spec.warnings),
        },
        "semigroup": {"size": len(S), "kernel_size": len(K)},
        "rank": {
            "semigroup_path": ks.rank,
            "image_path": r_image,
            "zeon_path": r_zeon,
            "agree": ranks_agree,
            "witness_word": [i + 1 for i in witness],
        },
        "rees": {
            "partitions": [[list(block) for block in P] for P in ks.partitions],
            "ranges": [list(R) for R in ks.ranges],
            "group_order": ks.group_order,
            "order_profile": {str(k): v for k, v in
                              sorted(order_profile(ks).items())},
            "idempotent_grid": [[str(e) for e in row] for row in ks.grid],
            "idempotent_words": [[[i + 1 for i in S.word_for(e)] for e in row]
                                 for row in ks.grid],
        },
        "measure": {
            "alpha": rats(mu.alpha),
            "beta": rats(mu.beta),
            "lambda": {str(k): rat(mu(k)) for k in ks.elements},
            "haar": {"product_form": haar["product_form"],
                     "total_mass": rat(haar["total_mass"])},
        },
        "tau": rat(obs.tau),
        "pi": rats(obs.pi),
        "omega": mat_json(obs.Omega),
        "omega_tensor2": mat_json(O2, pair_labels, pair_labels),
        "zeon_levels": zeon_levels,
        "observables": {name: mat_json(getattr(obs, name))
                        for name in ("M", "N", "Mtilde", "M0", "N0", "Mtilde0")},
        "charpoly": {k: rats(v) for k, v in idrep["charpoly"].items()},
        "projections": {
            "column": [mat_json(P) for P in ps.column],
            "row": [mat_json(Q) for Q in ps.row],
            "identities": {k: v for k, v in pid.items()},
        },
        "identities": {
            "doubly_stochastic": idrep["doubly_stochastic"],
            "checks": [{"name": c["name"], "ok": c["ok"],
                        "first_mismatch": list(c["first_mismatch"])
                        if c["first_mismatch"] else None}
                       for c in idrep["checks"]],
            "level2_table": [{"name": e["name"], "ok": e["ok"]} for e in table],
        },
        "friedman": fr,
        "all_ok": all_ok,
    }
    return report


def load_adjacency(path) -> list:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if doc is not None:
        if isinstance(doc, dict):
            if "adjacency" not in doc:
                raise ParseError("graph JSON needs 'adjacency'")
            doc = doc["adjacency"]
        if not isinstance(doc, list):
            raise ParseError("adjacency must be a matrix")
        return [[int(x) for x in row] for row in doc]
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise ParseError(f"bad adjacency row {raw!r}") from None
    if not rows:
        raise ParseError("empty adjacency input")
    return rows


def colorings_of(adjacency):
    """All edge colorings of a d-out regular multigraph, in deterministic order.

    Each vertex's out-edges are distributed one per color; per-vertex
    choices are the distinct permutations of its target multiset.
    """
    n = len(adjacency)
    if any(len(row) != n for row in adjacency):
        raise NotRegular("adjacency matrix is not square")
    degs = {sum(row) for row in adjacency}
    if len(degs) != 1:
        raise NotRegular(f"mixed out-degrees {sorted(degs)}")
    d = degs.pop()
    if d < 1:
        raise NotRegular("out-degree must be at least 1")
    per_vertex = []
    for row in adjacency:
        targets = [j + 1 for j, x in enumerate(row) for _ in range(x)]
        per_vertex.append(sorted(set(permutations(targets))))
    for assignment in product(*per_vertex):
        yield tuple(Transformation(tuple(assignment[v][c] for v in range(n)))
                    for c in range(d))


def enumerate_colorings(adjacency, budget=None):
    """Stream (colors, kernel rank, synchronizing flag) per coloring.

    Raises BudgetExceeded once budget colorings have been yielded and more
    remain; everything yielded before that stands.
    """
    count = 0
    for colors in colorings_of(adjacency):
        if budget is not None and count >= budget:
            raise BudgetExceeded(f"stopped after {count} colorings")
        rank = kernel_rank_zeon(colors)
        yield {"colors": colors, "rank": rank, "synchronizing": rank == 1}
        count += 1


def _dump(report, json_path):
    payload = json.dumps(report, indent=2) + "\n"
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"wrote {json_path} (all_ok={str(report.get('all_ok', True)).lower()})")
    else:
        sys.stdout.write(payload)


def _provenance(exc) -> str:
    import traceback
    for frame, _ in reversed(list(traceback.walk_tb(exc.__traceback__))):
        mod = frame.f_globals.get("__name__", "")
        if mod.startswith("kernelwalk.") and not mod.endswith(".cli"):
            return mod.rsplit(".", 1)[1]
    return "cli"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kernelwalk",
        description="Kernel structure, limit measures, and observable "
                    "operators of transformation-semigroup random walks.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full pipeline report for a coloring")
    pa.add_argument("spec", help="JSON or text problem file")
    pa.add_argument("--json", metavar="OUT", help="write the report here")
    pa.add_argument("--level-cap", type=int, default=None)
    pa.add_argument("--weights", help="comma-separated rationals, e.g. 1/2,1/2")
    pa.add_argument("--lenient", action="store_true",
                    help="downgrade connectivity failures to warnings")

    pi = sub.add_parser("identities", help="operator identity suite only")
    pi.add_argument("spec")
    pi.add_argument("--json", metavar="OUT")
    pi.add_argument("--weights")
    pi.add_argument("--lenient", action="store_true")

    pc = sub.add_parser("colorings", help="enumerate colorings of a graph")
    pc.add_argument("graph", help="adjacency matrix (JSON or text)")
    pc.add_argument("--budget", type=int, default=None)
    pc.add_argument("--find-sync", action="store_true",
                    help="report only rank-1 (synchronizing) colorings")
    pc.add_argument("--json", metavar="OUT")

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            weights = _parse_rationals(args.weights) if args.weights else None
            spec = parse_spec(args.spec, weights=weights,
                              level_cap=args.level_cap,
                              strict=not args.lenient)
            report = analyze(spec)
            _dump(report, args.json)
            return 0 if report["all_ok"] else 2
        if args.command == "identities":
            weights = _parse_rationals(args.weights) if args.weights else None
            spec = parse_spec(args.spec, weights=weights,
                              strict=not args.lenient)
            obs = observables_from_generators(spec.colors, spec.weights)
            rep = identity_suite(
                obs, zeon_omega2=omega_level(spec.colors, 2, spec.weights))
            report = {
                "input": {"colors": [str(c) for c in spec.colors],
                          "weights": rats(spec.weights),
                          "warnings": list(spec.warnings)},
                "doubly_stochastic": rep["doubly_stochastic"],
                "checks": [{"name": c["name"], "ok": c["ok"],
                            "first_mismatch": list(c["first_mismatch"])
                            if c["first_mismatch"] else None}
                           for c in rep["checks"]],
                "charpoly": {k: rats(v) for k, v in rep["charpoly"].items()},
                "all_ok": rep["all_ok"],
            }
            _dump(report, args.json)
            return 0 if rep["all_ok"] else 2
        if args.command == "colorings":
            adjacency = load_adjacency(args.graph)
            results = []
            truncated = False
            try:
                for item in enumerate_colorings(adjacency, args.budget):
                    results.append(item)
            except BudgetExceeded:
                truncated = True
            if args.find_sync:
                results = [r for r in results if r["synchronizing"]]
            report = {
                "n": len(adjacency),
                "truncated": truncated,
                "count": len(results),
                "colorings": [{"colors": [str(c) for c in r["colors"]],
                               "rank": r["rank"],
                               "synchronizing": r["synchronizing"]}
                              for r in results],
            }
            _dump(report, args.json)
            return 0
    except (ParseError, NotRegular, NotStronglyConnected, NotAperiodic,
            OSError) as e:
        print(f"error[{_provenance(e)}.{type(e).__name__}]: {e}",
              file=sys.stderr)
        return 1
    except KernelWalkError as e:
        print(f"error[{_provenance(e)}.{type(e).__name__}]: {e}",
              file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

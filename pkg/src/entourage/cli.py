"""Command-line front end.

Exit codes: 0 ok, 1 an ``--assert`` check failed, 2 parse error, 3 semantic
error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebra, formats, functors, graphs, hyper, morphisms, spaces, weights
from .errors import EntourageError, ParseError, ResourceCap

EXIT_OK, EXIT_ASSERT, EXIT_PARSE, EXIT_SEMANTIC, EXIT_CAP = 0, 1, 2, 3, 4


def _value(v):
    if isinstance(v, float) and v == weights.INF:
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_value(x) for x in v]
    return v


def _matrix(labels, d) -> str:
    cells = [[weights.format_value(v) for v in row] for row in d]
    width = max([len(str(x)) for x in labels] + [len(c) for row in cells for c in row])
    head = " " * (width + 1) + " ".join(str(x).rjust(width) for x in labels)
    body = [str(x).rjust(width) + " " + " ".join(c.rjust(width) for c in row) for x, row in zip(labels, cells)]
    return "\n".join([head] + body) + "\n"


def _load_one(path: str, kind: str, name=None):
    ws = formats.load([path])
    items = getattr(ws, kind)
    if name is not None:
        if name not in items:
            raise EntourageError(f"no {kind[:-1]} named {name!r} in {path}")
        return items[name], ws
    return ws.only(kind), ws


def _magma(source: str):
    if source.startswith("catalog:"):
        return algebra.catalog(source.split(":", 1)[1]), {}
    t, ws = _load_one(source, "magmas")
    return t, ws.ideals.get(t.name, {})


def _space_report(space) -> dict:
    cls = spaces.classify(space)
    conn = spaces.connectivity(space)
    geo = spaces.geometry(space)
    flags = space.max_ent
    return {
        "name": space.name,
        "points": list(space.carrier.labels),
        "class": cls.value,
        "reflexive": flags.is_reflexive(),
        "symmetric": flags.is_symmetric(),
        "transitive": flags.is_transitive(),
        "connected": conn.connected,
        "strongly_connected": conn.strongly_connected,
        "uniformly_connected": conn.uniformly_connected,
        "components": conn.components,
        "locally_finite": geo.locally_finite,
        "phi": geo.phi,
    }


# -- subcommands -------------------------------------------------------------------


def cmd_classify(args):
    space, _ = _load_one(args.file, "spaces", args.name)
    report = _space_report(space)
    if args.bounded:
        b = spaces.boundedness(space, args.bounded.split(","))
        report["boundedness"] = {"B1": b.b1, "B2": b.b2, "B3": b.b3}
    return report, None


def cmd_functor(args):
    space, _ = _load_one(args.file, "spaces", args.name)
    tag = functors.FunctorTag.parse(args.tag)
    out = functors.apply_functor(tag, space).named(f"{tag.value}_{space.name}")
    report = {"functor": tag.value, "input_class": spaces.classify(space).value,
              "class": spaces.classify(out).value}
    return report, formats.dump_space(out)


def cmd_map(args):
    ws = formats.load([args.file] + args.include)
    f = _pick(ws.maps, args.name, "map")
    prof = morphisms.profile(f)
    report = {"map": f.name, "source": f.src.name, "target": f.dst.name, **prof._asdict()}
    return report, None


def _pick(items, name, kind):
    if name is None:
        if len(items) != 1:
            raise EntourageError(f"expected exactly one {kind}, found {len(items)}; use --name")
        return next(iter(items.values()))
    if name not in items:
        raise EntourageError(f"no {kind} named {name!r}")
    return items[name]


def cmd_equiv(args):
    ws = formats.load([args.file] + args.include)
    f = _pick(ws.maps, args.name, "map")
    verdict = morphisms.sym_coarse_equivalence(f)
    report = {"map": f.name, "equivalent": verdict.equivalent, "failed": list(verdict.failed)}
    text = None
    if verdict.inverse is not None:
        g = verdict.inverse
        report["inverse"] = g.as_dict()
        text = formats.dump_map(g, f"{f.name}_inv")
    return report, text


def _partition(spec: str):
    return [[x for x in block.split(",") if x] for block in spec.split("|")]


def cmd_quotient(args):
    space, _ = _load_one(args.file, "spaces", args.name)
    table, codomain = functors.partition_map(space, _partition(args.partition))
    cls = spaces.StructureClass.parse(args.cls)
    out = functors.quotient(space, table, codomain, cls).named(f"{space.name}_q")
    report = {
        "class_requested": cls.value,
        "class": spaces.classify(out).value,
        "image_transitive": functors.quotient_is_transitive(space, table, codomain),
        "weakly_soft": functors.is_weakly_soft(space, table, codomain),
        "blocks": list(codomain.labels),
    }
    return report, formats.dump_space(out)


def _window(text: str) -> tuple:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise EntourageError(f"window must look like lo:hi, got {text!r}") from None


def cmd_probe(args):
    if args.b3:
        rows = weights.probe_b3_radius(args.family, [_window(w) for w in args.b3.split(",")])
        report = {"family": args.family,
                  "growth": [{"window": f"{lo}:{hi}", "radius": r} for (lo, hi), r in rows]}
        return report, None
    if args.radius is None or args.smax is None:
        raise EntourageError("probe needs --radius and --smax (or --b3)")
    lo, hi = _window(args.window)
    fam = weights.WeightFamily(args.family, lo, hi)
    v = weights.probe_inverse_bound(fam, Fraction(args.radius), Fraction(args.smax))
    report = {"family": args.family, "window": args.window, "radius": Fraction(args.radius),
              "smax": Fraction(args.smax), "outcome": v.outcome.value, "required": v.required}
    if v:
        report["S"] = v.bound
    else:
        report["witness"] = list(v.witness)
        report["value"] = v.value
    return report, None


def cmd_word_metric(args):
    t, _ = _magma(args.magma)
    gens = [g for g in args.gens.split(",") if g]
    wm = graphs.word_weight(t, gens, args.side)
    w = wm.weight
    report = {
        "magma": t.name,
        "gens": gens,
        "side": args.side,
        "non_expanding": wm.non_expanding,
        "invariant": wm.invariant,
        "triangle": weights.classify_weight(w).triangle,
        "distances": {x: dict(zip(w.carrier.labels, row)) for x, row in zip(w.carrier.labels, w.d)},
    }
    if args.dot:
        return report, graphs.cayley(t, gens, args.side).to_dot()
    return report, _matrix(w.carrier.labels, w.d)


def cmd_hyper(args):
    space, _ = _load_one(args.file, "spaces", args.name)
    hs = hyper.exp_space(space) if args.exp else hyper.hyper_space(space)
    ne = hyper.nonempty(hs)
    report = {
        "construction": "exp" if args.exp else "hyper",
        "base_class": spaces.classify(space).value,
        "class": spaces.classify(hs).value,
        "nonempty_class": spaces.classify(ne).value,
        "points": hs.carrier.size,
        "pairs": len(hs.max_ent),
    }
    text = None
    if args.dot:
        text = graphs.DiGraph(ne.carrier, tuple(r & ~(1 << i) for i, r in enumerate(ne.max_ent.rows)),
                              report["construction"]).to_dot()
    return report, text


def cmd_graph(args):
    g, _ = _load_one(args.file, "graphs", args.name)
    ms = graphs.graphic_structure(g)
    w = graphs.path_weight(g)
    report = {"graph": g.name, "class": spaces.classify(ms.space).value,
              "edges": [list(e) for e in g.edges()],
              "distances": {x: dict(zip(w.carrier.labels, row)) for x, row in zip(w.carrier.labels, w.d)}}
    if args.dot:
        return report, g.to_dot()
    return report, _matrix(w.carrier.labels, w.d)


def cmd_realize(args):
    space, _ = _load_one(args.file, "spaces", args.name)
    g = graphs.graphic_realization(space)
    back = graphs.graphic_structure(g).space
    report = {"round_trip": back == space, "edges": len(g.edges())}
    return report, g.to_dot() if args.dot else formats.dump_graph(g)


def cmd_weight(args):
    w, _ = _load_one(args.file, "weights", args.name)
    flags = weights.classify_weight(w)
    ms = weights.structure_from_weight(w)
    chain = weights.classify_chain(ms.chain)
    report = {"weight": w.name, "kind": flags.kind, **flags._asdict(),
              "class": spaces.classify(ms.space).value, "radii": list(ms.radii), "chain_kind": chain.kind}
    return report, formats.dump_space(ms.space.named(w.name))


def cmd_algebra(args):
    t, ideals = _magma(args.magma)
    prof = algebra.classify_magma(t)
    report = {"magma": t.name, "identity": None if t.identity is None else t.elements.labels[t.identity],
              **prof._asdict(), "ideals": {}}
    for name, members in sorted(ideals.items()):
        entry = {"members": members}
        if t.identity is not None:
            entry.update(algebra.classify_ideal(t, members)._asdict())
            for side in algebra.SIDES:
                entry[f"{side}_class"] = spaces.classify(algebra.side_structure(t, members, side)).value
        report["ideals"][name] = entry
    return report, None


# -- plumbing ----------------------------------------------------------------------


def _check_asserts(report: dict, checks) -> list:
    failed = []
    for check in checks or []:
        key, _, expected = check.partition("=")
        if key not in report:
            raise EntourageError(f"--assert: report has no field {key!r}")
        got = _value(report[key])
        ok = str(got).lower() == expected.lower() if expected else bool(got)
        if not ok:
            failed.append(f"{key}: expected {expected or 'true'}, got {json.dumps(got)}")
    return failed


def _render(report: dict) -> str:
    lines = []
    for key in sorted(report):
        v = _value(report[key])
        if key == "distances":
            continue
        if isinstance(v, dict) and v:
            lines.append(f"{key}:")
            for k2 in sorted(v):
                lines.append(f"  {k2}: {json.dumps(v[k2], sort_keys=True)}")
        elif isinstance(v, (list, bool)) or v is None:
            lines.append(f"{key}: {json.dumps(v)}")
        else:
            lines.append(f"{key}: {v}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    common.add_argument("--dot", action="store_true", default=argparse.SUPPRESS, help="emit DOT where available")
    common.add_argument("--assert", dest="asserts", action="append", default=argparse.SUPPRESS,
                        metavar="FIELD[=VALUE]", help="exit 1 unless the report field holds")

    p = argparse.ArgumentParser(prog="entourage", description="Finite entourage, semi-coarse and coarse structures.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--dot", action="store_true", help="emit DOT where available")
    p.add_argument("--assert", dest="asserts", action="append", default=[], metavar="FIELD[=VALUE]",
                   help="exit 1 unless the report field is true (or equals VALUE)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("classify", cmd_classify, "class, connectivity and geometry of a space")
    sp.add_argument("file")
    sp.add_argument("--name")
    sp.add_argument("--bounded", metavar="a,b,...", help="also report B1-B3 for this subset")

    sp = add("functor", cmd_functor, "apply sym / usym / w / wsemi / j")
    sp.add_argument("tag")
    sp.add_argument("file")
    sp.add_argument("--name")

    for name, fn, help_ in (("map", cmd_map, "morphism profile of a map"),
                            ("equiv", cmd_equiv, "decide Sym-coarse equivalence and build an inverse")):
        sp = add(name, fn, help_)
        sp.add_argument("file")
        sp.add_argument("--include", action="append", default=[], metavar="FILE",
                        help="extra files holding the source/target spaces")
        sp.add_argument("--name")

    sp = add("quotient", cmd_quotient, "quotient by a partition")
    sp.add_argument("file")
    sp.add_argument("--partition", required=True, metavar="a,b|c", help="blocks separated by '|'")
    sp.add_argument("--class", dest="cls", default="entourage")
    sp.add_argument("--name")

    sp = add("probe", cmd_probe, "windowed probes of the integer weight families")
    sp.add_argument("--family", required=True, choices=sorted(weights.FAMILIES))
    sp.add_argument("--window", default="-10:10")
    sp.add_argument("--radius")
    sp.add_argument("--smax")
    sp.add_argument("--b3", metavar="lo:hi,lo:hi", help="growth of the radius covering each window")

    sp = add("word-metric", cmd_word_metric, "word quasi-metric of a finite monoid")
    sp.add_argument("magma", help="magma file, or catalog:NAME")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--side", choices=algebra.SIDES, default="left")

    sp = add("hyper", cmd_hyper, "hyperstructure on the powerset")
    sp.add_argument("file")
    sp.add_argument("--exp", action="store_true")
    sp.add_argument("--name")

    sp = add("graph", cmd_graph, "path quasi-metric and graphic structure of a digraph")
    sp.add_argument("file")
    sp.add_argument("--name")

    sp = add("realize", cmd_realize, "graph whose graphic structure is the given space")
    sp.add_argument("file")
    sp.add_argument("--name")

    sp = add("weight", cmd_weight, "classify a weight and its metric structure")
    sp.add_argument("file")
    sp.add_argument("--name")

    sp = add("algebra", cmd_algebra, "classify a magma and its listed ideals")
    sp.add_argument("magma", help="magma file, or catalog:NAME")
    return p


def _glue_negative(argv):
    # "--window -20:20" would otherwise read -20:20 as an option
    out = []
    for tok in argv:
        if out and out[-1] in ("--window", "--b3") and tok.startswith("-"):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative(argv))
    out = sys.stdout
    try:
        report, text = args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceCap as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (EntourageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    try:
        failed = _check_asserts(report, args.asserts)
    except EntourageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    if args.json:
        payload = dict(report)
        if text is not None:
            payload["output"] = text
        out.write(json.dumps(_value(payload), sort_keys=True, indent=2) + "\n")
    elif args.dot and text is not None and text.startswith("digraph"):
        out.write(text)
    else:
        out.write(_render(report))
        if text is not None:
            out.write("\n" + text)
    for line in failed:
        print(f"assertion failed: {line}", file=sys.stderr)
    return EXIT_ASSERT if failed else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

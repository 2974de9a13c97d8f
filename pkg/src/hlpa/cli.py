"""Command-line entry point: ``hlpa <verb> FILE [options]``.

Exit codes: 0 success, 1 domain error (bad input file, budget exhausted,
inadmissible weights, ...), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraElement, format_word, multiply, normal_form
from .basis import enumerate_nod_paths, growth_table
from .budget import StepCounter
from .cover import DegreeWindow, build_cover, graded_monoid_presentation, verify_cover_isomorphism
from .errors import HlpaError
from .expr import parse_expression
from .fields import Field
from .gk import enumerate_quasi_cycles, gk_dimension
from .grading import double_weight, parse_weight_map, standard_weight
from .hypergraph import (
    Hypergraph,
    from_separated_graph,
    from_weighted_graph,
    parse_hypergraph,
    parse_separated_graph,
    parse_weighted_graph,
    serialize_hypergraph,
    token,
)
from .monoid import group_completion, v_monoid_presentation
from .props import PROPERTIES, property_report


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise HlpaError(f"{path}: file not found") from None
    except OSError as exc:
        raise HlpaError(f"{path}: {exc.strerror or exc}") from None


def _load(path: str) -> Hypergraph:
    text = _read(path)
    try:
        return parse_hypergraph(text)
    except HlpaError as exc:
        raise HlpaError(f"{path}: {exc}") from None


def _word_json(word) -> list[str]:
    return [token(x) for x in word]


def element_json(a: AlgebraElement) -> dict:
    return {
        "field": a.field.name,
        "terms": [{"coefficient": a.field.format(c), "word": _word_json(w)} for c, w in a.sorted_terms()],
    }


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# verbs ------------------------------------------------------------------


def cmd_check(args, counter) -> None:
    H = _load(args.file)
    payload = {
        "vertices": list(H.vertices),
        "hyperedges": [
            {"name": e.name, "source": list(e.source), "range": list(e.range)} for e in H.edges
        ],
        "letters": len(H.letters),
    }
    _emit(args, payload, f"ok: {len(H.vertices)} vertices, {len(H.edges)} hyperedges, {len(H.letters)} letters")


def cmd_nf(args, counter) -> None:
    H = _load(args.file)
    a = parse_expression(args.expr, H, args.field_obj)
    if args.strategy != "left":
        a = normal_form(H, dict(a.terms), a.field, args.strategy, counter)
    _emit(args, element_json(a), str(a))


def cmd_mul(args, counter) -> None:
    H = _load(args.file)
    a = parse_expression(args.left, H, args.field_obj)
    b = parse_expression(args.right, H, args.field_obj)
    c = multiply(a, b, counter)
    _emit(args, element_json(c), str(c))


def cmd_basis(args, counter) -> None:
    H = _load(args.file)
    if args.max_len < 0:
        raise UsageError("--max-len must be nonnegative")
    if args.list:
        levels = []
        lines = []
        for n, level in enumerate(enumerate_nod_paths(H, args.max_len)):
            counter.tick(len(level) + 1)
            levels.append({"length": n, "paths": [_word_json(w) for w in level]})
            lines.extend(f"{n}\t{format_word(w)}" for w in level)
        _emit(args, {"levels": levels}, "\n".join(lines))
        return
    t = growth_table(H, args.max_len)
    payload = {"per_length": list(t.per_length), "cumulative": list(t.cumulative)}
    rows = ["n\tcount\tcumulative"]
    rows += [f"{n}\t{c}\t{s}" for n, (c, s) in enumerate(zip(t.per_length, t.cumulative))]
    _emit(args, payload, "\n".join(rows))


def cmd_gkdim(args, counter) -> None:
    H = _load(args.file)
    r = gk_dimension(H, counter)
    if r.is_finite:
        payload = {
            "kind": "finite",
            "dimension": r.dimension,
            "chain": [
                {
                    "quasi_cycle": _word_json(link.cycle.word),
                    "class": link.cycle.class_id,
                    "connector": None if link.connector is None else _word_json(link.connector),
                }
                for link in r.chain
            ],
        }
    else:
        payload = {
            "kind": "exponential",
            "dimension": None,
            "selfconnected": _word_json(r.witness.word),
            "connector": _word_json(r.connector),
        }
    _emit(args, payload, str(r))


def cmd_quasicycles(args, counter) -> None:
    H = _load(args.file)
    cycles = enumerate_quasi_cycles(H, counter)
    payload = {
        "count": len(cycles),
        "classes": len({c.class_id for c in cycles}),
        "quasi_cycles": [{"word": _word_json(c.word), "class": c.class_id} for c in cycles],
    }
    lines = [f"{len(cycles)} quasi-cycles in {payload['classes']} classes"]
    lines += [f"class {c.class_id}: {c}" for c in cycles]
    _emit(args, payload, "\n".join(lines))


def cmd_props(args, counter) -> None:
    H = _load(args.file)
    rep = property_report(H)
    c = rep.conditions
    lines = [
        f"conditions: LV={c.lv} A={c.a} A'={c.a_prime} B={c.b} connected={rep.connected}",
    ]
    for name in PROPERTIES:
        v = rep[name]
        line = f"{name}: {v.status}"
        if v.status != "unknown":
            line += f" ({v.witness}) [{v.citation}]"
        lines.append(line)
    _emit(args, rep.as_dict(), "\n".join(lines))


def _weights(args, H):
    spec = args.weights
    if spec == "std":
        return standard_weight(H)
    if spec == "double":
        return double_weight(H)
    try:
        return parse_weight_map(_read(spec), H)
    except HlpaError as exc:
        raise HlpaError(f"{spec}: {exc}") from None


def _window(args, w) -> DegreeWindow:
    if args.window is None:
        raise UsageError("--window is required")
    if args.window < 0:
        raise UsageError("--window must be nonnegative")
    return DegreeWindow(w.rank, args.window)


def cmd_vmonoid(args, counter) -> None:
    H = _load(args.file)
    if args.graded:
        w = _weights(args, H)
        P = graded_monoid_presentation(H, w, _window(args, w))
    else:
        if args.window is not None or args.weights != "std":
            raise UsageError("--weights/--window need --graded")
        P = v_monoid_presentation(H)
    payload = P.as_dict()
    text = str(P)
    if args.k0:
        g = group_completion(P)
        payload["k0"] = {"free_rank": g.free_rank, "torsion": list(g.torsion)}
        text += f"\nK0 = {g}"
    _emit(args, payload, text)


def cmd_cover(args, counter) -> None:
    H = _load(args.file)
    w = _weights(args, H)
    cov = build_cover(H, w, _window(args, w))
    text = serialize_hypergraph(cov.hypergraph).rstrip("\n")
    payload = {
        "vertices": list(cov.hypergraph.vertices),
        "hyperedges": [
            {"name": e.name, "source": list(e.source), "range": list(e.range)}
            for e in cov.hypergraph.edges
        ],
    }
    _emit(args, payload, text)


def cmd_verify_cover(args, counter) -> None:
    H = _load(args.file)
    w = _weights(args, H)
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    rep = verify_cover_isomorphism(H, w, _window(args, w), args.trials, args.seed, args.field_obj, counter)
    text = (
        f"relations checked: {rep.relations_checked}; products checked: {rep.products_checked}; "
        f"violations: {len(rep.violations)}"
    )
    if rep.violations:
        text += "\n" + "\n".join(rep.violations)
    _emit(args, rep.as_dict(), text)
    if not rep.ok:
        raise HlpaError("cover map is not multiplicative on the checked instances")


def cmd_convert(args, counter) -> None:
    text = _read(args.file)
    suffix = Path(args.file).suffix
    try:
        if suffix == ".sg":
            H = from_separated_graph(parse_separated_graph(text))
        elif suffix == ".wg":
            H = from_weighted_graph(parse_weighted_graph(text))
        else:
            raise UsageError("convert expects a .sg or .wg file")
    except HlpaError as exc:
        raise HlpaError(f"{args.file}: {exc}") from None
    out = serialize_hypergraph(H)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


# parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (rationals, default) or fp:<p>")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="hlpa", description="Leavitt path algebras of finite hypergraphs")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    verb("check", cmd_check, "validate a .hg file")
    sp = verb("nf", cmd_nf, "normal form of an expression")
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("--strategy", choices=("left", "right"), default="left")
    sp = verb("mul", cmd_mul, "product of two expressions")
    sp.add_argument("-a", dest="left", required=True)
    sp.add_argument("-b", dest="right", required=True)
    sp = verb("basis", cmd_basis, "nod-path basis and growth")
    sp.add_argument("--max-len", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="growth table (default)")
    mode.add_argument("--list", action="store_true", help="list every nod-path")
    verb("gkdim", cmd_gkdim, "Gelfand-Kirillov dimension")
    verb("quasicycles", cmd_quasicycles, "enumerate quasi-cycles")
    verb("props", cmd_props, "structural property report")

    def graded_opts(sp, need_window: bool):
        sp.add_argument("--weights", default="std", help="std, double, or a weight-map file")
        sp.add_argument("--window", type=int, default=None, required=need_window)

    sp = verb("vmonoid", cmd_vmonoid, "V-monoid presentation")
    sp.add_argument("--k0", action="store_true", help="also print the group completion")
    sp.add_argument("--graded", action="store_true")
    graded_opts(sp, False)
    sp = verb("cover", cmd_cover, "covering hypergraph in a degree window")
    graded_opts(sp, True)
    sp = verb("verify-cover", cmd_verify_cover, "check the cover isomorphism on generators and products")
    graded_opts(sp, True)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp = verb("convert", cmd_convert, "convert a .sg or .wg file to .hg")
    sp.add_argument("-o", "--output")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.field_obj = Field.from_spec(args.field)
    except HlpaError as exc:
        print(f"hlpa: error: {exc}", file=sys.stderr)
        return 2
    try:
        args.fn(args, StepCounter())
    except UsageError as exc:
        print(f"hlpa: error: {exc}", file=sys.stderr)
        return 2
    except HlpaError as exc:
        print(f"hlpa: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

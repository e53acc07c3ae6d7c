"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 budget
exceeded.  ``--emit json`` prints a report whose body is deterministic; the
wall time is kept outside the body.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import examples as ex
from .periodic import periodic_counts
from .presentation import (
    BudgetExceeded,
    Presentation,
    PresentationLanguage,
    check_G1,
    check_G2_to_G5,
    property_B_witness_search,
    property_c_witness_search,
)
from .rgraph import InvalidInput, RGraph, check_condition_a, classify, format_elem, mul_all, validate_rgraph
from .sofic import (
    SoficLanguage,
    SoficPresentation,
    bi_mapping_pair_search,
    follower_family,
    instantaneity_check,
    lifted_instantaneity,
    omega1_minus,
    omega1_plus,
    require_essential,
    ri_mapping_search,
    strong_bi_check,
    theorem61_transform,
    verify_mapping,
)
from .zeta import Convention, zeta_bruteforce, zeta_theorem91

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)  # path -> sha256
    parameters: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)
    wall_time: float = 0.0

    def body(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "parameters": self.parameters,
            "verdicts": self.verdicts,
            "artifacts": self.artifacts,
        }

    def to_json(self) -> str:
        return json.dumps({"body": self.body(), "wall_time": round(self.wall_time, 3)}, sort_keys=True, indent=2)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 2 with usage, without raising SystemExit from deep inside
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# input loading


def load(path: str, report: RunReport):
    """Read a JSON file and build the object it describes."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    report.inputs[path] = hashlib.sha256(text.encode()).hexdigest()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise InvalidInput(f"{path}: expected a JSON object")
    if "rgraph" in d:
        return Presentation.from_dict(d)
    if "states" in d:
        return SoficPresentation.from_dict(d)
    if "kappa" in d:
        return ex.Section8Config.from_dict(d)
    if "minus" in d:
        return RGraph.from_dict(d)
    raise InvalidInput(f"{path}: unrecognized input format")


def _need(obj, kinds, what: str):
    if not isinstance(obj, kinds):
        raise InvalidInput(f"{what} expects {' or '.join(k.__name__ for k in kinds)}, got {type(obj).__name__}")
    return obj


# ----------------------------------------------------------------------
# subcommands


def cmd_validate(args, rep: RunReport) -> int:
    obj = load(args.file, rep)
    if isinstance(obj, RGraph):
        viol = validate_rgraph(obj)
        rep.verdicts["violations"] = [f"{v.rule}: {v.detail}" for v in viol]
        if not viol:
            rep.verdicts["condition_A"] = check_condition_a(obj).ok
        return EXIT_OK if not viol else EXIT_FAIL
    if isinstance(obj, Presentation):
        viol = validate_rgraph(obj.rgraph)
        rep.verdicts["violations"] = [f"{v.rule}: {v.detail}" for v in viol]
        if viol:
            return EXIT_FAIL
        g1 = check_G1(obj)
        rep.verdicts["G1"] = {"ok": not g1, "bad_edges": g1}
        g = check_G2_to_G5(obj)
        rep.verdicts["G2-G5"] = g.to_dict()
        return EXIT_OK if not g1 and g.ok else EXIT_FAIL
    if isinstance(obj, SoficPresentation):
        require_essential(obj)
        rep.verdicts["essential"] = True
        return EXIT_OK
    rep.verdicts["config"] = "valid"
    return EXIT_OK


def _parse_token(tok: str, g: RGraph):
    if tok.startswith("1_"):
        return g.unit(tok[2:])
    for finder, gen in ((g.minus_by_name, g.gen_minus), (g.plus_by_name, g.gen_plus)):
        try:
            return gen(finder(tok))
        except InvalidInput:
            pass
    raise InvalidInput(f"unknown generator {tok!r}")


def cmd_reduce(args, rep: RunReport) -> int:
    obj = load(args.file, rep)
    if isinstance(obj, Presentation):
        names = {e.name or str(e.id): e for e in obj.edges}
        try:
            elems = [names[t].label if t in names else obj.edge(int(t)).label for t in args.word]
        except ValueError:
            raise InvalidInput(f"unknown edge in {args.word}") from None
        g = obj.rgraph
    else:
        g = _need(obj, (RGraph,), "reduce")
        elems = [_parse_token(t, g) for t in args.word]
    val = mul_all(elems, g)
    rep.parameters["word"] = list(args.word)
    rep.verdicts["normal_form"] = format_elem(val, g)
    rep.verdicts["kind"] = classify(val).kind.name
    return EXIT_OK


def cmd_language(args, rep: RunReport) -> int:
    obj = _need(load(args.file, rep), (Presentation, SoficPresentation), "language")
    lang = PresentationLanguage(obj) if isinstance(obj, Presentation) else SoficLanguage(obj)
    rep.parameters["max_len"] = args.max_len
    counts = {}
    for n in range(1, args.max_len + 1):
        counts[str(n)] = len(lang.words(n, budget=args.budget))
    rep.verdicts["counts"] = counts
    if args.list:
        rep.verdicts["words"] = [lang.format_word(w) for w in lang.words(args.max_len, budget=args.budget)]
    return EXIT_OK


def cmd_periodic(args, rep: RunReport) -> int:
    pres = _need(load(args.file, rep), (Presentation,), "periodic")
    rep.parameters["max_period"] = args.max_period
    rep.verdicts["counts"] = [c.to_dict() for c in periodic_counts(pres, args.max_period, args.budget)]
    return EXIT_OK


def cmd_zeta(args, rep: RunReport) -> int:
    pres = _need(load(args.file, rep), (Presentation,), "zeta")
    conv = Convention(args.convention)
    rep.parameters.update(terms=args.terms, method=args.method, convention=conv.value)
    out = {}
    if args.method in ("theorem91", "both"):
        out["theorem91"] = zeta_theorem91(pres, args.terms, conv)
    if args.method in ("bruteforce", "both"):
        out["bruteforce"] = zeta_bruteforce(pres, args.terms, args.budget)
    for k, v in out.items():
        rep.verdicts[k] = [str(c) for c in v.c]
    if args.method == "both":
        agree = out["theorem91"] == out["bruteforce"]
        rep.verdicts["agree"] = agree
        rep.verdicts["message"] = "methods agree" if agree else "methods disagree"
        return EXIT_OK if agree else EXIT_FAIL
    return EXIT_OK


def cmd_sofic(args, rep: RunReport) -> int:
    sp = _need(load(args.file, rep), (SoficPresentation,), "sofic")
    require_essential(sp)
    fmt = lambda w: " ".join(map(str, w))
    act = args.action
    rep.parameters["action"] = act
    if act == "followers":
        rep.verdicts["family"] = follower_family(sp).to_dict()
        return EXIT_OK
    if act == "instant":
        r = instantaneity_check(sp)
        rep.verdicts.update(r.to_dict())
        if not r.right:
            lang = SoficLanguage(sp)
            words = [w for k in range(1, 4) for w in lang.words(k) if w[-1] in r.right_fail and not omega1_plus(lang, w)]
            rep.verdicts["right_witness"] = [fmt(w) for w in words]
        if not r.left:
            lang = SoficLanguage(sp)
            words = [w for k in range(1, 4) for w in lang.words(k) if w[0] in r.left_fail and not omega1_minus(lang, w)]
            rep.verdicts["left_witness"] = [fmt(w) for w in words]
        return EXIT_OK if r.right and r.left else EXIT_FAIL
    if act == "bi-transform":
        tr = theorem61_transform(sp, args.transform_convention)
        rep.parameters["convention"] = args.transform_convention
        rep.verdicts["transform"] = tr.to_dict()
        chk = lifted_instantaneity(tr)
        rep.verdicts["image_right"] = chk.right
        rep.verdicts["image_left"] = chk.left
        if args.out:
            Path(args.out).write_text(tr.image.to_json())
            rep.artifacts.append(args.out)
        return EXIT_OK if chk.right and chk.left else EXIT_FAIL
    if act in ("ri-search", "bi-search"):
        rep.parameters["L"] = args.L
        search = ri_mapping_search if act == "ri-search" else bi_mapping_pair_search
        res = search(sp, args.L, args.past_bound, args.budget)
        rep.verdicts["search"] = res.to_dict(fmt)
        if not res.found:
            rep.verdicts["note"] = f"none for L={args.L}; larger L untested"
            return EXIT_FAIL
        fails = verify_mapping(sp, args.L, res.psi_plus, res.psi_minus, args.past_bound)
        rep.verdicts["reverified"] = not fails
        return EXIT_OK if not fails else EXIT_FAIL
    if act == "sbi":
        rep.parameters.update(R=args.R, max_len=args.max_len)
        r = strong_bi_check(sp, args.R, args.max_len)
        rep.verdicts.update(r.to_dict(fmt))
        return EXIT_OK if r.ok else EXIT_FAIL
    raise InvalidInput(f"unknown sofic action {act}")


def cmd_props(args, rep: RunReport) -> int:
    obj = _need(load(args.file, rep), (Presentation, ex.Section8Config), "props")
    rep.parameters.update(depth=args.depth, max_len=args.max_len, past_bound=args.past_bound, Q=args.Q)
    if isinstance(obj, ex.Section8Config):
        lang = ex.Section8Language(obj)
        w = ex.section8_c_witness(obj, args.depth, recipe=args.recipe, max_depth=max(args.depth, args.max_depth))
        rep.verdicts["construction"] = w.to_dict(lang.format_word)
        r = property_c_witness_search(lang, args.Q, w.depth, candidates=list(w.words.values()))
        rep.verdicts["property_c"] = r.to_dict(lambda x: lang.format_word(x))
        return EXIT_OK if w.ok else EXIT_FAIL
    lang = PresentationLanguage(obj)
    rb = property_B_witness_search(lang, args.Q, args.R, args.depth, args.max_len, args.past_bound)
    rc = property_c_witness_search(lang, args.Q, args.depth, args.max_len, args.past_bound)
    rep.verdicts["property_B"] = rb.to_dict(obj.format_word)
    rep.verdicts["property_c"] = rc.to_dict(obj.format_word)
    return EXIT_FAIL if rb.found or rc.found else EXIT_OK


def cmd_example(args, rep: RunReport) -> int:
    fixtures = ex.build_examples()
    if args.name not in fixtures:
        raise InvalidInput(f"unknown example {args.name!r}; choose from {', '.join(sorted(fixtures))}")
    rep.parameters["name"] = args.name
    obj = fixtures[args.name]
    if args.out:
        Path(args.out).write_text(ex.example_json(args.name))
        rep.artifacts.append(args.out)
    elif args.emit == "json":
        print(ex.example_json(args.name))
        return EXIT_OK
    rep.verdicts["summary"] = _summary(obj)
    return EXIT_OK


def _summary(obj) -> dict:
    if isinstance(obj, Presentation):
        return {"kind": "presentation", "vertices": len(obj.vertices), "edges": len(obj.edges)}
    if isinstance(obj, SoficPresentation):
        return {"kind": "sofic", "states": len(obj.states), "edges": len(obj.edges)}
    if isinstance(obj, ex.Section8Config):
        return {"kind": "flagged coded system", **obj.to_dict()}
    if isinstance(obj, tuple):
        return {"kind": "conjugacy pair", "alphabet": len(obj[1].alphabet)}
    return {"kind": type(obj).__name__, "alphabet": [str(s) for s in obj.alphabet]}


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rgshift", description="R-graph shifts: semigroups, presentations, zeta functions, sofic recoding.")
    p.add_argument("--emit", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, budget=2_000_000):
        sp.add_argument("--emit", choices=("json", "text"), default=argparse.SUPPRESS)
        sp.add_argument("--budget", type=int, default=budget)

    s = sub.add_parser("validate", help="check an R-graph, presentation or sofic graph")
    s.add_argument("file")
    common(s)
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("reduce", help="multiply generators and print the normal form")
    s.add_argument("file")
    s.add_argument("word", nargs="+")
    common(s)
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("language", help="count admissible words")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--list", action="store_true")
    common(s, 200_000)
    s.set_defaults(fn=cmd_language)

    s = sub.add_parser("periodic", help="count periodic points by class")
    s.add_argument("file")
    s.add_argument("--max-period", type=int, default=8)
    common(s, 5_000_000)
    s.set_defaults(fn=cmd_periodic)

    s = sub.add_parser("zeta", help="zeta function coefficients")
    s.add_argument("file")
    s.add_argument("--terms", type=int, default=10)
    s.add_argument("--method", choices=("theorem91", "bruteforce", "both"), default="both")
    s.add_argument("--convention", choices=[c.value for c in Convention], default=Convention.FIRST_RETURN.value)
    common(s, 5_000_000)
    s.set_defaults(fn=cmd_zeta)

    s = sub.add_parser("sofic", help="sofic tools")
    s.add_argument("action", choices=("followers", "instant", "bi-transform", "ri-search", "bi-search", "sbi"))
    s.add_argument("file")
    s.add_argument("--L", type=int, default=0)
    s.add_argument("--R", type=int, default=1)
    s.add_argument("--max-len", type=int, default=3)
    s.add_argument("--past-bound", type=int, default=3)
    s.add_argument("--transform-convention", choices=("half-open", "open"), default="half-open")
    s.add_argument("--out")
    common(s, 200_000)
    s.set_defaults(fn=cmd_sofic)

    s = sub.add_parser("props", help="bounded searches for property (B) and (c) witnesses")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--past-bound", type=int, default=2)
    s.add_argument("--Q", type=int, default=1)
    s.add_argument("--R", type=int, default=0)
    s.add_argument("--recipe", choices=("stated", "parent"), default="parent")
    s.add_argument("--max-depth", type=int, default=8, help="deepest context tried for the flagged construction")
    common(s)
    s.set_defaults(fn=cmd_props)

    s = sub.add_parser("example", help="emit a built-in fixture")
    s.add_argument("name")
    s.add_argument("--out")
    s.add_argument("--emit", choices=("json", "summary"), default="summary", dest="emit")
    s.add_argument("--budget", type=int, default=0)
    s.set_defaults(fn=cmd_example)
    return p


def _print_text(rep: RunReport) -> None:
    for k, v in rep.verdicts.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        print(f"{k}: {v}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = RunReport(args.command)
    t0 = time.perf_counter()
    try:
        code = args.fn(args, rep)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.wall_time = time.perf_counter() - t0
    if args.command == "example" and args.emit == "json":
        if args.out:
            print(f"wrote {args.out}")
        return code
    if args.emit == "json":
        print(rep.to_json())
    else:
        _print_text(rep)
    return code


if __name__ == "__main__":
    sys.exit(main())

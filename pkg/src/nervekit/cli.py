"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import corpus
from .catcore import FiniteCategory, ident_str, validate_category, validate_functor
from .doublecat import DoubleCategory, binerve, binerve_diagonal, double_from_json, trivial_double
from .errors import NervekitError, ObjectNotFound, TruncationWarning
from .homology import homology, quasi_iso_check
from .moduli import (
    VARIANTS,
    build_moduli,
    double_reduction,
    theorem_main,
    validate_model_data,
)
from .simpl import (
    TruncatedSimplicialSet,
    category_of_elements,
    category_of_simplices,
    chi,
    compose_smaps,
    edge_map,
    identity_smap,
    nerve,
    nerve_map,
    smap_from_json,
    sset_from_json,
    sset_to_json,
)

COMMANDS = (
    "validate", "nerve", "binerve", "diag", "chi-check", "homology", "compare",
    "simplices", "hocolim", "moduli", "double", "theorem-main",
)


class InputError(NervekitError):
    pass


@dataclass
class Report:
    """What a subcommand produced; the machine format is this, as JSON."""

    command: str
    status: str  # ok | fail
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1

    def to_json(self) -> str:
        doc = {"command": self.command, "status": self.status, "lines": self.lines, "data": self.data}
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        doc = json.loads(text)
        return cls(doc["command"], doc["status"], list(doc["lines"]), dict(doc["data"]))

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "machine" else "\n".join(self.lines)


# -- input --------------------------------------------------------------------


BUILTIN_MODELS = {"diamond": corpus.diamond_model}
BUILTIN_CATEGORIES = dict(corpus.CATEGORIES, **corpus.EXTRA_CATEGORIES, circle=corpus.parallel_pair)


def _load_json(path: str) -> Any:
    p = Path(path)
    if not p.exists():
        raise InputError(f"{path}: no such file or built-in example")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def _kind(raw: Any) -> str:
    if not isinstance(raw, dict):
        raise InputError("input must be a JSON object")
    if raw.get("format") == "sset":
        return "sset"
    if raw.get("format") == "functor":
        return "functor"
    if "W" in raw:
        return "model"
    if "squares" in raw or "vmorphisms" in raw:
        return "double"
    if "sets" in raw:
        return "diagram"
    return "category"


def load(path: str) -> tuple[str, Any]:
    """Read an input file (or a built-in name) into a (kind, object) pair."""
    if not Path(path).exists():
        if path in BUILTIN_MODELS:
            return "model", BUILTIN_MODELS[path]()
        if path in BUILTIN_CATEGORIES:
            return "category", BUILTIN_CATEGORIES[path]()
    raw = _load_json(path)
    kind = _kind(raw)
    try:
        if kind == "sset":
            return kind, sset_from_json(raw)
        if kind == "model":
            return kind, validate_model_data(raw)
        if kind == "double":
            return kind, double_from_json(raw)
        if kind == "diagram":
            return kind, _diagram(raw)
        if kind == "functor":
            return kind, raw
        return kind, validate_category(raw, auto_identities=bool(raw.get("auto_identities", False)))
    except NervekitError as exc:
        raise type(exc)(f"{path}: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed input ({exc})") from None


def _diagram(raw: dict):
    C = validate_category(raw, auto_identities=bool(raw.get("auto_identities", False)))
    return C, raw["sets"], raw["functions"]


def _simplicial(path: str, cap: int) -> TruncatedSimplicialSet:
    kind, obj = load(path)
    if kind == "sset":
        return obj
    if kind == "model":
        obj = obj.base
    if kind == "double":
        raise InputError(f"{path}: expected a category or simplicial set, got a double category")
    if not isinstance(obj, FiniteCategory):
        raise InputError(f"{path}: expected a category or simplicial set")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return nerve(obj, cap)


def _category(path: str) -> FiniteCategory:
    kind, obj = load(path)
    if kind == "model":
        return obj.base
    if kind != "category":
        raise InputError(f"{path}: expected a category, got {kind}")
    return obj


def _double(path: str) -> DoubleCategory:
    kind, obj = load(path)
    if kind == "double":
        return obj
    if kind == "category":
        return trivial_double(obj)
    raise InputError(f"{path}: expected a double category or a category")


def _model(path: str):
    kind, obj = load(path)
    if kind != "model":
        raise InputError(f"{path}: expected model data (W, Fib, Cof)")
    return obj


def _object(cat: FiniteCategory, name: str | None, flag: str):
    if name is None:
        raise InputError(f"{flag} is required")
    for x in cat.objects:
        if ident_str(x) == name:
            return x
    raise ObjectNotFound(f"{flag} {name}: no such object")


# -- subcommands ----------------------------------------------------------------


def _counts(K: TruncatedSimplicialSet) -> list[str]:
    return [
        f"level {n}: {len(K.levels[n])} simplices, {len(K.nondegenerate(n))} nondegenerate"
        for n in range(K.cap + 1)
    ]


def _write(out: str | None, doc: dict, lines: list) -> None:
    if out:
        Path(out).write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        lines.append(f"wrote {out}")


def cmd_validate(a) -> Report:
    kind, obj = load(a.input)
    if kind == "category":
        line = f"valid category: {len(obj.objects)} objects, {len(obj.morphisms)} morphisms"
    elif kind == "model":
        line = (
            f"valid model data{' (strict)' if obj.strict else ''}: {len(obj.base.objects)} objects, "
            f"|W|={len(obj.W)} |Fib|={len(obj.Fib)} |Cof|={len(obj.Cof)}"
        )
    elif kind == "double":
        line = f"valid double category: {len(obj.objects)} objects, {len(obj.squares)} squares"
    elif kind == "sset":
        line = f"valid simplicial set truncated at {obj.cap}"
    elif kind == "diagram":
        category_of_elements(*obj)
        line = "valid set-valued diagram"
    else:
        raise InputError("functor files are validated by 'compare'")
    return Report("validate", "ok", [line], {"kind": kind})


def cmd_nerve(a) -> Report:
    C = _category(a.input)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        K = nerve(C, a.max_dim)
    lines = _counts(K)
    if caught or K.truncated:
        lines.append(f"note: nondegenerate simplices exist above dimension {a.max_dim}")
    _write(a.out, sset_to_json(K), lines)
    return Report("nerve", "ok", lines, {"counts": list(K.counts()), "nondegenerate": list(K.nondegenerate_counts()),
                                          "truncated": K.truncated})


def cmd_binerve(a) -> Report:
    D = _double(a.input)
    B = binerve(D, a.max_dim, a.max_dim)
    counts = {f"{p},{q}": len(B.levels[(p, q)]) for p in range(a.max_dim + 1) for q in range(a.max_dim + 1)}
    lines = [f"({k}): {v}" for k, v in counts.items()]
    return Report("binerve", "ok", lines, {"counts": counts})


def cmd_diag(a) -> Report:
    D = _double(a.input)
    K = binerve_diagonal(D, a.max_dim)
    lines = _counts(K)
    _write(a.out, sset_to_json(K), lines)
    return Report("diag", "ok", lines, {"counts": list(K.counts())})


def cmd_chi(a) -> Report:
    C = _category(a.input)
    D = trivial_double(C)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        dg = binerve_diagonal(D, a.max_dim)
        c = chi(C, a.max_dim, diagonal=dg)
        ident = identity_smap(c.target)
        ok1 = compose_ok(c, edge_map(D, "h", a.max_dim, diagonal=dg), ident)
        ok2 = compose_ok(c, edge_map(D, "v", a.max_dim, diagonal=dg), ident)
    ok = ok1 and ok2
    lines = [f"chi∘f1 = chi∘f2 = id: {'PASS' if ok else 'FAIL'}"]
    if not ok:
        lines.append(f"chi∘f1 = id: {ok1}; chi∘f2 = id: {ok2}")
    return Report("chi-check", "ok" if ok else "fail", lines, {"chi_f1": ok1, "chi_f2": ok2})


def compose_ok(c, f, ident) -> bool:
    return compose_smaps(c, f) == ident


def cmd_homology(a) -> Report:
    K = _simplicial(a.input, a.max_dim)
    rep = homology(K, a.max_dim)
    return Report("homology", "ok", rep.lines(), rep.to_dict())


def cmd_compare(a) -> Report:
    sk, src = load(a.source)
    tk, tgt = load(a.target)
    raw = _load_json(a.map)
    cap = a.max_dim
    if sk == "sset" and tk == "sset":
        f = smap_from_json(src, tgt, raw)
        cap = min(cap, src.cap, tgt.cap)
    elif sk == "category" and tk == "category":
        F = validate_functor(src, tgt, raw["objects"], raw["morphisms"])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            f = nerve_map(F, cap)
    else:
        raise InputError("compare needs two categories or two simplicial sets")
    q = quasi_iso_check(f, cap)
    lines = [q.verdict()] + [f"note: {n}" for n in q.notes]
    return Report("compare", "ok" if q.quasi_iso else "fail", lines, q.to_dict())


def cmd_simplices(a) -> Report:
    K = _simplicial(a.input, a.max_dim)
    mode = a.variant or "nondegenerate"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        DK = category_of_simplices(K, mode)
        N = nerve(DK, K.cap)
    h1, h2 = homology(K), homology(N, K.cap)
    same = h1.same_groups(h2)
    lines = [
        f"category of simplices ({mode}): {len(DK.objects)} objects, {len(DK.morphisms)} morphisms",
        f"K: {h1.render()}",
        f"N(ΔK): {h2.render()}",
        f"homology agrees: {'PASS' if same else 'FAIL'}",
    ]
    return Report("simplices", "ok" if same else "fail", lines,
                  {"objects": len(DK.objects), "morphisms": len(DK.morphisms), "agree": same})


def cmd_hocolim(a) -> Report:
    kind, obj = load(a.input)
    if kind != "diagram":
        raise InputError(f"{a.input}: expected a category with 'sets' and 'functions'")
    el, _ = category_of_elements(*obj)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        rep = homology(nerve(el, a.max_dim), a.max_dim)
    lines = [f"category of elements: {len(el.objects)} objects, {len(el.morphisms)} morphisms"] + rep.lines()
    return Report("hocolim", "ok", lines, {"objects": len(el.objects), "morphisms": len(el.morphisms),
                                           "homology": rep.to_dict()})


def _endpoints(M, a):
    return _object(M.base, a.source_obj, "--from"), _object(M.base, a.target_obj, "--to")


def cmd_moduli(a) -> Report:
    M = _model(a.input)
    X, Y = _endpoints(M, a)
    variant = a.variant or "hom"
    C = build_moduli(M, X, Y, variant)
    nonid = [m for m in C.morphism_ids if not C.is_identity(m)]
    lines = [f"{variant}: {len(C.objects)} objects, {len(nonid)} non-identity morphisms"]
    lines += [f"  {ident_str(o)}" for o in C.objects]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        rep = homology(nerve(C, a.max_dim), a.max_dim)
    lines += rep.lines()
    return Report("moduli", "ok", lines, {"variant": variant, "objects": len(C.objects),
                                          "nonidentity": len(nonid), "homology": rep.to_dict()})


def cmd_double(a) -> Report:
    M = _model(a.input)
    X, Y = _endpoints(M, a)
    D, rh, rv = double_reduction(M, X, Y, a.max_dim)
    lines = [
        f"double category: {len(D.objects)} objects, {len(D.squares)} squares",
        f"N C_h -> diag: {rh.cone.verdict()}",
        f"N C_v -> diag: {rv.cone.verdict()}",
    ]
    ok = rh.ok and rv.ok
    return Report("double", "ok" if ok else "fail", lines,
                  {"squares": len(D.squares), "edge_h": rh.cone.to_dict(), "edge_v": rv.cone.to_dict()})


def cmd_theorem(a) -> Report:
    M = _model(a.input)
    X, Y = _endpoints(M, a)
    rep = theorem_main(M, X, Y, a.max_dim)
    lines = [rep.summary()] + [f"  {n}: {s}{' (' + d + ')' if d else ''}" for n, s, d in rep.certificates]
    return Report("theorem-main", "ok" if rep.ok else "fail", lines, rep.to_dict())


HANDLERS = {
    "validate": cmd_validate, "nerve": cmd_nerve, "binerve": cmd_binerve, "diag": cmd_diag,
    "chi-check": cmd_chi, "homology": cmd_homology, "compare": cmd_compare,
    "simplices": cmd_simplices, "hocolim": cmd_hocolim, "moduli": cmd_moduli,
    "double": cmd_double, "theorem-main": cmd_theorem,
}


# -- parsing --------------------------------------------------------------------


def _cap(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nervekit", description="Finite categories, nerves and moduli of zig-zags.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "compare":
            p.add_argument("source")
            p.add_argument("target")
            p.add_argument("map")
        else:
            p.add_argument("input")
        p.add_argument("--max-dim", type=_cap, default=2 if name == "homology" else 3)
        p.add_argument("--variant", choices=VARIANTS + ("nondegenerate", "full"))
        p.add_argument("--strict", action="store_true")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--from", dest="source_obj")
        p.add_argument("--to", dest="target_obj")
        p.add_argument("--out")
    return parser


def parse(argv) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def execute(args: argparse.Namespace) -> Report:
    return HANDLERS[args.command](args)


def main(argv=None) -> int:
    args = parse(sys.argv[1:] if argv is None else argv)
    try:
        if args.strict and args.command != "compare":
            _strict_recheck(args)
        rep = execute(args)
    except NervekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(rep.render(args.format))
    return rep.exit_code


def _strict_recheck(args) -> None:
    """--strict: audit model data inputs as full model structures."""
    path = args.input
    if Path(path).exists():
        raw = _load_json(path)
        if _kind(raw) == "model":
            validate_model_data(raw, strict=True)
    elif path in BUILTIN_MODELS:
        from .moduli import make_model

        M = BUILTIN_MODELS[path]()
        make_model(M.base, M.W, M.Fib, M.Cof, strict=True)


if __name__ == "__main__":
    sys.exit(main())

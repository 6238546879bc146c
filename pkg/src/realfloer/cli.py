"""Command-line interface.

Every report is a sequence of ``key: value`` lines (or one JSON object with
``--json``).  Exit codes: 0 when every check passes, 1 when a check reports
violations or a computation refuses, 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import fileformat
from .catalog import DEFAULT_WINDOW, CobordismRecord, PlanarDiagram, catalog_names, load_catalog
from .complexes import RefusalError, Window, homology
from .floer import FLAVORS, FloerPackage, assemble, upsilon_maps, verify_package
from .froyshov import compute_hR, monotonicity_check, negative_definite_defect
from .link import GoeritzPresentation, cobordism_iota, cobordism_numerics, link_invariants, map_degree
from .towers import recognize_towers
from .triangle import SkeinTriple, verify_triangle

__all__ = ["main", "run"]


class _Input(ValueError):
    """Malformed or mistyped input; exit code 2."""


def _yes(flag) -> str:
    return "yes" if flag else "no"


def _value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_value(x) for x in v]
    return v


class _Out:
    """Ordered key/value report; repeated keys collect into lists."""

    def __init__(self):
        self.items: list[tuple[str, object]] = []

    def __call__(self, key: str, value) -> None:
        self.items.append((key, _value(value)))

    def text(self) -> str:
        return "".join(f"{k}: {v}\n" for k, v in self.items)

    def json(self) -> str:
        grouped: dict[str, list] = {}
        for k, v in self.items:
            grouped.setdefault(k, []).append(v)
        d = {k: vs[0] if len(vs) == 1 else vs for k, vs in grouped.items()}
        return json.dumps(d, indent=2) + "\n"


def _window(text: str | None) -> Window | None:
    if text is None:
        return None
    try:
        return Window.parse(text)
    except ValueError as e:
        raise _Input(str(e)) from None


def _resolve(arg: str, window: Window | None):
    path = Path(arg)
    if path.is_file():
        obj = fileformat.load(path)
        if window is not None and isinstance(obj, FloerPackage):
            obj = obj.replace(window=window)
        return obj
    try:
        return load_catalog(arg, window or DEFAULT_WINDOW)
    except KeyError:
        raise _Input(f"{arg!r} is neither a readable file nor a catalog entry") from None


def _expect(obj, types, what: str):
    if not isinstance(obj, types):
        raise _Input(f"expected {what}, got {type(obj).__name__}")
    return obj


# --- subcommands ---------------------------------------------------------------


def _verify_one(p: FloerPackage, out: _Out, prefix: str = "") -> bool:
    rep = verify_package(p)
    out(f"{prefix}package", p.name)
    sizes = rep.details["generators"]
    out(f"{prefix}generators", f"o={sizes['o']} s={sizes['s']} u={sizes['u']}")
    if p.window is not None:
        out(f"{prefix}window", str(p.window))
    if rep.ok:
        out(f"{prefix}differentials", "ok")
        out(f"{prefix}exact sequence", "yes")
        out(f"{prefix}j_* zero", _yes(rep.details.get("j_zero")))
    for v in rep.violations:
        out(f"{prefix}violation", v)
    out(f"{prefix}status", "pass" if rep.ok else "fail")
    return rep.ok


def cmd_verify(args, out: _Out) -> int:
    obj = _expect(_resolve(args.file, _window(args.window)), (FloerPackage, SkeinTriple), "a package or triple")
    if isinstance(obj, FloerPackage):
        return 0 if _verify_one(obj, out) else 1
    ok = True
    for i in range(3):
        ok &= _verify_one(obj.vertex(i), out, f"K{i} ")
    return 0 if ok else 1


def cmd_homology(args, out: _Out) -> int:
    p = _expect(_resolve(args.file, _window(args.window)), FloerPackage, "a package")
    c = assemble(p, args.flavor)
    h = homology(c)
    out("package", p.name)
    out("flavor", args.flavor)
    if c.window is not None:
        out("window", str(c.window))
    for q, n in sorted(h.interior_dims().items()):
        if n:
            out("dim", f"{q} {n}")
    out("total", h.total())
    ups = upsilon_maps(p, args.flavor, c)
    if not ups:
        out("towers", "no upsilon action")
        return 0
    try:
        towers = recognize_towers(h, ups[0])
    except RefusalError as e:
        out("refused", str(e))
        return 1
    for t in towers:
        out("tower", f"{t.kind} spinc={t.spinc} anchor={t.anchor_grading} support={t.support[0]}..{t.support[1]}")
    return 0


def cmd_triangle(args, out: _Out) -> int:
    t = _expect(_resolve(args.file, _window(args.window)), SkeinTriple, "a triple")
    ok = True
    out("triple", t.name)
    for flavor in args.flavor or ("check", "bar"):
        if flavor == "hat":
            raise _Input("homotopies assemble only in the check and bar flavours")
        rep = verify_triangle(t.instance(flavor))
        out("flavor", flavor)
        out("hypothesis 1", _yes(rep.hypothesis1))
        out("hypothesis 2", _yes(rep.hypothesis2))
        for i in sorted(rep.exact):
            out(f"exact at K{i}", _yes(rep.exact[i]))
        for i in sorted(rep.cone):
            out(f"cone quasi-isomorphism at K{i}", _yes(rep.cone[i]))
        out("conclusion", _yes(rep.conclusion))
        for v in rep.violations:
            out("violation", f"{flavor}: {v}")
        ok &= rep.ok
    if t.second is not None or t.correction is not None:
        key, _, _ = t.key_identity()
        out("key identity", _yes(key.ok))
        for v in key.violations:
            out("violation", f"key identity: {v}")
        ok &= key.ok
    out("status", "pass" if ok else "fail")
    return 0 if ok else 1


def cmd_froyshov(args, out: _Out) -> int:
    p = _expect(_resolve(args.file, _window(args.window)), FloerPackage, "a package")
    out("package", p.name)
    labels = [args.spinc] if args.spinc else p.spinc_labels()
    code = 0
    for label in labels:
        try:
            r = compute_hR(p, label)
        except RefusalError as e:
            out(f"refused[{label}]", str(e))
            code = 1
            continue
        out(f"h_R[{label}]", r.h_R)
        out(f"witness[{label}]", r.witness)
    return code


def cmd_link(args, out: _Out) -> int:
    obj = _expect(_resolve(args.file, None), (GoeritzPresentation, PlanarDiagram), "a goeritz matrix or pd code")
    g = obj.goeritz() if isinstance(obj, PlanarDiagram) else obj
    inv = link_invariants(g)
    if isinstance(obj, PlanarDiagram):
        out("diagram", obj.name)
        out("crossings", len(obj.crossings))
    out("components", g.components)
    out("signature", inv.signature)
    out("nullity", inv.nullity)
    out("determinant", inv.determinant)
    return 0


def cmd_grade(args, out: _Out) -> int:
    rec = _expect(_resolve(args.file, _window(args.window)), CobordismRecord, "cobordism data")
    c = rec.data
    nums = cobordism_numerics(c)
    io = cobordism_iota(c)
    out("cobordism", rec.name)
    out("chi_W", nums["chi_W"])
    out("sigma_W", nums["sigma_W"])
    if "b_plus_W" in nums:
        out("b1_W", nums["b1_W"])
        out("b_plus_W", nums["b_plus_W"])
    out("iota", io)
    out("degree", map_degree(c.c1_square, nums["sigma_W"], io, c))
    defect = negative_definite_defect(c)
    out("negative definite", _yes(defect == 0))
    if defect != 0 or not rec.spinc or not (rec.source and rec.target):
        return 0
    src = load_catalog(rec.source, DEFAULT_WINDOW)
    tgt = load_catalog(rec.target, DEFAULT_WINDOW)
    code = 0
    for lm, lp, c1sq in rec.spinc:
        hm, hp = compute_hR(src, lm).h_R, compute_hR(tgt, lp).h_R
        rep = monotonicity_check(hm, hp, c.__class__(c.b0_sigma, c.b1_sigma, c.self_intersection,
                                                    c.source_inv, c.target_inv, c1sq))
        out(f"monotonicity[{lm}->{lp}]", f"{'pass' if rep.ok else 'fail'} h-={hm} bound={rep.details['bound']}")
        if not rep.ok:
            code = 1
    return code


def cmd_catalog(args, out: _Out) -> int:
    if args.list or not args.name:
        for n in catalog_names():
            out("entry", n)
        return 0
    obj = _resolve(args.name, _window(args.window))
    text = fileformat.dumps(obj)
    if args.emit:
        Path(args.emit).write_text(text)
        out("emitted", args.emit)
        return 0
    sys.stdout.write(text)
    return 0


# --- entry point -----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="realfloer", description="Mod-2 real Floer package toolkit")
    ap.add_argument("--json", action="store_true", help="structured JSON report instead of key: value lines")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file_help="file path or catalog name"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help=file_help)
        sp.add_argument("--window", help="truncation window LO..HI (default -8..8)")
        sp.set_defaults(fn=fn)
        return sp

    add("verify", cmd_verify, "check d^2, gradings, i/j/p and exactness")
    sp = add("homology", cmd_homology, "homology and tower decomposition")
    sp.add_argument("--flavor", choices=FLAVORS, default="bar")
    sp = add("triangle", cmd_triangle, "hypotheses, exactness and cone comparison of a triple")
    sp.add_argument("--flavor", choices=FLAVORS, action="append")
    sp = add("froyshov", cmd_froyshov, "real Froyshov invariant per spin-c label")
    sp.add_argument("--spinc")
    add("link", cmd_link, "signature, nullity and determinant of a link")
    add("grade", cmd_grade, "cobordism numerics, index correction and map degree")
    sp = sub.add_parser("catalog", help="list or emit catalog entries")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--emit", metavar="PATH")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--window")
    sp.set_defaults(fn=cmd_catalog)
    return ap


def run(argv=None) -> tuple[int, str]:
    """Run the CLI and return ``(exit code, report text)``."""
    ap = _parser()
    args = ap.parse_args(argv)
    out = _Out()
    try:
        code = args.fn(args, out)
    except (fileformat.FormatError, _Input) as e:
        out("error", str(e))
        code = 2
    except RefusalError as e:
        out("refused", str(e))
        code = 1
    except (ValueError, KeyError, TypeError) as e:
        out("error", str(e).strip("'\""))
        code = 2
    return code, out.json() if args.json else out.text()


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

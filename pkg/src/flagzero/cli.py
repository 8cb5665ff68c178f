"""Command-line front end: ``flagzero <command> ...``.

Exit status is 0 on success, 1 when the computation rejects its input and
2 for usage errors.  ``--json`` prints ``{"command": ..., "result": ...}``;
the schema for each command lives in the repository's ``schemas/``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cache import Cache, make_key
from .charclass import (
    chern_first_lag, chern_top_lag, euler_characteristic, load_bundle, point_bundle_sp,
    tangent_bundle_lag,
)
from .errors import FlagzeroError, InvalidQuery, ParseError
from .lag_ring import LagElement, generators, normal_form, spin_obstruction, sq2
from .polyring import (
    double_schubert_top, element_from_permutation, parse_poly, permutation, schubert_poly,
    typeC_top_equivariant,
)
from .rootsys import build_root_system, enumerate_weyl, longest_element
from .torsion import torsion_index_full_flag, u_bound_low, u_criterion
from .verdict import Query, decide, format_table_line, named_query, table_suite


def _threads(arg):
    if arg is not None:
        n = arg
    else:
        try:
            n = int(os.environ.get("FLAGZERO_THREADS", "1"))
        except ValueError:
            raise InvalidQuery("FLAGZERO_THREADS must be an integer")
    if n < 0:
        raise InvalidQuery("thread count must be >= 0")
    return n or (os.cpu_count() or 1)


def _parse_ints(text, what):
    text = (text or "").strip()
    if not text:
        return ()
    parts = text.replace(",", " ").split()
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"cannot parse {what} {text!r}: expected integers separated by commas")


def _parse_word(text, k):
    text = (text or "").strip()
    if text and "," not in text and " " not in text and k <= 10 and len(text) > 1:
        return tuple(int(ch) for ch in text)
    return _parse_ints(text, "word")


def _root_system(args):
    rs = build_root_system(args.type, args.rank)
    return rs


def _check_expensive(rs, args):
    if rs.expensive and not getattr(args, "expensive", False):
        raise InvalidQuery(f"{rs.name} is expensive; pass --expensive to run it anyway")


def _canonical(payload):
    # the cache stores sorted keys; fresh results must render identically
    return json.loads(json.dumps(payload, sort_keys=True))


def _fmt_vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


# -- commands: each returns (text, result) ----------------------------------

def cmd_roots(args):
    rs = _root_system(args)
    rows = []
    for b, cv in zip(rs.positive_roots, rs.coroots):
        amb = rs.to_ambient(rs.root_weight(b))
        rows.append({"simple": list(b), "coroot": list(cv), "ambient": [str(x) for x in amb]})
    text = [f"{rs.name}: {len(rows)} positive roots"]
    for r in rows:
        text.append(f"{_fmt_vec(r['simple'])}  ambient {_fmt_vec(r['ambient'])}")
    return "\n".join(text), {"type": rs.name, "count": len(rows), "roots": rows}


def _weyl_payload(rs):
    group = enumerate_weyl(rs)
    counts = [len(layer) for layer in group.layers]
    w0 = longest_element(rs, group)
    return {"type": rs.name, "order": str(len(group)), "length_counts": counts,
            "longest_word": list(w0.word), "max_length": w0.length}


def cmd_weyl(args):
    rs = _root_system(args)
    _check_expensive(rs, args)
    cache = Cache()
    key = make_key(rs.family, rs.rank, "weyl")
    payload = None if args.no_cache else cache.get(key)
    if payload is None:
        payload = _canonical(_weyl_payload(rs))
        if not args.no_cache:
            cache.put(key, payload)
    text = (f"|W({rs.name})| = {payload['order']}\n"
            f"length counts: {' '.join(str(c) for c in payload['length_counts'])}\n"
            f"longest element: {''.join(f's{j}' for j in payload['longest_word'])} "
            f"(length {payload['max_length']})")
    return text, payload


def cmd_schubert(args):
    rs = build_root_system("A", args.k - 1) if args.k >= 2 else None
    if rs is None:
        raise InvalidQuery("k must be at least 2")
    if args.perm:
        w = element_from_permutation(rs, _parse_ints(args.perm, "permutation"))
    else:
        word = _parse_word(args.word, args.k)
        if any(not 1 <= j < args.k for j in word):
            raise InvalidQuery(f"word letters must lie in 1..{args.k - 1}")
        w = rs.element_from_word(word)
    f = schubert_poly(w)
    return str(f), {"k": args.k, "word": list(w.word), "permutation": list(permutation(w)),
                    "polynomial": str(f), "terms": f.to_json()}


def cmd_double_schubert(args):
    f = double_schubert_top(args.k, args.convention)
    return str(f), {"k": args.k, "convention": args.convention, "polynomial": str(f),
                    "terms": f.to_json()}


def cmd_typec_top(args):
    f = typeC_top_equivariant(args.k)
    return str(f), {"k": args.k, "polynomial": str(f), "terms": f.to_json()}


def cmd_lag(args):
    k = args.k
    names = [f"c{i}" for i in range(1, k + 1)]
    p = parse_poly(args.expr, names)
    trace = []
    nf = normal_form(p, k, trace)
    return str(nf), {"k": k, "input": str(p), "normal_form": nf.to_json(), "text": str(nf),
                     "rewrites": len(trace)}


def cmd_sq2(args):
    k = args.k
    if args.expr:
        e = LagElement.parse(args.expr, k)
    else:
        e = generators(k)[1]
    out = sq2(e)
    result = {"k": k, "input": str(e), "sq2": out.to_json(), "text": str(out)}
    lines = [f"Sq2({e}) = {out} (mod 2)"]
    if args.spin:
        spin = spin_obstruction(k)
        result["spin"] = spin.to_payload()
        lines.extend(spin.steps)
    return "\n".join(lines), result


def cmd_chern(args):
    k = args.k
    if args.bundle == "tangent":
        bundle = tangent_bundle_lag(k)
    elif args.bundle == "point":
        bundle = point_bundle_sp(k)[0]
    else:
        bundle = load_bundle(args.bundle)
        if bundle.k != k:
            raise InvalidQuery(f"bundle file is over Sp({bundle.k})/U({bundle.k}), not k={k}")
    top = chern_top_lag(bundle)
    first = chern_first_lag(bundle)
    u_top = generators(k)[0]
    result = {"k": k, "ambient": bundle.ambient, "rank": bundle.rank,
              "top": top.to_json(), "first": first.to_json(),
              "top_coefficient": str(top.coefficient(range(1, k + 1))),
              "top_is_generator": top == u_top}
    text = f"c_top = {top}\nc_1 = {first}"
    return text, result


def cmd_euler(args):
    rs = _root_system(args)
    J = _parse_ints(args.parabolic, "parabolic")
    chi = euler_characteristic(rs, J)
    return f"chi = {chi}", {"type": rs.name, "parabolic": sorted(J), "euler": str(chi)}


def cmd_tau(args):
    rs = _root_system(args)
    _check_expensive(rs, args)
    cache = Cache()
    key = make_key(rs.family, rs.rank, "tau", {"lattice": rs.lattice, "method": args.method})
    payload = None if args.no_cache else cache.get(key)
    if payload is None:
        res = torsion_index_full_flag(rs, workers=_threads(args.threads), method=args.method)
        payload = _canonical(res.to_payload())
        if not args.no_cache:
            cache.put(key, payload)
    return f"tau = {payload['tau']}", payload


def cmd_ubound(args):
    low = u_bound_low(args.k)
    result = {"k": args.k, "u_low": low, "u_high": low + 1}
    text = f"u({args.k}) is {low} or {low + 1}"
    if args.table:
        table = {}
        for item in args.table.split(","):
            try:
                a, b = item.split("=")
                table[int(a)] = int(b)
            except ValueError:
                raise ParseError(f"cannot parse table entry {item!r}: expected k=u")
        crit = u_criterion(args.k, table)
        result["criterion"] = crit
        text += f"\nu({args.k - 1}) < u({args.k}): " + ("unknown" if crit is None else str(crit).lower())
    return text, result


def cmd_verdict(args):
    if args.name:
        q = named_query(args.name, args.target)
    else:
        if args.type is None or args.rank is None:
            raise InvalidQuery("verdict needs --type and --rank, or --name")
        q = Query(args.type, args.rank, frozenset(_parse_ints(args.parabolic, "parabolic")), args.target)
    v = decide(q)
    lines = [v.status] + [f"  {r.id}: {r.citation}" for r in v.rules]
    return "\n".join(lines), v.to_json()


def cmd_table(args):
    rows = table_suite()
    text = "\n".join(format_table_line(*r) for r in rows)
    result = [{"row": row, "column": col, "verdict": v.to_json()} for row, col, _, v in rows]
    return text, result


# -- parser ---------------------------------------------------------------

def _add_type(p, required=True):
    p.add_argument("--type", required=required, help="Cartan family A..G")
    p.add_argument("--rank", type=int, required=required)


def build_parser():
    parser = argparse.ArgumentParser(prog="flagzero", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"flagzero {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = command("roots", cmd_roots, "positive roots")
    _add_type(p)
    p = command("weyl", cmd_weyl, "Weyl group order and length distribution")
    _add_type(p)
    p.add_argument("--expensive", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p = command("schubert", cmd_schubert, "Schubert polynomial of a permutation")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--word", default="", help="word in the simple reflections, e.g. 1,2")
    p.add_argument("--perm", help="one-line notation, e.g. 3,1,2")
    p = command("double-schubert", cmd_double_schubert, "top double Schubert polynomial")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--convention", choices=("standard", "paper"), default="standard")
    p = command("typec-top", cmd_typec_top, "type C top equivariant class")
    p.add_argument("--k", type=int, required=True)
    p = command("lag", cmd_lag, "normal form in H*(Sp(k)/U(k))")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--expr", required=True, help="polynomial in c1..ck, e.g. c2^2")
    p = command("sq2", cmd_sq2, "Sq^2 in H*(Sp(k)/U(k); Z/2)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--expr", help="element like c{2,3}; default u_{2n-2}")
    p.add_argument("--spin", action="store_true", help="also derive the spin constraint")
    p = command("chern", cmd_chern, "Chern classes of a bundle over Sp(k)/U(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bundle", default="tangent", help="tangent, point, or a bundle JSON file")
    p = command("euler", cmd_euler, "Euler characteristic of G/P")
    _add_type(p)
    p.add_argument("--parabolic", default="", help="Levi simple roots, e.g. 1,2")
    p = command("tau", cmd_tau, "torsion index of K/T")
    _add_type(p)
    p.add_argument("--method", choices=("auto", "exact", "modular"), default="auto")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--expensive", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p = command("ubound", cmd_ubound, "bounds for the 2-adic torsion exponent u(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--table", help="exact values, e.g. 2=0,3=1")
    p = command("verdict", cmd_verdict, "representability verdict")
    _add_type(p, required=False)
    p.add_argument("--parabolic", default="")
    p.add_argument("--target", choices=("point", "diagonal"), default="point")
    p.add_argument("--name", help="named space such as Q5 or OG4")
    command("table", cmd_table, "summary table of verdicts")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, result = args.func(args)
    except (FlagzeroError, ValueError, OSError) as exc:
        print(f"flagzero {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"command": args.command, "result": result}, indent=1, ensure_ascii=False))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

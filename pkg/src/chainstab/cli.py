"""Command-line front end.

Exit codes: 0 success, 1 bad input (or a certificate that does not verify),
2 when an enumeration reaches its search window.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import atlas as atlas_mod
from .calculus import chi_chain, slope, stack_dim
from .core import (CapExceeded, ChainError, ChainType, canonical_json, format_rational,
                   parse_rational)
from .hn import MINUS, PLUS, enumerate_flip_types
from .pathfinder import find_path, verify_certificate
from .stability import is_critical
from .walls import Segment, perturb_to_single_walls, walls_on_segment


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def int_vector(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def rat_vector(s: str):
    try:
        return tuple(parse_rational(x) for x in s.split(","))
    except (ChainError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {s!r}")


def make_parser() -> Parser:
    p = Parser(prog="chainstab", description="Exact stability calculus for holomorphic chains.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=Parser)

    def add(name, help_, *flags):
        sp = sub.add_parser(name, help=help_)
        for f in flags:
            f(sp)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    ranks = lambda sp: sp.add_argument("--ranks", type=int_vector, required=True)
    degs = lambda sp: sp.add_argument("--degs", type=int_vector, required=True)
    alpha = lambda sp: sp.add_argument("--alpha", type=rat_vector, required=True)
    genus = lambda sp: sp.add_argument("--genus", type=int, default=2)
    total = lambda sp: sp.add_argument("--total-deg", type=int, required=True)

    add("slope", "alpha-slope of a chain type", ranks, degs, alpha)
    sp = add("chi", "Euler characteristic chi(E1, E2)", ranks, degs, genus)
    sp.add_argument("--ranks2", type=int_vector)
    sp.add_argument("--degs2", type=int_vector)
    sp = add("walls", "walls met by a segment, or through a point", ranks, total, genus)
    sp.add_argument("--start", type=rat_vector)
    sp.add_argument("--dir", type=rat_vector)
    sp.add_argument("--tmax", type=parse_rational)
    sp.add_argument("--alpha", type=rat_vector)
    sp.add_argument("--perturb", action="store_true",
                    help="replace the segment by one with single-wall crossings")
    sp = add("flips", "flip types on one side of a wall", ranks, degs, alpha, genus)
    sp.add_argument("--side", choices=[PLUS, MINUS], default=PLUS)
    sp.add_argument("--dir", type=rat_vector)
    sp.add_argument("--window", type=int)
    for name in ("components", "atlas"):
        sp = add(name, "fixed-point types of rank n and degree D", genus, total)
        sp.add_argument("--rank", type=int, required=True)
        sp.add_argument("--cap", type=int)
        if name == "atlas":
            sp.add_argument("--dot", action="store_true", help="emit the wt order as DOT")
    sp = add("path", "wall-crossing path certificate", ranks, degs, genus)
    sp.add_argument("--start", type=rat_vector)
    sp.add_argument("--budget", type=int, default=64)
    sp = sub.add_parser("verify", help="re-check a path certificate")
    sp.add_argument("certificate", help="certificate JSON file, or - for stdin")
    sp.add_argument("--genus", type=int)
    sp.add_argument("--json", action="store_true")
    return p


def _emit(obj, as_json: bool, text: str, out):
    out.write(canonical_json(obj) if as_json else text + "\n")


def run(args, out) -> int:
    cmd = args.cmd
    if cmd == "slope":
        mu = slope(ChainType(args.ranks, args.degs), args.alpha)
        _emit({"slope": format_rational(mu)}, args.json, format_rational(mu), out)
    elif cmd == "chi":
        e1 = ChainType(args.ranks, args.degs)
        if (args.ranks2 is None) != (args.degs2 is None):
            raise ChainError("--ranks2 and --degs2 go together")
        e2 = e1 if args.ranks2 is None else ChainType(args.ranks2, args.degs2)
        chi = chi_chain(e1, e2, args.genus)
        obj = {"chi": chi}
        if e2 is e1:
            obj["stack_dim"] = stack_dim(e1, args.genus)
        _emit(obj, args.json, "\n".join(f"{k}: {v}" for k, v in obj.items()), out)
    elif cmd == "walls":
        if args.alpha is not None:
            found = is_critical(args.ranks, args.total_deg, args.alpha)
            obj = {"critical": bool(found), "walls": [w.to_json() for w in found]}
            text = "\n".join(str(w) for w in found) or "not critical"
            _emit(obj, args.json, text, out)
            return 0
        if args.start is None or args.dir is None or args.tmax is None:
            raise ChainError("walls needs --alpha, or --start, --dir and --tmax")
        seg = Segment(args.start, args.dir, args.tmax)
        if args.perturb:
            pieces = perturb_to_single_walls(args.ranks, args.total_deg, seg, args.genus)
            reps = [walls_on_segment(args.ranks, args.total_deg, s) for s in pieces]
            obj = {"pieces": [r.to_json() for r in reps]}
            text = "\n".join(f"piece {i}: " + ", ".join(format_rational(c.t) for c in r.crossings)
                             for i, r in enumerate(reps))
        else:
            rep = walls_on_segment(args.ranks, args.total_deg, seg)
            obj = rep.to_json()
            text = "\n".join(f"t={format_rational(c.t)}  " + " ".join(str(w) for w in c.walls)
                             + ("  [multi-wall]" if c.multi_wall else "")
                             for c in rep.crossings) or "no crossings"
        _emit(obj, args.json, text, out)
    elif cmd == "flips":
        t = ChainType(args.ranks, args.degs)
        ws = is_critical(t.ranks, t.degree, args.alpha)
        if len(ws) != 1:
            raise ChainError(f"alpha lies on {len(ws)} walls; flips need exactly one")
        locus = enumerate_flip_types(t, ws[0], args.alpha, args.side, args.genus,
                                     window=args.window, direction=args.dir)
        text = "\n".join(f"{ft.hn_type}  dim={ft.stratum_dim} codim={ft.codim} "
                         f"maximal={ft.maximal} pattern={ft.verdict.pattern}"
                         for ft in locus.types) or "no flip types"
        _emit(locus.to_json(), args.json, text, out)
    elif cmd in ("components", "atlas"):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            a = atlas_mod.enumerate_components(args.rank, args.total_deg, args.genus,
                                               cap=args.cap)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        if cmd == "atlas" and args.dot:
            if args.json:
                raise ChainError("--dot and --json are exclusive")
            out.write(a.to_dot())
            return 0
        obj = a.to_json()
        if cmd == "components":
            obj = {k: obj[k] for k in ("n", "D", "g", "coprime", "components")}
        rows = [f"{c.name}  wt={format_rational(c.wt)}  chain={list(c.chain.degs)}  "
                f"dim={c.stack_dim}  {c.status}" for c in a.components]
        if cmd == "atlas":
            rows.append(f"edges: {len(a.edges)}")
        _emit(obj, args.json, "\n".join(rows), out)
    elif cmd == "path":
        cert = find_path(ChainType(args.ranks, args.degs), args.genus, args.start, args.budget)
        v = cert.verdict
        text = f"{v.kind}" + (f": {v.reason}" if v.reason else "")
        if v.hn_type is not None:
            text += f" at {v.wall} with {v.hn_type} from {v.test_chain}"
        text += f"\ncrossings: {len(cert.crossings)}"
        _emit(cert.to_json(), args.json, text, out)
    elif cmd == "verify":
        src = sys.stdin if args.certificate == "-" else open(args.certificate)
        with src:
            try:
                data = json.load(src)
            except json.JSONDecodeError as exc:
                raise ChainError(f"certificate is not JSON: {exc}")
        res = verify_certificate(data, args.genus)
        obj = {"valid": res.ok, "diffs": res.diffs}
        text = "valid" if res.ok else "invalid\n" + "\n".join(res.diffs)
        _emit(obj, args.json, text, out)
        return 0 if res.ok else 1
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = make_parser().parse_args(argv)
        return run(args, out)
    except SystemExit as exc:          # --help
        return int(exc.code or 0)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ChainError, ValueError, TypeError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand is deterministic for fixed arguments.  JSON output carries a
``schema`` field; text output is meant for reading.  Inputs use the textual
notation of :mod:`cambrian.perm_core`: ``"2- 7+ 5- 1-"`` for signed
permutations and ``"125-7+/3+4-/6+"`` for signed ordered partitions.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from .perm_core import ParseError, all_signatures, check_signature

SCHEMA_VERSION = 1
MAX_ENUMERATION_N = 8
MAX_ORACLE_N = 6


class UsageError(ValueError):
    pass


def _schema(kind: str) -> str:
    return f"cambrian/{kind}/v{SCHEMA_VERSION}"


def _emit(payload: dict, text: str, fmt: str, dot: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    if fmt == "dot":
        if dot is None:
            raise UsageError("this command has no dot rendering")
        return dot
    return text


def _bounded(n: int, cap: int, what: str) -> int:
    if not 0 <= n <= cap:
        raise UsageError(f"{what} accepts 0 <= n <= {cap}, got {n}")
    return n


def _signatures(args, cap: int) -> list[str]:
    if args.sig is not None:
        sig = check_signature(args.sig)
        _bounded(len(sig), cap, args.command)
        return [sig]
    if args.n is None:
        raise UsageError("give --n or --sig")
    return all_signatures(_bounded(args.n, cap, args.command))


# ---------------------------------------------------------------------------
# enumerate


def _enumerate_camb(args) -> tuple[dict, str]:
    from .camb_tree import cambrian_trees, catalan

    sigs = _signatures(args, MAX_ENUMERATION_N)
    n = len(sigs[0])
    counts = {s: len(cambrian_trees(s)) if n else 1 for s in sigs}
    total = sum(counts.values())
    payload = {"kind": "camb", "n": n, "counts": counts, "total": total, "catalan": catalan(n)}
    if args.sig is not None:
        text = f"{total} {args.sig}-Cambrian trees (C_{n} = {catalan(n)})"
    else:
        text = f"C_{n} = {catalan(n)} per signature; total {total}"
    return payload, text


def _enumerate_baxter(args) -> tuple[dict, str]:
    from .baxter import baxter_number, bc_number

    sigs = _signatures(args, MAX_ENUMERATION_N)
    n = len(sigs[0])
    counts = {s: bc_number(s) for s in sigs}
    payload = {"kind": "baxter", "n": n, "counts": counts, "total": sum(counts.values())}
    if args.sig is not None:
        return payload, str(counts[args.sig])
    lines = [f"{s} {v}" for s, v in counts.items()]
    lines.append(f"total {payload['total']}; constant signature gives the Baxter number {baxter_number(n)}")
    return payload, "\n".join(lines)


def _enumerate_tuple(args) -> tuple[dict, str]:
    from .baxter import cambrian_tuples

    if not args.sig:
        raise UsageError("tuples need --sig with comma-separated signatures, e.g. -+--,+---")
    sigs = [check_signature(s) for s in args.sig.split(",")]
    if len({len(s) for s in sigs}) != 1:
        raise UsageError("all signatures of a tuple must have the same length")
    _bounded(len(sigs[0]), MAX_ORACLE_N, "enumerate --kind tuple")
    count = len(cambrian_tuples(sigs))
    return {"kind": "tuple", "signatures": sigs, "count": count}, str(count)


def _enumerate_schroder(args) -> tuple[dict, str]:
    from .schroder import count_by_nodes, dissection_counts, schroder_trees, super_catalan

    sigs = _signatures(args, MAX_ORACLE_N)
    n = len(sigs[0])
    counts = {s: len(schroder_trees(s)) if n else 1 for s in sigs}
    payload = {"kind": "schroder", "n": n, "counts": counts, "super_catalan": super_catalan(n)}
    lines = [f"{super_catalan(n)} Schröder-Cambrian trees per signature; total {sum(counts.values())}"]
    if args.by_nodes and n:
        by_nodes = {s: [count_by_nodes(s, m) for m in range(1, n + 1)] for s in sigs}
        payload["by_nodes"] = by_nodes
        payload["dissections"] = dissection_counts(n)
        distinct = sorted({tuple(v) for v in by_nodes.values()})
        for row in distinct:
            lines.append("by node count 1..{}: {}".format(n, " ".join(map(str, row))))
        lines.append("dissections by diagonals 0..{}: {}".format(n - 1, " ".join(map(str, dissection_counts(n)))))
    return payload, "\n".join(lines)


def _enumerate_indecomposables(args) -> tuple[dict, str]:
    from .camb_tree import E_indecomposables, catalan

    sigs = _signatures(args, MAX_ENUMERATION_N)
    n = len(sigs[0])
    if n == 0:
        raise UsageError("indecomposables need n >= 1")
    counts = {s: len(E_indecomposables(s)) for s in sigs}
    payload = {"kind": "indecomposables", "n": n, "counts": counts, "catalan_n_minus_1": catalan(n - 1)}
    return payload, f"C_{n - 1} = {catalan(n - 1)} per signature; total {sum(counts.values())}"


ENUMERATORS: dict[str, Callable] = {
    "camb": _enumerate_camb,
    "baxter": _enumerate_baxter,
    "tuple": _enumerate_tuple,
    "schroder": _enumerate_schroder,
    "indecomposables": _enumerate_indecomposables,
}


def cmd_enumerate(args) -> str:
    payload, text = ENUMERATORS[args.kind](args)
    payload["schema"] = _schema("enumerate")
    return _emit(payload, text, args.format)


# ---------------------------------------------------------------------------
# symbols


def cmd_psymbol(args) -> str:
    from .camb_tree import p_symbol
    from .perm_core import parse_permutation

    T = p_symbol(parse_permutation(args.word))
    return _emit({"schema": _schema("camb-tree"), "tree": T.to_json()}, str(T), args.format, T.to_dot())


def cmd_pstar(args) -> str:
    from .perm_core import parse_partition
    from .schroder import p_star_symbol

    T = p_star_symbol(parse_partition(args.word))
    return _emit({"schema": _schema("schroder-tree"), "tree": T.to_json()}, str(T), args.format, T.to_dot())


def cmd_pbax(args) -> str:
    from .baxter import baxter_p_symbol
    from .perm_core import parse_permutation

    pair = baxter_p_symbol(parse_permutation(args.word))
    dot = pair.t_circ.to_dot("t_circ") + "\n" + pair.t_bullet.to_dot("t_bullet")
    return _emit({"schema": _schema("twin-pair"), "pair": pair.to_json()}, str(pair), args.format, dot)


# ---------------------------------------------------------------------------
# products and coproducts


def _symbol_reader(kind: str) -> Callable:
    from .perm_core import parse_partition, parse_permutation

    if kind == "camb":
        from .camb_tree import p_symbol

        return lambda text: p_symbol(parse_permutation(text))
    if kind == "baxter":
        from .baxter import baxter_p_symbol

        return lambda text: baxter_p_symbol(parse_permutation(text))
    from .schroder import p_star_symbol

    return lambda text: p_star_symbol(parse_partition(text))


def _operations(kind: str, basis: str):
    if kind == "camb":
        from . import camb_hopf as h

        return (h.camb_P_product, h.camb_P_coproduct) if basis == "P" else (h.camb_Q_product, h.camb_Q_coproduct)
    if kind == "baxter":
        from . import baxter as b

        return (b.baxter_hopf_product, b.baxter_hopf_coproduct) if basis == "P" else (b.baxter_Q_product, b.baxter_Q_coproduct)
    from . import schroder as s

    return (s.schroder_P_product, s.schroder_P_coproduct) if basis == "P" else (s.schroder_Q_product, s.schroder_Q_coproduct)


def _key_json(key) -> dict:
    return key.to_json() if getattr(key, "n", 0) else {"empty": True}


def cmd_product(args) -> str:
    read = _symbol_reader(args.kind)
    left, right = read(args.left), read(args.right)
    _bounded(left.n + right.n, MAX_ENUMERATION_N, "product")
    result = _operations(args.kind, args.basis)[0](left, right)
    payload = {
        "schema": _schema("product"),
        "kind": args.kind,
        "basis": args.basis,
        "terms": [{"coefficient": c, "tree": _key_json(k)} for k in result.keys() for c in [result.coefficient(k)]],
    }
    return _emit(payload, result.render(prefix=args.basis), args.format)


def cmd_coproduct(args) -> str:
    read = _symbol_reader(args.kind)
    tree = read(args.word)
    _bounded(tree.n, MAX_ENUMERATION_N, "coproduct")
    result = _operations(args.kind, args.basis)[1](tree)
    payload = {
        "schema": _schema("coproduct"),
        "kind": args.kind,
        "basis": args.basis,
        "terms": [
            {"coefficient": result.coefficient(k), "left": _key_json(k[0]), "right": _key_json(k[1])}
            for k in result.keys()
        ],
    }
    return _emit(payload, result.render(prefix=args.basis), args.format)


# ---------------------------------------------------------------------------
# lattices and export


def build_lattice(kind: str, sig: str):
    """The poset of the given kind on one signature (comma-separated for tuples)."""
    if kind == "camb":
        from .camb_tree import cambrian_lattice

        _bounded(len(sig), MAX_ENUMERATION_N, "lattice --kind camb")
        return cambrian_lattice(check_signature(sig))
    if kind == "weak":
        from .camb_tree import weak_order_lattice

        _bounded(len(sig), MAX_ORACLE_N, "lattice --kind weak")
        return weak_order_lattice(check_signature(sig))
    if kind == "baxter":
        from .baxter import baxter_lattice

        _bounded(len(sig), MAX_ORACLE_N, "lattice --kind baxter")
        return baxter_lattice(check_signature(sig))
    if kind == "tuple":
        from .baxter import tuple_lattice

        sigs = [check_signature(s) for s in sig.split(",")]
        _bounded(len(sigs[0]), MAX_ORACLE_N, "lattice --kind tuple")
        return tuple_lattice(sigs)
    if kind == "schroder":
        from .schroder import schroder_lattice

        _bounded(len(sig), 5, "lattice --kind schroder")
        return schroder_lattice(check_signature(sig))
    raise UsageError(f"unknown lattice kind {kind}")


def _lattice_output(args) -> str:
    if args.sig is None:
        raise UsageError("give --sig")
    L = build_lattice(args.kind, args.sig)
    covers = L.cover_arcs()
    payload = {
        "schema": _schema("lattice"),
        "kind": args.kind,
        "signature": args.sig,
        "vertices": [str(e) for e in L.elements],
        "covers": [list(arc) for arc in covers],
        "is_lattice": L.is_lattice(),
    }
    text = f"{len(L)} vertices, {len(covers)} cover relations, lattice: {payload['is_lattice']}"
    return _emit(payload, text, args.format, L.to_dot(name=f"{args.kind}_lattice"))


def cmd_lattice(args) -> str:
    return _lattice_output(args)


def cmd_export(args) -> str:
    args.format = args.format or "dot"
    out = _lattice_output(args)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
        return f"wrote {args.output}"
    return out


# ---------------------------------------------------------------------------
# Baxter-Cambrian counting


def cmd_baxter_count(args) -> str:
    from .baxter import bc_matrix, bc_value_multiset

    if args.sig is not None:
        sig = check_signature(args.sig)
        if len(sig) < 1:
            raise UsageError("the signature must be nonempty")
        M = bc_matrix(sig)
        payload = {"schema": _schema("baxter-count"), "signature": sig, "count": M.total}
        text = str(M.total)
        if args.matrix:
            payload["matrix"] = [list(row) for row in M.entries]
            text += "\n" + M.render()
        return _emit(payload, text, args.format)
    if args.n is None:
        raise UsageError("give --n or --sig")
    n = _bounded(args.n, 12, "baxter-count")
    if n == 0:
        raise UsageError("baxter-count needs n >= 1")
    values = bc_value_multiset(n)
    rows = sorted(values.items(), reverse=True)
    payload = {"schema": _schema("baxter-count"), "n": n, "multiset": {str(v): m for v, m in rows}}
    text = "\n".join(f"{v} x{m}" for v, m in rows)
    return _emit(payload, text, args.format)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> tuple[str, int]:
    from .verify import CRITERION_SUITES, SUITES, run_suite

    names = list(CRITERION_SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name}; choose from {', '.join(sorted(SUITES))} or all")
    reports = [run_suite(name, n=args.n, seed=args.seed, jobs=args.jobs) for name in names]
    status = 0 if all(r.passed for r in reports) else 1
    if args.format == "json":
        return json.dumps({"schema": _schema("verify"), "suites": [r.to_json() for r in reports]}, indent=2), status
    return "\n".join(r.render() for r in reports), status


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default=None,
                        help="output format (default: text; dot for export)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for per-signature loops")

    parser = argparse.ArgumentParser(prog="cambrian", description="Cambrian Hopf algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="count trees, twin pairs, tuples, Schröder trees")
    p.add_argument("--kind", choices=sorted(ENUMERATORS), default="camb")
    p.add_argument("--n", type=int)
    p.add_argument("--sig")
    p.add_argument("--by-nodes", action="store_true")

    for name, helptext in (
        ("psymbol", "Cambrian tree of a signed permutation"),
        ("pstar", "Schröder-Cambrian tree of a signed ordered partition"),
        ("pbax", "twin pair of a signed permutation"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("word")

    for name in ("product", "coproduct"):
        p = sub.add_parser(name, parents=[common], help=f"{name} in the P or Q basis")
        p.add_argument("--kind", choices=("camb", "baxter", "schroder"), default="camb")
        p.add_argument("--basis", choices=("P", "Q"), default="P")
        if name == "product":
            p.add_argument("left")
            p.add_argument("right")
        else:
            p.add_argument("word")

    poset_help = {"lattice": "poset on one signature", "export": "write a poset as DOT or JSON"}
    for name in ("lattice", "export"):
        p = sub.add_parser(name, parents=[common], help=poset_help[name])
        p.add_argument("--kind", choices=("camb", "weak", "baxter", "tuple", "schroder"), default="camb")
        p.add_argument("--sig")
        if name == "export":
            p.add_argument("--output", "-o")

    p = sub.add_parser("baxter-count", parents=[common], help="Baxter-Cambrian numbers")
    p.add_argument("--n", type=int)
    p.add_argument("--sig")
    p.add_argument("--matrix", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("--suite", default="all", help="suite name or 'all' (default)")
    p.add_argument("--n", type=int)
    return parser


COMMANDS: dict[str, Callable] = {
    "enumerate": cmd_enumerate,
    "psymbol": cmd_psymbol,
    "pstar": cmd_pstar,
    "pbax": cmd_pbax,
    "product": cmd_product,
    "coproduct": cmd_coproduct,
    "lattice": cmd_lattice,
    "export": cmd_export,
    "baxter-count": cmd_baxter_count,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "export":
        args.format = args.format or "text"
    try:
        result = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out, status = result if isinstance(result, tuple) else (result, 0)
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())

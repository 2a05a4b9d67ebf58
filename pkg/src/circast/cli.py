"""Command-line interface.

Every capability is a subcommand over the JSON file formats of the library:

    circast gen-x --n 5
    circast verify-partition --in partition.json --format json
    circast build --in partition.json --out ast.json
    circast extract --in ast.json
    circast verify-ast --in ast.json
    circast thin --in ast.json
    circast decompose --in pairset.json
    circast orbits --agl 5
    circast search --n 5 --dedupe multiplier
    circast symmetrise --in pairset.json
    circast params --in ast.json

Exit codes: 0 success, 1 verification-negative, 2 usage or input error.
Reports go to stdout (JSON with --format=json), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .astcheck import derived_parameters, symmetrise, verify_ast
from .circulant import (
    EmptyIndexSet,
    NotASTRegular,
    NotCirculant,
    NotCirculantAST,
    NotNontrivial,
    build_ast,
    extract_partition,
    is_ast_regular,
)
from .core import (
    DomainTooSmall,
    IndexPartition,
    PairSet,
    TernaryRelation,
    TriplePartition,
    build_pair_universe,
    make_domain,
)
from .groups import GroupSpec, MalformedCycles, NotPrime, agl1, orbit_partition_on_triples, shift_invariance_check
from .search import SearchConfig, search_ast_regular
from .thin import NotRegular, NotThin, matching_decomposition, thin_profile, thin_witness

_NEGATIVE_ERRORS = (NotASTRegular, NotCirculantAST, NotCirculant, NotNontrivial, NotRegular, NotThin)
_INPUT_ERRORS = (DomainTooSmall, EmptyIndexSet, MalformedCycles, NotPrime, ValueError, KeyError, TypeError, OSError)


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _render(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(args, obj, out_path: str | None = None) -> None:
    text = _render(obj)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _parse_seconds(text: str) -> float:
    return float(text[:-1] if text.endswith("s") else text)


def cmd_gen_x(args) -> int:
    X = build_pair_universe(make_domain(args.n))
    if args.format == "json":
        _emit(args, X.to_obj())
    else:
        print(f"pair universe for n={args.n}: {len(X)} pairs")
        for (i, j) in X:
            print(f"  ({i}, {j})")
    return 0


def cmd_verify_partition(args) -> int:
    P = IndexPartition.from_obj(_load(args.infile))
    report = is_ast_regular(P)
    if args.format == "json":
        _emit(args, report.to_obj())
    else:
        if report.ok:
            valencies = [s.n_I for s in report.part_stats]
            print(f"AST-regular: yes ({len(P.parts)} parts, n_I = {valencies})")
        else:
            print(f"AST-regular: no ({report.failure})")
    return 0 if report.ok else 1


def cmd_build(args) -> int:
    P = IndexPartition.from_obj(_load(args.infile))
    try:
        A = build_ast(P)
    except NotASTRegular as exc:
        print(_render(exc.report.to_obj()))
        print(f"not AST-regular: {exc.report.failure}", file=sys.stderr)
        return 1
    if args.format == "json" or args.out:
        _emit(args, A.to_obj(), args.out)
    if args.format != "json":
        sizes = [len(rel) for rel in A.relations]
        print(f"scheme with {len(A.relations)} relations, sizes {sizes}")
    return 0


def cmd_extract(args) -> int:
    A = TriplePartition.from_obj(_load(args.infile))
    P = extract_partition(A)
    if args.format == "json" or args.out:
        _emit(args, P.to_obj(), args.out)
    if args.format != "json":
        print(f"index partition with {len(P.parts)} parts over n={P.n}")
    return 0


def cmd_verify_ast(args) -> int:
    A = TriplePartition.from_obj(_load(args.infile))
    report = verify_ast(A)
    if args.format == "json":
        _emit(args, report.to_obj())
    else:
        if report.ok:
            print(f"AST: ok (m={A.m}, symmetric={report.symmetric})")
        else:
            print(f"AST: failed ({[f.to_obj() for f in report.failures]})")
    return 0 if report.ok else 1


def _thin_entry(rid, rel) -> dict:
    profile = sorted(thin_profile(rel))
    witnesses = {}
    for ab in profile:
        try:
            witnesses[ab] = thin_witness(rel, ab).to_obj()
        except NotThin:
            witnesses[ab] = None
    return {"id": rid, "profile": profile, "witnesses": witnesses}


def cmd_thin(args) -> int:
    obj = _load(args.infile)
    if "relations" in obj:
        A = TriplePartition.from_obj(obj)
        entries = [_thin_entry(rid, rel) for rid, rel in enumerate(A.relations)]
        n = A.n
    elif "triples" in obj:
        rel = TernaryRelation.from_obj(obj)
        entries = [_thin_entry(None, rel)]
        n = rel.n
    else:
        raise ValueError("input must be a relation or a triple partition")
    if args.format == "json":
        _emit(args, {"n": n, "relations": entries})
    else:
        for e in entries:
            label = "relation" if e["id"] is None else f"relation {e['id']}"
            print(f"{label}: thin for {e['profile'] or 'nothing'}")
    return 0


def cmd_decompose(args) -> int:
    I = PairSet.from_obj(_load(args.infile))
    decomposition = matching_decomposition(I)
    if args.format == "json":
        _emit(args, decomposition.to_obj())
    else:
        from .circulant import expand

        print(f"{len(decomposition.parts)} perfect matchings:")
        for part in decomposition.parts:
            profile = sorted(thin_profile(expand(part)))
            print(f"  {list(part.pairs())}  thin for {profile}")
    return 0


def cmd_orbits(args) -> int:
    if args.agl is not None:
        G = agl1(args.agl)
    else:
        G = GroupSpec.from_obj(_load(args.group))
    A = orbit_partition_on_triples(G)
    circulant = shift_invariance_check(A)
    ast_ok = verify_ast(A).ok
    if args.format == "json":
        _emit(args, {"partition": A.to_obj(), "circulant": circulant, "ast_ok": ast_ok})
    else:
        sizes = [len(rel) for rel in A.relations[4:]]
        print(f"{len(sizes)} nontrivial orbits, sizes {sizes}")
        print(f"circulant: {circulant}; AST: {ast_ok}")
    return 0


def cmd_search(args) -> int:
    config = SearchConfig(
        n=args.n,
        max_nI=args.max_ni,
        require_all_thin=args.all_thin,
        require_symmetric=args.symmetric,
        dedupe=args.dedupe,
        limit=args.limit,
        time_budget=_parse_seconds(args.timeout) if args.timeout else None,
    )
    result = search_ast_regular(config, jobs=args.jobs)
    if args.format == "json":
        _emit(args, result.to_obj())
    else:
        state = "complete" if result.complete else "partial (budget exceeded)"
        print(f"{len(result.hits)} partition(s), {state}, {result.nodes} nodes")
        for hit in result.hits:
            valencies = [s.n_I for s in hit.report.part_stats]
            print(f"  parts={len(hit.partition.parts)} n_I={valencies}")
    return 0


def cmd_symmetrise(args) -> int:
    I = PairSet.from_obj(_load(args.infile))
    closed = symmetrise(I)
    if args.format == "json":
        _emit(args, closed.to_obj())
    else:
        print(f"closure has {len(closed)} pairs: {list(closed.pairs())}")
    return 0


def cmd_params(args) -> int:
    A = TriplePartition.from_obj(_load(args.infile))
    report = verify_ast(A)
    if not report.ok:
        print(f"not an AST: {[f.to_obj() for f in report.failures]}", file=sys.stderr)
        return 1
    tensor = report.tensor
    derived_parameters(tensor)  # raises on an identity violation
    obj = {
        "n1": {str(k): v for k, v in sorted(tensor.n1.items())},
        "n2": {str(k): v for k, v in sorted(tensor.n2.items())},
        "n3": {str(k): v for k, v in sorted(tensor.n3.items())},
    }
    if args.format == "json":
        _emit(args, obj)
    else:
        for rid in sorted(tensor.n3):
            print(f"relation {rid}: n1={tensor.n1[rid]} n2={tensor.n2[rid]} n3={tensor.n3[rid]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circast",
        description="Construct, verify, decompose and search circulant association schemes on triples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("gen-x", help="emit the pair universe X(n)")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_gen_x)

    p = sub.add_parser("verify-partition", help="AST-regularity report for a partition of X")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=cmd_verify_partition)

    p = sub.add_parser("build", help="build the scheme of an AST-regular partition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("extract", help="recover the index partition of a circulant scheme")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify-ast", help="run the axiom checker on a triple partition")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=cmd_verify_ast)

    p = sub.add_parser("thin", help="thin profiles and witnesses of a relation or partition")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=cmd_thin)

    p = sub.add_parser("decompose", help="split a regular index set into perfect matchings")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("orbits", help="orbit scheme of a permutation group")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--group", help="JSON file with generators in cycle notation")
    grp.add_argument("--agl", type=int, help="use the affine group of the prime p")
    common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("search", help="enumerate AST-regular partitions of X(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-ni", dest="max_ni", type=int, default=None)
    p.add_argument("--all-thin", dest="all_thin", action="store_true")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--dedupe", choices=("none", "multiplier"), default="none")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--timeout", default=None, help="wall-clock budget in seconds, e.g. 60 or 60s")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("symmetrise", help="smallest Sym(3)-closed index set containing the input")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=cmd_symmetrise)

    p = sub.add_parser("params", help="marginal parameters of a verified scheme")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(func=cmd_params)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _NEGATIVE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

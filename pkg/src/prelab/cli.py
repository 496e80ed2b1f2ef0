"""Command line entry point: ``prelab {check,adjoints,decompose,verify,enumerate,parse}``.

Machine output is JSON with sorted keys. Exit codes: 0 success or a yes,
1 a negative verdict, 2 malformed input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict

from .enumeration import MODES, CatalogConfig, catalog, subjects
from .formats import FormatError, load_lexicon, load_structure
from .grammar import GrammarError, all_traces, format_types, recognize, render_trace
from .monoid import FLAGS, classify, search_adjoints, select_residual_semantics
from .order import SizeLimitError
from .spider import SpiderError, pregroup_cover

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as err:
        raise InputError(f"{path}: {err.strerror}") from None


def _structure(path: str):
    data = _read(path)
    try:
        st = load_structure(data.decode("utf-8"))
    except FormatError as err:
        raise InputError(f"{path}: {err}") from None
    if not st.monoids:
        raise InputError(f"{path}: no @monoid block")
    return data, st


@contextmanager
def _mapper(jobs: int):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield lambda fn, items: pool.map(fn, items, chunksize=8)


def cmd_check(args) -> tuple[int, dict]:
    data, st = _structure(args.file)
    out = []
    for name, M in st.monoids:
        pv = classify(M, explain=args.explain)
        out.append({"preorder": name, "properties": pv.as_dict()})
    return EXIT_OK, {"input_digest": _digest(data), "monoids": out}


def cmd_adjoints(args) -> tuple[int, dict]:
    data, st = _structure(args.file)
    out, code = [], EXIT_OK
    for name, M in st.monoids:
        P = M.carrier
        search = search_adjoints(M)
        if search.structure is None:
            x, why = search.missing
            code = EXIT_NO
            out.append({"preorder": name, "pregroup": False,
                        "first_failure": {"element": P.label(x) if x >= 0 else None,
                                          "missing": why}})
            continue
        pg = search.structure
        out.append({
            "preorder": name, "pregroup": True, "unit": P.label(pg.unit_elem),
            "ell": {P.label(x): P.label(pg.ell(x)) for x in range(P.size)},
            "arr": {P.label(x): P.label(pg.arr(x)) for x in range(P.size)},
        })
    return code, {"input_digest": _digest(data), "monoids": out}


def cmd_decompose(args) -> tuple[int, dict]:
    data, st = _structure(args.file)
    out, code = [], EXIT_OK
    for name, M in st.monoids:
        try:
            cover = pregroup_cover(M)
        except SpiderError as err:
            code = EXIT_NO
            out.append({"preorder": name, "spider": False, "reason": str(err)})
            continue
        out.append({"preorder": name, "spider": True, "covering": cover.as_dict()})
    return code, {"input_digest": _digest(data), "monoids": out}


def _sweep(args):
    config = CatalogConfig(size=args.size, mode=args.mode, seed=args.seed, count=args.count)
    with _mapper(args.jobs) as mapper:
        rep = catalog(config, mapper)
    return config, rep


def _config_digest(config) -> str:
    return _digest(json.dumps(asdict(config), sort_keys=True).encode())


def cmd_verify(args) -> tuple[int, dict]:
    config, rep = _sweep(args)
    body = {
        "input_digest": _config_digest(config),
        "config": asdict(config),
        "scope": rep.scope,
        "subjects": rep.total,
        "counts": rep.counts,
        "violations": rep.violations,
        "complete": rep.complete,
        "passed": rep.passed,
    }
    if config.mode == "general":
        small = subjects(min(config.size, 2), "general")
        sel = select_residual_semantics(small)
        body["residual_semantics"] = {"failures": sel.failures, "selected": sel.selected}
    return (EXIT_OK if rep.passed else EXIT_NO), body


def cmd_enumerate(args) -> tuple[int, dict]:
    config, rep = _sweep(args)
    body = {"input_digest": _config_digest(config), "catalog": rep.as_dict()}
    return (EXIT_OK if rep.passed else EXIT_NO), body


def cmd_parse(args) -> tuple[int, dict]:
    data = _read(args.lexicon)
    try:
        lex = load_lexicon(data.decode("utf-8"))
    except FormatError as err:
        raise InputError(f"{args.lexicon}: {err}") from None
    sentence = " ".join(args.sentence)
    try:
        trace = recognize(lex, sentence)
        traces = list(all_traces(lex, sentence)) if args.all else []
    except GrammarError as err:
        raise InputError(str(err)) from None
    body = {"input_digest": _digest(data), "sentence": sentence, "accepted": trace is not None}
    if trace is not None:
        body["trace"] = _trace_dict(trace)
    if args.all:
        body["traces"] = [_trace_dict(t) for t in traces]
    shown = traces if args.all else ([trace] if trace and args.trace else [])
    body["_text"] = "\n\n".join(render_trace(t) for t in shown)
    return (EXIT_OK if trace is not None else EXIT_NO), body


def _trace_dict(t) -> dict:
    return {"types": format_types(t.types), "links": [list(p) for p in t.links],
            "residual": t.residual}


def _pretty(sub: str, body: dict) -> str:
    lines = [f"{sub}:"]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {v}")
    walk(body, 1)
    return "\n".join(lines)


COMMANDS = {
    "check": cmd_check, "adjoints": cmd_adjoints, "decompose": cmd_decompose,
    "verify": cmd_verify, "enumerate": cmd_enumerate, "parse": cmd_parse,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prelab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report to this file")
        sp.add_argument("--pretty", action="store_true", help="human-readable text")
        sp.add_argument("--no-timing", action="store_true", help="omit the timing field")

    for name in ("check", "adjoints", "decompose"):
        sp = sub.add_parser(name)
        sp.add_argument("file", help="structure file")
        common(sp)
        if name == "check":
            sp.add_argument("--explain", choices=FLAGS, default=None,
                            help="property whose counterexample to report")

    for name in ("verify", "enumerate"):
        sp = sub.add_parser(name)
        sp.add_argument("--size", type=int, default=2)
        sp.add_argument("--mode", choices=MODES, default="general")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--count", type=int, default=100)
        sp.add_argument("--jobs", type=int, default=1)
        common(sp)

    sp = sub.add_parser("parse")
    sp.add_argument("--lexicon", required=True)
    sp.add_argument("--trace", action="store_true", help="print the link rendering")
    sp.add_argument("--all", action="store_true", help="print every trace")
    sp.add_argument("sentence", nargs="+")
    common(sp)
    return p


def run(argv=None) -> tuple[int, dict]:
    """Parse ``argv``, run the subcommand, and return ``(exit code, report)``.

    The report carries a private ``_args`` entry for :func:`main`; it is
    dropped before serialization.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return (EXIT_ERROR if stop.code else EXIT_OK), {}
    started = time.perf_counter()
    try:
        code, body = COMMANDS[args.command](args)
    except (InputError, SizeLimitError) as err:
        return EXIT_ERROR, {"subcommand": args.command, "error": str(err)}
    body["subcommand"] = args.command
    if not args.no_timing:
        body["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    body["_args"] = args
    return code, body


def serialize(body: dict) -> str:
    public = {k: v for k, v in body.items() if not k.startswith("_")}
    return json.dumps(public, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    code, body = run(sys.argv[1:] if argv is None else argv)
    if not body:
        return code
    if "error" in body:
        print(f"error: {body['error']}", file=sys.stderr)
        return code
    args = body["_args"]
    text = body.get("_text", "")
    report = serialize(body)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report)
    if args.pretty:
        public = {k: v for k, v in body.items() if not k.startswith("_")}
        print(_pretty(body["subcommand"], public))
    elif not args.out:
        sys.stdout.write(report)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

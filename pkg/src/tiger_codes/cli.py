"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 precondition violation,
4 search bound exhausted.
"""

import argparse
import json
import math
import os
import re
import sys
from importlib import resources
from json.decoder import scanstring

import jsonschema
import numpy as np

from . import catalog, fock, gkz, jsonfmt
from .distance import distance_report
from .errors import InvalidInput, SearchBoundExceeded, TigerError
from .homology import GeneratorPair, logical_structure
from .report import build_report

INT_LIMIT = 2 ** 53
_WS = re.compile(r"\s*")


def load_schema(name):
    text = resources.files("tiger_codes").joinpath("schemas", name).read_text()
    return json.loads(text)


# -- locating schema errors in the source text ------------------------------------------

def locate(text, target):
    """Line and column (1-based) of the value at JSON path ``target``, or None."""
    target = tuple(target)
    dec = json.JSONDecoder()

    def skip(i):
        return _WS.match(text, i).end()

    def walk(i, path):
        i = skip(i)
        hit = i if path == target else None
        c = text[i]
        if c == "{":
            i = skip(i + 1)
            if text[i] == "}":
                return i + 1, hit
            while True:
                key, i = scanstring(text, i + 1)
                i = skip(i) + 1  # past ':'
                i, h = walk(i, path + (key,))
                hit = hit if hit is not None else h
                i = skip(i)
                if text[i] == ",":
                    i = skip(i + 1)
                    continue
                return i + 1, hit
        if c == "[":
            i = skip(i + 1)
            if text[i] == "]":
                return i + 1, hit
            k = 0
            while True:
                i, h = walk(i, path + (k,))
                hit = hit if hit is not None else h
                i = skip(i)
                if text[i] == ",":
                    i, k = i + 1, k + 1
                    continue
                return i + 1, hit
        _, end = dec.raw_decode(text, i)
        return end, hit

    try:
        _, off = walk(0, ())
    except (ValueError, IndexError):
        return None
    if off is None:
        return None
    line = text.count("\n", 0, off) + 1
    col = off - (text.rfind("\n", 0, off) + 1) + 1
    return line, col


def _json_path(path):
    out = "$"
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def parse_definition(text, source="<input>"):
    """Validate a code-definition document and build the GeneratorPair."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(load_schema("code_definition.schema.json"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        where = locate(text, err.absolute_path)
        pos = f"{where[0]}:{where[1]}" if where else "?:?"
        msg = err.message
        if isinstance(err.instance, int) and abs(err.instance) > INT_LIMIT:
            msg = f"integer magnitude exceeds 2^53 ({err.instance})"
        raise InvalidInput(f"{source}:{pos}: at {_json_path(err.absolute_path)}: {msg}")
    try:
        code = GeneratorPair(doc["G"], doc["H"], n_modes=doc.get("n_modes"),
                             delta=doc.get("delta"), name=doc.get("name"))
    except TigerError:
        raise
    except ValueError as exc:
        raise InvalidInput(f"{source}: {exc}") from None
    return code, doc


def load_definition(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    return parse_definition(text, path)


# -- argument handling -----------------------------------------------------------------

CATALOG_FLAGS = ("n", "r", "m", "L", "M", "K", "m1", "m2", "delta1", "delta2")


def _add_code_args(ap):
    ap.add_argument("definition", nargs="?", help="code definition JSON file")
    ap.add_argument("--catalog", help="catalog code name (see catalog-list)")
    for flag in CATALOG_FLAGS:
        ap.add_argument(f"--{flag}", type=int)
    ap.add_argument("--boundary", choices=["closed", "open"])
    ap.add_argument("--delta", type=int, nargs="+", help="syndrome vector")
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--cutoff", type=int, help="total-occupation truncation")


def resolve_code(args):
    """Returns (code, expected metadata or None, definition document or None)."""
    if (args.definition is None) == (args.catalog is None):
        raise InvalidInput("give exactly one of a definition file or --catalog")
    if args.definition:
        code, doc = load_definition(args.definition)
        if args.delta is not None:
            code = code.with_delta(args.delta)
        return code, None, doc
    key = args.catalog.replace("_", "-")
    if key not in catalog.REGISTRY:
        raise InvalidInput(f"unknown catalog code {args.catalog!r}")
    schema = catalog.REGISTRY[key][1]
    params = {}
    for flag in CATALOG_FLAGS + ("boundary",):
        val = getattr(args, flag)
        if val is None:
            continue
        if flag not in schema:
            raise InvalidInput(f"{key} does not take --{flag}")
        params[flag] = val
    override = None
    if args.delta is not None:
        if "delta" in schema and len(args.delta) == 1:
            params["delta"] = args.delta[0]
        else:
            override = args.delta
    entry = catalog.make(key, **params)
    code = entry.code if override is None else entry.code.with_delta(override)
    return code, entry.expected, None


def _alpha(args, doc, default=1.0):
    if args.alpha is not None:
        return args.alpha
    if doc and "alpha" in doc:
        return float(doc["alpha"])
    return default


def _cutoff(args, doc):
    if args.cutoff is not None:
        return args.cutoff
    if doc and "cutoff" in doc:
        return int(doc["cutoff"])
    return None


def parse_grid(spec):
    """'a:b:n' -> n evenly spaced values from a to b; or a comma list."""
    try:
        if ":" in spec:
            a, b, n = spec.split(":")
            return np.linspace(float(a), float(b), int(n))
        return np.array([float(v) for v in spec.split(",")])
    except ValueError:
        raise InvalidInput(f"bad grid {spec!r}; use start:stop:count") from None


def parse_complex(s):
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise InvalidInput(f"bad complex number {s!r}") from None


def _emit(obj, args):
    text = jsonfmt.dumps(obj, indent=2)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands -----------------------------------------------------------------------

def _bound_status(status):
    """The report is still written when the X-distance search runs out of bound."""
    if status == "exceeds_bound":
        print("error: no logical vector within the x-distance search bound", file=sys.stderr)
        return SearchBoundExceeded.exit_code
    return 0


def cmd_analyze(args):
    code, expected, doc = resolve_code(args)
    rep = build_report(code, alpha=_alpha(args, doc), cutoff=_cutoff(args, doc),
                       bound=args.bound, expected=expected, grid_override=args.override)
    _emit(rep, args)
    return _bound_status(rep["x_distance"]["status"])


def cmd_distance(args):
    code, expected, _ = resolve_code(args)
    rep = distance_report(code, bound=args.bound, override=args.override,
                          grid_points=args.grid_points)
    out = rep.as_dict()
    if expected is not None:
        out["expected"] = expected
    _emit(out, args)
    return _bound_status(rep.x.status)


def cmd_dephasing(args):
    code, expected, doc = resolve_code(args)
    S = logical_structure(code)
    if S.n_factors == 0:
        raise InvalidInput("code has no logical factors")
    K = S.orders[args.factor]
    mu = args.mu if args.mu is not None else (2 * math.pi / K if K else math.pi / 2)
    p = np.zeros(code.N, dtype=np.int64) if args.p is None else np.array(args.p, dtype=np.int64)
    if len(p) != code.N:
        raise InvalidInput(f"p must have {code.N} entries")
    grid = parse_grid(args.alpha_sq)
    slope, icept, table = gkz.dephasing_slope_fit(code, mu, args.nu, p, grid, structure=S,
                                                  factor=args.factor, method=args.method)
    if args.format == "tsv":
        print(f"# slope {jsonfmt._float(slope)}")
        print(f"# intercept {jsonfmt._float(icept)}")
        print("alpha_sq\tlog_abs_sq")
        for a2, lv in table:
            print(f"{jsonfmt._float(a2)}\t{jsonfmt._float(lv)}")
        return
    _emit({"mu": mu, "nu": args.nu, "p": p.tolist(), "slope": slope, "intercept": icept,
           "table": table.tolist(), "expected_slope": (expected or {}).get("dephasing_slope")},
          args)


def cmd_gkz(args):
    code, expected, doc = resolve_code(args)
    if args.y:
        y = np.array([parse_complex(v) for v in args.y])
        if len(y) != code.N:
            raise InvalidInput(f"y must have {code.N} entries")
    else:
        y = np.full(code.N, _alpha(args, doc) ** 2, dtype=complex)
    spec = gkz.GkzSpec(code.H, code.delta, y)
    res = gkz.gkz_sum(spec, _cutoff(args, doc))
    out = {"delta": list(code.delta), "y": y, "sum": res.value, "tail": res.tail,
           "terms": res.n_terms, "cancellation": res.cancellation}
    if args.integral:
        out["integral"] = gkz.gkz_integral(spec, M=args.grid, override=args.override)
    tag = (expected or {}).get("gkz")
    if tag:
        params = {"y": y, "delta": code.delta[0] if len(code.delta) == 1 else list(code.delta)}
        if tag == "chi2":
            params = {"y": y, "delta1": code.delta[0], "delta2": code.delta[1]}
        if tag == "liger":
            params = {"y": y, "delta": list(code.delta), "r": code.N // 3}
        try:
            out["closed_form"] = {"family": tag, "value": gkz.closed_form(tag, **params)}
        except InvalidInput as exc:
            out["closed_form"] = {"family": tag, "error": str(exc)}
    _emit(out, args)


def cmd_codewords(args):
    code, expected, doc = resolve_code(args)
    S = logical_structure(code)
    if S.n_factors == 0:
        raise InvalidInput("code has no logical factors")
    alpha = _alpha(args, doc)
    n_max = _cutoff(args, doc)
    K = S.orders[args.factor]
    labels = args.label if args.label is not None else (list(range(K)) if K else [0, 1])
    out = []
    for lab in labels:
        if args.basis == "x":
            mu = 2 * math.pi * lab / K if K else float(lab)
            st = fock.build_x_codeword(code, mu, alpha, n_max=n_max, structure=S,
                                       factor=args.factor)
        else:
            st = fock.build_z_codeword(code, int(lab), alpha, n_max=n_max, structure=S,
                                       factor=args.factor)
        out.append(st.to_jsonl())
    text = "".join(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_catalog_list(args):
    items = catalog.listing()
    if args.definitions_dir:
        os.makedirs(args.definitions_dir, exist_ok=True)
        for item in items:
            doc = {k: item[k] for k in ("name", "G", "H", "delta", "n_modes")}
            with open(os.path.join(args.definitions_dir, f"{item['family']}.json"), "w") as fh:
                fh.write(jsonfmt.dumps(doc, indent=2) + "\n")
    _emit(items, args)


def build_parser():
    ap = argparse.ArgumentParser(prog="tiger", description="Analyze bosonic tiger codes.")
    ap.add_argument("--threads", type=int, help="worker cap (fallback: TIGER_THREADS)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis report")
    _add_code_args(p)
    p.add_argument("--bound", type=int, help="x-distance search bound")
    p.add_argument("--override", action="store_true", help="allow large torus grids")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("distance", help="X/Z distances and loss detection")
    _add_code_args(p)
    p.add_argument("--bound", type=int)
    p.add_argument("--grid-points", type=int)
    p.add_argument("--override", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("dephasing", help="sweep alpha^2 and fit the dephasing slope")
    _add_code_args(p)
    p.add_argument("--alpha-sq", default="4:12:9")
    p.add_argument("--p", type=int, nargs="+")
    p.add_argument("--mu", type=float)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--factor", type=int, default=0)
    p.add_argument("--method", choices=["relative", "auto", "sum", "exact"], default="relative")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dephasing)

    p = sub.add_parser("gkz", help="evaluate a GKZ function")
    _add_code_args(p)
    p.add_argument("--y", nargs="+", help="argument vector (complex allowed, e.g. 1+2j)")
    p.add_argument("--integral", action="store_true", help="also evaluate the torus integral")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--override", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gkz)

    p = sub.add_parser("codewords", help="dump codewords as JSON lines")
    _add_code_args(p)
    p.add_argument("--basis", choices=["x", "z"], default="x")
    p.add_argument("--label", type=float, nargs="+",
                   help="k for mu = 2 pi k/K (x basis) or ell (z basis)")
    p.add_argument("--factor", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_codewords)

    p = sub.add_parser("catalog-list", help="list catalog families as JSON")
    p.add_argument("--definitions-dir", help="also write one definition file per family")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog_list)
    return ap


def _thread_cap(args):
    val = args.threads
    if val is None and os.environ.get("TIGER_THREADS"):
        try:
            val = int(os.environ["TIGER_THREADS"])
        except ValueError:
            raise InvalidInput("TIGER_THREADS must be an integer") from None
    if val is not None and val < 1:
        raise InvalidInput("thread count must be positive")
    return val


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cap = _thread_cap(args)
        if cap is not None:
            from threadpoolctl import threadpool_limits
            with threadpool_limits(limits=cap):
                status = args.func(args)
        else:
            status = args.func(args)
    except TigerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return status or 0


if __name__ == "__main__":
    sys.exit(main())

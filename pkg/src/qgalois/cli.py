"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on usage or domain errors.
JSON is the default output; big integers are decimal strings.  ``--output``
paths that are relative resolve against ``$QGALOIS_OUTPUT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import acceptance
from .analysis import cf_probe, clt_curve, llt_curve, tv_curve
from .combinat import (
    area_left,
    area_under,
    enumerate_paths,
    ferrers_to_path,
    inversions,
    parse_ferrers,
    parse_path,
    parse_word,
    path_to_ferrers,
    path_to_word,
    word_to_path,
)
from .dist import (
    closed_form_moments,
    exact_pmf,
    moments_from_pmf,
    permutation_inversion_pmf,
)
from .errors import BudgetExceededError, DegenerateInputError, DomainError, PreconditionError
from .qpoly import galois_poly, poly_to_json, q_binomial, q_multinomial
from .sampler import (
    DEFAULT_SEED,
    SampleStream,
    batch_joint,
    joint_to_csv,
    joint_to_json,
    sample_ferrers_batch,
    sample_u_batch,
)
from .serialize import dumps, format_float

OUTPUT_DIR_ENV = "QGALOIS_OUTPUT_DIR"
EXHAUSTIVE_MAX_N = 20


class CheckFailed(Exception):
    """Raised by a subcommand whose verification did not pass (exit 1)."""

    def __init__(self, payload):
        self.payload = payload


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump_json(obj) -> str:
    return dumps(obj) + "\n"


# -- subcommands: each returns (json_obj, csv_text_or_None) ------------------------------


def cmd_poly(args):
    if args.kind == "binomial":
        if args.k is None:
            raise DomainError("--k is required for --kind binomial")
        p = q_binomial(args.n, args.k)
    elif args.kind == "multinomial":
        if args.parts is None:
            raise DomainError("--parts is required for --kind multinomial")
        p = q_multinomial(args.parts)
    else:
        if args.n is None or args.m is None:
            raise DomainError("--n and --m are required")
        p = galois_poly(args.n, args.m)
    obj = poly_to_json(p, args.n if args.kind != "multinomial" else sum(args.parts), args.m)
    obj["kind"] = args.kind
    return obj, _rows_csv(["power", "coeff"], enumerate(p.coeffs))


def cmd_pmf(args):
    pmf = permutation_inversion_pmf(args.n) if args.permutation else exact_pmf(args.n, args.m)
    rows = [(k, c, format_float(c / pmf.denominator)) for k, c in enumerate(pmf.numerators)]
    return pmf.to_json(), _rows_csv(["k", "numerator", "probability"], rows)


def cmd_moments(args):
    closed = closed_form_moments(args.n, args.m)
    from_pmf = moments_from_pmf(exact_pmf(args.n, args.m))
    equal = closed == from_pmf
    obj = {
        "n": args.n,
        "m": args.m,
        "closed_form": closed.to_json(),
        "from_pmf": from_pmf.to_json(),
        "exact_equality": equal,
    }
    if not equal:
        raise CheckFailed(obj)
    return obj, None


def cmd_tv(args):
    report = tv_curve(args.n, args.ms)
    if not all(r.extra["within_bound"] for r in report.rows):
        raise CheckFailed(report.to_json())
    return report.to_json(), report.to_csv()


def cmd_llt(args):
    report = llt_curve(args.ms, args.ns)
    return report.to_json(), report.to_csv()


def cmd_clt(args):
    report = clt_curve(args.m, args.ns)
    return report.to_json(), report.to_csv()


def cmd_cf(args):
    small, large = cf_probe(args.n, args.m, args.grid)
    obj = {"n": args.n, "m": args.m, "grid": args.grid, "c_hat_small": small, "c_hat_large": large}
    if not (small > 0 and large > 0):
        raise CheckFailed(obj)
    return obj, _rows_csv(list(obj), [list(obj.values())])


def _describe_path(p):
    w = path_to_word(p)
    f = path_to_ferrers(p)
    return {
        "word": str(w),
        "path": str(p),
        "ferrers": str(f),
        "inversions": inversions(w),
        "area_under": area_under(p),
        "area_left": area_left(p),
        "ferrers_area": f.area,
        "height": f.height,
        "width": f.width,
        "semiperimeter": f.semiperimeter,
    }


def cmd_bijections(args):
    if args.word or args.path or args.ferrers:
        if args.word:
            p = word_to_path(parse_word(args.word, 2))
        elif args.path:
            p = parse_path(args.path)
        else:
            p = ferrers_to_path(parse_ferrers(args.ferrers))
        obj = _describe_path(p)
        return obj, _rows_csv(list(obj), [list(obj.values())])
    if args.max_n > EXHAUSTIVE_MAX_N:
        raise BudgetExceededError(2**args.max_n, 2**EXHAUSTIVE_MAX_N)
    rows = []
    ok = True
    for n in range(args.max_n + 1):
        hist = [0] * (n * n // 4 + 1)
        failures = 0
        for p in enumerate_paths(n):
            w = path_to_word(p)
            f = path_to_ferrers(p)
            good = (
                word_to_path(w) == p
                and ferrers_to_path(f) == p
                and area_under(p) == inversions(w)
                and f.area == area_left(p) + n + 1
                and f.semiperimeter == n + 2
            )
            failures += not good
            hist[area_under(p)] += 1
        law = hist == list(galois_poly(n, 2).coeffs)
        ok &= failures == 0 and law
        rows.append({"n": n, "paths": 2**n, "failures": failures, "area_law": law})
    obj = {"max_n": args.max_n, "rows": rows, "passed": ok}
    if not ok:
        raise CheckFailed(obj)
    return obj, _rows_csv(["n", "paths", "failures", "area_law"], [list(r.values()) for r in rows])


def cmd_sample(args):
    stream = SampleStream(args.seed, args.stream)
    if args.construction == "word":
        samples = batch_joint(args.n, args.m, args.reps, stream, workers=args.workers)
        return joint_to_json(samples, stream, args.n, args.m), joint_to_csv(samples, stream, args.n, args.m)
    if args.construction == "u":
        values = sample_u_batch(args.n, args.m, args.reps, stream)
        header, rows = ["rep", "U"], [(i, int(v)) for i, v in enumerate(values)]
    else:
        area, height = sample_ferrers_batch(args.n, args.reps, stream)
        header = ["rep", "area", "height"]
        rows = [(i, int(a), int(h)) for i, (a, h) in enumerate(zip(area, height))]
    meta = dict(stream.describe(), construction=args.construction, n=args.n, m=args.m, reps=args.reps)
    obj = {"metadata": meta, "records": [dict(zip(header, r)) for r in rows]}
    return obj, "# " + json.dumps(meta, sort_keys=True) + "\n" + _rows_csv(header, rows)


def cmd_report(args):
    results = acceptance.run_all(args.seed, log=lambda line: print(line, file=sys.stderr))
    obj = {
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json() for r in results],
    }
    # timings vary between runs; keep them out of the byte-stable output
    for c in obj["criteria"]:
        c.pop("seconds")
    rows = [(r.number, r.kind, r.passed, r.name) for r in results]
    csv_text = _rows_csv(["criterion", "kind", "passed", "name"], rows)
    if not obj["passed"]:
        raise CheckFailed(obj)
    return obj, csv_text


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgalois",
        description="Generalized Galois polynomials and inversion statistics of random words.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="q-binomial, q-multinomial or Galois polynomial")
    p.add_argument("--kind", choices=("galois", "binomial", "multinomial"), default="galois")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--parts", type=_int_list, help="composition, e.g. 2,1,3")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("pmf", parents=[common], help="exact law of the inversion count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--permutation", action="store_true", help="random permutation law instead")
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("moments", parents=[common], help="closed-form vs PMF moments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("tv", parents=[common], help="TV distance to the permutation law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ms", type=_int_list, required=True)
    p.set_defaults(func=cmd_tv)

    p = sub.add_parser("llt", parents=[common], help="local limit residual grid")
    p.add_argument("--ms", type=_int_list, default=[2, 3, 10])
    p.add_argument("--ns", type=_int_list, default=[16, 32, 64])
    p.set_defaults(func=cmd_llt)

    p = sub.add_parser("clt", parents=[common], help="Kolmogorov distance curve")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ns", type=_int_list, default=[16, 32, 64])
    p.set_defaults(func=cmd_clt)

    p = sub.add_parser("cf", parents=[common], help="characteristic-function decay probe")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--grid", type=int, default=64)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("bijections", parents=[common], help="exhaustive path/Ferrers checks or single conversions")
    p.add_argument("--max-n", type=int, default=12)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--word", help="binary word, e.g. 1,2,2")
    g.add_argument("--path", help="path over E/N, e.g. ENE")
    g.add_argument("--ferrers", help="row lengths, e.g. 3,2,2")
    p.set_defaults(func=cmd_bijections)

    p = sub.add_parser("sample", parents=[common], help="seeded Monte Carlo batches")
    p.add_argument("construction", choices=("word", "u", "ferrers"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("report", parents=[common], help="full acceptance sweep")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_report)
    return parser


def _emit(args, obj, csv_text):
    if args.format == "csv":
        if csv_text is None:
            raise DomainError(f"{args.command} has no CSV form; use --format json")
        text = csv_text
    else:
        text = _dump_json(obj)
    if args.output:
        path = Path(args.output)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        obj, csv_text = args.func(args)
        _emit(args, obj, csv_text)
        return 0
    except CheckFailed as fail:
        if args.format == "json":
            _emit(args, fail.payload, None)
        print(f"qgalois {args.command}: check failed", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"qgalois {args.command}: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except DegenerateInputError as exc:
        print(f"qgalois {args.command}: degenerate parameters: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PreconditionError, ValueError) as exc:
        print(f"qgalois {args.command}: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

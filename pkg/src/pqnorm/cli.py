"""Command-line front end.

Subcommands::

    pqnorm norm FILE -p P -q Q [--exact-only] [--seed N] [--budget N]
    pqnorm check FILE TARGET -p P -q Q [--tol T] [--json] [--seed N]
    pqnorm sweep FILE OUT.CSV -p P -q Q --r-grid 2,4,inf --s-grid 1,1.5,2
    pqnorm generate --kind hadamard|dft|tensor|single|svd [options]
    pqnorm verify FILE [--tol T] [--seed N] [--assert-norm P,Q,VALUE]

TARGET for ``check`` is either a class token (E_1inf, E_11, E_infinf,
E_inf1) or an index pair "r,s".

Exit codes: 0 success / member yes; 1 usage or I/O error; 2 --exact-only
requested but only an estimate is available; 3 member no; 4 member
undetermined; 5 a verify property failed.

The optional THREADS environment variable caps sweep parallelism; output
row order is fixed by the grid regardless.
"""

from __future__ import annotations

import argparse
import enum
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import is_dataclass, fields as dc_fields
from typing import List, Optional

import numpy as np

from .core import DEFAULT_TOL, ExtIndex, as_index, index_str
from .induced_norms import (
    COMPLEX,
    DimensionError,
    MatrixValue,
    REAL,
    best_norm,
)
from .bounds import (
    bound_factor,
    check_inequality,
    decide_equality,
    duality_check,
    monotonicity_check,
    monotonicity_check_in_s,
)
from .equality_classes import (
    ClassId,
    PreconditionError,
    check_class,
    maximizer_eigencheck,
)
from .generators import (
    gen_dft,
    gen_hadamard,
    gen_single_entry,
    gen_svd_extremal,
    gen_tensor_product,
    kclass_unit_vector,
)
from .core import KClassId
from .matrixio import (
    MatrixFileError,
    dumps_json,
    dumps_matrix,
    format_float,
    load_matrix,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INEXACT = 2
EXIT_NO = 3
EXIT_UNDETERMINED = 4
EXIT_VERIFY_FAILED = 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit 1 (2 is reserved)."""

    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _index_arg(tok: str) -> ExtIndex:
    try:
        return as_index(tok)
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _grid_arg(tok: str) -> List[ExtIndex]:
    try:
        grid = [as_index(t.strip()) for t in tok.split(",") if t.strip()]
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if not grid:
        raise argparse.ArgumentTypeError("expected at least one index")
    return grid


def _floats_arg(tok: str) -> tuple:
    try:
        vals = tuple(float(t) for t in tok.split(",") if t.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if not vals:
        raise argparse.ArgumentTypeError("expected at least one number")
    return vals


def _jsonable(x):
    """Recursively convert results (arrays, enums, dataclasses) to JSON-safe
    structures; complex numbers become [re, im] pairs."""
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, ExtIndex):
        return index_str(x)
    if isinstance(x, MatrixValue):
        return _jsonable(x.entries)
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()] if x.ndim else _jsonable(x.item())
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return [z.real, z.imag]
    if is_dataclass(x) and not isinstance(x, type):
        return {f.name: _jsonable(getattr(x, f.name)) for f in dc_fields(x)}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) or isinstance(x, int) or isinstance(x, bool) or x is None:
        return x
    return str(x)


def _print_err(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# norm
# ---------------------------------------------------------------------------


def cmd_norm(args) -> int:
    M = load_matrix(args.file)
    res = best_norm(M, args.p, args.q, seed=args.seed, budget=args.budget)
    if args.exact_only and not res.certainty.is_exact:
        _print_err(
            f"no exact route for p={index_str(args.p)} q={index_str(args.q)}; "
            f"best available is {res.certainty.value} {format_float(res.value)}"
        )
        return EXIT_INEXACT
    tail = "" if res.certainty.is_exact else f" (seed {args.seed})"
    print(f"{format_float(res.value)} {res.certainty.value}{tail}")
    if res.witness is not None:
        print(f"witness: {dumps_json(_jsonable(np.asarray(res.witness)))}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _verdict_exit(member: str) -> int:
    return {"yes": EXIT_OK, "no": EXIT_NO, "undetermined": EXIT_UNDETERMINED}[member]


def _print_conditions(conds) -> None:
    for c in conds:
        state = {True: "yes", False: "no", None: "?"}[c.satisfied]
        extra = ""
        if c.measured:
            parts = []
            for k, v in c.measured.items():
                if isinstance(v, float):
                    parts.append(f"{k}={format_float(v)}")
                else:
                    parts.append(f"{k}={v}")
            extra = "  [" + ", ".join(parts) + "]"
        print(f"  {c.name:40s} {state}{extra}")


def cmd_check(args) -> int:
    M = load_matrix(args.file)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    token = args.target
    class_tokens = {c.value for c in ClassId}
    if token in class_tokens:
        verdict = check_class(M, ClassId.parse(token), args.p, args.q, tol, seed=args.seed)
        if args.json:
            print(dumps_json(_jsonable(verdict)))
        else:
            print(
                f"{token} at (p,q)=({index_str(args.p)},{index_str(args.q)}): "
                f"{verdict.member} ({verdict.certainty})"
            )
            _print_conditions(verdict.conditions)
        return _verdict_exit(verdict.member)
    try:
        r_tok, s_tok = token.split(",")
        r, s = as_index(r_tok.strip()), as_index(s_tok.strip())
    except (ValueError, TypeError):
        raise _UsageError(
            f"TARGET must be a class token ({', '.join(sorted(class_tokens))}) "
            f'or an index pair "r,s"; got {token!r}'
        ) from None
    member, details = decide_equality(M, args.p, args.q, r, s, tol=args.tol, seed=args.seed)
    lb, rb = details["lhs"], details["rhs"]
    factor = details["factor"]
    if args.json:
        payload = {
            "member": member,
            "r": index_str(r),
            "s": index_str(s),
            "factor": factor,
            "lhs_bracket": [lb.lower, lb.upper],
            "rhs_bracket": [rb.lower, rb.upper],
            "tol": details["tol"],
        }
        print(dumps_json(_jsonable(payload)))
    else:
        print(
            f"equality at (r,s)=({index_str(r)},{index_str(s)}) against "
            f"(p,q)=({index_str(args.p)},{index_str(args.q)}): {member}"
        )
        print(f"  factor {format_float(factor)}")
        print(f"  lhs in [{format_float(lb.lower)}, {format_float(lb.upper)}]")
        print(
            f"  bound in [{format_float(factor * rb.lower)}, {format_float(factor * rb.upper)}]"
        )
    return _verdict_exit(member)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _sweep_rows(M: MatrixValue, p, q, r_grid, s_grid, seed: int) -> List[str]:
    base = best_norm(M, p, q, seed=seed)
    points = [(r, s) for r in r_grid for s in s_grid]

    def one(point) -> str:
        r, s = point
        res = best_norm(M, r, s, seed=seed)
        factor = bound_factor(p, q, r, s, M.m, M.n)
        bound = factor * base.value
        if bound > 0:
            ratio = res.value / bound
        else:
            ratio = 1.0 if res.value == 0.0 else float("inf")
        return ",".join(
            [
                index_str(r),
                index_str(s),
                format_float(res.value),
                format_float(factor),
                format_float(bound),
                format_float(ratio),
                res.certainty.value,
            ]
        )

    workers = 0
    env = os.environ.get("THREADS", "")
    if env.strip():
        try:
            workers = max(0, int(env))
        except ValueError:
            workers = 0
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(one, points))
    return [one(pt) for pt in points]


def cmd_sweep(args) -> int:
    M = load_matrix(args.file)
    rows = _sweep_rows(M, args.p, args.q, args.r_grid, args.s_grid, args.seed)
    text = "r,s,norm_rs,factor,bound,ratio,certainty\n" + "".join(r + "\n" for r in rows)
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fp:
            fp.write(text)
    except OSError as e:
        _print_err(f"cannot write {args.out}: {e}")
        return EXIT_ERROR
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

_DEFAULT_CLASS_FOR_KIND = {
    "hadamard": ClassId.E_11,
    "dft": ClassId.E_11,
    "tensor": ClassId.E_INF1,
    "single": ClassId.E_1INF,
    "svd": ClassId.E_11,
}


def _build_generated(args) -> MatrixValue:
    kind = args.kind
    if kind == "hadamard":
        return gen_hadamard(args.m)
    if kind == "dft":
        return gen_dft(args.m)
    if kind == "tensor":
        rng = np.random.default_rng(args.seed)
        b = kclass_unit_vector(KClassId.K1, args.m, rng, args.field)
        c = kclass_unit_vector(KClassId.K1, args.n, rng, args.field)
        return gen_tensor_product(c, b)
    if kind == "single":
        return gen_single_entry(args.m, args.n, 0, 0, args.rho)
    if kind == "svd":
        cls = ClassId.parse(args.cls) if args.cls else ClassId.E_11
        r, s = cls.extremal_pair
        sigma = args.sigma if args.sigma else (2.0, 1.0)
        return gen_svd_extremal(
            args.m, args.n, r, s, sigma, seed=args.seed, field_tag=args.field
        )
    raise _UsageError(f"unknown kind {kind!r}")


def cmd_generate(args) -> int:
    try:
        M = _build_generated(args)
    except (ValueError, DimensionError) as e:
        _print_err(str(e))
        return EXIT_ERROR
    cls = ClassId.parse(args.cls) if args.cls else _DEFAULT_CLASS_FOR_KIND[args.kind]
    verdict = check_class(M, cls, 2, 2, seed=args.seed)
    _print_err(f"{cls.value} at (2,2): {verdict.member}")
    text = dumps_matrix(M) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fp:
                fp.write(text)
        except OSError as e:
            _print_err(f"cannot write {args.out}: {e}")
            return EXIT_ERROR
    else:
        sys.stdout.write(text)
    return EXIT_OK if verdict.member == "yes" else EXIT_ERROR


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    M = load_matrix(args.file)
    seed = args.seed
    lines = []
    all_ok = True

    def report(name: str, ok: Optional[bool], slack: Optional[float] = None) -> None:
        nonlocal all_ok
        if ok is None:
            lines.append(f"SKIP {name} (preconditions not met)")
            return
        all_ok = all_ok and ok
        tail = "" if slack is None else f" (slack={format_float(slack)})"
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}{tail}")

    grid = [as_index(1), as_index(2), as_index("inf")]
    cache = {}
    for a in grid:
        for b in grid:
            cache[(index_str(a), index_str(b))] = best_norm(M, a, b, seed=seed)
    min_slack = float("inf")
    ineq_ok = True
    for p in grid:
        for q in grid:
            rhs = cache[(index_str(p), index_str(q))]
            for r in grid:
                for s in grid:
                    lhs = cache[(index_str(r), index_str(s))]
                    rep = check_inequality(M, p, q, r, s, seed=seed, lhs=lhs, rhs=rhs)
                    tol = args.tol if args.tol is not None else rep.tol
                    rel = rep.slack / max(rep.bound, 1e-300)
                    min_slack = min(min_slack, rel)
                    if rel < -tol:
                        ineq_ok = False
    report("inequality-grid", ineq_ok, min_slack)
    dual_ok = True
    for p, q in [(1, 1), (1, 2), (2, 2), (2, "inf"), ("inf", 1), (1.5, 3)]:
        if not duality_check(M, p, q, tol=args.tol, seed=seed):
            dual_ok = False
    report("adjoint-norm-identity", dual_ok)
    mono_grid = [1, 1.5, 2, 3, "inf"]
    mono_ok = monotonicity_check(M, 2, mono_grid, tol=args.tol, seed=seed) and (
        monotonicity_check_in_s(M, 2, mono_grid, tol=args.tol, seed=seed)
    )
    report("norm-monotonicity", mono_ok)
    w = cache[("2", "2")].witness
    try:
        eig_ok = maximizer_eigencheck(M, w, 2, 2, tol=1e-6)
        report("maximizer-eigencheck", eig_ok)
    except PreconditionError:
        report("maximizer-eigencheck", None)
    if args.assert_norm:
        parts = args.assert_norm.split(",")
        if len(parts) != 3:
            raise _UsageError('--assert-norm expects "p,q,value"')
        p, q, claimed = as_index(parts[0]), as_index(parts[1]), float(parts[2])
        res = best_norm(M, p, q, seed=seed)
        tol = args.tol if args.tol is not None else 1e-6
        slack = tol * max(1.0, abs(claimed)) - abs(res.value - claimed)
        report(
            f"assert-norm({index_str(p)},{index_str(q)})={format_float(claimed)}",
            slack >= 0.0,
            slack,
        )
    for ln in lines:
        print(ln)
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="pqnorm", description="Induced matrix norms, the comparison bound, and its equality classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pq(sp):
        sp.add_argument("-p", type=_index_arg, required=True, help="domain index in [1, inf]")
        sp.add_argument("-q", type=_index_arg, required=True, help="codomain index in [1, inf]")

    sp = sub.add_parser("norm", help="compute ||A||_{p,q}")
    sp.add_argument("file")
    add_pq(sp)
    sp.add_argument("--exact-only", action="store_true", help="exit 2 unless an exact route exists")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=None, help="extra brute-force samples")
    sp.set_defaults(fn=cmd_norm)

    sp = sub.add_parser("check", help="equality-class or pointwise equality verdict")
    sp.add_argument("file")
    sp.add_argument("target", help='class token (E_1inf, E_11, E_infinf, E_inf1) or "r,s"')
    add_pq(sp)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("sweep", help="grid sweep of the bound to CSV")
    sp.add_argument("file")
    sp.add_argument("out", help='output CSV path, or "-" for stdout')
    add_pq(sp)
    sp.add_argument("--r-grid", type=_grid_arg, required=True)
    sp.add_argument("--s-grid", type=_grid_arg, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("generate", help="construct matrices attaining the bound")
    sp.add_argument("--kind", choices=sorted(_DEFAULT_CLASS_FOR_KIND), required=True)
    sp.add_argument("--class", dest="cls", default=None, help="target class token")
    sp.add_argument("--m", type=int, default=2, help="columns (order for hadamard/dft)")
    sp.add_argument("--n", type=int, default=2, help="rows")
    sp.add_argument("--sigma", type=_floats_arg, default=None, help="singular values, e.g. 2,1")
    sp.add_argument("--rho", type=float, default=1.0, help="entry value for --kind single")
    sp.add_argument("--field", choices=[REAL, COMPLEX], default=COMPLEX)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None, help="write the matrix file here instead of stdout")
    sp.set_defaults(fn=cmd_generate)

    sp = sub.add_parser("verify", help="run the invariant battery on a matrix")
    sp.add_argument("file")
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--assert-norm", default=None, help='"p,q,value" to check a claimed norm')
    sp.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except _UsageError as e:
        _print_err(f"error: {e}")
        return EXIT_ERROR
    except MatrixFileError as e:
        _print_err(f"error: {e}")
        return EXIT_ERROR
    except (ValueError, DimensionError) as e:
        _print_err(f"error: {e}")
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line front end.

Exit codes: 0 success (verify: yes), 2 verify: no, 3 verify: sufficient-only,
64 malformed input or usage, 65 dimension mismatch, 66 oracle size refusal,
1 anything else.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .ansatz import (build_pencil, check_ansatz, f_pencil, frobenius_companion,
                     g_dimension, linearization_condition, random_params,
                     recover_eigenvector)
from .blocksym import (bg_condition_verdict, bg_dimension, build_bg_pencil,
                       is_block_symmetric, random_bg_params)
from .classical import (L1Params, dl_basis_pencil, dl_basis_z, dl_pencil,
                        l1_pencil, l1_rank_condition, l2_pencil, p_tableau,
                        satisfies_l1, satisfies_l2)
from .double import (build_dg_pencil, dg_condition_verdict, dg_dimension,
                     normalize_shift, random_dg_params, shift,
                     superpartition_alphas)
from .matpoly import DimensionError, MatrixPolynomial, evaluate
from .oracle.dimension import OracleSizeError, ansatz_space_dimension_oracle
from .oracle.eigen import numeric_eigenpairs, residual
from .oracle.polynomial import BitLimitExceeded
from .oracle.verdict import Status, is_strong_linearization

EXIT_OK, EXIT_FAIL, EXIT_NO, EXIT_SUFFICIENT = 0, 1, 2, 3
EXIT_MALFORMED, EXIT_DIMENSION, EXIT_ORACLE = 64, 65, 66

VERDICT_EXIT = {Status.YES: EXIT_OK, Status.NO: EXIT_NO, Status.SUFFICIENT_ONLY: EXIT_SUFFICIENT}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_poly(path) -> MatrixPolynomial:
    return io.poly_from_json(io.load_json(path))


def _emit(out, obj):
    out.write(io.dumps(obj))


def _alphas(L: MatrixPolynomial, P: MatrixPolynomial) -> dict:
    """check_ansatz at every split whose pencil size matches L."""
    k, m, n = P.grade, P.rows, P.cols
    out = {}
    for eta in range(k):
        eps = k - eta - 1
        if L.shape != ((eta + 1) * m + eps * n, (eps + 1) * n + eta * m):
            continue
        a = check_ansatz(L, P, eta)
        out[str(eta)] = None if a is None else io.scalar_str(a)
    return out


def cmd_build(args, out) -> int:
    P = _load_poly(args.poly)
    fam = args.family
    if fam not in ("frobenius", "blockkron") and args.params is None:
        raise UsageError(f"--params is required for family {fam}")
    data = io.load_json(args.params) if args.params else {}
    report: dict = {}
    if fam == "frobenius":
        L = frobenius_companion(P)
    elif fam == "blockkron":
        if not isinstance(data, dict):
            raise io.MalformedInput("blockkron parameters must be a JSON object")
        eta = data.get("eta", 0)
        if not isinstance(eta, int) or isinstance(eta, bool):
            raise io.MalformedInput("eta must be an integer")
        alpha = io.parse_scalar(data.get("alpha", "1"))
        L = f_pencil(P, eta, alpha)
    elif fam == "g":
        params = io.params_from_json(data, "g", P)
        L = build_pencil(P, params)
        report["linearization_condition"] = linearization_condition(params)
    elif fam == "dg":
        params = io.params_from_json(data, "dg", P)
        L = build_dg_pencil(P, params)
        report["linearization_condition"] = dg_condition_verdict(params, P).value
    elif fam == "bg":
        params = io.params_from_json(data, "bg", P)
        L = build_bg_pencil(P, params)
        report["linearization_condition"] = bg_condition_verdict(params, P).value
        report["block_symmetric"] = is_block_symmetric(L, P.rows)
    elif fam in ("l1", "l2"):
        params = io.params_from_json(data, fam, P)
        if fam == "l1":
            L = l1_pencil(P, params)
            report["rank_condition"] = l1_rank_condition(params)
        else:
            L = l2_pencil(P, params.v, params.Z)
    elif fam == "dl":
        v = io.params_from_json(data, "dl", P)
        L = dl_pencil(P, v)
        report["block_symmetric"] = is_block_symmetric(L, P.rows)
    else:
        raise UsageError(f"unknown family {fam}")
    if P.is_square() and P.grade >= 2 and L.shape == (P.grade * P.rows,) * 2:
        if fam in ("l1", "l2", "dl"):
            v = params.v if fam != "dl" else v
            report["l1_equation"] = satisfies_l1(L, P, v)
            report["l2_equation"] = satisfies_l2(L, P, v)
        if fam in ("dg", "bg"):
            sup = superpartition_alphas(L, P)
            report["superpartition"] = sorted(sup)
    report["ansatz_alphas"] = _alphas(L, P)
    if args.out:
        Path(args.out).write_text(io.dumps(io.poly_to_json(L)))
    _emit(out, {"family": fam, "pencil": io.poly_to_json(L), "membership": report})
    return EXIT_OK


def _verify_one(L: MatrixPolynomial, P: MatrixPolynomial, grade):
    if grade is not None and grade < P.degree:
        raise DimensionError(f"grade {grade} is below the degree {P.degree}")
    if grade is not None and grade != P.grade:
        P = P.with_grade(grade)
    return is_strong_linearization(L, P, grade)


def _batch_job(path: str):
    try:
        data = io.load_json(path)
        io._require(data, ("pencil", "poly"), "batch entry")
        L = io.poly_from_json(data["pencil"])
        P = io.poly_from_json(data["poly"])
        grade = data.get("grade")
        return path, _verify_one(L, P, grade).to_json(), None
    except (io.MalformedInput, DimensionError, OracleSizeError, BitLimitExceeded) as exc:
        return path, None, f"{type(exc).__name__}: {exc}"


def cmd_verify(args, out) -> int:
    if args.batch:
        files = sorted(str(p) for p in Path(args.batch).glob("*.json"))
        if not files:
            raise io.MalformedInput(f"no .json files in {args.batch}")
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_job, files))
        # a definite no outranks a failed file, which outranks sufficient-only
        priority = [EXIT_OK, EXIT_SUFFICIENT, EXIT_FAIL, EXIT_NO]
        report, codes = {}, [EXIT_OK]
        for path, verdict, error in results:
            name = Path(path).name
            if error:
                report[name] = {"error": error}
                codes.append(EXIT_FAIL)
            else:
                report[name] = verdict
                codes.append(VERDICT_EXIT[Status(verdict["strong_linearization"])])
        worst = max(codes, key=priority.index)
        _emit(out, report)
        return worst
    if not (args.pencil and args.poly):
        raise UsageError("verify needs --pencil and --poly, or --batch")
    L = _load_poly(args.pencil)
    P = _load_poly(args.poly)
    verdict = _verify_one(L, P, args.grade)
    _emit(out, verdict.to_json())
    return VERDICT_EXIT[verdict.status]


def _complex_json(z) -> list | str:
    if z == math.inf:
        return "inf"
    return [float(z.real), float(z.imag)]


def _vector_json(u: np.ndarray) -> list:
    return [[float(x.real), float(x.imag)] for x in u]


def cmd_recover(args, out) -> int:
    L = _load_poly(args.pencil)
    P = _load_poly(args.poly)
    if not P.is_square():
        raise DimensionError("eigenvector recovery needs a square polynomial")
    k, n, eta = P.grade, P.rows, args.eta
    eps = k - eta - 1
    if eps < 0:
        raise DimensionError(f"split {eta} out of range for grade {k}")
    if L.shape != (k * n, k * n):
        raise DimensionError(f"pencil shape {L.shape} does not match grade {k}, size {n}")
    alpha = check_ansatz(L, P, eta)
    pairs = []
    for ep in numeric_eigenpairs(L):
        kind = "infinite" if ep.is_infinite else "finite"
        M = P.coeff(k).astype(complex) if ep.is_infinite else evaluate(P, ep.value)
        right = recover_eigenvector(ep.right[:, 0], "right", kind, eta, eps, n)
        left = recover_eigenvector(ep.left[:, 0], "left", kind, eta, eps, n)
        pairs.append({
            "eigenvalue": _complex_json(ep.value),
            "multiplicity": ep.multiplicity,
            "right": _vector_json(right),
            "left": _vector_json(left),
            "right_residual": residual(M, right),
            "left_residual": residual(M.T, left),
        })
    _emit(out, {"eta": eta, "ansatz_alpha": None if alpha is None else io.scalar_str(alpha),
                "eigenpairs": pairs})
    return EXIT_OK


def cmd_shift(args, out) -> int:
    P = _load_poly(args.poly)
    params = io.params_from_json(io.load_json(args.params), "dg", P)
    result = shift(P, params, args.i)
    original = build_dg_pencil(P, params)
    normalized = normalize_shift(P, result)
    ok = result.pencil() == original and build_dg_pencil(P, normalized) == original
    _emit(out, {"i": args.i, "round_trip": ok,
                "shifted": {**io.params_to_json(result),
                            "middle": io.poly_to_json(result.omega)},
                "params": io.params_to_json(normalized),
                "pencil": io.poly_to_json(original)})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_basis(args, out) -> int:
    P = _load_poly(args.poly)
    tab = p_tableau(P)
    doc = {"family": "dl", "tableau": {"J": io.matrix_to_json(tab.J),
                                       "H": io.matrix_to_json(tab.H)}}
    if args.index is not None and args.vector is not None:
        raise UsageError("give at most one of --index and --vector")
    if args.index is not None:
        doc["index"] = args.index
        doc["Z"] = io.matrix_to_json(dl_basis_z(P, args.index))
        doc["pencil"] = io.poly_to_json(dl_basis_pencil(P, args.index))
    elif args.vector is not None:
        data = io.load_json(args.vector)
        v = io.params_from_json(data if isinstance(data, dict) else {"v": data}, "dl", P)
        doc["vector"] = [io.scalar_str(x) for x in v]
        doc["pencil"] = io.poly_to_json(dl_pencil(P, v))
    _emit(out, doc)
    return EXIT_OK


def cmd_dims(args, out) -> int:
    P = _load_poly(args.poly)
    k, m, n = P.grade, P.rows, P.cols
    fam = args.family
    if fam != "g" and m != n:
        raise DimensionError("double ansatz spaces need a square polynomial")
    if fam == "g":
        splits = range(k)
    else:
        splits = [eta for eta in range(k) if eta <= k - eta - 1]
    if args.eta is not None:
        if args.eta not in splits:
            raise DimensionError(f"split {args.eta} is not admissible for family {fam}")
        splits = [args.eta]
    rows = []
    for eta in splits:
        eps = k - eta - 1
        if fam == "g":
            entry = {"eta": eta, "eps": eps, "closed_form": g_dimension(eta, eps, m, n)}
            if args.oracle:
                entry["oracle"] = ansatz_space_dimension_oracle(P, eta)
        else:
            closed = dg_dimension(k, eta, n) if fam == "dg" else bg_dimension(k, eta, n)
            entry = {"eta": eta, "eps": eps, "closed_form": closed}
            if args.oracle:
                entry["oracle"] = ansatz_space_dimension_oracle(
                    P, {eta, eps}, block_symmetric=(fam == "bg"))
        rows.append(entry)
    _emit(out, {"family": fam, "grade": k, "rows": m, "cols": n, "dimensions": rows})
    return EXIT_OK


def cmd_random(args, out) -> int:
    if args.poly:
        P = _load_poly(args.poly)
        k, m, n = P.grade, P.rows, P.cols
    else:
        if args.grade is None or args.n is None:
            raise UsageError("random needs --poly or both --grade and --n")
        k, n = args.grade, args.n
        m = args.m if args.m is not None else n
    fam, seed = args.family, args.seed
    if fam in ("dg", "bg", "l1", "l2", "dl") and m != n:
        raise DimensionError(f"family {fam} needs a square polynomial")
    eta = args.eta if args.eta is not None else 0
    if not 0 <= eta < k:
        raise DimensionError(f"split {eta} out of range for grade {k}")
    if fam == "g":
        params = random_params(seed, eta, k - eta - 1, m, n, invertible_C=args.invertible,
                               nonzero_alpha=args.invertible)
    elif fam == "dg":
        params = random_dg_params(seed, k, eta, n, args.invertible, args.invertible)
    elif fam == "bg":
        params = random_bg_params(seed, k, eta, n, args.invertible, args.invertible)
    else:
        import random as _random
        rng = _random.Random(seed)
        v = [rng.randint(-3, 3) for _ in range(k)]
        if fam == "dl":
            _emit(out, {"v": [io.scalar_str(x) for x in v]})
            return EXIT_OK
        shape = (k * n, (k - 1) * n) if fam == "l1" else ((k - 1) * n, k * n)
        Z = [[rng.randint(-3, 3) for _ in range(shape[1])] for _ in range(shape[0])]
        params = L1Params(v, Z)
    _emit(out, io.params_to_json(params))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kron-ansatz", description="Block Kronecker ansatz linearizations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="construct a pencil and report membership")
    b.add_argument("--family", required=True,
                   choices=["g", "dg", "bg", "l1", "l2", "dl", "frobenius", "blockkron"])
    b.add_argument("--poly", required=True)
    b.add_argument("--params")
    b.add_argument("--out")

    v = sub.add_parser("verify", help="certify a strong linearization")
    v.add_argument("--pencil")
    v.add_argument("--poly")
    v.add_argument("--grade", type=int)
    v.add_argument("--batch", help="directory of {pencil, poly, grade} JSON files")
    v.add_argument("--jobs", type=int, default=None)

    r = sub.add_parser("recover", help="eigenpairs of P from a linearization")
    r.add_argument("--pencil", required=True)
    r.add_argument("--poly", required=True)
    r.add_argument("--eta", type=int, required=True)

    s = sub.add_parser("shift", help="re-express a DG member at a larger split")
    s.add_argument("--poly", required=True)
    s.add_argument("--params", required=True)
    s.add_argument("--i", type=int, required=True)

    ba = sub.add_parser("basis", help="P-tableau and DL basis pencils")
    ba.add_argument("--family", choices=["dl"], default="dl")
    ba.add_argument("--poly", required=True)
    ba.add_argument("--index", type=int)
    ba.add_argument("--vector")

    d = sub.add_parser("dims", help="ansatz space dimensions")
    d.add_argument("--poly", required=True)
    d.add_argument("--family", choices=["g", "dg", "bg"], default="g")
    d.add_argument("--eta", type=int)
    d.add_argument("--oracle", action="store_true")

    ra = sub.add_parser("random", help="emit a random parameter file")
    ra.add_argument("--family", required=True, choices=["g", "dg", "bg", "l1", "l2", "dl"])
    ra.add_argument("--seed", type=int, required=True)
    ra.add_argument("--poly")
    ra.add_argument("--grade", type=int)
    ra.add_argument("--n", type=int)
    ra.add_argument("--m", type=int)
    ra.add_argument("--eta", type=int)
    ra.add_argument("--invertible", action="store_true",
                    help="force α ≠ 0 and nonsingular C-blocks")
    return p


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "recover": cmd_recover,
            "shift": cmd_shift, "basis": cmd_basis, "dims": cmd_dims, "random": cmd_random}

PATH_ARGS = ("poly", "pencil", "params", "vector", "batch")


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        for name in PATH_ARGS:
            path = getattr(args, name, None)
            if path is not None and not Path(path).exists():
                raise io.MalformedInput(f"--{name}: no such file or directory: {path}")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_MALFORMED
    except io.MalformedInput as exc:
        err.write(f"malformed input: {exc}\n")
        return EXIT_MALFORMED
    except DimensionError as exc:
        err.write(f"dimension error: {exc}\n")
        return EXIT_DIMENSION
    except (OracleSizeError, BitLimitExceeded) as exc:
        err.write(f"oracle refused: {exc}\n")
        return EXIT_ORACLE
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

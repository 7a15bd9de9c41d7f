"""Command line interface.

Exit codes: 0 success (or KD positive for ``classify``), 2 input error,
3 KD real but not positive, 4 KD complex. All indices printed are 1-based.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import numtheory as nt
from .decomposer import NotKDRealError, decompose_constructive, decompose_least_squares
from .dft_core import KDClass, ToleranceConfig, classify, kd_distribution, make_dft
from .kdreal_space import dim_oracle, hermitian_basis, partition
from .matrix_io import MatrixFormatError, fmt, kd_table_csv, load_matrix, matrix_to_json, rounded
from .numtheory import gcd_sum
from .pure_states import catalog, enumerate_descriptors
from .verify import VERIFY_CAP, run_verify

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REAL = 3
EXIT_COMPLEX = 4

EXIT_FOR_CLASS = {
    KDClass.KD_POSITIVE: EXIT_OK,
    KDClass.KD_REAL_NOT_POSITIVE: EXIT_REAL,
    KDClass.KD_COMPLEX: EXIT_COMPLEX,
}


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _tol(args) -> ToleranceConfig:
    return ToleranceConfig(eps_classify=args.eps)


def _ctx(d: int):
    try:
        return make_dft(d)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _positive(d: int) -> int:
    if d < 1:
        raise InputError(f"--d must be >= 1, got {d}")
    if d >= nt.MAX_INPUT:
        raise InputError("--d must be < 2**31")
    return d


def cmd_nt(args) -> tuple[str, int]:
    d = _positive(args.d)
    fac = nt.factorize(d)
    tau = nt.tau(d)
    report = {
        "d": d,
        "factorization": [[p, a] for p, a in fac.factors],
        "tau": tau,
        "phi": nt.phi(d),
        "mu": nt.mobius(d),
        "gamma": nt.gcd_sum(d),
        "gamma_direct": nt.gcd_sum_direct(d),
        "gamma_mobius": nt.gamma_mobius(d),
        "Gamma": nt.summatory_gamma(d),
        "d_tau": d * tau,
    }
    if args.json:
        return _dump(report), EXIT_OK
    lines = [f"d = {d}", f"factorization = {fac}"]
    lines += [f"{key} = {report[key]}" for key in list(report)[2:]]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_dft(args) -> tuple[str, int]:
    ctx = _ctx(args.d)
    return json.dumps(matrix_to_json(ctx.U)) + "\n", EXIT_OK


def _load(args):
    try:
        F = load_matrix(args.input, getattr(args, "d", None))
    except MatrixFormatError as exc:
        raise InputError(str(exc)) from exc
    return F, _ctx(F.shape[0])


def cmd_kd(args) -> tuple[str, int]:
    F, ctx = _load(args)
    Q = kd_distribution(F, ctx).Q
    if args.json:
        return json.dumps(matrix_to_json(Q)) + "\n", EXIT_OK
    return kd_table_csv(Q), EXIT_OK


def cmd_classify(args) -> tuple[str, int]:
    F, ctx = _load(args)
    dist = kd_distribution(F, ctx)
    result = classify(dist, _tol(args))
    code = EXIT_FOR_CLASS[result.kind]
    if args.json:
        out = {
            "classification": result.kind.value,
            "witness": list(result.witness) if result.witness else None,
            "violation": rounded(result.violation),
        }
        if args.csv:
            out["kd"] = matrix_to_json(dist.Q)["entries"]
        return _dump(out), code
    text = kd_table_csv(dist.Q) if args.csv else ""
    text += f"classification: {result.kind.value}\n"
    if result.witness:
        j, k = result.witness
        z = dist.Q[j - 1, k - 1]
        text += f"witness: j={j} k={k} Q={fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i\n"
    return text, code


def cmd_pure_states(args) -> tuple[str, int]:
    d = _positive(args.d)
    if args.full:
        ctx = _ctx(d)
        items = [
            {**s.descriptor.as_dict(), "vector": [[rounded(z.real), rounded(z.imag)] for z in s.vector_a]}
            for s in catalog(d, ctx)
        ]
    else:
        items = [desc.as_dict() for desc in enumerate_descriptors(d)]
    if args.json or args.full:
        return _dump({"d": d, "count": len(items), "states": items}), EXIT_OK
    lines = ["d1,d2,j,k"] + [f"{s['d1']},{s['d2']},{s['j']},{s['k']}" for s in items]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_partition(args) -> tuple[str, int]:
    d = _positive(args.d)
    classes = partition(d)
    if args.json:
        return _dump([
            {"n": c.n, "anchor": c.anchor, "size": c.size, "members": [list(m) for m in c.members]}
            for c in classes
        ]), EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "anchor", "size", "members"])
    for c in classes:
        w.writerow([c.n, c.anchor, c.size, " ".join(f"({r};{s})" for r, s in c.members)])
    return buf.getvalue(), EXIT_OK


def cmd_kdreal_dim(args) -> tuple[str, int]:
    d = _positive(args.d)
    report = {"d": d, "gamma": gcd_sum(d)}
    code = EXIT_OK
    if args.oracle:
        try:
            report["oracle"] = dim_oracle(d, _ctx(d))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report["match"] = report["oracle"] == report["gamma"]
        code = EXIT_OK if report["match"] else 1
    if args.json:
        return _dump(report), code
    return "\n".join(f"{key} = {value}" for key, value in report.items()) + "\n", code


def cmd_kdreal_basis(args) -> tuple[str, int]:
    d = _positive(args.d)
    _ctx(d)
    basis = hermitian_basis(d)
    out = {
        "d": d,
        "count": len(basis),
        "operators": [
            {"kind": kind, "n": n, "anchor": k, **matrix_to_json(E)}
            for (kind, n, k), E in zip(basis.labels, basis.elements)
        ],
    }
    return _dump(out), EXIT_OK


def cmd_decompose(args) -> tuple[str, int]:
    F, ctx = _load(args)
    try:
        if args.method == "lsq":
            dec = decompose_least_squares(F, ctx)
        else:
            dec = decompose_constructive(F, ctx, _tol(args))
    except NotKDRealError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = dec.to_json()
    for term in out["terms"]:
        term["lambda"] = rounded(term["lambda"])
    out["residual"] = rounded(out["residual"])
    out["coefficient_sum"] = rounded(out["coefficient_sum"])
    return _dump(out), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    if not 1 <= args.d_min <= args.d_max <= VERIFY_CAP:
        raise InputError(f"need 1 <= d-min <= d-max <= {VERIFY_CAP}")
    report = run_verify(args.d_min, args.d_max, args.seed, ToleranceConfig(eps_classify=args.eps))

    def show(v):
        return rounded(v) if isinstance(v, float) else v

    code = EXIT_OK if report.overall else 1
    if args.json:
        return _dump({
            "d_range": [report.d_min, report.d_max],
            "checks": [
                {"name": c.name, "d": c.d, "expected": show(c.expected), "actual": show(c.actual), "pass": c.passed}
                for c in report.checks
            ],
            "overall": report.overall,
        }), code
    lines = [
        f"d={c.d:<3} {c.name:<16} expected={show(c.expected)} actual={show(c.actual)} "
        f"{'PASS' if c.passed else 'FAIL'}"
        for c in report.checks
    ]
    lines.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(lines) + "\n", code


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--eps", type=float, default=default(1e-10), help="classification tolerance")
    parser.add_argument("--seed", type=int, default=default(42))
    parser.add_argument("--json", action="store_true", default=default(False), help="machine-readable output")
    parser.add_argument("--out", default=default(None), help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kddft", description="Kirkwood-Dirac quasiprobabilities under the discrete Fourier transform."
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    add("nt", cmd_nt, "number-theory report").add_argument("--d", type=int, required=True)
    add("dft", cmd_dft, "print the DFT matrix").add_argument("--d", type=int, required=True)

    p = add("kd", cmd_kd, "KD table of an operator (CSV)")
    p.add_argument("--input", required=True)

    p = add("classify", cmd_classify, "classify an operator as KD positive / real / complex")
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--csv", action="store_true", help="also print the KD table")

    p = add("pure-states", cmd_pure_states, "list pure KD-positive states")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--full", action="store_true", help="include state vectors")

    add("partition", cmd_partition, "orbit classes of matrix entries").add_argument("--d", type=int, required=True)

    p = add("kdreal-dim", cmd_kdreal_dim, "dimension of the KD-real operator space")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also compute it by rank")

    add("kdreal-basis", cmd_kdreal_basis, "basis of the KD-real space (JSON)").add_argument(
        "--d", type=int, required=True
    )

    p = add("decompose", cmd_decompose, "decompose a KD-real operator over pure KD-positive projectors")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("constructive", "lsq"), default="constructive")

    p = add("verify", cmd_verify, "verification sweep over a range of dimensions")
    p.add_argument("--d-min", type=int, default=1)
    p.add_argument("--d-max", type=int, default=12)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.eps > 0:
        print("error: --eps must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        text, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

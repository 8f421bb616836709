"""Command-line surface: classify, verify, planar, sweep.

Matrix input: rows separated by ``;``, entries by whitespace, e.g.
``"9 21; 1 4"``; or JSON ``{"rows": [[9, 21], [1, 4]]}``.  Reports are
emitted as human-readable text or, with ``--json``, as JSON that
validates against the schema shipped as ``report_schema.json``.  With
``--no-timings`` identical inputs produce byte-identical JSON.

Exit codes: 0 success, 2 parse/validation error, 3 unsupported shape or
vector count, 4 internal violation (classifier contradicts the oracle
or itself), 5 search budget or size cap exhausted (partial report).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .cayley import (
    ChromaticResult,
    EvenColumnSums,
    ExceptionalForm,
    FiniteColoring,
    LoopWitness,
    NonexceptionalThree,
    ParityCertificate,
    RelationMatrix,
    TriangleForm,
)
from .classify import chromatic_number, normalize
from .errors import (
    CayleyChiError,
    InternalViolationError,
    MatrixParseError,
    NotCanonicalizableError,
    SearchBudgetError,
    SizeCapError,
    UnsupportedShapeError,
    VectorError,
)
from .intlat import IntMatrix, column_hnf
from .oracle import ChiBounds, CrossCheck, OracleConfig, cross_check
from .planar import (
    chi_of_unit_vectors,
    dedup_collinear,
    parse_vectors,
    relation_lattice,
    validate_vector_count,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_VIOLATION = 4
EXIT_BUDGET = 5


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"a b; c d"`` or ``{"rows": [[a, b], [c, d]]}``."""
    text = text.strip()
    if not text:
        raise MatrixParseError("empty matrix input")
    if text.startswith("{"):
        try:
            obj = json.loads(text)
            rows = obj["rows"]
            return IntMatrix.from_rows([[int(v) for v in r] for r in rows])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise MatrixParseError(f"invalid JSON matrix: {exc}")
    try:
        rows = [[int(v) for v in part.split()] for part in text.split(";")]
        return IntMatrix.from_rows(rows)
    except (ValueError, CayleyChiError) as exc:
        raise MatrixParseError(f"invalid matrix text {text!r}: {exc}")


# --------------------------------------------------------------------------
# Report serialization.
# --------------------------------------------------------------------------


def certificate_to_dict(cert) -> dict:
    if isinstance(cert, LoopWitness):
        return {"kind": "loop-witness", "coeffs": list(cert.coeffs), "basis_index": cert.basis_index}
    if isinstance(cert, EvenColumnSums):
        return {"kind": "even-column-sums"}
    if isinstance(cert, ParityCertificate):
        return {"kind": "parity", "entry_sum": cert.entry_sum}
    if isinstance(cert, ExceptionalForm):
        return {
            "kind": "exceptional-form",
            "case": cert.case_id,
            "k": cert.k,
            "a": cert.a,
            "sign": cert.sign,
            "matrix": cert.matrix.to_list(),
            "transform": {"p": cert.transform.p.to_list(), "u": cert.transform.u.to_list()},
        }
    if isinstance(cert, TriangleForm):
        return {
            "kind": "triangle-form",
            "a": cert.a,
            "b": cert.b,
            "c": cert.c,
            "transform": {"p": cert.transform.p.to_list(), "u": cert.transform.u.to_list()},
        }
    if isinstance(cert, NonexceptionalThree):
        return {"kind": "no-four-form", "odd_column": cert.odd_column}
    if isinstance(cert, FiniteColoring):
        return {"kind": "finite-coloring", "order": cert.order, "coloring": list(cert.coloring)}
    raise TypeError(f"unknown certificate {type(cert).__name__}")


def result_to_dict(result: ChromaticResult) -> dict:
    return {
        "loops": result.has_loops,
        "chi": result.chi,
        "certificate": certificate_to_dict(result.certificate),
    }


def bounds_to_dict(bounds: ChiBounds) -> dict:
    def witness(w):
        if w is None:
            return None
        out = {"kind": w.kind, "param": w.param, "vertices": w.vertices, "chi": w.chi}
        if w.coloring is not None:
            out["coloring"] = list(w.coloring)
        return out

    return {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "lower_witness": witness(bounds.lower_witness),
        "upper_witness": witness(bounds.upper_witness),
        "loops": bounds.loops,
        "partial": bounds.partial,
        "notes": list(bounds.notes),
    }


@dataclass(frozen=True)
class Report:
    """Everything a run produced, in JSON-able form; round-trips losslessly."""

    command: str
    input: dict
    status: str
    normalized: Optional[dict] = None
    classifier: Optional[dict] = None
    oracle: Optional[dict] = None
    sweep: Optional[dict] = None
    error: Optional[str] = None
    timings: Optional[dict] = None

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {"command": self.command, "input": self.input, "status": self.status}
        for key in ("normalized", "classifier", "oracle", "sweep", "error"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if include_timings and self.timings is not None:
            out["timings"] = self.timings
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            command=d["command"],
            input=d["input"],
            status=d["status"],
            normalized=d.get("normalized"),
            classifier=d.get("classifier"),
            oracle=d.get("oracle"),
            sweep=d.get("sweep"),
            error=d.get("error"),
            timings=d.get("timings"),
        )


def normalized_to_dict(work: RelationMatrix) -> dict:
    return {
        "matrix": work.matrix.to_list(),
        "steps": [
            {"op": s.op, **({"detail": s.detail} if s.detail else {})}
            for s in work.provenance
        ],
    }


def report_json(report: Report, include_timings: bool) -> str:
    return json.dumps(report.to_dict(include_timings), sort_keys=True, indent=2)


def render_text(report: Report) -> str:
    lines = [f"command: {report.command}"]
    if "matrix" in report.input:
        lines.append(f"input matrix: {report.input['matrix']}")
    if "vectors" in report.input:
        lines.append(f"input vectors: {', '.join(report.input['vectors'])}")
    if report.normalized:
        lines.append(f"normalized: {report.normalized['matrix']}")
    if report.classifier:
        c = report.classifier
        if c["loops"]:
            lines.append("result: the graph has loops; no proper coloring exists")
        else:
            lines.append(f"result: chi = {c['chi']}")
        lines.append(f"certificate: {c['certificate']['kind']}")
    if report.oracle:
        o = report.oracle
        if o["loops"]:
            lines.append("oracle: loops confirmed")
        else:
            lo, up = o["lower"], o["upper"]
            lw, uw = o["lower_witness"], o["upper_witness"]
            lo_s = f"{lo} ({lw['kind']} {lw['param']}, {lw['vertices']} vertices)" if lw else str(lo)
            up_s = f"{up} ({uw['kind']} N={uw['param']}, {uw['vertices']} vertices)" if uw else str(up)
            lines.append(f"oracle bounds: lower {lo_s}, upper {up_s}")
            if o["partial"]:
                lines.append("oracle: PARTIAL (caps or budget hit); " + "; ".join(o["notes"]))
    if report.sweep:
        s = report.sweep
        lines.append(f"sweep counts: {s['counts']}")
        if s["violations"]:
            lines.append(f"VIOLATIONS: {len(s['violations'])}")
            for v in s["violations"]:
                lines.append(f"  {json.dumps(v, sort_keys=True)}")
    if report.error:
        lines.append(f"error: {report.error}")
    lines.append(f"status: {report.status}")
    if report.timings:
        lines.append(f"time: {report.timings['seconds']:.3f}s")
    return "\n".join(lines)


def emit(report: Report, args) -> None:
    if args.json:
        print(report_json(report, include_timings=not args.no_timings))
    else:
        print(render_text(report))


# --------------------------------------------------------------------------
# Subcommands.
# --------------------------------------------------------------------------


def _oracle_config(args) -> OracleConfig:
    kwargs = {}
    if getattr(args, "r_max", None) is not None:
        kwargs["r_max"] = args.r_max
    if getattr(args, "n_max", None) is not None:
        kwargs["n_max"] = args.n_max
    return OracleConfig.from_env(**kwargs)


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    matrix = parse_matrix(args.matrix)
    rm = RelationMatrix(matrix)
    work = normalize(rm)
    timings = lambda: {"seconds": round(time.perf_counter() - t0, 6)}  # noqa: E731
    try:
        result = chromatic_number(work)
    except UnsupportedShapeError as exc:
        report = Report(
            command="classify",
            input={"matrix": matrix.to_list()},
            status="UNSUPPORTED",
            normalized=normalized_to_dict(work),
            error=str(exc),
            timings=timings(),
        )
        emit(report, args)
        return EXIT_UNSUPPORTED
    report = Report(
        command="classify",
        input={"matrix": matrix.to_list()},
        status="CONSISTENT",
        normalized=normalized_to_dict(work),
        classifier=result_to_dict(result),
        timings=timings(),
    )
    emit(report, args)
    return EXIT_OK


_STATUS_EXIT = {
    "PINNED": EXIT_OK,
    "CONSISTENT": EXIT_OK,
    "VIOLATION": EXIT_VIOLATION,
    "UNSUPPORTED": EXIT_UNSUPPORTED,
}


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    matrix = parse_matrix(args.matrix)
    rm = RelationMatrix(matrix)
    cfg = _oracle_config(args)
    check = cross_check(rm, cfg)
    report = Report(
        command="verify",
        input={"matrix": matrix.to_list()},
        status=check.status,
        normalized=normalized_to_dict(normalize(rm)),
        classifier=result_to_dict(check.result) if check.result is not None else None,
        oracle=bounds_to_dict(check.bounds) if check.bounds is not None else None,
        error=check.detail or None,
        timings={"seconds": round(time.perf_counter() - t0, 6)},
    )
    emit(report, args)
    code = _STATUS_EXIT[check.status]
    if code == EXIT_OK and check.bounds is not None and check.bounds.partial and check.status != "PINNED":
        return EXIT_BUDGET
    return code


def cmd_planar(args) -> int:
    t0 = time.perf_counter()
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    vectors = parse_vectors(text)
    validate_vector_count(vectors)
    kept = dedup_collinear(vectors)
    rm = relation_lattice(kept)
    work = normalize(rm)
    result = chi_of_unit_vectors(vectors)
    report = Report(
        command="planar",
        input={
            "vectors": [str(v) for v in vectors],
            "d": next((v.d for v in vectors if v.d), 0),
        },
        status="CONSISTENT",
        normalized=normalized_to_dict(work),
        classifier=result_to_dict(result),
        timings={"seconds": round(time.perf_counter() - t0, 6)},
    )
    emit(report, args)
    return EXIT_OK


def _sweep_matrices(shape: str, bound: int):
    """All matrices of the requested shape with entries in [-bound, bound]."""
    span = range(-bound, bound + 1)
    if shape == "tri":
        for a, b, c in itertools.product(span, repeat=3):
            yield IntMatrix.from_rows([[1, a], [1, b], [1, c], [0, 1]])
        return
    rows, cols = (int(p) for p in shape.split("x"))
    for flat in itertools.product(span, repeat=rows * cols):
        yield IntMatrix(tuple(flat[i * cols : (i + 1) * cols] for i in range(rows)))


def _sweep_filtered(matrix: IntMatrix, shape: str) -> bool:
    """Precondition filter for two-column sweeps; single columns pass as-is."""
    if matrix.cols != 2:
        return False
    if any(matrix.is_zero_row(i) for i in range(1, matrix.rows + 1)):
        return True
    return column_hnf(matrix).rank != 2


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    shape = args.shape.lower()
    allowed = {"1x1", "2x1", "3x1", "4x1", "5x1", "3x2", "4x2", "tri"}
    if shape not in allowed:
        raise MatrixParseError(f"shape must be one of {sorted(allowed)}, got {shape!r}")
    if not 1 <= args.bound <= 4:
        raise MatrixParseError("bound must be between 1 and 4")
    cfg = _oracle_config(args)
    counts: dict[str, int] = {}
    violations: list[dict] = []
    partial = 0
    seen_lattices: set = set()

    def bump(key: str):
        counts[key] = counts.get(key, 0) + 1

    for matrix in _sweep_matrices(shape, args.bound):
        if shape != "tri" and _sweep_filtered(matrix, shape):
            bump("filtered")
            continue
        if args.dedupe:
            key = column_hnf(matrix).h.data
            if key in seen_lattices:
                bump("deduped")
                continue
            seen_lattices.add(key)
        rm = RelationMatrix(matrix)
        if args.oracle:
            check = cross_check(rm, cfg)
            if check.status == "VIOLATION":
                report = Report(
                    command="verify",
                    input={"matrix": matrix.to_list()},
                    status=check.status,
                    classifier=result_to_dict(check.result) if check.result else None,
                    oracle=bounds_to_dict(check.bounds) if check.bounds else None,
                    error=check.detail or None,
                )
                violations.append(report.to_dict(include_timings=False))
            if check.bounds is not None and check.bounds.partial:
                partial += 1
            if check.result is None:
                bump("unsupported")
            elif check.result.has_loops:
                bump("loops")
            else:
                bump(f"chi={check.result.chi}")
        else:
            try:
                result = chromatic_number(rm)
            except UnsupportedShapeError:
                bump("unsupported")
                continue
            bump("loops" if result.has_loops else f"chi={result.chi}")

    status = "VIOLATION" if violations else "CONSISTENT"
    report = Report(
        command="sweep",
        input={"shape": shape, "bound": args.bound, "oracle": bool(args.oracle)},
        status=status,
        sweep={"counts": counts, "violations": violations, "partial": partial},
        timings={"seconds": round(time.perf_counter() - t0, 6)},
    )
    emit(report, args)
    if violations:
        return EXIT_VIOLATION
    if partial:
        return EXIT_BUDGET
    return EXIT_OK


# --------------------------------------------------------------------------
# Entry point.
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleychi",
        description="Exact chromatic numbers of abelian Cayley graphs "
        "presented by integer relation matrices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument(
            "--no-timings", action="store_true", help="omit timings for byte-stable output"
        )

    p_classify = sub.add_parser("classify", help="classify one matrix")
    p_classify.add_argument("-m", "--matrix", required=True, help='e.g. "9 21; 1 4"')
    common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="classify and cross-check against the oracle")
    p_verify.add_argument("-m", "--matrix", required=True)
    p_verify.add_argument("--r-max", type=int, default=None, help="largest ball radius")
    p_verify.add_argument("--n-max", type=int, default=None, help="largest quotient modulus")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_planar = sub.add_parser("planar", help="chi for 1-4 plane unit vectors")
    p_planar.add_argument("file", help="vector file, or - for stdin")
    common(p_planar)
    p_planar.set_defaults(func=cmd_planar)

    p_sweep = sub.add_parser("sweep", help="enumerate and classify a whole shape family")
    p_sweep.add_argument("--shape", required=True, help="1x1..5x1, 3x2, 4x2, or tri")
    p_sweep.add_argument("--bound", type=int, required=True, help="entry bound, at most 4")
    p_sweep.add_argument("--oracle", action="store_true", help="cross-check every instance")
    p_sweep.add_argument("--dedupe", action="store_true", help="skip column-equivalent repeats")
    p_sweep.add_argument("--r-max", type=int, default=3)
    p_sweep.add_argument("--n-max", type=int, default=6)
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixParseError, VectorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InternalViolationError, NotCanonicalizableError) as exc:
        print(f"internal violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (SearchBudgetError, SizeCapError) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

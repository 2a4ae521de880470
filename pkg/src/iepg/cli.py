"""Command-line front end.

Every ``realize-*`` command verifies its own output before exiting, so a
zero exit status always comes with a report whose spectrum and pattern
checks both passed.

Exit codes: 0 success, 2 hypothesis/feasibility failure, 3 numerical
verification failure, 4 I/O or parse error.

Values that start with a minus sign must be attached with ``=``, e.g.
``--spectrum=-1,2,3`` or ``--signs=-1,1,-1``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

import numpy as np

from . import __version__
from .constructions import (
    CompleteRealization,
    Pin,
    Realization,
    bordered_realize,
    clique_cluster_construct,
    cluster_clique_construct,
    complete_realize,
    eigvec_for_position,
    join_construct,
    kn_minus_edge_realize,
    smith_glue,
)
from .core import (
    HypothesisError,
    IEPGError,
    NumericalError,
    Spectrum,
    StructuralError,
    SymMatrix,
    ToleranceProfile,
    assemble_bordered,
)
from .graphs import (
    GraphSpec,
    build_clique_cluster,
    build_complete,
    build_join_family,
    build_kn_minus_edge,
    detect_clusters,
    pattern_of,
    recognize_shape,
)
from .serialize import (
    ParseError,
    dumps,
    matrix_to_obj,
    parse_floats,
    parse_graph_json,
    parse_matrix_json,
    parse_spectrum,
    render_matrix_text,
)
from .verify import RealizationReport, check_realization, check_ssp, eig_symmetric, q_kn_minus_edge

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

COMMANDS = (
    "realize-complete",
    "realize-bordered",
    "realize-clique-cluster",
    "realize-cluster-clique",
    "realize-kn-minus-e",
    "realize-join",
    "glue",
    "verify",
    "detect",
    "ssp",
    "q-formula",
)

# command -> parameters that must be present
REQUIRED = {
    "realize-complete": ("spectrum",),
    "realize-bordered": ("spectrum", "mus"),
    "realize-clique-cluster": ("n", "k", "r", "spectrum"),
    "realize-cluster-clique": ("n", "k", "r", "spectrum"),
    "realize-kn-minus-e": ("n", "spectrum"),
    "realize-join": ("n", "i", "j", "spectrum"),
    "glue": ("a_path", "b_path"),
    "verify": ("matrix_path", "graph_path", "spectrum"),
    "detect": ("graph_path",),
    "ssp": ("matrix_path",),
    "q-formula": ("n",),
}


class UsageError(IEPGError):
    pass


@dataclass
class JobConfig:
    command: str
    n: Optional[int] = None
    k: Optional[int] = None
    r: Optional[int] = None
    i: Optional[int] = None
    j: Optional[int] = None
    spectrum: Optional[Spectrum] = None
    mus: Optional[list[float]] = None
    lambda1: Optional[list[float]] = None
    signs: Optional[list[int]] = None
    pins: list[Pin] = field(default_factory=list)
    u_sign: int = 1
    u: Optional[list[float]] = None
    u_position: Optional[int] = None
    matrix_path: Optional[str] = None
    graph_path: Optional[str] = None
    a_path: Optional[str] = None
    b_path: Optional[str] = None
    report_only: Optional[str] = None
    output: Optional[str] = None
    fmt: str = "json"
    tol: ToleranceProfile = field(default_factory=ToleranceProfile)

    def validate(self) -> None:
        if self.command not in REQUIRED:
            raise UsageError(f"unknown command {self.command!r}")
        required = REQUIRED[self.command]
        if self.report_only is not None:
            # re-verification needs the targets but none of the construction inputs
            required = tuple(p for p in required if p not in ("mus",))
        missing = [p for p in required if getattr(self, p) is None]
        if missing:
            flags = ", ".join("--" + p.replace("_path", "").replace("_", "-") for p in missing)
            raise UsageError(f"{self.command} needs {flags}")
        if self.command == "glue" and self.u is None and self.u_position is None:
            raise UsageError("glue needs --u or --u-position")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _signs(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("+", "+1", "1"):
            out.append(1)
        elif tok in ("-", "-1"):
            out.append(-1)
        else:
            raise ParseError(f"bad sign {tok!r}; use +1/-1 or +/-")
    return out


def _pins(text: str) -> list[Pin]:
    pins = []
    for tok in text.split(","):
        pos, sep, val = tok.partition(":")
        if not sep:
            raise ParseError(f"bad pin {tok.strip()!r}; use position:value")
        try:
            position, value = int(pos), float(val)
        except ValueError:
            raise ParseError(f"bad pin {tok.strip()!r}; use position:value") from None
        pins.append(Pin(position, value))
    return pins


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iepg", description="Symmetric matrices with a prescribed spectrum and graph.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--spec-tol", type=float, default=1e-8)
    common.add_argument("--zero-tol", type=float, default=1e-10)
    common.add_argument("--rank-tol", type=float, default=1e-9)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    def sizes(p, *names):
        for nm in names:
            p.add_argument(f"--{nm}", type=int)

    def realize_opts(p):
        p.add_argument("--spectrum", help='e.g. "7,7,1,1,-3^3,-5^2"')
        p.add_argument("--report-only", metavar="MATRIX_JSON", help="re-verify an existing matrix instead of building one")

    p = add("realize-complete", "matrix on the complete graph")
    realize_opts(p)
    p.add_argument("--pins", help='diagonal pins "position:value,..."')

    p = add("realize-bordered", "bordered (star) matrix from interlacing data")
    realize_opts(p)
    p.add_argument("--mus")
    p.add_argument("--signs")

    p = add("realize-clique-cluster", "clique K_k plus an independent cluster")
    sizes(p, "n", "k", "r")
    realize_opts(p)
    p.add_argument("--mus")
    p.add_argument("--lambda1")
    p.add_argument("--signs")
    p.add_argument("--u-sign", type=int, default=1, choices=(1, -1))

    p = add("realize-cluster-clique", "clique K_k plus a cluster that is itself a clique")
    sizes(p, "n", "k", "r")
    realize_opts(p)
    p.add_argument("--lambda1")
    p.add_argument("--u-sign", type=int, default=1, choices=(1, -1))

    p = add("realize-kn-minus-e", "K_n with one edge removed")
    sizes(p, "n")
    realize_opts(p)

    p = add("realize-join", "K_i v (K_j u K_{n-i-j})")
    sizes(p, "n", "i", "j")
    realize_opts(p)
    p.add_argument("--lambda1")
    p.add_argument("--u-sign", type=int, default=1, choices=(1, -1))

    p = add("glue", "glue two matrices along a shared eigenpair")
    p.add_argument("--a", dest="a_path", required=False)
    p.add_argument("--b", dest="b_path", required=False)
    p.add_argument("--u")
    p.add_argument("--u-position", type=int)
    p.add_argument("--u-sign", type=int, default=1, choices=(1, -1))

    p = add("verify", "check a matrix against a graph and a spectrum")
    p.add_argument("--matrix", dest="matrix_path")
    p.add_argument("--graph", dest="graph_path")
    p.add_argument("--spectrum")

    p = add("detect", "clusters and clique-cluster shape of a graph")
    p.add_argument("--graph", dest="graph_path")

    p = add("ssp", "strong spectral property check")
    p.add_argument("--matrix", dest="matrix_path")

    p = add("q-formula", "minimum number of distinct eigenvalues of K_n - e")
    sizes(p, "n")
    return parser


def parse_config(argv: Sequence[str]) -> JobConfig:
    ns = build_parser().parse_args(list(argv))
    get = lambda name: getattr(ns, name, None)  # noqa: E731
    try:
        tol = ToleranceProfile(ns.spec_tol, ns.zero_tol, ns.rank_tol)
    except StructuralError as exc:
        raise UsageError(str(exc)) from None
    cfg = JobConfig(
        command=ns.command,
        n=get("n"),
        k=get("k"),
        r=get("r"),
        i=get("i"),
        j=get("j"),
        spectrum=parse_spectrum(ns.spectrum) if get("spectrum") is not None else None,
        mus=parse_floats(ns.mus, "mus") if get("mus") is not None else None,
        lambda1=parse_floats(ns.lambda1, "lambda1") if get("lambda1") is not None else None,
        signs=_signs(ns.signs) if get("signs") is not None else None,
        pins=_pins(ns.pins) if get("pins") else [],
        u_sign=get("u_sign") or 1,
        u=parse_floats(ns.u, "u") if get("u") is not None else None,
        u_position=get("u_position"),
        matrix_path=get("matrix_path"),
        graph_path=get("graph_path"),
        a_path=get("a_path"),
        b_path=get("b_path"),
        report_only=get("report_only"),
        output=ns.output,
        fmt=ns.fmt,
        tol=tol,
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _star(m: int) -> GraphSpec:
    return GraphSpec(m, ((t, m) for t in range(1, m)))


def _target_graph(cfg: JobConfig) -> GraphSpec:
    c = cfg.command
    if c == "realize-complete":
        return build_complete(len(cfg.spectrum))
    if c == "realize-bordered":
        return _star(len(cfg.spectrum))
    if c == "realize-clique-cluster":
        return build_clique_cluster(cfg.n, cfg.k, cfg.r, False)
    if c == "realize-cluster-clique":
        return build_clique_cluster(cfg.n, cfg.k, cfg.r, True)
    if c == "realize-kn-minus-e":
        return build_kn_minus_edge(cfg.n)
    if c == "realize-join":
        return build_join_family(cfg.n, cfg.i, cfg.j)
    raise UsageError(f"{c} has no target graph")


def _realization_obj(res: Realization) -> dict:
    part = res.partition
    out = {
        "lambda1": list(part.lambda1.values),
        "lambda2": list(part.lambda2.values),
        "a": part.a,
    }
    if part.mus:
        out["mus"] = list(part.mus)
    out["outer"] = matrix_to_obj(res.outer)
    out["inner"] = matrix_to_obj(res.inner.matrix)
    out["inner_diag"] = list(res.inner.diag_order)
    out["pin_position"] = res.pin_position
    out["u"] = [float(x) for x in res.u]
    return out


def _build(cfg: JobConfig) -> tuple[SymMatrix, Optional[dict]]:
    c, tol, lam = cfg.command, cfg.tol, cfg.spectrum
    if c == "realize-complete":
        res: CompleteRealization = complete_realize(lam, cfg.pins, tol)
        return res.matrix, {"diag_order": list(res.diag_order)}
    if c == "realize-bordered":
        b = bordered_realize(lam, cfg.mus, cfg.signs, tol)
        return assemble_bordered(b), {"diag": list(b.diag), "border": list(b.border), "corner": b.corner}
    if c == "realize-clique-cluster":
        res = clique_cluster_construct(
            lam, cfg.n, cfg.k, cfg.r, tol, mus=cfg.mus, lambda1=cfg.lambda1, signs=cfg.signs, u_sign=cfg.u_sign
        )
        return res.matrix, _realization_obj(res)
    if c == "realize-cluster-clique":
        res = cluster_clique_construct(lam, cfg.n, cfg.k, cfg.r, tol, lambda1=cfg.lambda1, u_sign=cfg.u_sign)
        return res.matrix, _realization_obj(res)
    if c == "realize-kn-minus-e":
        return kn_minus_edge_realize(lam, cfg.n, tol), None
    if c == "realize-join":
        res = join_construct(lam, cfg.n, cfg.i, cfg.j, tol, lambda1=cfg.lambda1, u_sign=cfg.u_sign)
        return res.matrix, _realization_obj(res)
    raise UsageError(f"unknown realize command {c!r}")


def _glue(cfg: JobConfig) -> tuple[SymMatrix, GraphSpec, Spectrum, dict]:
    a = parse_matrix_json(_read(cfg.a_path))
    b = parse_matrix_json(_read(cfg.b_path))
    if cfg.u is not None:
        u = np.asarray(cfg.u, dtype=float)
    else:
        u = cfg.u_sign * eigvec_for_position(b.n, cfg.u_position, normalized=True)
    glued = smith_glue(a, b, u, cfg.tol)

    # expected spectrum and pattern, predicted from the factors alone
    mu = float(a.entries[-1, -1])
    eig_b = list(eig_symmetric(b).values)
    eig_b.pop(int(np.argmin([abs(x - mu) for x in eig_b])))
    expected = Spectrum(list(eig_symmetric(a).values) + eig_b)
    na = a.n
    edges = set(pattern_of(SymMatrix(a.entries[: na - 1, : na - 1]), cfg.tol).edges) if na > 1 else set()
    edges |= {(x + na - 1, y + na - 1) for x, y in pattern_of(b, cfg.tol).edges}
    border = a.entries[: na - 1, na - 1]
    eps = cfg.tol.zero_tol * max(1.0, float(np.max(np.abs(border), initial=0.0)) * float(np.max(np.abs(u))))
    edges |= {(s + 1, na + t) for s in range(na - 1) for t in range(b.n) if abs(border[s] * u[t]) > eps}
    return glued, GraphSpec(glued.n, edges), expected, {"u": [float(x) for x in u], "mu": mu}


def _document(cfg: JobConfig, matrix: SymMatrix, report: RealizationReport, extra: Optional[dict]) -> dict:
    doc = {"command": cfg.command, "matrix": matrix_to_obj(matrix), "report": report.to_dict()}
    if extra is not None:
        doc["construction"] = extra
    return doc


def _render_text(doc: dict) -> str:
    lines = [f"# {doc['command']}"]
    rows = doc["matrix"]["rows"]
    lines.append(render_matrix_text(SymMatrix(rows)).rstrip("\n"))
    rep = doc["report"]
    lines.append(f"spectrum_ok: {rep['spectrum_ok']} (max residual {rep['max_eig_residual']:.3e})")
    lines.append(f"pattern_ok: {rep['pattern_ok']}")
    if rep["missing_edges"]:
        lines.append(f"missing_edges: {rep['missing_edges']}")
    if rep["spurious_edges"]:
        lines.append(f"spurious_edges: {rep['spurious_edges']}")
    if rep["row_sum_constant"] is not None:
        lines.append(f"row_sum_constant: {rep['row_sum_constant']:.17g}")
    if rep["notes"]:
        lines.append(f"notes: {rep['notes']}")
    return "\n".join(lines) + "\n"


def _emit(cfg: JobConfig, payload, text: Optional[str], out: TextIO) -> None:
    body = text if (cfg.fmt == "text" and text is not None) else dumps(payload) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        out.write(body)


def run(cfg: JobConfig, out: TextIO = sys.stdout) -> int:
    """Execute one job and return its exit code."""
    c = cfg.command
    if c == "q-formula":
        _emit(cfg, q_kn_minus_edge(cfg.n), f"{q_kn_minus_edge(cfg.n)}\n", out)
        return EXIT_OK
    if c == "ssp":
        verdict = check_ssp(parse_matrix_json(_read(cfg.matrix_path)), cfg.tol)
        d = verdict.to_dict()
        text = "".join(f"{k}: {v}\n" for k, v in d.items())
        _emit(cfg, d, text, out)
        return EXIT_OK
    if c == "detect":
        g = parse_graph_json(_read(cfg.graph_path))
        doc: dict = {
            "clusters": [{"C": list(cl.members), "S": list(cl.shared)} for cl in detect_clusters(g)],
            "shape": None,
        }
        try:
            shape = recognize_shape(g)
            doc["shape"] = {
                "n": shape.n,
                "k": shape.k,
                "r": shape.r,
                "cluster": list(shape.cluster),
                "clique": list(shape.clique),
                "s": list(shape.s),
                "cluster_is_clique": shape.cluster_is_clique,
            }
        except HypothesisError as exc:
            doc["shape_error"] = str(exc)
        text = "".join(f"C={cl['C']} S={cl['S']}\n" for cl in doc["clusters"])
        if doc["shape"]:
            s = doc["shape"]
            text += f"shape: n={s['n']} k={s['k']} r={s['r']} cluster_is_clique={s['cluster_is_clique']}\n"
        _emit(cfg, doc, text, out)
        return EXIT_OK

    extra: Optional[dict]
    if c == "verify":
        matrix = parse_matrix_json(_read(cfg.matrix_path))
        graph = parse_graph_json(_read(cfg.graph_path))
        target, extra = cfg.spectrum, None
    elif c == "glue":
        matrix, graph, target, extra = _glue(cfg)
    elif cfg.report_only is not None:
        matrix = parse_matrix_json(_read(cfg.report_only))
        graph, target, extra = _target_graph(cfg), cfg.spectrum, None
    else:
        graph = _target_graph(cfg)
        matrix, extra = _build(cfg)
        target = cfg.spectrum

    report = check_realization(matrix, graph, target, cfg.tol)
    doc = _document(cfg, matrix, report, extra)
    _emit(cfg, doc, _render_text(doc), out)
    return EXIT_OK if report.ok else EXIT_NUMERICAL


def main(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return run(cfg, out)
    except (ParseError, UsageError, StructuralError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except HypothesisError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_HYPOTHESIS
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_NUMERICAL
    except Exception as exc:  # keep the exit-code contract closed
        print(f"error: internal: {type(exc).__name__}: {exc}", file=err)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

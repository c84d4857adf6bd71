"""Command-line front end: ``commcount <subcommand> ...``.

Exit codes: 0 success, 1 invalid input, 2 bounded search exhausted,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import assembly, decgraph, localsym, qforms
from .errors import InputError, SearchExhausted
from .numfield import CONJUGATE, FIXED, parse_elem, parse_ideal, parse_rational

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


class StageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _print_bool(flag: bool) -> None:
    print("true" if flag else "false")


# ---- number-theoretic commands -------------------------------------------


def cmd_hilbert(args) -> int:
    x, y, P = parse_elem(args.a), parse_elem(args.b), parse_ideal(args.at)
    print(f"{localsym.hilbert_at(x, y, P):+d}")
    return EXIT_OK


def cmd_hilbert_q(args) -> int:
    a, b = parse_rational(args.a), parse_rational(args.b)
    if args.place == "inf":
        place = localsym.INFINITY
    else:
        try:
            place = int(args.place)
        except ValueError:
            raise InputError(f"place must be a prime or 'inf', got {args.place!r}") from None
    print(f"{localsym.hilbert_Q(a, b, place):+d}")
    return EXIT_OK


def cmd_sqclass(args) -> int:
    print(localsym.square_class_local(parse_elem(args.x), parse_ideal(args.at)))
    return EXIT_OK


def cmd_admissible(args) -> int:
    f = qforms.load_form(args.form)
    for emb in (FIXED, CONJUGATE):
        pos, neg = qforms.signature_at(f, emb)
        print(f"signature {emb} {pos} {neg}")
    print(f"admissible {'true' if qforms.is_admissible(f) else 'false'}")
    return EXIT_OK


def cmd_hasse(args) -> int:
    f = qforms.load_form(args.form)
    print(f"{qforms.hasse_witt(f, parse_ideal(args.at)):+d}")
    return EXIT_OK


def cmd_similar(args) -> int:
    f, g = qforms.load_form(args.form1), qforms.load_form(args.form2)
    _print_bool(qforms.local_similar(f, g, parse_ideal(args.at)))
    return EXIT_OK


def cmd_select_d(args) -> int:
    f = qforms.load_form(args.form)
    try:
        report = qforms.select_d_values(f, args.count, args.pool, args.norms)
        status = EXIT_OK
    except SearchExhausted as exc:
        report = exc.partial
        print(f"select-d: {exc}", file=sys.stderr)
        status = EXIT_EXHAUSTED
    if args.out:
        _write(Path(args.out), report.to_text())
    else:
        sys.stdout.write(report.to_text())
    return status


def cmd_swdim(args) -> int:
    print(qforms.sw_moduli_dim(args.c1sq, args.euler, args.sigma))
    return EXIT_OK


# ---- graphs and assemblies -----------------------------------------------


def _write_graphs(out: Path, graphs) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for G in graphs:
        (out / f"{decgraph.graph_id(G)}.graph").write_text(decgraph.format_graph(G))


def cmd_graphs_enumerate(args) -> int:
    graphs = decgraph.enumerate_subgroups(args.n)
    if args.out:
        out = Path(args.out)
        _write_graphs(out, graphs)
        (out / "COUNT").write_text(f"{len(graphs)}\n")
        print(f"wrote {len(graphs)} graphs to {out}")
    else:
        for G in graphs:
            print(decgraph.graph_id(G))
    return EXIT_OK


def _load_schreier(path) -> decgraph.DecoratedGraph:
    G = decgraph.load_graph(path)
    if not G.is_schreier():
        raise InputError(f"{path}: need a connected graph with one colored vertex")
    return G


def cmd_graphs_iso(args) -> int:
    _print_bool(decgraph.is_isomorphic(_load_schreier(args.file1), _load_schreier(args.file2)))
    return EXIT_OK


def cmd_graphs_cover(args) -> int:
    base = decgraph.load_graph(args.base)
    cover = decgraph.load_graph(args.cover)
    try:
        m = [int(x) - 1 for x in args.map.split(",")]
    except ValueError:
        raise InputError(f"bad vertex map {args.map!r}") from None
    _print_bool(decgraph.is_decorated_cover(cover, base, m))
    return EXIT_OK


def cmd_graphs_count(args) -> int:
    print(decgraph.count_subgroups(args.n))
    return EXIT_OK


def cmd_graphs_bound(args) -> int:
    n = args.n
    a_n = decgraph.count_subgroups(n)
    print(f"a_n={a_n}")
    print(f"floor_n^(n/2)={decgraph.floor_half_power(n)}")
    print(f"holds {'true' if decgraph.verify_growth_bound(n) else 'false'}")
    return EXIT_OK


def cmd_assemble(args) -> int:
    A = assembly.assemble(decgraph.load_graph(args.graph))
    errors = assembly.validation_errors(A)
    if not args.check:
        sys.stdout.write(assembly.format_assembly(A))
    if errors:
        print("invalid")
        for e in errors:
            print(f"  {e}")
        return EXIT_INPUT
    print("valid")
    return EXIT_OK


def _write_certificate(out: Path, cert: assembly.CountCertificate) -> None:
    out.mkdir(parents=True, exist_ok=True)
    if cert.n and cert.graph_manifest is not None:
        _write_graphs(out, decgraph.enumerate_subgroups(cert.n))
    (out / "certificate.txt").write_text(cert.to_text())


def cmd_vc_lower(args) -> int:
    cert = assembly.vc_lower_bound(parse_rational(args.volume), parse_rational(args.block_volume))
    print(f"n={cert.n}")
    print(f"lower_bound={cert.lower_bound}")
    print(f"exact_count={cert.exact_class_count}")
    if args.manifest:
        _write_certificate(Path(args.manifest), cert)
    return EXIT_OK


# ---- pipeline --------------------------------------------------------------


@dataclass
class RunConfig:
    form: str = "default"
    count: int = 6
    pool_bound: int = 50
    norm_bound: int = 2000
    n_cap: int = 4
    volume: Fraction = Fraction(40)
    block_volume: Fraction = Fraction(1)
    out_dir: Optional[Path] = None

    def __post_init__(self):
        for name in ("count", "pool_bound", "norm_bound", "n_cap"):
            if getattr(self, name) <= 0:
                raise InputError(f"{name} must be positive")
        if self.volume <= 0 or self.block_volume <= 0:
            raise InputError("volumes must be positive")
        if self.n_cap > decgraph.ENUMERATION_CAP:
            raise InputError(f"n_cap above {decgraph.ENUMERATION_CAP}")


def pipeline(config: RunConfig) -> list[str]:
    """Run admissibility, d-selection, enumeration, assembly and the count.

    Returns the summary lines; writes the report directory if configured.
    """
    files: dict[str, str] = {}
    summary = []

    try:
        f = qforms.load_form(config.form)
        if not qforms.is_admissible(f):
            raise InputError(f"{f} is not admissible")
    except InputError as exc:
        raise StageError("admissible", exc) from exc
    files["form.txt"] = qforms.format_form(f)
    summary.append(f"stage admissible ok {f}")

    try:
        report = qforms.select_d_values(f, config.count, config.pool_bound, config.norm_bound)
    except (InputError, SearchExhausted) as exc:
        raise StageError("select-d", exc) from exc
    problems = qforms.verify_report(f, report)
    if problems:
        raise AssertionError("witness recheck failed: " + "; ".join(problems))
    files["witnesses.txt"] = report.to_text()
    summary.append(
        f"stage select-d ok d={len(report.d_values)} "
        f"witnesses={len(report.pair_witnesses)} rechecked"
    )

    asm_lines = []
    for n in range(1, config.n_cap + 1):
        graphs = decgraph.enumerate_subgroups(n)
        expected = decgraph.count_subgroups(n)
        if len(graphs) != expected:
            raise AssertionError(f"enumerated {len(graphs)} graphs at n={n}, recurrence {expected}")
        valid = 0
        for G in graphs:
            A = assembly.assemble(G)
            if not assembly.validate(A) or len(A.blocks) != 5 * n:
                raise AssertionError(f"assembly of {decgraph.graph_id(G)} is invalid")
            valid += 1
            asm_lines.append(f"{decgraph.graph_id(G)} blocks={len(A.blocks)} valid\n")
        summary.append(f"stage assemble n={n} graphs={len(graphs)} certificates={valid}")
    files["assemblies.txt"] = "".join(asm_lines)

    cert = assembly.vc_lower_bound(config.volume, config.block_volume)
    if cert.exact_class_count < cert.lower_bound:
        raise AssertionError("exact count below the growth bound")
    files["certificate.txt"] = cert.to_text()
    summary.append(f"stage vc-lower n={cert.n} bound={cert.lower_bound} exact={cert.exact_class_count}")

    if config.out_dir is not None:
        out = Path(config.out_dir)
        for name, text in files.items():
            _write(out / name, text)
        if cert.n and cert.graph_manifest is not None:
            _write_graphs(out / "manifest", decgraph.enumerate_subgroups(cert.n))
        _write(out / "summary.txt", "".join(line + "\n" for line in summary))
    return summary


def cmd_pipeline(args) -> int:
    config = RunConfig(
        form=args.form,
        count=args.count,
        pool_bound=args.pool,
        norm_bound=args.norms,
        n_cap=args.n_cap,
        volume=parse_rational(args.volume),
        block_volume=parse_rational(args.block_volume),
        out_dir=Path(args.out) if args.out else None,
    )
    for line in pipeline(config):
        print(line)
    return EXIT_OK


# ---- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="commcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert", help="Hilbert symbol over Q(sqrt5) at a prime ideal")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--at", required=True, help="ram | inert:p | split:p:+ | split:p:-")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("hilbert-q", help="Hilbert symbol over Q")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--place", required=True, help="a prime or 'inf'")
    p.set_defaults(func=cmd_hilbert_q)

    p = sub.add_parser("sqclass", help="local square class")
    p.add_argument("--x", required=True)
    p.add_argument("--at", required=True)
    p.set_defaults(func=cmd_sqclass)

    p = sub.add_parser("admissible", help="signatures and admissibility of a form")
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("hasse", help="Hasse-Witt invariant at a prime ideal")
    p.add_argument("--form", required=True)
    p.add_argument("--at", required=True)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("similar", help="local similarity of two forms")
    p.add_argument("--form1", required=True)
    p.add_argument("--form2", required=True)
    p.add_argument("--at", required=True)
    p.set_defaults(func=cmd_similar)

    p = sub.add_parser("select-d", help="choose d values with pairwise witness primes")
    p.add_argument("--form", default="default")
    p.add_argument("--count", type=_positive_int, default=6)
    p.add_argument("--pool", type=_positive_int, default=50)
    p.add_argument("--norms", type=_positive_int, default=2000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_select_d)

    graphs = sub.add_parser("graphs", help="decorated graph tools")
    gsub = graphs.add_subparsers(dest="graphs_command", required=True)
    p = gsub.add_parser("enumerate")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_graphs_enumerate)
    p = gsub.add_parser("iso")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_graphs_iso)
    p = gsub.add_parser("cover")
    p.add_argument("--base", required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--map", required=True, help="comma-separated 1-based images")
    p.set_defaults(func=cmd_graphs_cover)
    p = gsub.add_parser("count")
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(func=cmd_graphs_count)
    p = gsub.add_parser("bound")
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(func=cmd_graphs_bound)

    p = sub.add_parser("assemble", help="assemble building blocks along a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--check", action="store_true", help="print only the verdict")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("vc-lower", help="commensurability-class lower bound")
    p.add_argument("--volume", required=True)
    p.add_argument("--block-volume", required=True)
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_vc_lower)

    p = sub.add_parser("pipeline", help="run the full construction")
    p.add_argument("--form", default="default")
    p.add_argument("--count", type=_positive_int, default=6)
    p.add_argument("--pool", type=_positive_int, default=50)
    p.add_argument("--norms", type=_positive_int, default=2000)
    p.add_argument("--n-cap", type=_positive_int, default=4)
    p.add_argument("--volume", default="40")
    p.add_argument("--block-volume", default="1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("swdim", help="expected dimension of the monopole moduli space")
    p.add_argument("--c1sq", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.set_defaults(func=cmd_swdim)
    return parser


def run(argv: Sequence[str]) -> int:
    try:
        args = build_parser().parse_args(list(argv))
        return args.func(args)
    except StageError as exc:
        print(f"commcount: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED if isinstance(exc.cause, SearchExhausted) else EXIT_INPUT
    except InputError as exc:
        print(f"commcount: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchExhausted as exc:
        print(f"commcount: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except Exception as exc:  # noqa: BLE001
        print(f"commcount: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))

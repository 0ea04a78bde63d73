"""Command-line interface.

Usage:
  python -m spherecurves invariants "1 -2 3 -1 2 -3"
  python -m spherecurves moves --kind S2_add ""
  python -m spherecurves bfs --moves R1,W3 "" "1 -2 3 -1 2 -3"
  cat words.txt | python -m spherecurves invariants --format csv

Word arguments may be omitted (or given as ``-``) to read one word per line
from stdin. Exit codes: 0 success, 1 domain error (error JSON on stderr),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from .core.config import settings
from .core.errors import CurveError
from .logging_config import configure_logging, log_command
from .schemas import BalanceEntry, BalanceResponse, ErrorPayload, FaceModel, MapSummary, MoveInstanceModel
from .services import corpus as corpus_service
from .services.embedding import balance, build_map, decorate, faces
from .services.gauss import (
    BasedDecoratedWord,
    KeyMode,
    canonical_key,
    connected_sum,
    gauss_from_dt,
    parse,
    to_json,
    to_text,
)
from .services.invariants import invariant_vector
from .services.moves import enumerate_moves, parse_kinds
from .services.search import bfs_reachable

logger = logging.getLogger(__name__)

Records = List[Dict]
Result = Tuple[Records, List[str]]

DEFAULT_FORMATS = {"normalize": "text", "sum": "text", "decorate": "text", "table": "csv"}
LIST_COMMANDS = {"faces", "moves", "enumerate", "table", "lines"}


class UsageError(Exception):
    pass


def _words(args) -> Iterable[BasedDecoratedWord]:
    if args.word is None or args.word == "-":
        for line in sys.stdin:
            line = line.strip()
            if line and not line.startswith("#"):
                yield parse(line)
    else:
        yield parse(args.word)


def _map_summary(w: BasedDecoratedWord) -> MapSummary:
    cmap = build_map(w)
    degrees = sorted(len(orbit) for orbit in cmap.orbits)
    return MapSummary(
        vertices=cmap.vertices,
        edges=cmap.edges,
        faces=cmap.face_count,
        genus=cmap.genus,
        face_degrees=degrees,
        realizable=cmap.genus == 0,
    )


# -- per-word commands ------------------------------------------------------

def cmd_normalize(args) -> Result:
    records, lines = [], []
    for w in _words(args):
        key = canonical_key(w, KeyMode(args.mode))
        records.append({"word": to_json(w), "mode": key.mode.value, "key": list(key.code)})
        lines.append(str(key))
    return records, lines


def cmd_invariants(args) -> Result:
    records, lines = [], []
    for w in _words(args):
        vector = invariant_vector(w)
        row = vector.model_dump() if args.debug else vector.public()
        records.append({"word": to_text(w), **row})
        lines.append(" ".join(f"{k}={v}" for k, v in row.items()))
    return records, lines


def cmd_realizable(args) -> Result:
    records, lines = [], []
    for w in _words(args):
        summary = _map_summary(w)
        records.append({"word": to_json(w), **summary.model_dump()})
        lines.append(f"{str(summary.realizable).lower()} genus={summary.genus}")
    return records, lines


def cmd_faces(args) -> Result:
    records, lines = [], []
    for w in _words(args):
        for i, face in enumerate(faces(w)):
            model = FaceModel(
                degree=face.degree,
                coherent=face.coherent,
                arcs=[arc for arc, _ in face.arcs],
                senses=[sense for _, sense in face.arcs],
                chords=list(face.chords),
            )
            records.append({"word": to_json(w), "face": i, **model.model_dump()})
            kind = "coherent" if face.coherent else "incoherent"
            lines.append(f"face {i}: degree {face.degree} {kind} arcs {model.arcs}")
    return records, lines


def cmd_balance(args) -> Result:
    records, lines = [], []
    for w in _words(args):
        report = balance(w)
        entries = [BalanceEntry(chord=c, lr=lr, rl=rl) for c, (lr, rl) in sorted(report.entries.items())]
        response = BalanceResponse(word=to_json(w), balanced=report.balanced, entries=entries)
        records.append(response.model_dump())
        lines.append(f"{str(report.balanced).lower()} " + " ".join(f"{e.chord}:{e.lr}/{e.rl}" for e in entries))
    return records, lines


def _move_model(m) -> MoveInstanceModel:
    return MoveInstanceModel(kind=m.kind.value, label=m.label, site=list(m.site), result=to_json(m.result))


def cmd_moves(args) -> Result:
    kinds = _kinds(args.kind)
    records, lines = [], []
    for w in _words(args):
        for kind in kinds:
            for m in enumerate_moves(w, kind):
                records.append({"word": to_json(w), **_move_model(m).model_dump()})
                lines.append(f"{m.label} {list(m.site)} -> {m.result}")
    return records, lines


# -- multi-argument commands --------------------------------------------------

def cmd_sum(args) -> Result:
    w = connected_sum(parse(args.first), parse(args.second), args.arc1, args.arc2)
    return [{"word": to_json(w)}], [to_text(w)]


def cmd_decorate(args) -> Result:
    text = args.dt or args.gauss
    try:
        numbers = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"malformed code {text!r}") from None
    gauss = gauss_from_dt(numbers) if args.dt else numbers
    w = decorate(gauss)
    return [{"gauss": list(gauss), "word": to_json(w)}], [to_text(w)]


def cmd_bfs(args) -> Result:
    outcome = bfs_reachable(
        parse(args.source),
        parse(args.target),
        _kinds(args.moves),
        max_n=args.max_crossings,
        max_steps=args.max_steps,
        max_states=args.max_states,
        n_jobs=args.threads,
    )
    model = outcome.to_model()
    lines = [f"status: {model.status}"]
    if model.certificate:
        lines += [f"  {name}: {a} != {b}" for name, (a, b) in sorted(model.certificate.items())]
    for step in model.path or []:
        lines.append(f"  {step.label} {step.site} -> {' '.join(map(str, step.result))}")
    return [model.model_dump()], lines


def _corpus(args) -> List:
    if getattr(args, "corpus", None):
        return corpus_service.load_corpus(Path(args.corpus)).classes
    return corpus_service.enumerate_curves(
        args.max_crossings,
        prime=args.prime,
        reduced=args.reduced,
        strategy=args.strategy,
        identify_mirrors=not args.keep_mirrors,
        n_jobs=args.threads,
    )


def cmd_enumerate(args) -> Result:
    classes = _corpus(args)
    if args.out:
        corpus_service.save_corpus(
            Path(args.out), classes, args.max_crossings, args.prime, args.reduced, args.strategy
        )
    records = [
        {"name": c.name, "n": c.n, "key": c.key, "prime": c.prime, "reduced": c.reduced,
         "best_effort": c.best_effort}
        for c in classes
    ]
    lines = [f"{c.name}\t{c.n}\t{' '.join(map(str, c.key))}" for c in classes]
    return records, lines


def cmd_table(args) -> Result:
    columns = [c.strip() for c in args.columns.split(",")] if args.columns else None
    classes = _corpus(args)
    try:
        df = corpus_service.table(classes, columns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return json.loads(df.to_json(orient="records", force_ascii=False)), df.to_string(index=False).splitlines()


def cmd_lines(args) -> Result:
    families = [f.strip() for f in args.moves.split(",") if f.strip()]
    classes = _corpus(args)
    try:
        lines = corpus_service.move_lines(
            classes,
            families,
            slack=args.slack,
            identify_mirrors=not args.keep_mirrors,
            n_jobs=args.threads,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = []
    for line in lines:
        cert = ", ".join(f"{k} {a}!={b}" for k, (a, b) in sorted(line.certificate.items()))
        text.append(f"{line.move}: {line.source} -- {line.target} [{cert}]")
    return [line.model_dump() for line in lines], text


# -- plumbing -----------------------------------------------------------------

def _kinds(text: str):
    try:
        return parse_kinds(text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(fmt: str, records: Records, lines: List[str], out, as_list: bool = False) -> None:
    if fmt == "text":
        for line in lines:
            out.write(line + "\n")
    elif fmt == "csv":
        frame = pd.json_normalize(records) if records else pd.DataFrame()
        frame.to_csv(out, index=False, lineterminator="\n")
    elif len(records) == 1 and not as_list:
        out.write(json.dumps(records[0], ensure_ascii=False) + "\n")
    else:
        out.write(json.dumps(records, ensure_ascii=False) + "\n")


def _word_parser(sub, name: str, handler: Callable, common, help_text: str):
    p = sub.add_parser(name, parents=[common], help=help_text)
    p.add_argument("word", nargs="?", help="signed-integer word; '-' or omitted reads stdin")
    p.set_defaults(handler=handler)
    return p


def _corpus_options(p) -> None:
    p.add_argument("--max-crossings", type=int, default=settings.DEFAULT_MAX_CROSSINGS)
    p.add_argument("--prime", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--strategy", choices=["dfs", "closure"], default="dfs")
    p.add_argument(
        "--keep-mirrors", action="store_true", help="list a class and its sphere reflection separately"
    )
    p.add_argument("--threads", type=int, default=settings.N_JOBS)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument(
        "--log-level", type=str.upper, default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
    )

    parser = argparse.ArgumentParser(prog="spherecurves", description="Spherical curves as decorated Gauss words")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = _word_parser(sub, "normalize", cmd_normalize, common, "canonical key of a word")
    p.add_argument("--mode", choices=[m.value for m in KeyMode], default=KeyMode.BASED.value)
    p = _word_parser(sub, "invariants", cmd_invariants, common, "invariant vector")
    p.add_argument("--debug", action="store_true", help="include the separate l and r counts")
    _word_parser(sub, "realizable", cmd_realizable, common, "genus and sphere-realizability")
    _word_parser(sub, "faces", cmd_faces, common, "faces of a realizable word")
    _word_parser(sub, "balance", cmd_balance, common, "left/right crossing counts per arrow")
    p = _word_parser(sub, "moves", cmd_moves, common, "list move instances")
    p.add_argument("--kind", required=True, help="comma list of move kinds or families, or 'all'")

    p = sub.add_parser("sum", parents=[common], help="connected sum")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--arc1", type=int, default=0)
    p.add_argument("--arc2", type=int, default=0)
    p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("decorate", parents=[common], help="genus-0 decoration of an undecorated code")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--dt", help="Dowker-Thistlethwaite even code")
    group.add_argument("--gauss", help="undecorated Gauss sequence")
    p.set_defaults(handler=cmd_decorate)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate curve classes")
    _corpus_options(p)
    p.add_argument("--out", help="write the corpus as JSON")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("table", parents=[common], help="invariant table of a corpus")
    _corpus_options(p)
    p.add_argument("--corpus", help="read classes from a saved corpus instead of enumerating")
    p.add_argument("--columns", default=None, help="comma list; default " + settings.CSV_COLUMNS_STR)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("lines", parents=[common], help="class pairs one move apart, up to 1-gons")
    _corpus_options(p)
    p.add_argument("--corpus", help="read classes from a saved corpus instead of enumerating")
    p.add_argument("--moves", default=",".join(corpus_service.LINE_MOVES), help="comma list of move families")
    p.add_argument("--slack", type=int, default=1, help="extra 1-gons allowed before the move")
    p.set_defaults(handler=cmd_lines)

    p = sub.add_parser("bfs", parents=[common], help="search a move sequence between two curves")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--moves", default="all")
    p.add_argument("--max-crossings", type=int, default=settings.MOVE_MAX_CROSSINGS)
    p.add_argument("--max-steps", type=int, default=settings.BFS_MAX_STEPS)
    p.add_argument("--max-states", type=int, default=settings.BFS_MAX_STATES)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(handler=cmd_bfs)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(log_level=args.log_level)
    fmt = args.format or DEFAULT_FORMATS.get(args.command, "json")
    started = time.perf_counter()
    status = 0
    try:
        records, lines = args.handler(args)
        _emit(fmt, records, lines, out, args.command in LIST_COMMANDS)
    except CurveError as exc:
        status = 1
        err.write(ErrorPayload(**exc.to_dict()).model_dump_json() + "\n")
    except UsageError as exc:
        status = 2
        err.write(f"{parser.prog} {args.command}: error: {exc}\n")
    except Exception:
        logger.exception("command %s failed", args.command)
        raise
    finally:
        log_command(args.command, status, (time.perf_counter() - started) * 1000)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line entry point: ``leech <command> [options]``.

Exit status is 0 on success, 1 when a requested verification fails and 2 on
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .blocks import StabilizationError, matrices
from .pattern import pattern_from_name
from .search import SearchBounds, rigidity_census, search_instances
from .words import DepthError, WordError, check_word, factor_set, find_square, leech_prefix, max_depth
from .verify import REPORT_IDS, verify

COMMANDS = ("generate", "factors", "matrices", "rigidity", "search", "squares", "verify")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    depth: int = 5
    max_keyword: int = 7
    pattern: str = "kappa2"
    length: int | None = None
    word: str | None = None
    format: str = "text"
    out: str | None = None
    ids: list[str] = field(default_factory=list)
    all: bool = False
    max_period: int = 500
    timestamp: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if not 0 <= self.depth <= max_depth():
            raise UsageError(f"depth {self.depth} outside 0..{max_depth()} (see LEECH_MAX_DEPTH)")
        if self.command in ("factors", "rigidity") and (self.length is None or self.length < 1):
            raise UsageError(f"{self.command} needs --length >= 1")
        if self.command == "matrices" and not self.word:
            raise UsageError("matrices needs --word")
        if self.word is not None:
            if self.word != self.word.upper():
                raise UsageError(f"words are uppercase over A, B, C; got {self.word!r}")
            try:
                check_word(self.word)
            except WordError as exc:
                raise UsageError(str(exc)) from exc
        if self.command == "search" and self.max_keyword < 1:
            raise UsageError("--max-keyword must be >= 1")
        if self.command == "verify":
            if not self.all and not self.ids:
                raise UsageError("verify needs report ids or --all")
            unknown = [i for i in self.ids if i.upper() not in REPORT_IDS]
            if unknown:
                raise UsageError(f"unknown report ids: {' '.join(unknown)}")


def _emit_json(payload, cfg: RunConfig) -> str:
    if cfg.timestamp:
        payload = {"generated_at": datetime.now(timezone.utc).isoformat(), "result": payload}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _generate(cfg, out, err):
    w = leech_prefix(cfg.depth)
    if cfg.format == "json":
        out.write(_emit_json({"depth": cfg.depth, "length": len(w), "word": w}, cfg))
    else:
        out.write(w + "\n")
    return 0


def _factors(cfg, out, err):
    fs = factor_set(cfg.length, cfg.depth)
    status = "stabilized" if fs.stabilized else "NOT stabilized"
    err.write(f"# {len(fs)} factors of length {fs.length} at depth {fs.depth_used} ({status})\n")
    if cfg.format == "json":
        out.write(_emit_json({
            "length": fs.length, "depth": fs.depth_used, "stabilized": fs.stabilized,
            "count": len(fs), "orbits": fs.orbits(), "members": fs.sorted(),
        }, cfg))
    else:
        out.writelines(f + "\n" for f in fs.sorted())
    return 0


def _matrices(cfg, out, err):
    rep = matrices(cfg.word, cfg.depth)
    if cfg.format == "json":
        out.write(_emit_json(rep.to_dict(), cfg))
    else:
        out.write(rep.to_text() + "\n")
    return 0


def _rigidity(cfg, out, err):
    census = rigidity_census(cfg.length, cfg.depth)
    if cfg.format == "json":
        out.write(_emit_json(census.to_dict(), cfg))
    else:
        out.write(census.summary() + "\n")
        out.write(
            f"{len(census.orbits)} orbits up to rotation, {len(census.rigid_orbits)} rigid; "
            f"nonrigid orbits: {' '.join(census.nonrigid_orbits)} (depth {census.depth})\n"
        )
    return 0


def _search(cfg, out, err):
    p = pattern_from_name(cfg.pattern)
    res = search_instances(p, SearchBounds(cfg.max_keyword, cfg.depth))
    if cfg.format == "json":
        out.write(_emit_json({
            "pattern": p.symbols,
            "max_keyword": cfg.max_keyword,
            "depth": cfg.depth,
            "assignments": [
                {"assignment": {v: s[v] for v in p.variables}, "anchors": res.anchors(s)}
                for s in res.assignments
            ],
            "instances": len(res),
        }, cfg))
    else:
        out.write(
            f"{p} ({p.symbols}), keywords <= {cfg.max_keyword}, depth {cfg.depth}: "
            f"{len(res)} instances, {len(res.assignments)} distinct assignments\n"
        )
        for s in res.assignments:
            anchors = res.anchors(s)
            shown = " ".join(map(str, anchors[:5])) + (" ..." if len(anchors) > 5 else "")
            out.write(f"  {s}  {len(anchors)} anchors: {shown}\n")
    return 0


def _squares(cfg, out, err):
    w = cfg.word if cfg.word else leech_prefix(cfg.depth)
    subject = "word" if cfg.word else f"P^{cfg.depth}(A)"
    sq = find_square(w, cfg.max_period)
    if cfg.format == "json":
        payload = {"subject": subject, "length": len(w), "max_period": cfg.max_period, "square": None}
        if sq:
            payload["square"] = {"position": sq[0], "period": sq[1]}
        out.write(_emit_json(payload, cfg))
    elif sq is None:
        out.write(f"{subject} (length {len(w)}): no square with period <= {cfg.max_period}\n")
    else:
        pos, p = sq
        out.write(f"{subject}: square at position {pos}, period {p}: {w[pos:pos + 2 * p]}\n")
    return 0


def _verify(cfg, out, err):
    ids = list(REPORT_IDS) if cfg.all else [i.upper() for i in cfg.ids]
    reports = [verify(i, cfg.depth) for i in ids]
    if cfg.format == "json":
        out.write(_emit_json([r.to_dict() for r in reports], cfg))
    else:
        for r in reports:
            out.write(r.to_text() + "\n")
        passed = sum(r.passed for r in reports)
        out.write(f"{passed}/{len(reports)} reports passed at depth {cfg.depth}\n")
    return 0 if all(r.passed for r in reports) else 1


_HANDLERS = {
    "generate": _generate,
    "factors": _factors,
    "matrices": _matrices,
    "rigidity": _rigidity,
    "search": _search,
    "squares": _squares,
    "verify": _verify,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg.validate()
        buf = io.StringIO()
        status = _HANDLERS[cfg.command](cfg, buf, err)
    except (UsageError, WordError, DepthError, StabilizationError, KeyError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="ascii") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=5, help="prefix depth n of P^n(A) (default 5)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--timestamp", action="store_true", help="wrap JSON output with a generation time")

    parser = argparse.ArgumentParser(prog="leech", description="Leech sequence factor and pattern toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="write P^n(A)")
    p = sub.add_parser("factors", parents=[common], help="distinct factors of one length")
    p.add_argument("--length", type=int, required=True)
    p = sub.add_parser("matrices", parents=[common], help="matrices and rigidity of a word")
    p.add_argument("--word", required=True)
    p = sub.add_parser("rigidity", parents=[common], help="rigidity census for one length")
    p.add_argument("--length", type=int, required=True)
    p = sub.add_parser("search", parents=[common], help="bounded search for pattern instances")
    p.add_argument("--pattern", default="kappa2", help="kappa1..kappa4 or a word over a, b, c")
    p.add_argument("--max-keyword", type=int, default=7)
    p = sub.add_parser("squares", parents=[common], help="leftmost square in a word or prefix")
    p.add_argument("--word")
    p.add_argument("--max-period", type=int, default=500)
    p = sub.add_parser("verify", parents=[common], help="run verification reports")
    p.add_argument("ids", nargs="*", metavar="ID", help=" ".join(REPORT_IDS))
    p.add_argument("--all", action="store_true")
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    cfg = RunConfig(**{k: v for k, v in args.items() if v is not None})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

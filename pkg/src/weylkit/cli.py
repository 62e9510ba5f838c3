"""The ``weylkit`` command line.

Exit codes: 0 success (or every fixture entry passed), 1 usage or input
error, 2 computation error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .blocks import blocks
from .fixtures import FixtureParseError, check_fixture, format_weight, parse_fixture
from .lattice import LatticeIntegralityViolation
from .linalg import is_prime
from .modules import (
    CharacterCache,
    EnumerationTooLarge,
    build_weyl_module,
    decomposition_numbers,
    ext1_witness,
    hom_dimension,
    is_ambiguous,
    maximal_vectors,
    socle_series,
)
from .roots import Character, RootSystem, UnknownType, Weight, root_system, saturated_below

log = logging.getLogger("weylkit")

REPORT_FORMAT_VERSION = 1
CACHE_FORMAT_VERSION = 1
SIGN_CONVENTION = (
    "extraspecial pairs: x_g = [x_i, x_b]/(r+1), y_g = [y_b, y_i]/(r+1) for g = a_i + b "
    "with i the first simple root such that g - a_i is a root"
)

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# helpers


def parse_weight_arg(text: str, rs: RootSystem) -> Weight:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"weight must be comma-separated integers, got {text!r}") from None
    if len(w) != rs.rank:
        raise UsageError(f"weight {text!r} needs {rs.rank} coordinates for {rs.label}")
    if any(x < 0 for x in w):
        raise UsageError(f"weight {text!r} has a negative coordinate")
    return w


def _root_system(args) -> RootSystem:
    try:
        return root_system(args.type, args.rank)
    except UnknownType as exc:
        raise UsageError(str(exc)) from None


def _prime(args) -> int:
    if not is_prime(args.p):
        raise UsageError(f"-p must be prime, got {args.p}")
    return args.p


def _fmt(w: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def _compact(w: Sequence[int]) -> str:
    return "".join(str(x) for x in w) if all(0 <= x < 10 for x in w) else format_weight(w)


def positive_root_table(rs: RootSystem) -> List[dict]:
    return [
        {"index": k + 1, "simple_coords": list(r.coords), "weight": list(r.weight)}
        for k, r in enumerate(rs.positive_roots)
    ]


# ---------------------------------------------------------------------------
# character cache file


def load_cache(path: Optional[Path]) -> CharacterCache:
    if path is None or not path.exists():
        return CharacterCache()
    try:
        raw = json.loads(path.read_text())
        if raw.get("format_version") != CACHE_FORMAT_VERSION:
            raise ValueError("unsupported cache format version")
        data = {}
        for entry in raw["entries"]:
            key = (str(entry["type"]), int(entry["p"]), tuple(int(x) for x in entry["weight"]))
            data[key] = Character({tuple(w): int(m) for w, m in entry["character"]})
        log.info("loaded %d cached simple characters from %s", len(data), path)
        return CharacterCache(data)
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring corrupt character cache %s (%s); it will be rebuilt", path, exc)
        return CharacterCache()


def store_cache(path: Optional[Path], cache: CharacterCache) -> None:
    if path is None:
        return
    entries = []
    for (label, p, lam), ch in cache.items():
        entries.append(
            {
                "type": label,
                "rank": len(lam),
                "p": p,
                "weight": list(lam),
                "character": [[list(w), m] for w, m in sorted(ch.items())],
            }
        )
    path.write_text(json.dumps({"format_version": CACHE_FORMAT_VERSION, "entries": entries}, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# reports


@dataclass
class StructureReport:
    root_system: str
    rank: int
    p: int
    highest_weight: List[int]
    dimension: int
    character: List[Tuple[List[int], int]]
    maximal_vectors: Optional[List[dict]] = None
    socle_layers: Optional[List[List[List[int]]]] = None
    decomposition_numbers: Optional[List[Tuple[List[int], int]]] = None
    ambiguous: Optional[bool] = None
    positive_roots: List[dict] = field(default_factory=list)
    sign_convention: str = SIGN_CONVENTION
    format_version: int = REPORT_FORMAT_VERSION

    def to_json(self) -> str:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(d, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"Weyl module Delta{_fmt(self.highest_weight)} for {self.root_system}, p = {self.p}",
            f"dimension: {self.dimension}",
            f"weights: {len(self.character)}",
        ]
        if self.maximal_vectors is not None:
            lines.append("")
            lines.append(f"maximal vectors ({sum(m['dimension'] for m in self.maximal_vectors)}):")
            for m in self.maximal_vectors:
                lines.append(f"  {_fmt(m['weight']):>8}  dim {m['dimension']}")
            lines.append(f"ambiguous: {'yes' if self.ambiguous else 'no'}")
        if self.decomposition_numbers is not None:
            lines.append("")
            lines.append("composition factors:")
            for w, d in self.decomposition_numbers:
                lines.append(f"  [Delta : L{_fmt(w)}] = {d}")
        if self.socle_layers is not None:
            lines.append("")
            width = max(len("socle layer"), 1)
            lines.append(f"{'socle layer':>{width}} | highest weights")
            lines.append("-" * (width + 1) + "+" + "-" * 24)
            for k in range(len(self.socle_layers), 0, -1):
                layer = ", ".join(_fmt(w) for w in self.socle_layers[k - 1])
                lines.append(f"{k:>{width}} | {layer}")
        lines.append("")
        lines.append("positive roots: " + " ".join(
            f"a{r['index']}={_fmt(r['weight'])}" for r in self.positive_roots))
        lines.append(f"sign convention: {self.sign_convention}")
        return "\n".join(lines) + "\n"


def build_report(lam, p, rs, cache, *, socle=False, maxvec=False, decompose=False) -> StructureReport:
    m = build_weyl_module(lam, p, rs)
    ch = m.character()
    rep = StructureReport(
        root_system=rs.label,
        rank=rs.rank,
        p=p,
        highest_weight=list(lam),
        dimension=m.dim(),
        character=[[list(w), c] for w, c in sorted(ch.items())],
        positive_roots=positive_root_table(rs),
    )
    if maxvec:
        mv = maximal_vectors(m)
        rep.maximal_vectors = [{"weight": list(w), "dimension": len(k)} for w, k in mv.items()]
        rep.ambiguous = is_ambiguous(m)
    if decompose:
        dec = decomposition_numbers(lam, p, rs, cache)
        rep.decomposition_numbers = [[list(w), d] for w, d in sorted(dec.items(), key=lambda x: (rs.height(x[0]), x[0]), reverse=True)]
    if socle:
        rep.socle_layers = [[list(w) for w in layer] for layer in socle_series(m, cache).layers]
    return rep


# ---------------------------------------------------------------------------
# commands


def cmd_module(args, cache: CharacterCache) -> int:
    rs = _root_system(args)
    p = _prime(args)
    lam = parse_weight_arg(args.weight, rs)
    want_all = not (args.socle or args.maximal_vectors or args.decompose)
    rep = build_report(
        lam, p, rs, cache,
        socle=args.socle or want_all,
        maxvec=args.maximal_vectors or want_all,
        decompose=args.decompose or want_all,
    )
    sys.stdout.write(rep.to_json() if args.json else rep.to_text())
    return EXIT_OK


def _select_block(args, rs, p, below, cache) -> List[Weight]:
    pi = saturated_below(below, rs)
    if args.block == "all":
        return pi
    part = blocks(below, p, rs, cache)
    anchor = (0,) * rs.rank if args.block == "trivial" else tuple((p - 1) * x for x in rs.rho)
    if anchor not in pi:
        raise UsageError(f"the {args.block} weight {_fmt(anchor)} is not below {_fmt(below)}")
    keep = set(part.class_of(anchor))
    return [w for w in pi if w in keep]


def cmd_hom(args, cache: CharacterCache) -> int:
    rs = _root_system(args)
    p = _prime(args)
    below = parse_weight_arg(args.below, rs)
    order = _select_block(args, rs, p, below, cache)
    table = [[hom_dimension(mu, lam, p, rs) if j <= i else None for j, mu in enumerate(order)]
             for i, lam in enumerate(order)]
    if args.json:
        out = {
            "format_version": REPORT_FORMAT_VERSION,
            "root_system": rs.label,
            "p": p,
            "below": list(below),
            "block": args.block,
            "order": [list(w) for w in order],
            "table": table,
            "description": "table[i][j] = dim Hom(Delta(order[j]), Delta(order[i])) for j <= i",
        }
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    labels = [_compact(w) for w in order]
    width = max(3, max(len(s) for s in labels) + 1)
    lines = ["lam\\mu".ljust(width + 2) + "".join(s.rjust(width) for s in labels)]
    for lab, row in zip(labels, table):
        cells = "".join(("." if v is None else str(v)).rjust(width) for v in row)
        lines.append(lab.ljust(width + 2) + cells)
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_blocks(args, cache: CharacterCache) -> int:
    rs = _root_system(args)
    p = _prime(args)
    below = parse_weight_arg(args.below, rs)
    part = blocks(below, p, rs, cache)
    if args.json:
        out = {
            "format_version": REPORT_FORMAT_VERSION,
            "root_system": rs.label,
            "p": p,
            "below": list(below),
            "weights": [list(w) for w in part.weights],
            "classes": [[list(w) for w in c] for c in part.classes],
        }
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    lines = [f"{len(part.classes)} blocks among {len(part.weights)} weights below {_fmt(below)}:"]
    for k, c in enumerate(part.classes, start=1):
        lines.append(f"  {k}: " + " ".join(_fmt(w) for w in c))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_ext(args, cache: CharacterCache) -> int:
    rs = _root_system(args)
    p = _prime(args)
    lam = parse_weight_arg(args.weight, rs)
    mu = parse_weight_arg(args.mu, rs)
    w = ext1_witness(lam, mu, p, rs, cache)
    if args.json:
        out = {
            "format_version": REPORT_FORMAT_VERSION,
            "root_system": rs.label,
            "p": p,
            "lam": list(lam),
            "mu": list(mu),
            "found": w is not None,
        }
        if w is not None:
            out["submodule_dimension"] = w.submodule.dim()
            out["quotient_dimension"] = w.quotient_character.dim
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    if w is None:
        sys.stdout.write(f"no witness found for Ext^1(L{_fmt(lam)}, L{_fmt(mu)}) (this proves nothing)\n")
    else:
        sys.stdout.write(f"Ext^1(L{_fmt(lam)}, L{_fmt(mu)}) != 0: {w.report()}\n")
    return EXIT_OK


def shipped_fixture() -> Path:
    return Path(str(resources.files("weylkit") / "data" / "g2_p2_reference.fix"))


def cmd_verify(args, cache: CharacterCache) -> int:
    path = Path(args.fixture) if args.fixture else shipped_fixture()
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read fixture {path}: {exc}") from None
    try:
        records = parse_fixture(text)
    except FixtureParseError as exc:
        sys.stderr.write(f"{path}: {exc}\n")
        return EXIT_USAGE
    results = check_fixture(records, cache)
    failed = 0
    for rec, problems in results:
        if problems:
            failed += 1
            sys.stdout.write(f"FAIL line {rec.line}: {rec.describe()}\n")
            for msg in problems:
                sys.stdout.write(f"    {msg}\n")
        else:
            sys.stdout.write(f"pass line {rec.line}: {rec.describe()}\n")
    sys.stdout.write(f"{len(results) - failed} passed, {failed} failed, {len(results)} checks\n")
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", default="G2", help="root system type, e.g. G2 or B (default G2)")
    common.add_argument("--rank", type=int, default=None, help="rank, when not part of --type")
    common.add_argument("-p", type=int, default=2, help="prime characteristic (default 2)")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--cache", type=Path, default=None, help="simple-character cache file")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="weylkit", description="Structure of Weyl modules over prime fields.")
    parser.add_argument("--version", action="version", version=f"weylkit {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    m = sub.add_parser("module", parents=[common], help="structure report for one Weyl module")
    m.add_argument("--weight", required=True, help="highest weight a,b,...")
    m.add_argument("--socle", action="store_true", help="socle series")
    m.add_argument("--maximal-vectors", action="store_true", help="maximal-vector inventory")
    m.add_argument("--decompose", action="store_true", help="decomposition numbers")
    m.set_defaults(func=cmd_module)

    h = sub.add_parser("hom", parents=[common], help="table of dim Hom(Delta(mu), Delta(lam))")
    h.add_argument("--below", required=True, help="top of the saturated set")
    h.add_argument("--block", choices=("all", "trivial", "steinberg"), default="all")
    h.set_defaults(func=cmd_hom)

    b = sub.add_parser("blocks", parents=[common], help="linkage classes of a saturated set")
    b.add_argument("--below", required=True)
    b.set_defaults(func=cmd_blocks)

    e = sub.add_parser("ext", parents=[common], help="search for a length-two quotient of Delta(lam)")
    e.add_argument("--weight", required=True, help="lam")
    e.add_argument("--mu", required=True, help="the lower composition factor")
    e.set_defaults(func=cmd_ext)

    v = sub.add_parser("verify", parents=[common], help="check an expectation fixture")
    v.add_argument("--fixture", default=None, help="fixture path (default: the shipped G2, p=2 fixture)")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING if not args.verbose else (logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    cache = load_cache(args.cache)
    try:
        code = args.func(args, cache)
    except UsageError as exc:
        sys.stderr.write(f"weylkit: error: {exc}\n")
        return EXIT_USAGE
    except (EnumerationTooLarge, LatticeIntegralityViolation, ValueError, RecursionError, MemoryError) as exc:
        sys.stderr.write(f"weylkit: computation failed: {exc}\n")
        return EXIT_COMPUTE
    log.info("simple characters: %d computed, %d cache hits", cache.misses, cache.hits)
    store_cache(args.cache, cache)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Line-oriented expectation files and their checker.

Grammar (one record per line; blank lines and ``#`` comments ignored)::

    format_version 1
    <kind> <type> p=<prime> [rank=<n>] [<key>=<value> ...] : <payload>

Weights are written ``a,b`` (no spaces).  Kinds and payloads:

``socle-layers weight=W``
    layers bottom-up separated by ``|``, weights in a layer separated by spaces
``hom-table lam=W``
    ``MU=d`` cells giving ``dim Hom(Delta(MU), Delta(W))``
``max-vector-weights weight=W``
    ``MU=d`` for every weight whose maximal-vector space is nonzero
``simple-dims``
    ``MU=d`` giving ``dim L(MU)``
``blocks below=W``
    classes of the saturated set below ``W`` separated by ``|``
``ambiguity weight=W``
    ``yes`` or ``no``
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .blocks import blocks
from .modules import (
    CharacterCache,
    build_weyl_module,
    hom_dimension,
    is_ambiguous,
    maximal_vectors,
    simple_character,
    socle_series,
)
from .roots import RootSystem, UnknownType, Weight, root_system

FORMAT_VERSION = 1
KINDS = ("socle-layers", "hom-table", "max-vector-weights", "simple-dims", "blocks", "ambiguity")


class FixtureParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_weight(text: str) -> Weight:
    try:
        return tuple(int(x) for x in text.strip().strip("()").split(","))
    except ValueError:
        raise ValueError(f"bad weight {text!r}") from None


def format_weight(w: Weight) -> str:
    return ",".join(str(x) for x in w)


@dataclass
class FixtureRecord:
    line: int
    kind: str
    type_label: str
    rank: Optional[int]
    p: int
    params: Dict[str, Weight]
    payload: object
    source: str = field(repr=False, default="")

    def describe(self) -> str:
        extra = " ".join(f"{k}={format_weight(v)}" for k, v in sorted(self.params.items()))
        return f"{self.kind} {self.type_label} p={self.p}" + (f" {extra}" if extra else "")

    def root_system(self) -> RootSystem:
        return root_system(self.type_label, self.rank)


_REQUIRED = {
    "socle-layers": ("weight",),
    "hom-table": ("lam",),
    "max-vector-weights": ("weight",),
    "simple-dims": (),
    "blocks": ("below",),
    "ambiguity": ("weight",),
}


def _parse_counts(text: str) -> Dict[Weight, int]:
    out: Dict[Weight, int] = {}
    for item in text.split():
        w, _, d = item.partition("=")
        if not d:
            raise ValueError(f"expected WEIGHT=COUNT, got {item!r}")
        out[parse_weight(w)] = int(d)
    return out


def _parse_layers(text: str) -> List[List[Weight]]:
    layers = [[parse_weight(w) for w in chunk.split()] for chunk in text.split("|")]
    if any(not layer for layer in layers):
        raise ValueError("empty layer")
    return layers


def _parse_payload(kind: str, text: str):
    if kind == "socle-layers" or kind == "blocks":
        return _parse_layers(text)
    if kind == "ambiguity":
        word = text.strip()
        if word not in ("yes", "no"):
            raise ValueError("ambiguity payload must be 'yes' or 'no'")
        return word == "yes"
    return _parse_counts(text)


def parse_fixture(text: str) -> List[FixtureRecord]:
    records: List[FixtureRecord] = []
    seen_version = False
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("format_version"):
            parts = line.split()
            if len(parts) != 2 or parts[1] != str(FORMAT_VERSION):
                raise FixtureParseError(n, f"unsupported format version line {line!r}")
            seen_version = True
            continue
        if not seen_version:
            raise FixtureParseError(n, "missing 'format_version' header")
        head, sep, payload = line.partition(":")
        if not sep:
            raise FixtureParseError(n, "missing ':' before the payload")
        words = head.split()
        if len(words) < 3:
            raise FixtureParseError(n, "expected '<kind> <type> p=<prime> ...'")
        kind, type_label = words[0], words[1]
        if kind not in KINDS:
            raise FixtureParseError(n, f"unknown kind {kind!r}")
        p = None
        rank = None
        params: Dict[str, Weight] = {}
        for word in words[2:]:
            key, eq, value = word.partition("=")
            if not eq:
                raise FixtureParseError(n, f"expected key=value, got {word!r}")
            try:
                if key == "p":
                    p = int(value)
                elif key == "rank":
                    rank = int(value)
                else:
                    params[key] = parse_weight(value)
            except ValueError as exc:
                raise FixtureParseError(n, str(exc)) from None
        if p is None:
            raise FixtureParseError(n, "missing p=<prime>")
        missing = [k for k in _REQUIRED[kind] if k not in params]
        if missing:
            raise FixtureParseError(n, f"{kind} needs {', '.join(missing)}")
        try:
            root_system(type_label, rank)
        except UnknownType as exc:
            raise FixtureParseError(n, str(exc)) from None
        try:
            parsed = _parse_payload(kind, payload)
        except ValueError as exc:
            raise FixtureParseError(n, str(exc)) from None
        records.append(FixtureRecord(n, kind, type_label, rank, p, params, parsed, raw))
    return records


# ---------------------------------------------------------------------------
# checking


def _fmt_layer(layer) -> str:
    return " ".join(format_weight(w) for w in sorted(layer, reverse=True))


def _fmt_counts(d: Dict[Weight, int]) -> str:
    return " ".join(f"{format_weight(w)}={c}" for w, c in sorted(d.items(), reverse=True))


def _check_socle(rec: FixtureRecord, cache: CharacterCache) -> List[str]:
    rs = rec.root_system()
    got = socle_series(build_weyl_module(rec.params["weight"], rec.p, rs), cache).layers
    want = rec.payload
    out = []
    if len(got) != len(want):
        out.append(f"layer count: expected {len(want)}, got {len(got)}")
    for k, (a, b) in enumerate(zip(want, got), start=1):
        if Counter(a) != Counter(b):
            out.append(f"layer {k}: expected {_fmt_layer(a)}, got {_fmt_layer(b)}")
    return out


def _check_hom(rec: FixtureRecord, cache: CharacterCache) -> List[str]:
    rs = rec.root_system()
    lam = rec.params["lam"]
    out = []
    for mu, want in rec.payload.items():
        got = hom_dimension(mu, lam, rec.p, rs)
        if got != want:
            out.append(f"Hom(Delta({format_weight(mu)}), Delta({format_weight(lam)})): expected {want}, got {got}")
    return out


def _check_max(rec: FixtureRecord, cache: CharacterCache) -> List[str]:
    rs = rec.root_system()
    got = {w: len(k) for w, k in maximal_vectors(build_weyl_module(rec.params["weight"], rec.p, rs)).items()}
    if got != rec.payload:
        return [f"maximal vectors: expected {_fmt_counts(rec.payload)}, got {_fmt_counts(got)}"]
    return []


def _check_simple(rec: FixtureRecord, cache: CharacterCache) -> List[str]:
    rs = rec.root_system()
    out = []
    for mu, want in rec.payload.items():
        got = simple_character(mu, rec.p, rs, cache).dim
        if got != want:
            out.append(f"dim L({format_weight(mu)}): expected {want}, got {got}")
    return out


def _check_blocks(rec: FixtureRecord, cache: CharacterCache) -> List[str]:
    rs = rec.root_system()
    got = blocks(rec.params["below"], rec.p, rs, cache).as_sets()
    want = [frozenset(c) for c in rec.payload]
    if sorted(map(sorted, got)) != sorted(map(sorted, want)):
        fmt = lambda cs: " | ".join(_fmt_layer(c) for c in cs)
        return [f"blocks: expected {fmt(want)}, got {fmt(got)}"]
    return []


def _check_ambiguity(rec: FixtureRecord, cache: CharacterCache) -> List[str]:
    rs = rec.root_system()
    got = is_ambiguous(build_weyl_module(rec.params["weight"], rec.p, rs))
    if got != rec.payload:
        return [f"ambiguous: expected {'yes' if rec.payload else 'no'}, got {'yes' if got else 'no'}"]
    return []


_CHECKERS: Dict[str, Callable[[FixtureRecord, CharacterCache], List[str]]] = {
    "socle-layers": _check_socle,
    "hom-table": _check_hom,
    "max-vector-weights": _check_max,
    "simple-dims": _check_simple,
    "blocks": _check_blocks,
    "ambiguity": _check_ambiguity,
}


def check_record(rec: FixtureRecord, cache: Optional[CharacterCache] = None) -> List[str]:
    """Recompute one expectation; returns the list of mismatches (empty when it holds)."""
    return _CHECKERS[rec.kind](rec, cache if cache is not None else CharacterCache())


def check_fixture(
    records: List[FixtureRecord], cache: Optional[CharacterCache] = None
) -> List[Tuple[FixtureRecord, List[str]]]:
    cache = cache if cache is not None else CharacterCache()
    return [(rec, check_record(rec, cache)) for rec in records]

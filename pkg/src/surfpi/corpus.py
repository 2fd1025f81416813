"""Line-oriented data files: action tables and identities to replay.

Both files use ``|``-separated fields, one record per line.  Lines starting
with ``#`` and blank lines are kept verbatim so that dumping a loaded file
reproduces it byte for byte.

Table lines::

    location | constraint | level | name | direction | generator | image [| notes]

Identity lines::

    id | location | constraint | level | lhs | rhs | notes

A constraint is a ``;``-separated list.  The first item names the surface
family (``S`` or ``N``); the rest are ranges ``var=lo..hi`` and boolean
conditions, applied left to right.  Notes are ``key: value`` items joined
by `` ; `` (keys ``orig``, ``note``, ``skip``).
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Union

from .errors import CorpusIntegrityError
from .expr import ExprError, int_eval
from .surface import SurfaceKind

TABLES_FILE = "tables.corpus"
IDENTITIES_FILE = "identities.corpus"
SUMS_FILE = "SHA256SUMS"

# sha256 of the shipped data files; update together with the data
PINNED = {
    TABLES_FILE: "dde071958a8f11bbf66d344bfa859d3ea9c29f5f7e1b3c1b90c218edf8f074c8",
    IDENTITIES_FILE: "cbf37ff8ed44a075db91f91066224a10ff4c6326a44898180065034dd83dc07c",
}

LEVELS = ("pi", "pi_plus", "rs")
DIRECTIONS = ("fwd", "bwd")


# -- constraints -----------------------------------------------------------------------

_RANGE = re.compile(r"([a-z]\w*)\s*=\s*(.+?)\s*\.\.\s*(.+)")


@dataclass(frozen=True)
class Constraint:
    text: str
    family: str
    items: tuple

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        parts = [p.strip() for p in text.split(";")]
        if not parts or parts[0] not in ("S", "N"):
            raise CorpusIntegrityError(f"constraint must start with S or N: {text!r}")
        items = []
        for p in parts[1:]:
            if not p:
                continue
            m = _RANGE.fullmatch(p)
            if m:
                items.append(("range", m.group(1), m.group(2), m.group(3)))
            else:
                items.append(("cond", p))
        return cls(text.strip(), parts[0], tuple(items))

    def applies_to(self, kind: SurfaceKind) -> bool:
        return kind.orientable == (self.family == "S")

    def instances(self, kind: SurfaceKind) -> Iterator[dict]:
        """Every parameter binding allowed for ``kind`` (empty if none)."""
        if not self.applies_to(kind):
            return
        yield from self._walk({"g": kind.g, "n": kind.n}, 0)

    def _walk(self, env: dict, k: int) -> Iterator[dict]:
        if k == len(self.items):
            yield dict(env)
            return
        item = self.items[k]
        if item[0] == "cond":
            if int_eval(item[1], env):
                yield from self._walk(env, k + 1)
            return
        _, var, lo, hi = item
        for v in range(int_eval(lo, env), int_eval(hi, env) + 1):
            env[var] = v
            yield from self._walk(env, k + 1)
        env.pop(var, None)


# -- notes -------------------------------------------------------------------------------


def parse_notes(text: str) -> dict[str, str]:
    out = {}
    for item in text.split(" ; "):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition(":")
        if not sep:
            raise CorpusIntegrityError(f"note item without a key: {item!r}")
        out[key.strip()] = value.strip()
    return out


# -- records -----------------------------------------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    location: str
    constraint: Constraint
    level: str
    name: str
    direction: str
    generator: str
    image: str
    notes: str = ""

    @property
    def note_map(self) -> dict[str, str]:
        return parse_notes(self.notes)

    def dump(self) -> str:
        fields = [self.location, self.constraint.text, self.level, self.name,
                  self.direction, self.generator, self.image]
        if self.notes:
            fields.append(self.notes)
        return " | ".join(fields)


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    location: str
    constraint: Constraint
    level: str
    lhs: str
    rhs: str
    notes: str = ""

    @property
    def note_map(self) -> dict[str, str]:
        return parse_notes(self.notes)

    @property
    def skip_reason(self) -> str | None:
        return self.note_map.get("skip")

    @property
    def rhs_forms(self) -> list[str]:
        """The right side may list successive forms separated by ``=``."""
        return [f.strip() for f in self.rhs.split(" = ")]

    def dump(self) -> str:
        return " | ".join([self.id, self.location, self.constraint.text, self.level,
                           self.lhs, self.rhs, self.notes])


Line = Union[str, TableEntry, IdentityRecord]


@dataclass
class Corpus:
    flavor: str  # "tables" or "identities"
    lines: list = field(default_factory=list)

    @property
    def records(self) -> list:
        return [x for x in self.lines if not isinstance(x, str)]

    def dump(self) -> str:
        return "".join((x if isinstance(x, str) else x.dump()) + "\n" for x in self.lines)

    @property
    def checksum(self) -> str:
        return sha256_text(self.dump())


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _split(line: str) -> list[str]:
    return [f.strip() for f in line.split("|")]


def _check_common(level: str, constraint: str, lineno: int) -> Constraint:
    if level not in LEVELS:
        raise CorpusIntegrityError(f"line {lineno}: unknown level {level!r}")
    try:
        return Constraint.parse(constraint)
    except ExprError as e:
        raise CorpusIntegrityError(f"line {lineno}: {e}") from None


def loads(text: str, flavor: str) -> Corpus:
    if flavor not in ("tables", "identities"):
        raise ValueError(f"unknown corpus flavor {flavor!r}")
    corpus = Corpus(flavor)
    seen_ids = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            corpus.lines.append(raw)
            continue
        f = _split(raw)
        if flavor == "tables":
            if len(f) not in (7, 8):
                raise CorpusIntegrityError(f"line {lineno}: expected 7 or 8 fields, got {len(f)}")
            c = _check_common(f[2], f[1], lineno)
            if f[4] not in DIRECTIONS:
                raise CorpusIntegrityError(f"line {lineno}: bad direction {f[4]!r}")
            rec = TableEntry(f[0], c, f[2], f[3], f[4], f[5], f[6], f[7] if len(f) == 8 else "")
        else:
            if len(f) != 7:
                raise CorpusIntegrityError(f"line {lineno}: expected 7 fields, got {len(f)}")
            c = _check_common(f[3], f[2], lineno)
            if f[0] in seen_ids:
                raise CorpusIntegrityError(f"line {lineno}: duplicate id {f[0]!r}")
            seen_ids.add(f[0])
            rec = IdentityRecord(f[0], f[1], c, f[3], f[4], f[5], f[6])
        try:
            rec.note_map
        except CorpusIntegrityError as e:
            raise CorpusIntegrityError(f"line {lineno}: {e}") from None
        corpus.lines.append(rec)
    return corpus


def _read_embedded(name: str) -> str:
    return resources.files("surfpi").joinpath("data").joinpath(name).read_text(encoding="utf-8")


_EMBEDDED: dict[str, Corpus] = {}


def embedded(flavor: str, verify: bool = True) -> Corpus:
    name = TABLES_FILE if flavor == "tables" else IDENTITIES_FILE
    if name not in _EMBEDDED:
        text = _read_embedded(name)
        if verify and sha256_text(text) != PINNED[name]:
            raise CorpusIntegrityError(f"checksum mismatch for embedded {name}")
        _EMBEDDED[name] = loads(text, flavor)
    return _EMBEDDED[name]


def load_dir(path: str | Path) -> tuple[Corpus, Corpus]:
    """Load both files from a directory, checking ``SHA256SUMS`` when present."""
    path = Path(path)
    texts = {}
    for name in (TABLES_FILE, IDENTITIES_FILE):
        try:
            texts[name] = (path / name).read_text(encoding="utf-8")
        except OSError as e:
            raise CorpusIntegrityError(f"cannot read {path / name}: {e}") from None
    sums = path / SUMS_FILE
    if sums.exists():
        expected = {}
        for line in sums.read_text().splitlines():
            if line.strip():
                digest, _, fname = line.partition("  ")
                expected[fname.strip()] = digest.strip()
        for name, text in texts.items():
            if expected.get(name) != sha256_text(text):
                raise CorpusIntegrityError(f"checksum mismatch for {path / name}")
    return loads(texts[TABLES_FILE], "tables"), loads(texts[IDENTITIES_FILE], "identities")


def dump_dir(path: str | Path, tables: Corpus, identities: Corpus) -> list[Path]:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    written = []
    sums = []
    for name, corpus in ((TABLES_FILE, tables), (IDENTITIES_FILE, identities)):
        text = corpus.dump()
        (path / name).write_text(text, encoding="utf-8")
        sums.append(f"{sha256_text(text)}  {name}\n")
        written.append(path / name)
    (path / SUMS_FILE).write_text("".join(sums))
    written.append(path / SUMS_FILE)
    return written

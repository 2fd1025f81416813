"""Mapping-class generator actions as endomorphism tables on surface groups.

Tables are loaded from the data corpus.  Each table lists forward and
backward images for some generators; every other generator is fixed.
Images are stored fully expanded over the level's alphabet, so every
check below is a comparison of freely reduced words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import folding
from .corpus import Corpus, embedded
from .errors import (
    AlphabetMismatch,
    CorpusIntegrityError,
    InvalidName,
    NoRelator,
    SurfPiError,
    UnsupportedLevel,
)
from .expr import EvalContext, fill
from .report import CheckReport
from .surface import SurfaceKind, base_alphabet, plus_alphabet, relator_word
from .words import Alphabet, GenSym, Word, cyclic_reduce, exponent_vector, inv, parse_symbol, rotation_offset, substitute

LEVELS = ("pi", "pi_plus")
DIRECTIONS = ("fwd", "bwd")

ORIENTABLE_TAGS = ("t_c0", "t_c_odd", "t_c_even", "t_d")
NONORIENTABLE_TAGS = ("t_a", "t_b", "Y_mu_a1", "B_r", "B_r0", "t_s")
_NO_ARGS = {"t_c0", "t_b", "Y_mu_a1", "B_r0"}
_ONE_ARG = {"t_c_odd", "t_c_even", "t_d", "t_a", "B_r"}

_NAME = re.compile(
    r"(?P<bare>t_c0|t_b|Y_mu_a1|B_r0)"
    r"|(?P<tag>t_c_odd|t_c_even|t_d|t_a|B_r)(?:(?P<i>\d+)|\((?P<ip>\d+)\))"
    r"|t_s(?:(?P<k>\d+)_(?P<l>\d+)|\((?P<kp>\d+),\s*(?P<lp>\d+)\))"
)


@dataclass(frozen=True, order=True)
class ActionGenName:
    tag: str
    args: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.tag
        return self.tag + "_".join(str(a) for a in self.args)

    @property
    def orientable(self) -> bool:
        return self.tag in ORIENTABLE_TAGS


def parse_action_name(text: str) -> ActionGenName:
    """Read names such as ``t_a1``, ``t_a(1)``, ``B_r0``, ``t_s1_2`` or ``t_s(1,2)``."""
    m = _NAME.fullmatch(text.strip())
    if not m:
        raise InvalidName(f"unknown generator name {text!r}")
    if m.group("bare"):
        return ActionGenName(m.group("bare"))
    if m.group("tag"):
        i = int(m.group("i") or m.group("ip"))
        if m.group("tag") == "B_r" and i == 0:
            return ActionGenName("B_r0")
        return ActionGenName(m.group("tag"), (i,))
    k = int(m.group("k") or m.group("kp"))
    l = int(m.group("l") or m.group("lp"))
    return ActionGenName("t_s", (k, l))


def _as_name(name: ActionGenName | str) -> ActionGenName:
    return name if isinstance(name, ActionGenName) else parse_action_name(name)


def validate(name: ActionGenName | str, kind: SurfaceKind, level: str = "pi") -> ActionGenName:
    """Check that ``name`` is a catalogued generator for ``kind`` at ``level``."""
    name = _as_name(name)
    if level not in LEVELS:
        raise UnsupportedLevel(f"unknown level {level!r}")
    if level == "pi_plus" and kind.orientable:
        raise UnsupportedLevel("the two-sided level exists only for non-orientable surfaces")
    if name.orientable != kind.orientable:
        raise InvalidName(f"{name} does not act on {kind}")
    g, n = kind.g, kind.n
    tag, a = name.tag, name.args
    if tag == "t_c_odd" and a[0] == 1:
        raise InvalidName("t_c_odd1 is not transcribed: its action refers to generators with index 0")
    ok = {
        "t_c0": lambda: g >= 2,
        "t_c_odd": lambda: 2 <= a[0] <= g,
        "t_c_even": lambda: 1 <= a[0] <= g,
        "t_d": lambda: g >= 1 and 1 <= a[0] <= n,
        "t_a": lambda: 1 <= a[0] <= g - 1,
        "t_b": lambda: g >= 4,
        "Y_mu_a1": lambda: g >= 2,
        "B_r": lambda: 1 <= a[0] <= n,
        "B_r0": lambda: True,
        "t_s": lambda: 1 <= a[0] < a[1] <= n,
    }[tag]()
    if not ok:
        raise InvalidName(f"{name} is out of range for {kind}")
    return name


def catalogue(kind: SurfaceKind, level: str = "pi") -> list[ActionGenName]:
    """All generator names with a table for ``kind`` at ``level``."""
    if level == "pi_plus" and kind.orientable:
        raise UnsupportedLevel("the two-sided level exists only for non-orientable surfaces")
    g, n = kind.g, kind.n
    out: list[ActionGenName] = []
    if kind.orientable:
        if g >= 2:
            out.append(ActionGenName("t_c0"))
        out += [ActionGenName("t_c_odd", (i,)) for i in range(2, g + 1)]
        out += [ActionGenName("t_c_even", (i,)) for i in range(1, g + 1)]
        if g >= 1:
            out += [ActionGenName("t_d", (k,)) for k in range(1, n + 1)]
    else:
        out += [ActionGenName("t_a", (i,)) for i in range(1, g)]
        if g >= 4:
            out.append(ActionGenName("t_b"))
        if g >= 2:
            out.append(ActionGenName("Y_mu_a1"))
        out += [ActionGenName("B_r", (k,)) for k in range(1, n + 1)]
        out.append(ActionGenName("B_r0"))
        out += [ActionGenName("t_s", (k, l)) for k in range(1, n + 1) for l in range(k + 1, n + 1)]
    return out


def level_alphabet(kind: SurfaceKind, level: str) -> Alphabet:
    if level == "pi":
        return base_alphabet(kind)
    if level == "pi_plus":
        if kind.orientable:
            raise UnsupportedLevel("the two-sided level exists only for non-orientable surfaces")
        return plus_alphabet(kind)
    raise UnsupportedLevel(f"unknown level {level!r}")


# -- tables ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutoTable:
    name: ActionGenName
    level: str
    kind: SurfaceKind
    alphabet: Alphabet
    forward: Mapping[GenSym, Word] = field(default_factory=dict)
    backward: Mapping[GenSym, Word] = field(default_factory=dict)

    def images(self, direction: str) -> Mapping[GenSym, Word]:
        if direction == "fwd":
            return self.forward
        if direction == "bwd":
            return self.backward
        raise ValueError(f"direction must be 'fwd' or 'bwd', not {direction!r}")

    def with_image(self, direction: str, s: GenSym, w: Word) -> "AutoTable":
        """Copy with one image replaced (used to build negative controls)."""
        fwd, bwd = dict(self.forward), dict(self.backward)
        (fwd if direction == "fwd" else bwd)[s] = w
        return AutoTable(self.name, self.level, self.kind, self.alphabet,
                         MappingProxyType(fwd), MappingProxyType(bwd))


def identity_table(kind: SurfaceKind, level: str = "pi") -> AutoTable:
    A = level_alphabet(kind, level)
    empty = MappingProxyType({})
    return AutoTable(ActionGenName("id"), level, kind, A, empty, empty)


_TABLE_CACHE: dict = {}


def _load_tables(kind: SurfaceKind, level: str, corpus: Corpus) -> dict[ActionGenName, AutoTable]:
    key = (id(corpus), kind, level)
    hit = _TABLE_CACHE.get(key)
    if hit is not None and hit[0] is corpus:
        return hit[1]
    A = level_alphabet(kind, level)
    domain = "base" if level == "pi" else "plus"
    ctx = EvalContext(kind)
    maps: dict[ActionGenName, dict[str, dict[GenSym, Word]]] = {}
    for entry in corpus.records:
        if entry.level != level or not entry.constraint.applies_to(kind):
            continue
        for env in entry.constraint.instances(kind):
            try:
                name = parse_action_name(fill(entry.name, env))
                s = parse_symbol(fill(entry.generator, env))
                value = ctx.evaluate(entry.image, env, domain)
            except SurfPiError as e:
                raise CorpusIntegrityError(f"{entry.location}: {e}") from None
            if s not in A:
                raise CorpusIntegrityError(f"{entry.location}: {s} is not a generator of {kind} at {level}")
            if value.domain != domain:
                raise CorpusIntegrityError(f"{entry.location}: image is not a {domain} word")
            slot = maps.setdefault(name, {"fwd": {}, "bwd": {}})[entry.direction]
            if s in slot and slot[s] != value.word:
                raise CorpusIntegrityError(f"{entry.location}: conflicting images for {s} under {name}")
            slot[s] = value.word
    tables = {}
    for name in catalogue(kind, level):
        m = maps.pop(name, {"fwd": {}, "bwd": {}})
        tables[name] = AutoTable(name, level, kind, A,
                                 MappingProxyType(m["fwd"]), MappingProxyType(m["bwd"]))
    if maps:
        extra = ", ".join(sorted(str(k) for k in maps))
        raise CorpusIntegrityError(f"corpus has tables not catalogued for {kind} at {level}: {extra}")
    _TABLE_CACHE[key] = (corpus, tables)
    return tables


def action_table(name: ActionGenName | str, level: str, kind: SurfaceKind,
                 corpus: Corpus | None = None) -> AutoTable:
    name = validate(name, kind, level)
    corpus = corpus if corpus is not None else embedded("tables")
    return _load_tables(kind, level, corpus)[name]


def all_tables(kind: SurfaceKind, level: str = "pi", corpus: Corpus | None = None) -> list[AutoTable]:
    corpus = corpus if corpus is not None else embedded("tables")
    return list(_load_tables(kind, level, corpus).values())


# -- operations -----------------------------------------------------------------------


def apply(t: AutoTable, direction: str, w: Word) -> Word:
    if w.alphabet is not t.alphabet and w.alphabet != t.alphabet:
        raise AlphabetMismatch(f"word over {w.alphabet.label or 'another alphabet'} given to a {t.level} table for {t.kind}")
    return substitute(w, t.images(direction), t.alphabet)


def verify_inverse(t: AutoTable) -> CheckReport:
    rep = CheckReport("inverse", f"{t.name} {t.level} {t.kind}")
    for w in t.alphabet.generators():
        s = t.alphabet.symbols[w.code[0] - 1]
        if apply(t, "fwd", apply(t, "bwd", w)) != w:
            rep.fail(f"fwd(bwd({s})) != {s}")
        if apply(t, "bwd", apply(t, "fwd", w)) != w:
            rep.fail(f"bwd(fwd({s})) != {s}")
    return rep


@dataclass(frozen=True)
class H1Matrix:
    rows: tuple[tuple[int, ...], ...]
    det: int


def induced_h1_matrix(t: AutoTable) -> H1Matrix:
    """Action on the abelianized free group; column j is the image of generator j."""
    from sympy import Matrix

    cols = [exponent_vector(apply(t, "fwd", w)) for w in t.alphabet.generators()]
    size = len(cols)
    rows = tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))
    det = int(Matrix(rows).det()) if size else 1
    return H1Matrix(rows, det)


def relator_conjugacy_check(t: AutoTable, relator: Word | None = None) -> CheckReport:
    """Both images of the relator must be conjugate to a rotation of R or its inverse."""
    if t.level != "pi":
        raise NoRelator("relator checks apply to base-level tables")
    R = relator if relator is not None else relator_word(t.kind)
    if R is None:
        raise NoRelator(f"{t.kind} has boundary, so its group is free")
    rep = CheckReport("relator", f"{t.name} {t.kind}")
    Rinv = inv(R)
    for direction in DIRECTIONS:
        core, conjugator = cyclic_reduce(apply(t, direction, R))
        off = rotation_offset(core, R)
        which = "R"
        if off is None:
            off = rotation_offset(core, Rinv)
            which = "R^-1"
        if off is None:
            rep.fail(f"{direction} image of the relator is not conjugate to R^+-1: {core}")
            continue
        rep.info[direction] = {"match": which, "offset": off, "conjugator": str(conjugator)}
    return rep


def cross_consistency(name: ActionGenName | str, kind: SurfaceKind,
                      corpus: Corpus | None = None) -> CheckReport:
    """Base-level action on expansions must equal the expansion of the two-sided action."""
    from .plus import expand_plus, plus_expansion_map

    name = validate(name, kind, "pi_plus")
    lo = action_table(name, "pi", kind, corpus)
    hi = action_table(name, "pi_plus", kind, corpus)
    return _cross(lo, hi, plus_expansion_map(kind), lambda w: expand_plus(w, kind))


def _cross(lo: AutoTable, hi: AutoTable, expansion: Mapping[GenSym, Word], expand) -> CheckReport:
    rep = CheckReport("crosslevel", f"{hi.name} {hi.kind}")
    for w in hi.alphabet.generators():
        s = hi.alphabet.symbols[w.code[0] - 1]
        for d in DIRECTIONS:
            if apply(lo, d, expansion[s]) != expand(apply(hi, d, w)):
                rep.fail(f"{d} disagrees on {s}")
    return rep


def closure_check(tables: Sequence[AutoTable], xprime: Sequence[Word]) -> CheckReport:
    """Every image of every word in ``xprime`` must lie in the subgroup they generate."""
    rep = CheckReport("closure", ", ".join(str(t.name) for t in tables) or "(no tables)")
    if not xprime:
        return rep
    A = xprime[0].alphabet
    for t in tables:
        if t.alphabet != A:
            raise AlphabetMismatch(f"table {t.name} is over a different alphabet")
    graph = folding.build(list(xprime), A)
    for t in tables:
        for d in DIRECTIONS:
            for k, x in enumerate(xprime):
                if not folding.member(graph, apply(t, d, x)):
                    rep.fail(f"{t.name} {d} sends generator #{k + 1} ({x}) outside the subgroup")
    return rep


def tables_for(kind: SurfaceKind, level: str, names: Iterable[ActionGenName | str] | None = None,
               corpus: Corpus | None = None) -> list[AutoTable]:
    if names is None:
        return all_tables(kind, level, corpus)
    return [action_table(n, level, kind, corpus) for n in names]

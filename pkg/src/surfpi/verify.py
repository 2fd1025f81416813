"""Batch verification suites and their structured-text report.

Every suite turns into a list of independent tasks keyed by a stable id.
Tasks may run in worker processes; the report is always sorted by id, so
the output depends only on the corpus and the parameters.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__, folding
from .actions import (
    DIRECTIONS,
    all_tables,
    apply,
    catalogue,
    cross_consistency,
    closure_check,
    relator_conjugacy_check,
    verify_inverse,
    action_table,
)
from .corpus import Corpus, IdentityRecord, embedded
from .errors import SurfPiError
from .expr import EvalContext, Value
from .plus import expand_plus, plus_expansion_map, verify_iso
from .surface import SurfaceKind, nonorientable, orientable, orientation_character, relator_word

SUITES = ("replay", "inverses", "relator", "crosslevel", "iso", "closure")
DEFAULT_G = (1, 6)
DEFAULT_N = (0, 4)
_DOMAIN = {"pi": "base", "pi_plus": "plus", "rs": "rs"}


@dataclass
class RecordResult:
    id: str
    status: str  # "pass", "fail" or "skipped"
    checked: int = 0
    details: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    suite: str
    g_range: tuple[int, int]
    n_range: tuple[int, int]
    tables_checksum: str
    identities_checksum: str
    results: list[RecordResult] = field(default_factory=list)
    version: str = __version__

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def ok(self) -> bool:
        return self.count("fail") == 0

    def render(self) -> str:
        out = [
            f"suite: {self.suite}",
            f"version: {self.version}",
            f"tables-checksum: {self.tables_checksum}",
            f"identities-checksum: {self.identities_checksum}",
            f"g-range: {self.g_range[0]}..{self.g_range[1]}",
            f"n-range: {self.n_range[0]}..{self.n_range[1]}",
            "",
        ]
        for r in self.results:
            out.append("[record]")
            out.append(f"id: {r.id}")
            out.append(f"status: {r.status}")
            out.append(f"checked: {r.checked}")
            key = "reason" if r.status == "skipped" else "failure"
            out.extend(f"{key}: {d}" for d in r.details)
            out.append("")
        out += [
            "[summary]",
            f"records: {len(self.results)}",
            f"pass: {self.count('pass')}",
            f"fail: {self.count('fail')}",
            f"skipped: {self.count('skipped')}",
            f"verdict: {'pass' if self.ok else 'fail'}",
        ]
        return "\n".join(out) + "\n"


# -- surfaces in range ---------------------------------------------------------------


def kinds_in_range(g_range, n_range, family: str | None = None) -> list[SurfaceKind]:
    """Both families over the ranges; non-orientable genus starts at 1."""
    out = []
    for g in range(g_range[0], g_range[1] + 1):
        for n in range(n_range[0], n_range[1] + 1):
            if family in (None, "S"):
                out.append(orientable(g, n))
            if family in (None, "N") and g >= 1:
                out.append(nonorientable(g, n))
    return out


# -- worker state --------------------------------------------------------------------

_STATE: dict = {}


def _init(tables: Corpus, identities: Corpus) -> None:
    _STATE["tables"] = tables
    _STATE["identities"] = identities


def _table_fn(kind: SurfaceKind):
    corpus = _STATE["tables"]

    def get(name, level, direction):
        t = action_table(name, level, kind, corpus)
        return lambda w: apply(t, direction, w)

    return get


# -- replay --------------------------------------------------------------------------


def _same(ctx: EvalContext, a: Value, b: Value) -> bool:
    if a.domain == b.domain:
        return a.word == b.word
    return ctx.to_base(a) == ctx.to_base(b)


def replay_record(rec: IdentityRecord, kinds: list[SurfaceKind]) -> RecordResult:
    if rec.skip_reason:
        return RecordResult(rec.id, "skipped", 0, [rec.skip_reason])
    domain = _DOMAIN[rec.level]
    res = RecordResult(rec.id, "pass")
    forms = rec.rhs_forms
    for kind in kinds:
        if not rec.constraint.applies_to(kind):
            continue
        ctx = EvalContext(kind, _table_fn(kind))
        for env in rec.constraint.instances(kind):
            res.checked += 1
            where = f"{kind} " + " ".join(f"{k}={v}" for k, v in sorted(env.items()) if k not in ("g", "n"))
            try:
                lhs = ctx.evaluate(rec.lhs, env, domain)
                for k, form in enumerate(forms, 1):
                    if not _same(ctx, lhs, ctx.evaluate(form, env, domain)):
                        res.details.append(f"{where.strip()}: form {k} differs")
            except SurfPiError as e:
                res.details.append(f"{where.strip()}: {e}")
    if res.details:
        res.status = "fail"
    elif res.checked == 0:
        res.status = "skipped"
        res.details.append("no applicable surface in range")
    return res


# -- table suites --------------------------------------------------------------------


def _from_report(key: str, rep) -> RecordResult:
    return RecordResult(key, "pass" if rep.passed else "fail", 1, list(rep.failures))


def _run(task) -> RecordResult:
    suite, key, kind, arg = task
    try:
        if suite == "replay":
            return replay_record(arg, kind)
        tables = _STATE["tables"]
        if suite == "inverses":
            name, level = arg
            return _from_report(key, verify_inverse(action_table(name, level, kind, tables)))
        if suite == "relator":
            return _from_report(key, relator_conjugacy_check(action_table(arg, "pi", kind, tables)))
        if suite == "crosslevel":
            return _from_report(key, cross_consistency(arg, kind, tables))
        if suite == "iso":
            rep = verify_iso(kind)
            return _from_report(key, rep)
        if suite == "closure":
            return _closure(key, kind, tables)
    except SurfPiError as e:
        return RecordResult(key, "fail", 1, [f"{type(e).__name__}: {e}"])
    raise ValueError(f"unknown suite {suite!r}")


def _closure(key: str, kind: SurfaceKind, tables: Corpus) -> RecordResult:
    """Two-sided generators are closed under every table, and images stay in the kernel."""
    xprime = list(plus_expansion_map(kind).values())
    res = _from_report(key, closure_check(all_tables(kind, "pi", tables), xprime))
    graph = folding.build(xprime)
    g, n = kind.g, kind.n
    if n >= 1:
        r = folding.rank(graph)
        if folding.index(graph) != 2:
            res.details.append(f"index {folding.index(graph)} != 2")
        if r != 2 * g + 2 * n - 3:
            res.details.append(f"rank {r} != {2 * g + 2 * n - 3}")
    for t in all_tables(kind, "pi_plus", tables):
        for d in DIRECTIONS:
            for w in t.alphabet.generators():
                img = expand_plus(apply(t, d, w), kind)
                if not folding.member(graph, img):
                    res.details.append(f"{t.name} {d} {w}: image not in the kernel graph")
                if orientation_character(img) != 0:
                    res.details.append(f"{t.name} {d} {w}: image is one-sided")
    if res.details:
        res.status = "fail"
    return res


def _tasks(suite: str, g_range, n_range, tables: Corpus, identities: Corpus) -> list:
    tasks = []
    if suite == "replay":
        kinds = kinds_in_range(g_range, n_range)
        return [("replay", rec.id, kinds, rec) for rec in identities.records]
    for kind in kinds_in_range(g_range, n_range):
        if suite == "inverses":
            levels = ("pi",) if kind.orientable else ("pi", "pi_plus")
            for level in levels:
                for name in catalogue(kind, level):
                    tasks.append((suite, f"inverses/{level}/{kind}/{name}", kind, (name, level)))
        elif suite == "relator":
            if relator_word(kind) is None:
                continue
            for name in catalogue(kind, "pi"):
                tasks.append((suite, f"relator/{kind}/{name}", kind, name))
        elif suite == "crosslevel":
            if kind.orientable:
                continue
            for name in catalogue(kind, "pi_plus"):
                tasks.append((suite, f"crosslevel/{kind}/{name}", kind, name))
        elif suite == "iso":
            if not kind.orientable and kind.g >= 2:
                tasks.append((suite, f"iso/{kind}", kind, None))
        elif suite == "closure":
            if not kind.orientable and kind.g >= 2:
                tasks.append((suite, f"closure/{kind}", kind, None))
    return tasks


def run_suite(suite: str, g_range=DEFAULT_G, n_range=DEFAULT_N, jobs: int = 1,
              tables: Corpus | None = None, identities: Corpus | None = None) -> VerificationReport:
    """Run one suite, or every suite for ``suite == "all"``."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    tables = tables if tables is not None else embedded("tables")
    identities = identities if identities is not None else embedded("identities")
    names = SUITES if suite == "all" else (suite,)
    tasks = []
    for s in names:
        tasks += _tasks(s, g_range, n_range, tables, identities)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs, initializer=_init, initargs=(tables, identities)) as ex:
            results = list(ex.map(_run, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        _init(tables, identities)
        results = [_run(t) for t in tasks]
    prefixed = []
    for t, r in zip(tasks, results):
        if t[0] == "replay":
            r.id = f"replay/{r.id}"
        prefixed.append(r)
    prefixed.sort(key=lambda r: r.id)
    return VerificationReport(suite, tuple(g_range), tuple(n_range),
                              tables.checksum, identities.checksum, prefixed)

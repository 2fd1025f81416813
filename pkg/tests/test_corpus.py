from collections import Counter

import pytest

from surfpi.corpus import (
    IDENTITIES_FILE,
    PINNED,
    SUMS_FILE,
    TABLES_FILE,
    Constraint,
    _read_embedded,
    dump_dir,
    embedded,
    load_dir,
    loads,
    parse_notes,
    sha256_text,
)
from surfpi.errors import CorpusIntegrityError
from surfpi.surface import nonorientable, orientable


@pytest.mark.parametrize("flavor,name", [("tables", TABLES_FILE), ("identities", IDENTITIES_FILE)])
def test_round_trip_is_exact(flavor, name):
    text = _read_embedded(name)
    c = loads(text, flavor)
    assert c.dump() == text
    assert loads(c.dump(), flavor).dump() == text
    assert sha256_text(text) == PINNED[name] == c.checksum


def test_constraint_instances():
    c = Constraint.parse("N; k=1..n; l=k+1..n")
    assert [(e["k"], e["l"]) for e in c.instances(nonorientable(2, 3))] == [(1, 2), (1, 3), (2, 3)]
    assert list(c.instances(orientable(2, 3))) == []
    c = Constraint.parse("S; g>=2")
    assert len(list(c.instances(orientable(2, 0)))) == 1
    assert list(c.instances(orientable(1, 0))) == []
    with pytest.raises(CorpusIntegrityError):
        Constraint.parse("Q; g>=1")


def test_notes():
    assert parse_notes("orig: S_{x} ; note: why") == {"orig": "S_{x}", "note": "why"}
    with pytest.raises(CorpusIntegrityError):
        parse_notes("no key here")


GOOD_ID = "a.b | loc | N | pi | x1 | x1 | "


@pytest.mark.parametrize("text", [
    "a.b | loc | N | pi | x1 | x1",                      # missing field
    "a.b | loc | N | bogus | x1 | x1 | ",                # level
    "a.b | loc | Z | pi | x1 | x1 | ",                   # family
    GOOD_ID + "\n" + GOOD_ID,                             # duplicate id
    "a.b | loc | N | pi | x1 | x1 | unkeyed note",       # notes
])
def test_bad_identity_records(text):
    with pytest.raises(CorpusIntegrityError):
        loads(text + "\n", "identities")


def test_bad_table_direction():
    with pytest.raises(CorpusIntegrityError):
        loads("loc | N | pi | t_a1 | sideways | x1 | x1\n", "tables")


def test_comments_survive():
    text = "# header\n\n" + GOOD_ID + "\n"
    assert loads(text, "identities").dump() == text


def test_dump_and_load_dir(tmp_path):
    t, i = embedded("tables"), embedded("identities")
    written = dump_dir(tmp_path, t, i)
    assert sorted(p.name for p in written) == sorted([TABLES_FILE, IDENTITIES_FILE, SUMS_FILE])
    t2, i2 = load_dir(tmp_path)
    assert t2.dump() == t.dump() and i2.dump() == i.dump()
    (tmp_path / IDENTITIES_FILE).write_text(i.dump().replace("x1", "x2", 1))
    with pytest.raises(CorpusIntegrityError):
        load_dir(tmp_path)


def test_load_dir_missing(tmp_path):
    with pytest.raises(CorpusIntegrityError):
        load_dir(tmp_path)


# -- coverage of the identity corpus -------------------------------------------------


def test_identity_coverage():
    recs = embedded("identities").records
    assert len(recs) >= 100
    groups = Counter(r.location.split("/")[0] + "/" + r.location.split("/")[1] for r in recs)
    assert groups["orientable/loops"] == 3
    assert groups["orientable/actions"] >= 13
    assert groups["nonorientable/separating"] + groups["orientable/separating"] >= 6
    assert groups["nonorientable/loops"] == 1
    assert groups["nonorientable/actions"] >= 30
    assert groups["plus/presentation"] + groups["plus/isomorphism"] >= 14
    assert groups["plus/loops"] == 4
    assert groups["plus/separating"] >= 5
    assert groups["plus/actions"] >= 55


def test_skipped_record_carries_reason():
    recs = {r.id: r for r in embedded("identities").records}
    assert recs["ori.act.t_c_odd.1"].skip_reason
    assert sum(1 for r in recs.values() if r.skip_reason) == 1


def test_normalized_records_keep_original():
    recs = {r.id: r for r in embedded("identities").records}
    for rid in ["non.act.t_b.x1.fwd", "non.act.t_b.x1.bwd", "non.act.Y_mu.x1.fwd", "non.act.Y_mu.x2.fwd",
                "non.act.Y_mu.x2.bwd", "non.act.B_r.yk.fwd", "non.act.B_r.yk.bwd", "plus.act.t_s.ym.fwd"]:
        assert "orig" in recs[rid].note_map, rid

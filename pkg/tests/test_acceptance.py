"""Acceptance criteria, one test each; every test prints a pass/fail line."""

import random
import time

import pytest

from surfpi import folding
from surfpi.surface import (
    abelian_compatible,
    is_trivial,
    nonorientable,
    orientable,
    pi1_presentation,
)
from surfpi.verify import run_suite
from surfpi.words import Alphabet, Word, conj, exponent_vector, inv, mul, sym

from conftest import random_code, random_word


@pytest.fixture
def verdict(capsys):
    """Record one criterion; the line is printed even when the check fails."""
    lines = []

    def report(n, title, ok, detail):
        lines.append(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
        return ok

    yield report
    with capsys.disabled():
        for line in lines:
            print("\n" + line, end="")


def _suite(name, g, n):
    t0 = time.perf_counter()
    rep = run_suite(name, g, n)
    return rep, time.perf_counter() - t0


def _failures(rep):
    return [f"{r.id}: {d}" for r in rep.results if r.status == "fail" for d in r.details[:1]]


def test_1_identity_replay(verdict):
    rep, dt = _suite("replay", (1, 6), (0, 4))
    ran = rep.count("pass") + rep.count("fail")
    ok = ran >= 100 and rep.ok and dt < 10.0
    verdict(1, "identity replay", ok,
            f"{rep.count('pass')}/{ran} records pass, {rep.count('skipped')} skipped, {dt:.2f}s")
    assert ran >= 100, ran
    assert rep.ok, _failures(rep)
    assert dt < 10.0


def test_2_inverse_composition(verdict):
    rep, dt = _suite("inverses", (1, 6), (0, 4))
    ok = rep.ok and rep.count("pass") > 0
    verdict(2, "inverse composition", ok, f"{rep.count('pass')} tables pass, {rep.count('fail')} fail, {dt:.2f}s")
    assert ok, _failures(rep)


def test_3_relator_preservation(verdict):
    rep, dt = _suite("relator", (2, 6), (0, 0))
    kinds = {r.id.split("/")[1] for r in rep.results}
    ok = rep.ok and len(kinds) == 10
    verdict(3, "relator preservation", ok,
            f"{rep.count('pass')} tables on {len(kinds)} closed surfaces, {rep.count('fail')} fail, {dt:.2f}s")
    assert ok, _failures(rep)


def test_4_cross_level(verdict):
    rep, dt = _suite("crosslevel", (1, 6), (0, 4))
    ok = rep.ok and rep.count("pass") > 0
    verdict(4, "cross-level consistency", ok,
            f"{rep.count('pass')} generators pass, {rep.count('fail')} fail, {dt:.2f}s")
    assert ok, _failures(rep)


def test_5_isomorphism(verdict):
    rep, dt = _suite("iso", (2, 8), (0, 4))
    closed = [r for r in rep.results if r.id.endswith(",0")]
    ok = rep.ok and len(rep.results) == 35 and len(closed) == 7
    verdict(5, "isomorphism suite", ok,
            f"{rep.count('pass')}/35 surfaces pass, relator images checked on {len(closed)} closed ones, {dt:.2f}s")
    assert ok, _failures(rep)


def test_6_subgroup_arithmetic(verdict):
    rep, dt = _suite("closure", (2, 6), (1, 4))
    ok = rep.ok and len(rep.results) == 20
    verdict(6, "subgroup arithmetic", ok,
            f"index 2, rank 2g+2n-3 and kernel membership on {rep.count('pass')}/20 surfaces, {dt:.2f}s")
    assert ok, _failures(rep)


def _conjugate_product(rng, p):
    w = p.alphabet.identity()
    for _ in range(rng.randint(1, 3)):
        c = random_word(rng, p.alphabet, 6)
        w = mul(w, conj(c, p.relator if rng.random() < 0.5 else inv(p.relator)))
    return w


def test_7_word_problem_agreement(verdict):
    rng = random.Random(7)
    t0 = time.perf_counter()
    bad = []
    counts = {}
    for kind in (orientable(2, 0), nonorientable(4, 0)):
        p = pi1_presentation(kind)
        trivial = certified = 0
        while trivial < 10_000:
            w = _conjugate_product(rng, p)
            trivial += 1
            if not is_trivial(w, p):
                bad.append(f"{kind}: trivial word {w} rejected")
        while certified < 10_000:
            w = random_word(rng, p.alphabet, 16)
            if not any(exponent_vector(w)) or abelian_compatible(w, p):
                continue
            certified += 1
            if is_trivial(w, p):
                bad.append(f"{kind}: certified nontrivial word {w} accepted")
        counts[str(kind)] = (trivial, certified)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60.0
    detail = ", ".join(f"{k} {a}+{b} words" for k, (a, b) in counts.items())
    verdict(7, "word-problem oracle agreement", ok, f"{detail}, {len(bad)} disagreements, {dt:.2f}s")
    assert not bad, bad[:5]
    assert dt < 60.0


# -- criterion 8 -------------------------------------------------------------------


def _reduce_random_order(code, rng):
    """Cancel adjacent inverse pairs in random order until none are left."""
    code = list(code)
    while True:
        spots = [i for i in range(len(code) - 1) if code[i] == -code[i + 1]]
        if not spots:
            return tuple(code)
        i = rng.choice(spots)
        del code[i : i + 2]


def _coset_action(rng, rank, k):
    """Random transitive permutation action of the free group on k points."""
    while True:
        perms = [rng.sample(range(k), k) for _ in range(rank)]
        seen, todo = {0}, [0]
        while todo:
            v = todo.pop()
            for p in perms:
                for t in (p[v], p.index(v)):
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
        if len(seen) == k:
            return perms


def _act(perms, code, v=0):
    for c in code:
        p = perms[abs(c) - 1]
        v = p[v] if c > 0 else p.index(v)
    return v


def _stabilizer_generators(A, perms, k):
    """Schreier generators of the stabilizer of point 0."""
    path = {0: ()}
    todo = [0]
    while todo:
        v = todo.pop(0)
        for a in range(1, len(perms) + 1):
            for c in (a, -a):
                t = _act(perms, (c,), v)
                if t not in path:
                    path[t] = path[v] + (c,)
                    todo.append(t)
    gens = []
    for v in range(k):
        for a in range(1, len(perms) + 1):
            t = _act(perms, (a,), v)
            w = Word(A, path[v] + (a,) + tuple(-c for c in reversed(path[t])))
            if w.code:
                gens.append(w)
    return gens


def test_8_core_algebra(verdict):
    rng = random.Random(8)
    A = Alphabet([sym("x", i) for i in range(1, 4)])
    r = len(A)
    e = A.identity()
    counts = dict.fromkeys(("confluence", "axioms", "additivity", "folding", "nielsen-schreier"), 0)
    bad = []
    t0 = time.perf_counter()

    for _ in range(30_000):
        code = random_code(rng, r, rng.randint(0, 24))
        if Word(A, code).code != _reduce_random_order(code, rng):
            bad.append(("confluence", code))
        counts["confluence"] += 1

    for _ in range(30_000):
        a, b, c = (random_word(rng, A, 10) for _ in range(3))
        ok = (mul(mul(a, b), c) == mul(a, mul(b, c)) and mul(a, inv(a)) == e and mul(inv(a), a) == e
              and mul(a, e) == a and mul(e, a) == a and inv(inv(a)) == a and inv(mul(a, b)) == mul(inv(b), inv(a)))
        if not ok:
            bad.append(("axioms", a, b, c))
        counts["axioms"] += 1

    for _ in range(30_000):
        a, b = random_word(rng, A, 12), random_word(rng, A, 12)
        va, vb, vab = exponent_vector(a), exponent_vector(b), exponent_vector(mul(a, b))
        if vab != tuple(x + y for x, y in zip(va, vb)) or exponent_vector(inv(a)) != tuple(-x for x in va):
            bad.append(("additivity", a, b))
        counts["additivity"] += 1

    for _ in range(6_000):
        gens = [random_word(rng, A, 8) for _ in range(rng.randint(1, 4))]
        g = folding.build(gens, A)
        shuffled = [inv(w) if rng.random() < 0.5 else w for w in rng.sample(gens, len(gens))]
        h = folding.build(shuffled, A)
        if g.out != h.out or not g.is_folded() or any(not folding.member(g, w) for w in gens):
            bad.append(("folding", gens))
        counts["folding"] += 1

    for _ in range(4_000):
        k = rng.randint(1, 6)
        perms = _coset_action(rng, r, k)
        g = folding.build(_stabilizer_generators(A, perms, k), A)
        ok = folding.index(g) == k and folding.rank(g) == k * (r - 1) + 1
        for _ in range(5):
            w = random_word(rng, A, 10)
            ok = ok and folding.member(g, w) == (_act(perms, w.code) == 0)
        basis = folding.basis(g)
        ok = ok and len(basis) == folding.rank(g) and folding.build(basis, A).out == g.out
        if not ok:
            bad.append(("nielsen-schreier", perms))
        counts["nielsen-schreier"] += 1

    dt = time.perf_counter() - t0
    total = sum(counts.values())
    ok = not bad and total >= 100_000
    verdict(8, "core algebra properties", ok,
            f"{total} cases ({', '.join(f'{k} {v}' for k, v in counts.items())}), {len(bad)} failures, {dt:.2f}s")
    assert total >= 100_000
    assert not bad, bad[:3]

"""The two-sided subgroup: expansions, Reidemeister-Schreier rewriting, phi and psi."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import IndexOutOfRange, InvalidKind, InvalidSymbol, RequiresClosed
from .report import CheckReport
from .surface import (
    SurfaceKind,
    base_alphabet,
    plus_alphabet,
    plus_presentation,
    relator_word,
    y_loop,
    z_loop,
)
from .words import Alphabet, GenSym, Word, inv, mul, product, substitute, sym


def _need_nonorientable(kind: SurfaceKind) -> None:
    if kind.orientable:
        raise InvalidKind(f"{kind} is orientable")


def plus_generator_expansion(s: GenSym, kind: SurfaceKind) -> Word:
    """Base-alphabet word of a plus-level symbol (X_ij, y_k or z_k)."""
    _need_nonorientable(kind)
    B = base_alphabet(kind)
    g, n = kind.g, kind.n
    if s.family == "X":
        i, j = s.indices
        if not (1 <= i <= g and 1 <= j <= g):
            raise InvalidSymbol(f"{s} needs indices in 1..{g}")
        return mul(B.generator(sym("x", i)), B.generator(sym("x", j)))
    if s.family in ("y", "z") and len(s.indices) == 1 and 1 <= s.indices[0] <= n - 1:
        k = s.indices[0]
        return y_loop(kind, k) if s.family == "y" else z_loop(kind, k)
    raise InvalidSymbol(f"{s} is not a plus-level symbol for {kind}")


@lru_cache(maxsize=None)
def plus_expansion_map(kind: SurfaceKind) -> dict[GenSym, Word]:
    return {s: plus_generator_expansion(s, kind) for s in plus_alphabet(kind)}


def expand_plus(w: Word, kind: SurfaceKind) -> Word:
    return substitute(w, plus_expansion_map(kind), base_alphabet(kind), total=True)


# -- derived plus-level words ------------------------------------------------------


def pair_word(kind: SurfaceKind, i: int, j: int) -> Word:
    """x_ij written in the plus generators, by induction on |i - j|."""
    A = plus_alphabet(kind)
    g = kind.g
    if not (1 <= i <= g and 1 <= j <= g):
        raise IndexOutOfRange(f"x_{i}{j} needs indices in 1..{g}")
    if i == j or j == i + 1:
        return A.generator(sym("X", i, j))
    if i < j:
        return product(A, [pair_word(kind, i, j - 1),
                           inv(A.generator(sym("X", j - 1, j - 1))),
                           A.generator(sym("X", j - 1, j))])
    return product(A, [A.generator(sym("X", i, i)), inv(pair_word(kind, j, i)),
                       A.generator(sym("X", j, j))])


def plus_y(kind: SurfaceKind, k: int) -> Word:
    A = plus_alphabet(kind)
    if not 1 <= k <= kind.n:
        raise IndexOutOfRange(f"y index {k} outside 1..{kind.n}")
    if k < kind.n:
        return A.generator(sym("y", k))
    parts = [A.generator(sym("X", j, j)) for j in range(1, kind.g + 1)]
    parts += [A.generator(sym("y", l)) for l in range(1, kind.n)]
    return inv(product(A, parts))


def plus_z(kind: SurfaceKind, k: int) -> Word:
    A = plus_alphabet(kind)
    g = kind.g
    if not 1 <= k <= kind.n:
        raise IndexOutOfRange(f"z index {k} outside 1..{kind.n}")
    if k < kind.n:
        return A.generator(sym("z", k))
    parts = [pair_word(kind, g, 1)]
    parts += [A.generator(sym("X", i, i + 1)) for i in range(1, g)]
    parts += [A.generator(sym("z", l)) for l in range(1, kind.n)]
    return inv(product(A, parts))


def plus_sep_loop(kind: SurfaceKind, case: str, h: int = 0, m: int = 0) -> Word:
    """Plus-level words for the separating and two-sided loop types."""
    A = plus_alphabet(kind)
    g, n = kind.g, kind.n

    def X(i, j):
        return A.generator(sym("X", i, j))

    ys = [plus_y(kind, j) for j in range(1, m + 1)] if case in "de" else []
    if case in "de" and not 0 <= m <= n:
        raise IndexOutOfRange(f"m={m} outside 0..{n}")
    if case == "b":
        if g < 2:
            raise IndexOutOfRange("case b needs genus at least 2")
        return X(1, 2)
    if case == "c":
        if g % 2 or g < 2:
            raise IndexOutOfRange("case c only occurs for even genus")
        # x1 x2 ... xg regrouped in disjoint pairs
        return product(A, (X(2 * t - 1, 2 * t) for t in range(1, g // 2 + 1)))
    if case == "d":
        if not 1 <= h <= g - 1:
            raise IndexOutOfRange(f"h={h} outside 1..{g - 1}")
        return product(A, [X(j, j) for j in range(1, h + 1)] + ys)
    if case == "e":
        if not 0 <= 2 * h <= g - 1:
            raise IndexOutOfRange(f"h={h} outside 0..{(g - 1) // 2}")
        if h == 0:
            return product(A, ys)
        parts = [X(2 * t - 1, 2 * t) for t in range(1, h + 1)]
        parts.append(inv(X(2 * h, 2 * h + 1)))
        parts += [inv(X(t, t + 1)) for t in range(2 * h - 1, 0, -1)]
        parts += [X(2 * t, 2 * t + 1) for t in range(1, h + 1)]
        return product(A, parts + ys)
    raise IndexOutOfRange(f"unknown case {case!r}")


# -- Reidemeister-Schreier with transversal {1, x_g} ------------------------------


@dataclass(frozen=True)
class RSAlphabet:
    kind: SurfaceKind
    alphabet: Alphabet
    expansion: dict  # GenSym -> base Word

    def expand(self, w: Word) -> Word:
        return substitute(w, self.expansion, base_alphabet(self.kind), total=True)


def _coset(w_code, syms) -> int:
    return sum(1 for c in w_code if syms[abs(c) - 1].family == "x") % 2


def _schreier_table(kind: SurfaceKind):
    """Schreier generator t s rep(t s)^-1 for every coset rep t and base letter s."""
    B = base_alphabet(kind)
    xg = B.generator(sym("x", kind.g))
    reps = [B.identity(), xg]
    table = {}
    for t, rep in enumerate(reps):
        for k, s in enumerate(B.symbols):
            ts = mul(rep, B.generator(s))
            target = _coset(ts.code, B.symbols)
            table[(t, k + 1)] = (mul(ts, inv(reps[target])), target)
    return table


def _name_schreier(w: Word, kind: SurfaceKind) -> GenSym | None:
    B = base_alphabet(kind)
    g = kind.g
    if not w.code:
        return None
    xg = B.generator(sym("x", g))
    for i in range(1, g):
        if w == mul(B.generator(sym("x", i)), inv(xg)):
            return sym("u", i)
    for j in range(1, g + 1):
        if w == mul(xg, B.generator(sym("x", j))):
            return sym("v", j)
    for k in range(1, kind.n):
        yk = B.generator(sym("y", k))
        if w == yk:
            return sym("y", k)
        if w == mul(mul(xg, yk), inv(xg)):
            return sym("z", k)
    raise AssertionError(f"unexpected Schreier generator {w}")


@lru_cache(maxsize=None)
def rs_generators(kind: SurfaceKind) -> RSAlphabet:
    _need_nonorientable(kind)
    expansion = {}
    for w, _ in _schreier_table(kind).values():
        s = _name_schreier(w, kind)
        if s is not None:
            expansion[s] = w
    A = Alphabet.canonical(expansion, f"{kind}rs")
    return RSAlphabet(kind, A, expansion)


def rs_rewrite(w: Word, kind: SurfaceKind) -> Word:
    """Rewrite a base word of even orientation parity in the RS generators."""
    rs = rs_generators(kind)
    table = _schreier_table(kind)
    A = rs.alphabet
    letter = {}
    for key, (sw, _) in table.items():
        s = _name_schreier(sw, kind)
        letter[key] = None if s is None else A.index(s) + 1
    coset = 0
    out = []
    for c in w.code:
        if c > 0:
            gen = letter[(coset, c)]
            coset = table[(coset, c)][1]
            if gen:
                out.append(gen)
        else:
            # t s^-1 = (t' s)^-1 ... with t' = rep(t s^-1)
            prev = 1 - coset if base_alphabet(kind).symbols[-c - 1].family == "x" else coset
            gen = letter[(prev, -c)]
            coset = prev
            if gen:
                out.append(-gen)
    if coset != 0:
        raise ValueError("word is not in the two-sided subgroup")
    return Word(A, out)


def rs_relators(kind: SurfaceKind) -> tuple[Word, Word]:
    if kind.n != 0:
        raise RequiresClosed("the rewritten relators exist only for closed surfaces")
    _need_nonorientable(kind)
    R = relator_word(kind)
    B = base_alphabet(kind)
    xg = B.generator(sym("x", kind.g))
    return rs_rewrite(R, kind), rs_rewrite(mul(mul(xg, R), inv(xg)), kind)


def standard_rs_relators(kind: SurfaceKind) -> tuple[Word, Word]:
    """u1 v1 ... u_{g-1} v_{g-1} v_g and v1 u1 ... v_{g-1} u_{g-1} v_g."""
    A = rs_generators(kind).alphabet
    g = kind.g
    u = lambda i: A.generator(sym("u", i))
    v = lambda j: A.generator(sym("v", j))
    first = product(A, [w for i in range(1, g) for w in (u(i), v(i))] + [v(g)])
    second = product(A, [w for i in range(1, g) for w in (v(i), u(i))] + [v(g)])
    return first, second


# -- the isomorphisms -------------------------------------------------------------


@dataclass(frozen=True)
class IsoPair:
    kind: SurfaceKind
    phi: dict  # plus GenSym -> RS word
    psi: dict  # RS GenSym -> plus word

    def apply_phi(self, w: Word) -> Word:
        return substitute(w, self.phi, rs_generators(self.kind).alphabet, total=True)

    def apply_psi(self, w: Word) -> Word:
        return substitute(w, self.psi, plus_alphabet(self.kind), total=True)


@lru_cache(maxsize=None)
def iso_pair(kind: SurfaceKind) -> IsoPair:
    _need_nonorientable(kind)
    g, n = kind.g, kind.n
    R = rs_generators(kind).alphabet
    P = plus_alphabet(kind)
    u = lambda i: R.generator(sym("u", i))
    v = lambda j: R.generator(sym("v", j))
    X = lambda i, j: P.generator(sym("X", i, j))

    phi = {}
    for i in range(1, g):
        phi[sym("X", i, i + 1)] = mul(u(i), v(i + 1))
    for j in range(1, g):
        phi[sym("X", j, j)] = mul(u(j), v(j))
    phi[sym("X", g, g)] = v(g)

    psi = {}
    for i in range(1, g):
        parts = []
        for t in range(i, g):
            parts += [X(t, t + 1), inv(X(t + 1, t + 1))]
        psi[sym("u", i)] = product(P, parts)
    for j in range(1, g + 1):
        parts = [X(g, g)]
        for t in range(g - 1, j - 1, -1):
            parts += [inv(X(t, t + 1)), X(t, t)]
        psi[sym("v", j)] = product(P, parts)

    for k in range(1, n):
        for f in ("y", "z"):
            phi[sym(f, k)] = R.generator(sym(f, k))
            psi[sym(f, k)] = P.generator(sym(f, k))
    return IsoPair(kind, phi, psi)


def verify_iso(kind: SurfaceKind, pair: IsoPair | None = None) -> CheckReport:
    """Check psi.phi = id, phi.psi = id, the relator images and expansion compatibility."""
    pair = pair or iso_pair(kind)
    rep = CheckReport("iso", str(kind))
    rs = rs_generators(kind)
    P = plus_alphabet(kind)

    for s in P:
        w = P.generator(s)
        if pair.apply_psi(pair.apply_phi(w)) != w:
            rep.fail(f"(a) psi(phi({s})) != {s}")
    for s in rs.alphabet:
        w = rs.alphabet.generator(s)
        if pair.apply_phi(pair.apply_psi(w)) != w:
            rep.fail(f"(a) phi(psi({s})) != {s}")

    if kind.n == 0:
        shown = standard_rs_relators(kind)
        rewritten = rs_relators(kind)
        for k, (r, target) in enumerate(zip(plus_presentation(kind).relators, shown), 1):
            if pair.apply_phi(r) != target:
                rep.fail(f"(b) phi(relator {k}) = {pair.apply_phi(r)} differs from {target}")
            if rewritten[k - 1] != target:
                rep.fail(f"(b) rewritten relator {k} = {rewritten[k - 1]} differs from {target}")
            if pair.apply_psi(target) != r:
                rep.fail(f"(b) psi(RS relator {k}) differs from plus relator {k}")
    else:
        rep.skipped.append("(b) no relators when n >= 1")

    for s in P:
        if rs.expand(pair.phi[s]) != plus_generator_expansion(s, kind):
            rep.fail(f"(c) expansion of phi({s}) differs from the expansion of {s}")
    return rep

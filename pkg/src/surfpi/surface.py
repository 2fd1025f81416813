"""Surface descriptors, fundamental group presentations and the word problem."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    IndexOutOfRange,
    InvalidKind,
    InvalidLoopName,
    UnsupportedPresentation,
    WrongAlphabet,
)
from .words import (
    Alphabet,
    GenSym,
    Word,
    comm,
    exponent_vector,
    inv,
    mul,
    product,
    rotations,
    sym,
)


@dataclass(frozen=True, order=True)
class SurfaceKind:
    orientable: bool
    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise InvalidKind(f"genus and boundary count must be nonnegative: {self}")
        if not self.orientable and self.g < 1:
            raise InvalidKind("a non-orientable surface needs genus at least 1")

    @property
    def closed(self) -> bool:
        return self.n == 0

    def __str__(self) -> str:
        return f"{'S' if self.orientable else 'N'}:{self.g},{self.n}"


def parse_surface(text: str) -> SurfaceKind:
    m = re.fullmatch(r"\s*([SN])\s*:\s*(\d+)\s*,\s*(\d+)\s*", text)
    if not m:
        raise InvalidKind(f"bad surface descriptor {text!r}; expected S:g,n or N:g,n")
    return SurfaceKind(m.group(1) == "S", int(m.group(2)), int(m.group(3)))


def orientable(g: int, n: int) -> SurfaceKind:
    return SurfaceKind(True, g, n)


def nonorientable(g: int, n: int) -> SurfaceKind:
    return SurfaceKind(False, g, n)


# -- alphabets -----------------------------------------------------------------


@lru_cache(maxsize=None)
def base_alphabet(kind: SurfaceKind) -> Alphabet:
    g, n = kind.g, kind.n
    if kind.orientable:
        syms = [sym("a", i) for i in range(1, g + 1)]
        syms += [sym("b", i) for i in range(1, g + 1)]
        syms += [sym("c", k) for k in range(1, n)]
    else:
        syms = [sym("x", i) for i in range(1, g + 1)]
        syms += [sym("y", k) for k in range(1, n)]
    return Alphabet.canonical(syms, str(kind))


@lru_cache(maxsize=None)
def plus_alphabet(kind: SurfaceKind) -> Alphabet:
    _need_nonorientable(kind)
    g, n = kind.g, kind.n
    syms = [sym("X", i, i + 1) for i in range(1, g)]
    syms += [sym("X", j, j) for j in range(1, g + 1)]
    syms += [sym("y", k) for k in range(1, n)]
    syms += [sym("z", k) for k in range(1, n)]
    return Alphabet.canonical(syms, f"{kind}+")


def _need_nonorientable(kind: SurfaceKind) -> None:
    if kind.orientable:
        raise InvalidKind(f"{kind} is orientable; this needs a non-orientable surface")


def relator_word(kind: SurfaceKind) -> Word | None:
    """The defining relator, or None when the group is free (or trivial)."""
    if kind.n > 0:
        return None
    A = base_alphabet(kind)
    if kind.orientable:
        if kind.g == 0:
            return None
        return product(A, (comm(A.generator(sym("a", i)), A.generator(sym("b", i)))
                           for i in range(1, kind.g + 1)))
    return Word(A, [c for k in range(1, kind.g + 1) for c in (k, k)])


# -- presentations ---------------------------------------------------------------


@dataclass(frozen=True)
class SurfacePresentation:
    kind: SurfaceKind
    alphabet: Alphabet
    relator: Word | None
    _symmetrized: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    @property
    def is_free(self) -> bool:
        return self.relator is None

    def symmetrized(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Map each majority prefix of a relator rotation to its replacement.

        For a rotation ``r = u v`` with ``|u| = L//2 + 1`` the entry is
        ``u -> v^-1``, which is strictly shorter.
        """
        if self._symmetrized is None:
            table = {}
            if self.relator is not None:
                L = len(self.relator)
                k = L // 2 + 1
                for r in rotations(self.relator) + rotations(inv(self.relator)):
                    c = r.code
                    table.setdefault(c[:k], tuple(-x for x in reversed(c[k:])))
            object.__setattr__(self, "_symmetrized", table)
        return self._symmetrized


@dataclass(frozen=True)
class PlusPresentation:
    """Presentation of the two-sided subgroup; closed surfaces carry two relators."""

    kind: SurfaceKind
    alphabet: Alphabet
    relators: tuple[Word, ...]

    @property
    def is_free(self) -> bool:
        return not self.relators


@lru_cache(maxsize=None)
def pi1_presentation(kind: SurfaceKind) -> SurfacePresentation:
    if not isinstance(kind, SurfaceKind):
        raise InvalidKind(f"not a surface kind: {kind!r}")
    return SurfacePresentation(kind, base_alphabet(kind), relator_word(kind))


def X(A: Alphabet, i: int, j: int) -> Word:
    return A.generator(sym("X", i, j))


@lru_cache(maxsize=None)
def plus_presentation(kind: SurfaceKind) -> PlusPresentation:
    _need_nonorientable(kind)
    A = plus_alphabet(kind)
    g = kind.g
    if kind.n > 0:
        return PlusPresentation(kind, A, ())
    first = product(A, (X(A, j, j) for j in range(1, g + 1)))
    # X_gg X_{g-1,g}^-1 X_{g-1,g-1} ... X_12^-1 X_11 X_12 ... X_{g-1,g}
    second = X(A, g, g)
    for j in range(g - 1, 0, -1):
        second = mul(mul(second, inv(X(A, j, j + 1))), X(A, j, j))
    second = mul(second, product(A, (X(A, i, i + 1) for i in range(1, g))))
    return PlusPresentation(kind, A, (first, second))


# -- canonical loops -------------------------------------------------------------


@dataclass(frozen=True)
class LoopName:
    tag: str
    args: tuple = ()

    TAGS = ("gamma_n", "gamma", "delta", "epsilon", "y_n", "z_n", "xpair",
            "sep_orientable", "sep_nonorientable")

    def __str__(self) -> str:
        if not self.args:
            return self.tag
        return f"{self.tag}({','.join(str(a) for a in self.args)})"


def parse_loop_name(text: str) -> LoopName:
    m = re.fullmatch(r"\s*([a-z_]+)\s*(?:\((.*)\))?\s*", text)
    if not m or m.group(1) not in LoopName.TAGS:
        raise InvalidLoopName(f"unknown loop name {text!r}")
    args = []
    if m.group(2):
        for a in m.group(2).split(","):
            a = a.strip()
            args.append(int(a) if re.fullmatch(r"-?\d+", a) else a)
    return LoopName(m.group(1), tuple(args))


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise IndexOutOfRange(msg)


def gamma_loop(kind: SurfaceKind, k: int) -> Word:
    """gamma_k for k < n, and the derived boundary loop when k = n."""
    A = base_alphabet(kind)
    _check(1 <= k <= kind.n, f"gamma index {k} outside 1..{kind.n}")
    if k < kind.n:
        return A.generator(sym("c", k))
    head = product(A, (comm(A.generator(sym("a", i)), A.generator(sym("b", i)))
                       for i in range(1, kind.g + 1)))
    tail = product(A, (A.generator(sym("c", j)) for j in range(1, kind.n)))
    return inv(mul(head, tail))


def y_loop(kind: SurfaceKind, k: int) -> Word:
    """y_k for k < n, and the derived boundary loop when k = n."""
    A = base_alphabet(kind)
    _check(1 <= k <= kind.n, f"y index {k} outside 1..{kind.n}")
    if k < kind.n:
        return A.generator(sym("y", k))
    squares = Word(A, [c for i in range(1, kind.g + 1) for c in (i, i)])
    tail = product(A, (A.generator(sym("y", j)) for j in range(1, kind.n)))
    return inv(mul(squares, tail))


def z_loop(kind: SurfaceKind, k: int) -> Word:
    A = base_alphabet(kind)
    xg = A.generator(sym("x", kind.g))
    return mul(mul(xg, y_loop(kind, k)), inv(xg))


def canonical_loop(kind: SurfaceKind, name: LoopName | str) -> Word:
    """Base-alphabet word for a named loop of the surface."""
    if isinstance(name, str):
        name = parse_loop_name(name)
    A = base_alphabet(kind)
    g, n = kind.g, kind.n
    tag, args = name.tag, name.args

    def gen(f, i):
        return A.generator(sym(f, i))

    def nargs(count):
        if len(args) != count or not all(isinstance(a, int) for a in args):
            raise InvalidLoopName(f"{name} expects {count} integer argument(s)")
        return args

    if kind.orientable:
        if tag == "gamma_n":
            nargs(0)
            _check(n >= 1, "gamma_n needs a boundary component")
            return gamma_loop(kind, n)
        if tag == "gamma":
            (k,) = nargs(1)
            return gamma_loop(kind, k)
        if tag == "delta":
            (i,) = nargs(1)
            _check(1 <= i <= g - 1, f"delta index {i} outside 1..{g - 1}")
            return product(A, [inv(gen("b", i)), gen("a", i + 1), gen("b", i + 1), inv(gen("a", i + 1))])
        if tag == "epsilon":
            (k,) = nargs(1)
            _check(g >= 1 and 1 <= k <= n, f"epsilon index {k} outside 1..{n}")
            return product(A, [inv(gen("b", g))] + [gamma_loop(kind, j) for j in range(1, k + 1)])
        if tag == "sep_orientable":
            h, m = nargs(2)
            _check(0 <= h <= g and 0 <= m <= n, f"separating loop ({h},{m}) out of range")
            head = [comm(gen("a", i), gen("b", i)) for i in range(1, h + 1)]
            return product(A, head + [gamma_loop(kind, j) for j in range(1, m + 1)])
        raise InvalidLoopName(f"{name} is not a loop of an orientable surface")

    if tag == "y_n":
        nargs(0)
        _check(n >= 1, "y_n needs a boundary component")
        return y_loop(kind, n)
    if tag == "z_n":
        nargs(0)
        _check(n >= 1, "z_n needs a boundary component")
        return z_loop(kind, n)
    if tag == "xpair":
        i, j = nargs(2)
        _check(1 <= i <= g and 1 <= j <= g, f"xpair({i},{j}) out of range")
        return mul(gen("x", i), gen("x", j))
    if tag == "sep_nonorientable":
        if not args or args[0] not in ("a", "b", "c", "d", "e"):
            raise InvalidLoopName(f"{name}: first argument must be a case letter a..e")
        case = args[0]
        rest = args[1:]
        if case in "abc":
            if rest and len(rest) != 2:
                raise InvalidLoopName(f"{name}: cases a, b, c take no indices")
            if case == "a":
                return gen("x", 1)
            if case == "b":
                _check(g >= 2, "case b needs genus at least 2")
                return mul(gen("x", 1), gen("x", 2))
            return product(A, (gen("x", i) for i in range(1, g + 1)))
        if len(rest) != 2 or not all(isinstance(a, int) for a in rest):
            raise InvalidLoopName(f"{name}: cases d and e take (h, m)")
        h, m = rest
        _check(0 <= m <= n, f"m={m} outside 0..{n}")
        ys = [y_loop(kind, j) for j in range(1, m + 1)]
        if case == "d":
            _check(1 <= h <= g - 1, f"h={h} outside 1..{g - 1}")
            return product(A, [gen("x", i) ** 2 for i in range(1, h + 1)] + ys)
        _check(0 <= 2 * h <= g - 1, f"h={h} outside 0..{(g - 1) // 2}")
        if h == 0:
            return product(A, ys)
        parts = [gen("x", i) for i in range(1, 2 * h + 1)]
        parts.append(inv(gen("x", 2 * h + 1)))
        parts += [gen("x", i) ** -2 for i in range(2 * h, 1, -1)]
        parts.append(inv(gen("x", 1)))
        parts += [gen("x", i) for i in range(2, 2 * h + 2)]
        return product(A, parts + ys)
    raise InvalidLoopName(f"{name} is not a loop of a non-orientable surface")


# -- orientation character and word problem --------------------------------------


def orientation_character(w: Word) -> int:
    """Parity of the total x-exponent: 0 for two-sided loops, 1 for one-sided."""
    fams = w.alphabet.families
    if "x" not in fams or not fams <= {"x", "y"}:
        raise WrongAlphabet("orientation character needs a non-orientable base alphabet")
    syms = w.alphabet.symbols
    return sum(1 for c in w.code if syms[abs(c) - 1].family == "x") % 2


def _same_alphabet(w: Word, A: Alphabet) -> None:
    if w.alphabet is not A and w.alphabet != A:
        raise WrongAlphabet(f"word is not over the alphabet of {A.label}")


def dehn_reduce(w: Word, p: SurfacePresentation) -> Word:
    """Greedy Dehn shortening until no majority subword of a relator remains."""
    table = p.symmetrized()
    if not table:
        return w
    k = len(p.relator) // 2 + 1
    code = w.code
    i = 0
    while i + k <= len(code):
        rep = table.get(code[i : i + k])
        if rep is None:
            i += 1
            continue
        before = len(code)
        code = Word(w.alphabet, code[:i] + rep + code[i + k :]).code
        # cancellation may reach back past the splice point
        i = max(i - k - (before - k + len(rep) - len(code)), 0)
    return Word(w.alphabet, code)


def _klein_normal_form(w: Word) -> tuple[int, int]:
    # x1 -> (1, -1), x2 -> (0, 1) in Z x| Z with (m1,k1)(m2,k2) = (m1 + (-1)^k1 m2, k1 + k2)
    m, k = 0, 0
    gens = {1: (1, -1), 2: (0, 1)}
    inverses = {1: (1, 1), 2: (0, -1)}  # (m,k)^-1 = (-(-1)^k m, -k)
    for c in w.code:
        dm, dk = gens[c] if c > 0 else inverses[-c]
        m = m + (dm if k % 2 == 0 else -dm)
        k += dk
    return m, k


def is_trivial(w: Word, p: SurfacePresentation | PlusPresentation) -> bool:
    if isinstance(p, PlusPresentation):
        _same_alphabet(w, p.alphabet)
        if p.is_free:
            return not w.code
        raise UnsupportedPresentation("no word problem for the two-relator closed presentation")
    _same_alphabet(w, p.alphabet)
    kind = p.kind
    if p.relator is None or not w.code:
        return not w.code
    if kind.orientable and kind.g == 1:
        return not any(exponent_vector(w))
    if not kind.orientable and kind.g == 1:
        return exponent_vector(w)[0] % 2 == 0
    if not kind.orientable and kind.g == 2:
        return _klein_normal_form(w) == (0, 0)
    return not dehn_reduce(w, p).code


def equal_in(p: SurfacePresentation | PlusPresentation, u: Word, v: Word) -> bool:
    return is_trivial(mul(u, inv(v)), p)


def abelian_compatible(w: Word, p: SurfacePresentation | PlusPresentation) -> bool:
    """Whether the exponent vector lies in the lattice spanned by the relators.

    False is a certificate that ``w`` is nontrivial.
    """
    vec = exponent_vector(w)
    rels = [p.relator] if isinstance(p, SurfacePresentation) else list(p.relators)
    rels = [r for r in rels if r is not None]
    if not rels:
        return not any(vec)
    # every relator vector here is a multiple of one primitive vector
    r = exponent_vector(rels[0])
    for other in rels[1:]:
        if exponent_vector(other) != r:
            raise NotImplementedError("relators with different abelian images")
    if not any(r):
        return not any(vec)
    pivot = next(i for i, x in enumerate(r) if x)
    if vec[pivot] % r[pivot]:
        return False
    q = vec[pivot] // r[pivot]
    return all(v == q * x for v, x in zip(vec, r))

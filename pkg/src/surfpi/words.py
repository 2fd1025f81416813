"""Free-group words over a fixed, ordered alphabet.

A :class:`Word` is always freely reduced.  Internally a word is a tuple of
nonzero integers: ``+(k+1)`` is the k-th alphabet symbol, ``-(k+1)`` its
inverse.  Equality of words is therefore plain tuple equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    AlphabetMismatch,
    IndexOutOfRange,
    MalformedExponent,
    MissingImage,
    PreconditionViolated,
    UnknownSymbol,
)

# Text family names, in canonical order.
FAMILY_ORDER = ("a", "b", "c", "x", "X", "u", "v", "y", "z")
FAMILY_NAMES = {
    "a": "alpha",
    "b": "beta",
    "c": "gamma",
    "x": "x",
    "y": "y",
    "X": "xpair",
    "z": "zgen",
    "u": "u",
    "v": "v",
}
_TWO_INDEX = {"X"}


@dataclass(frozen=True)
class GenSym:
    family: str
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILY_NAMES:
            raise UnknownSymbol(f"unknown generator family {self.family!r}")
        want = 2 if self.family in _TWO_INDEX else 1
        if len(self.indices) != want or any(i < 1 for i in self.indices):
            raise IndexOutOfRange(f"bad indices {self.indices} for family {self.family!r}")

    def __str__(self) -> str:
        return self.family + "_".join(str(i) for i in self.indices)

    def sort_key(self):
        return (FAMILY_ORDER.index(self.family), self.indices)


def sym(family: str, *indices: int) -> GenSym:
    return GenSym(family, tuple(indices))


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free list of generator symbols."""

    symbols: tuple[GenSym, ...]
    label: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for k, s in enumerate(self.symbols):
            if s in index:
                raise ValueError(f"duplicate symbol {s} in alphabet")
            index[s] = k
        object.__setattr__(self, "_index", index)

    @classmethod
    def canonical(cls, symbols: Iterable[GenSym], label: str = "") -> "Alphabet":
        return cls(tuple(sorted(set(symbols), key=GenSym.sort_key)), label)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, s) -> bool:
        return s in self._index

    def index(self, s: GenSym) -> int:
        return self._index[s]

    @property
    def families(self) -> set[str]:
        return {s.family for s in self.symbols}

    def generator(self, s: GenSym | str) -> "Word":
        if isinstance(s, str):
            return parse_word(s, self)
        return Word(self, (self._index[s] + 1,))

    def generators(self) -> list["Word"]:
        return [Word(self, (k + 1,)) for k in range(len(self.symbols))]

    def identity(self) -> "Word":
        return Word(self, ())


class Letter(NamedTuple):
    sym: GenSym
    sign: int


def _reduce(code: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in code:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


class Word:
    """Immutable, freely reduced word over an :class:`Alphabet`."""

    __slots__ = ("alphabet", "code", "_hash")

    def __init__(self, alphabet: Alphabet, code: Iterable[int] = ()):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "code", _reduce(code))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, alphabet: Alphabet, code: tuple[int, ...]) -> "Word":
        w = cls.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "code", code)
        object.__setattr__(w, "_hash", None)
        return w

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[tuple[GenSym, int]]) -> "Word":
        code = []
        for s, sign in letters:
            if s not in alphabet:
                raise UnknownSymbol(f"{s} not in alphabet")
            if sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
            code.append(sign * (alphabet.index(s) + 1))
        return cls(alphabet, code)

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    @property
    def letters(self) -> tuple[Letter, ...]:
        syms = self.alphabet.symbols
        return tuple(Letter(syms[abs(c) - 1], 1 if c > 0 else -1) for c in self.code)

    def __len__(self) -> int:
        return len(self.code)

    def __bool__(self) -> bool:
        return bool(self.code)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.code == other.code and (
            self.alphabet is other.alphabet or self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.alphabet.symbols, self.code)))
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return mul(self, other)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else inv(self)
        out = self.alphabet.identity()
        for _ in range(abs(k)):
            out = mul(out, base)
        return out

    def inverse(self) -> "Word":
        return inv(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _check_same(a: Word, b: Word) -> None:
    if a.alphabet is not b.alphabet and a.alphabet != b.alphabet:
        raise AlphabetMismatch("words live over different alphabets")


def mul(a: Word, b: Word) -> Word:
    _check_same(a, b)
    x, y = a.code, b.code
    k = 0
    m = min(len(x), len(y))
    while k < m and x[len(x) - 1 - k] == -y[k]:
        k += 1
    return Word._trusted(a.alphabet, x[: len(x) - k] + y[k:])


def product(alphabet: Alphabet, words: Iterable[Word]) -> Word:
    out = alphabet.identity()
    for w in words:
        out = mul(out, w)
    return out


def inv(w: Word) -> Word:
    return Word._trusted(w.alphabet, tuple(-c for c in reversed(w.code)))


def comm(a: Word, b: Word) -> Word:
    """Commutator ``a b a^-1 b^-1``."""
    return mul(mul(a, b), mul(inv(a), inv(b)))


def conj(a: Word, b: Word) -> Word:
    """``a b a^-1``."""
    return mul(mul(a, b), inv(a))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w = conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    c = w.code
    k = 0
    while len(c) - 2 * k > 1 and c[k] == -c[len(c) - 1 - k]:
        k += 1
    return Word._trusted(w.alphabet, c[k : len(c) - k]), Word._trusted(w.alphabet, c[:k])


def is_cyclically_reduced(w: Word) -> bool:
    return len(w.code) < 2 or w.code[0] != -w.code[-1]


def rotations(w: Word) -> list[Word]:
    c = w.code
    return [Word._trusted(w.alphabet, c[i:] + c[:i]) for i in range(max(len(c), 1))]


def is_cyclic_rotation(u: Word, v: Word) -> bool:
    """True iff ``v`` is a rotation of ``u``; both must be cyclically reduced."""
    _check_same(u, v)
    if not (is_cyclically_reduced(u) and is_cyclically_reduced(v)):
        raise PreconditionViolated("is_cyclic_rotation needs cyclically reduced words")
    if len(u) != len(v):
        return False
    if not u.code:
        return True
    # substring search on the doubled sequence
    doubled = u.code + u.code
    n = len(u.code)
    first = v.code[0]
    return any(doubled[i] == first and doubled[i : i + n] == v.code for i in range(n))


def rotation_offset(u: Word, v: Word) -> int | None:
    """Smallest ``i`` with ``u[i:] + u[:i] == v``, or None."""
    if len(u) != len(v):
        return None
    if not u.code:
        return 0
    n = len(u.code)
    doubled = u.code + u.code
    for i in range(n):
        if doubled[i : i + n] == v.code:
            return i
    return None


def exponent_vector(w: Word) -> tuple[int, ...]:
    vec = [0] * len(w.alphabet)
    for c in w.code:
        vec[abs(c) - 1] += 1 if c > 0 else -1
    return tuple(vec)


def substitute(
    w: Word,
    images: Mapping[GenSym, Word],
    target: Alphabet | None = None,
    total: bool = False,
) -> Word:
    """Apply the endomorphism sending each symbol to its image.

    Symbols without an image map to themselves unless ``total`` is set, in
    which case a missing image raises :class:`MissingImage`.
    """
    target = target if target is not None else w.alphabet
    syms = w.alphabet.symbols
    cache: dict[int, tuple[int, ...]] = {}
    out: list[int] = []
    for c in w.code:
        k = abs(c)
        img = cache.get(k)
        if img is None:
            s = syms[k - 1]
            if s in images:
                iw = images[s]
                if iw.alphabet is not target and iw.alphabet != target:
                    raise AlphabetMismatch(f"image of {s} is not over the target alphabet")
                img = iw.code
            elif total:
                raise MissingImage(f"no image for {s}")
            elif s in target:
                img = (target.index(s) + 1,)
            else:
                raise MissingImage(f"{s} has no image and is not in the target alphabet")
            cache[k] = img
        if c > 0:
            for d in img:
                if out and out[-1] == -d:
                    out.pop()
                else:
                    out.append(d)
        else:
            for d in reversed(img):
                if out and out[-1] == d:
                    out.pop()
                else:
                    out.append(-d)
    return Word._trusted(target, tuple(out))


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z]+)(\d+(?:_\d+)?)(.*)")
_EXPONENT = re.compile(r"\^(-?\d+)")


def parse_symbol(text: str) -> GenSym:
    m = re.fullmatch(r"([A-Za-z]+)(\d+)(?:_(\d+))?", text)
    if not m or m.group(1) not in FAMILY_NAMES:
        raise UnknownSymbol(f"unknown symbol {text!r}")
    idx = tuple(int(g) for g in m.groups()[1:] if g is not None)
    return GenSym(m.group(1), idx)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse whitespace-separated tokens like ``a1 b2^-1 X1_2 y3^2``; ``1`` is the identity."""
    tokens = text.split()
    if tokens == ["1"]:
        return alphabet.identity()
    code: list[int] = []
    families = alphabet.families
    for tok in tokens:
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise UnknownSymbol(f"cannot parse token {tok!r}")
        name, idx, rest = m.groups()
        if name not in FAMILY_NAMES:
            raise UnknownSymbol(f"unknown symbol {tok!r}")
        if rest:
            em = _EXPONENT.fullmatch(rest)
            if not em or int(em.group(1)) == 0:
                raise MalformedExponent(f"bad exponent in {tok!r}")
            k = int(em.group(1))
        else:
            k = 1
        try:
            s = GenSym(name, tuple(int(i) for i in idx.split("_")))
        except IndexOutOfRange:
            raise IndexOutOfRange(f"{tok!r} has the wrong index shape") from None
        if s not in alphabet:
            if name in families:
                raise IndexOutOfRange(f"{name}{idx} is outside the alphabet")
            raise UnknownSymbol(f"symbol {name}{idx} not in alphabet")
        letter = alphabet.index(s) + 1
        code.extend([letter if k > 0 else -letter] * abs(k))
    return Word(alphabet, code)


def format_word(w: Word) -> str:
    if not w.code:
        return "1"
    syms = w.alphabet.symbols
    parts = []
    i = 0
    c = w.code
    while i < len(c):
        j = i
        while j < len(c) and c[j] == c[i]:
            j += 1
        run = (j - i) * (1 if c[i] > 0 else -1)
        name = str(syms[abs(c[i]) - 1])
        parts.append(name if run == 1 else f"{name}^{run}")
        i = j
    return " ".join(parts)

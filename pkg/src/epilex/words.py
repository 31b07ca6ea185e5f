"""Alphabets, finite words, lexicographic orders, and lazy infinite-word streams.

Letters are interned as small integers against an :class:`Alphabet`; a
:class:`Word` is an immutable sequence of letter indices.  Infinite words are
deterministic prefix generators (:class:`WordStream`): every question about an
infinite word is answered relative to an explicit horizon, and callers that
need a guarantee of completeness must pick the horizon themselves.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Callable, Iterator, Sequence

__all__ = [
    "Alphabet",
    "AlphabetError",
    "LengthError",
    "Word",
    "LexOrder",
    "Ordering",
    "Side",
    "WordStream",
    "LiteralPeriodicStream",
    "ConcatStream",
    "CallbackStream",
    "all_orders",
    "compare",
    "complexity",
    "factor_sets_equal",
    "factors",
    "is_palindrome",
    "prefix",
    "reversal",
    "special_factors",
]

# Characters with a meaning in the text formats; letters may not contain them.
_RESERVED_CHARS = set("(),<'*= \t\n")


class AlphabetError(ValueError):
    """A word, order, or stream was combined with the wrong alphabet."""


class LengthError(ValueError):
    """A requested factor length exceeds the available word length."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct letter tokens.

    Declaration order doubles as the default lexicographic order.  Tokens are
    usually single characters but may be longer; they may not contain the
    punctuation reserved by the text formats.
    """

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in alphabet: {self.letters}")
        for tok in self.letters:
            if not tok or any(c in _RESERVED_CHARS for c in tok):
                raise ValueError(f"invalid letter token: {tok!r}")

    @classmethod
    def of(cls, *letters: str) -> "Alphabet":
        return cls(tuple(letters))

    @property
    def size(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, token: str) -> bool:
        return token in self.letters

    def index(self, token: str) -> int:
        try:
            return self.letters.index(token)
        except ValueError:
            raise AlphabetError(f"letter {token!r} not in alphabet {self.letters}") from None

    def token(self, index: int) -> str:
        return self.letters[index]

    def word(self, text_or_tokens: "str | Sequence[str]") -> "Word":
        """Build a word from a contiguous string (single-char letters) or token sequence."""
        if isinstance(text_or_tokens, str):
            if all(len(t) == 1 for t in self.letters):
                tokens: Sequence[str] = list(text_or_tokens)
            else:
                tokens = [t for t in text_or_tokens.split(",") if t]
        else:
            tokens = text_or_tokens
        return Word(self, tuple(self.index(t) for t in tokens))

    def empty(self) -> "Word":
        return Word(self, ())


@dataclass(frozen=True)
class Word:
    """A finite word: an immutable sequence of letter indices over an alphabet."""

    alphabet: Alphabet
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        k = self.alphabet.size
        for i in self.indices:
            if not 0 <= i < k:
                raise AlphabetError(f"letter index {i} out of range for {self.alphabet.letters}")

    def __len__(self) -> int:
        return len(self.indices)

    def __bool__(self) -> bool:
        return bool(self.indices)

    def __iter__(self) -> Iterator[str]:
        tok = self.alphabet.letters
        return (tok[i] for i in self.indices)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.indices[item])
        return self.alphabet.letters[self.indices[item]]

    def __add__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise AlphabetError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.indices + other.indices)

    def __str__(self) -> str:
        toks = [self.alphabet.letters[i] for i in self.indices]
        if all(len(t) == 1 for t in self.alphabet.letters):
            return "".join(toks)
        return ",".join(toks)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def tokens(self) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[i] for i in self.indices)

    def reversal(self) -> "Word":
        return Word(self.alphabet, self.indices[::-1])

    def is_palindrome(self) -> bool:
        return self.indices == self.indices[::-1]


def reversal(w: Word) -> Word:
    """The mirror image of ``w``."""
    return w.reversal()


def is_palindrome(w: Word) -> bool:
    return w.is_palindrome()


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class LexOrder:
    """A total order on an alphabet, given as a rank for every letter index."""

    alphabet: Alphabet
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.ranks) != list(range(self.alphabet.size)):
            raise ValueError(f"ranks must be a permutation of 0..{self.alphabet.size - 1}")

    @classmethod
    def default(cls, alphabet: Alphabet) -> "LexOrder":
        return cls(alphabet, tuple(range(alphabet.size)))

    @classmethod
    def from_letters(cls, alphabet: Alphabet, ordered: Sequence[str]) -> "LexOrder":
        """Order in which ``ordered`` lists every letter from least to greatest."""
        if sorted(ordered) != sorted(alphabet.letters):
            raise AlphabetError(f"order {ordered} does not cover alphabet {alphabet.letters}")
        ranks = [0] * alphabet.size
        for pos, tok in enumerate(ordered):
            ranks[alphabet.index(tok)] = pos
        return cls(alphabet, tuple(ranks))

    def rank(self, token: str) -> int:
        return self.ranks[self.alphabet.index(token)]

    def min_letter(self) -> str:
        return self.alphabet.letters[self.ranks.index(0)]

    def max_letter(self) -> str:
        return self.alphabet.letters[self.ranks.index(self.alphabet.size - 1)]

    def letters_ascending(self) -> tuple[str, ...]:
        pairs = sorted(range(self.alphabet.size), key=lambda i: self.ranks[i])
        return tuple(self.alphabet.letters[i] for i in pairs)

    def describe(self) -> str:
        return "<".join(self.letters_ascending())

    def key(self, w: Word) -> tuple[int, ...]:
        return tuple(self.ranks[i] for i in w.indices)

    def reversed(self) -> "LexOrder":
        top = self.alphabet.size - 1
        return LexOrder(self.alphabet, tuple(top - r for r in self.ranks))


def all_orders(alphabet: Alphabet, subset: Sequence[str] | None = None) -> list[LexOrder]:
    """Every total order on ``alphabet``.

    With ``subset``, only the given letters are permuted (in declaration
    order); the remaining letters are ranked above them, also in declaration
    order.  Enumeration order is deterministic.
    """
    if subset is None:
        base = list(alphabet.letters)
        rest: list[str] = []
    else:
        base = [t for t in alphabet.letters if t in set(subset)]
        rest = [t for t in alphabet.letters if t not in set(subset)]
    return [LexOrder.from_letters(alphabet, list(p) + rest) for p in permutations(base)]


def compare(u: Word, v: Word, order: LexOrder) -> Ordering:
    """Lexicographic comparison; a proper prefix is less than its extension."""
    if u.alphabet != v.alphabet or u.alphabet != order.alphabet:
        raise AlphabetError("compare needs both words and the order over one alphabet")
    ku, kv = order.key(u), order.key(v)
    if ku == kv:
        return Ordering.EQUAL
    return Ordering.LESS if ku < kv else Ordering.GREATER


class WordStream:
    """A deterministic generator of an infinite word.

    ``prefix(n)`` is total and prefix-monotone: repeated calls agree, and the
    result for ``m <= n`` is a prefix of the result for ``n``.  Streams are
    immutable values; the internal prefix memo is extended under a lock so
    concurrent readers are safe.
    """

    kind = "abstract"

    def __init__(self, alphabet: Alphabet) -> None:
        self.alphabet = alphabet
        self._buf: list[int] = []
        self._lock = threading.Lock()

    def _extend(self, n: int) -> None:
        """Grow ``self._buf`` to at least ``n`` letters.  Called under the lock."""
        raise NotImplementedError

    def raw(self, n: int) -> list[int]:
        """The first ``n`` letter indices, as a fresh list."""
        if n < 0:
            raise ValueError("prefix length must be >= 0")
        if len(self._buf) < n:
            with self._lock:
                if len(self._buf) < n:
                    self._extend(n)
        return self._buf[:n]

    def prefix(self, n: int) -> Word:
        return Word(self.alphabet, tuple(self.raw(n)))


def prefix(stream: WordStream, n: int) -> Word:
    """The first ``n`` letters of a stream."""
    return stream.prefix(n)


class LiteralPeriodicStream(WordStream):
    """The ultimately periodic word ``head . cycle . cycle . ...``."""

    kind = "literal-periodic"

    def __init__(self, head: Word, cycle: Word) -> None:
        if not cycle:
            raise ValueError("the repeated part of a literal stream must be non-empty")
        if head.alphabet != cycle.alphabet:
            raise AlphabetError("head and cycle must share an alphabet")
        super().__init__(head.alphabet)
        self.head = head
        self.cycle = cycle

    def _extend(self, n: int) -> None:
        buf = self._buf
        if not buf:
            buf.extend(self.head.indices)
        cyc = self.cycle.indices
        while len(buf) < n:
            buf.extend(cyc)


class ConcatStream(WordStream):
    """A finite word followed by another stream."""

    kind = "concatenation"

    def __init__(self, head: Word, tail: WordStream) -> None:
        if head.alphabet != tail.alphabet:
            raise AlphabetError("head and tail must share an alphabet")
        super().__init__(head.alphabet)
        self.head = head
        self.tail = tail

    def _extend(self, n: int) -> None:
        buf = self._buf
        if not buf:
            buf.extend(self.head.indices)
        if len(buf) < n:
            need = n - len(self.head.indices)
            body = self.tail.raw(max(need, 0))
            del buf[len(self.head.indices):]
            buf.extend(body)


class CallbackStream(WordStream):
    """A stream backed by an arbitrary prefix function.  Unstable, library-level only.

    ``fn(n)`` must return the first ``n`` letter indices and be prefix-consistent;
    nothing here checks that beyond length.
    """

    kind = "callback"

    def __init__(self, alphabet: Alphabet, fn: Callable[[int], Sequence[int]]) -> None:
        super().__init__(alphabet)
        self._fn = fn

    def _extend(self, n: int) -> None:
        out = list(self._fn(n))
        if len(out) < n:
            raise ValueError("callback returned a too-short prefix")
        self._buf[:] = out


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


def factors(w: Word, k: int) -> set[Word]:
    """All distinct length-``k`` blocks of ``w``; empty set when ``k > |w|``."""
    if k < 0:
        raise ValueError("factor length must be >= 0")
    if k > len(w):
        return set()
    seen = {w.indices[i : i + k] for i in range(len(w) - k + 1)}
    return {Word(w.alphabet, t) for t in seen}


def _extensions(w: Word, k: int, side: Side) -> dict[tuple[int, ...], set[int]]:
    ext: dict[tuple[int, ...], set[int]] = {}
    idx = w.indices
    for i in range(len(idx) - k + 1):
        block = idx[i : i + k]
        if side is Side.RIGHT:
            if i + k < len(idx):
                ext.setdefault(block, set()).add(idx[i + k])
        else:
            if i > 0:
                ext.setdefault(block, set()).add(idx[i - 1])
    return ext


def special_factors(w: Word, k: int, side: Side) -> set[Word]:
    """Length-``k`` factors with at least two distinct extensions on ``side``, witnessed in ``w``."""
    ext = _extensions(w, k, side)
    return {Word(w.alphabet, block) for block, letters in ext.items() if len(letters) >= 2}


def complexity(stream: WordStream, n: int, horizon: int) -> int:
    """Number of distinct length-``n`` factors of ``prefix(horizon)``.

    This is a lower bound on the complexity of the infinite word, exact once
    the horizon covers the recurrence scale of the stream.
    """
    if horizon < n:
        raise ValueError("horizon must be at least the factor length")
    seq = stream.raw(horizon)
    return len({tuple(seq[i : i + n]) for i in range(len(seq) - n + 1)})


def factor_sets_equal(x: WordStream, y: WordStream, depth: int, horizon: int) -> bool:
    """Whether the two streams have identical factor sets up to ``depth``, at the horizon.

    Factors are compared as token sequences, so streams over different carrier
    alphabets can still be equivalent.
    """
    if horizon < depth:
        raise ValueError("horizon must be at least the comparison depth")
    sx = x.raw(horizon)
    sy = y.raw(horizon)
    tx = [x.alphabet.letters[i] for i in sx]
    ty = [y.alphabet.letters[i] for i in sy]
    for j in range(depth + 1):
        fx = {tuple(tx[i : i + j]) for i in range(len(tx) - j + 1)}
        fy = {tuple(ty[i : i + j]) for i in range(len(ty) - j + 1)}
        if fx != fy:
            return False
    return True

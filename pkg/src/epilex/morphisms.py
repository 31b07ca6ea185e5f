"""Letter-injection morphisms, their compositions, and free-group arithmetic.

The generator morphism for a letter ``a`` fixes ``a`` and prepends ``a`` to
every other letter.  Compositions of these generators form a monoid acting on
words and streams; viewed on the free group they are invertible, and the
generator inverses are what the skew-word reconstruction peels with.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .words import Alphabet, AlphabetError, Word, WordStream

__all__ = [
    "GroupWord",
    "MorphicImageStream",
    "Permutation",
    "EpistandardMorphism",
    "PureEpistandardMorphism",
    "apply_inverse",
    "identity",
    "is_separating",
    "psi",
    "reduce_word",
]


@dataclass(frozen=True)
class PureEpistandardMorphism:
    """A composition of generator morphisms, outermost generator first.

    ``letters = (z1, ..., zn)`` denotes the map that applies the ``zn``
    generator first and the ``z1`` generator last; ``letters = ()`` is the
    identity.  Images are non-empty (non-erasing), and for ``n >= 1`` the
    image of every letter begins with ``z1``.
    """

    alphabet: Alphabet
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        k = self.alphabet.size
        for z in self.letters:
            if not 0 <= z < k:
                raise AlphabetError(f"generator index {z} out of range")

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def generator_tokens(self) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[z] for z in self.letters)

    def __repr__(self) -> str:
        if self.is_identity:
            return "Morphism(id)"
        return f"Morphism(psi:{','.join(self.generator_tokens())})"

    def image_of(self, letter_index: int) -> tuple[int, ...]:
        return _letter_image(self, letter_index)

    def apply_word(self, w: Word) -> Word:
        if w.alphabet != self.alphabet:
            raise AlphabetError("word alphabet does not match morphism alphabet")
        out: list[int] = []
        for i in w.indices:
            out.extend(self.image_of(i))
        return Word(self.alphabet, tuple(out))

    def apply_stream(self, s: WordStream) -> "MorphicImageStream":
        return MorphicImageStream(self, s)

    def apply(self, w: "Word | WordStream") -> "Word | WordStream":
        """Letterwise image; streams map to a lazily generated image stream."""
        if isinstance(w, Word):
            return self.apply_word(w)
        return self.apply_stream(w)

    def compose(self, other: "PureEpistandardMorphism") -> "PureEpistandardMorphism":
        """``self`` after ``other``: generator sequences concatenate."""
        if other.alphabet != self.alphabet:
            raise AlphabetError("cannot compose morphisms over different alphabets")
        return PureEpistandardMorphism(self.alphabet, self.letters + other.letters)

    def apply_group(self, g: "GroupWord") -> "GroupWord":
        """The induced free-group endomorphism."""
        out: list[tuple[int, int]] = []
        for letter, sign in g.syllables:
            image = self.image_of(letter)
            if sign > 0:
                out.extend((c, 1) for c in image)
            else:
                out.extend((c, -1) for c in reversed(image))
        return reduce_word(self.alphabet, out)

    def invert_group(self, g: "GroupWord") -> "GroupWord":
        """Apply the inverse automorphism: generator inverses in reverse order."""
        for z in self.letters:
            g = apply_inverse(self.alphabet.letters[z], g)
        return g


@lru_cache(maxsize=None)
def _letter_image(m: PureEpistandardMorphism, letter_index: int) -> tuple[int, ...]:
    word = [letter_index]
    for z in reversed(m.letters):
        step: list[int] = []
        for c in word:
            if c == z:
                step.append(z)
            else:
                step.append(z)
                step.append(c)
        word = step
    return tuple(word)


def identity(alphabet: Alphabet) -> PureEpistandardMorphism:
    return PureEpistandardMorphism(alphabet, ())


def psi(alphabet: Alphabet, letter: str) -> PureEpistandardMorphism:
    """The single-generator morphism for ``letter``."""
    return PureEpistandardMorphism(alphabet, (alphabet.index(letter),))


def morphism_from_tokens(alphabet: Alphabet, tokens: Iterable[str]) -> PureEpistandardMorphism:
    return PureEpistandardMorphism(alphabet, tuple(alphabet.index(t) for t in tokens))


class MorphicImageStream(WordStream):
    """Image of a stream under a morphism, generated image block by image block."""

    kind = "morphic-image"

    def __init__(self, morphism: PureEpistandardMorphism, inner: WordStream) -> None:
        if morphism.alphabet != inner.alphabet:
            raise AlphabetError("morphism and stream alphabets differ")
        super().__init__(inner.alphabet)
        self.morphism = morphism
        self.inner = inner
        self._consumed = 0

    def _extend(self, n: int) -> None:
        # Images are non-empty, so one inner letter per loop makes progress.
        chunk = 64
        while len(self._buf) < n:
            letters = self.inner.raw(self._consumed + chunk)[self._consumed:]
            if not letters:
                raise RuntimeError("inner stream stopped producing letters")
            for c in letters:
                self._buf.extend(self.morphism.image_of(c))
            self._consumed += len(letters)


@dataclass(frozen=True)
class GroupWord:
    """A reduced word over letters and their formal inverses.

    ``syllables`` is a sequence of ``(letter_index, sign)`` with sign +1 or -1;
    adjacent mutually inverse syllables are forbidden, so construction goes
    through :func:`reduce_word` which cancels eagerly.
    """

    alphabet: Alphabet
    syllables: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        k = self.alphabet.size
        prev: tuple[int, int] | None = None
        for letter, sign in self.syllables:
            if not 0 <= letter < k:
                raise AlphabetError(f"letter index {letter} out of range")
            if sign not in (1, -1):
                raise ValueError("syllable sign must be +1 or -1")
            if prev is not None and prev[0] == letter and prev[1] == -sign:
                raise ValueError("group word is not reduced")
            prev = (letter, sign)

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if other.alphabet != self.alphabet:
            raise AlphabetError("cannot multiply group words over different alphabets")
        return reduce_word(self.alphabet, self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.alphabet, tuple((l, -s) for l, s in reversed(self.syllables)))

    @property
    def is_positive(self) -> bool:
        return all(s == 1 for _, s in self.syllables)

    def to_word(self) -> Word:
        if not self.is_positive:
            raise ValueError(f"group word {self} has inverse letters")
        return Word(self.alphabet, tuple(l for l, _ in self.syllables))

    @classmethod
    def from_word(cls, w: Word) -> "GroupWord":
        return cls(w.alphabet, tuple((i, 1) for i in w.indices))

    def __str__(self) -> str:
        toks = self.alphabet.letters
        return " ".join(toks[l] + ("" if s == 1 else "'") for l, s in self.syllables)

    def __repr__(self) -> str:
        return f"GroupWord({str(self)!r})"


def reduce_word(alphabet: Alphabet, syllables: Iterable[tuple[int, int]]) -> GroupWord:
    """Cancel adjacent inverse pairs until none remain; the unique reduced form."""
    stack: list[tuple[int, int]] = []
    for letter, sign in syllables:
        if stack and stack[-1][0] == letter and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((letter, sign))
    return GroupWord(alphabet, tuple(stack))


def apply_inverse(letter: str, g: "GroupWord | Word") -> GroupWord:
    """Apply the inverse of the generator morphism for ``letter``, syllable-wise.

    Inputs outside the generator's image come back with negative syllables;
    that is legal and used by intermediate calculations.
    """
    if isinstance(g, Word):
        g = GroupWord.from_word(g)
    a = g.alphabet.index(letter)
    out: list[tuple[int, int]] = []
    for l, s in g.syllables:
        if l == a:
            out.append((l, s))
        elif s > 0:
            out.append((a, -1))
            out.append((l, 1))
        else:
            out.append((l, -1))
            out.append((a, 1))
    return reduce_word(g.alphabet, out)


def is_separating(letter: str, w: Word) -> bool:
    """Whether every length-2 factor of ``w`` contains ``letter``."""
    a = w.alphabet.index(letter)
    idx = w.indices
    return all(idx[i] == a or idx[i + 1] == a for i in range(len(idx) - 1))


@dataclass(frozen=True)
class Permutation:
    """A bijection of the alphabet, applied letterwise."""

    alphabet: Alphabet
    mapping: tuple[int, ...]  # mapping[i] = image of letter i

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(self.alphabet.size)):
            raise ValueError("permutation mapping must be a bijection")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Permutation":
        return cls(alphabet, tuple(range(alphabet.size)))

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: dict[str, str]) -> "Permutation":
        mapping = list(range(alphabet.size))
        for src, dst in pairs.items():
            mapping[alphabet.index(src)] = alphabet.index(dst)
        return cls(alphabet, tuple(mapping))

    def apply_letter(self, index: int) -> int:
        return self.mapping[index]

    def apply_word(self, w: Word) -> Word:
        return Word(self.alphabet, tuple(self.mapping[i] for i in w.indices))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, m in enumerate(self.mapping):
            inv[m] = i
        return Permutation(self.alphabet, tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        return Permutation(self.alphabet, tuple(self.mapping[m] for m in other.mapping))


@dataclass(frozen=True)
class EpistandardMorphism:
    """A permutation followed by a pure composition: the normal form ``perm . pure``.

    Composition uses the exchange rule: a generator morphism commuted past a
    permutation becomes the generator of the preimage letter.
    """

    perm: Permutation
    pure: PureEpistandardMorphism

    @classmethod
    def from_pure(cls, pure: PureEpistandardMorphism) -> "EpistandardMorphism":
        return cls(Permutation.identity(pure.alphabet), pure)

    @classmethod
    def from_permutation(cls, perm: Permutation) -> "EpistandardMorphism":
        return cls(perm, identity(perm.alphabet))

    def apply_word(self, w: Word) -> Word:
        return self.perm.apply_word(self.pure.apply_word(w))

    def compose(self, other: "EpistandardMorphism") -> "EpistandardMorphism":
        # (p1.m1) . (p2.m2) = (p1.p2) . (p2^-1 m1 p2 . m2)
        inv = other.perm.inverse()
        renamed = PureEpistandardMorphism(
            self.pure.alphabet, tuple(inv.apply_letter(z) for z in self.pure.letters)
        )
        return EpistandardMorphism(
            self.perm.compose(other.perm), renamed.compose(other.pure)
        )

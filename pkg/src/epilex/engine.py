"""Standard episturmian word generation from directive words.

A directive word is an eventually periodic letter sequence.  Iterating the
palindromic right-closure over its letters produces a growing chain of
palindromic prefixes whose limit is the standard word.  The engine grows the
chain with the last-occurrence rule (each step extends the current prefix by
a computable suffix of itself), which is linear in the output; the closure
operator itself is kept as a separate, directly-testable operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .morphisms import MorphicImageStream, PureEpistandardMorphism
from .words import Alphabet, AlphabetError, Word, WordStream

__all__ = [
    "DirectiveWord",
    "DirectiveStream",
    "InternalConsistencyError",
    "NothingToDecompose",
    "ShiftChainRecord",
    "StrictnessReport",
    "as_directive",
    "builder_word",
    "decompose_nonstrict",
    "exact_horizon",
    "infer_eventually_periodic",
    "palindromic_closure",
    "palindromic_prefixes",
    "prefix_morphism",
    "recover_directive_letters",
    "shift_chain",
    "standard_word",
    "strictness",
]


class NothingToDecompose(ValueError):
    """The directive is already strict; there is no morphic shell to peel."""


class InternalConsistencyError(RuntimeError):
    """Two construction paths that must agree did not: an engine bug."""


@dataclass(frozen=True)
class DirectiveWord:
    """An eventually periodic letter sequence ``preperiod . period^infinity``."""

    alphabet: Alphabet
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("directive period must be non-empty")
        k = self.alphabet.size
        for i in self.preperiod + self.period:
            if not 0 <= i < k:
                raise AlphabetError(f"letter index {i} out of range")

    @classmethod
    def parse(cls, alphabet: Alphabet, preperiod: str | Sequence[str], period: str | Sequence[str]) -> "DirectiveWord":
        return cls(alphabet, alphabet.word(preperiod).indices, alphabet.word(period).indices)

    def letter(self, i: int) -> int:
        """The i-th directive letter, 1-indexed."""
        if i < 1:
            raise ValueError("directive letters are 1-indexed")
        i -= 1
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def shift(self, m: int) -> "DirectiveWord":
        """Drop the first ``m`` letters."""
        if m <= len(self.preperiod):
            return DirectiveWord(self.alphabet, self.preperiod[m:], self.period)
        r = (m - len(self.preperiod)) % len(self.period)
        return DirectiveWord(self.alphabet, (), self.period[r:] + self.period[:r])

    def alph(self) -> frozenset[int]:
        return frozenset(self.preperiod) | frozenset(self.period)

    def ult(self) -> frozenset[int]:
        """Letters occurring infinitely often; exact for eventually periodic sequences."""
        return frozenset(self.period)

    def letter_tokens(self, n: int) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[self.letter(i)] for i in range(1, n + 1))

    def __str__(self) -> str:
        pre = Word(self.alphabet, self.preperiod)
        per = Word(self.alphabet, self.period)
        return f"{pre}({per})"

    def __repr__(self) -> str:
        return f"DirectiveWord({str(self)!r})"


def palindromic_closure(w: Word) -> Word:
    """The shortest palindrome having ``w`` as a prefix.

    Computed as ``w`` followed by the mirror of what precedes its longest
    palindromic suffix; that suffix is found with a failure-function pass over
    ``reversal(w) # w``.
    """
    n = len(w)
    if n <= 1:
        return w
    idx = w.indices
    combined: list[int] = list(idx[::-1]) + [-1] + list(idx)
    fail = [0] * len(combined)
    k = 0
    for i in range(1, len(combined)):
        while k > 0 and combined[i] != combined[k]:
            k = fail[k - 1]
        if combined[i] == combined[k]:
            k += 1
        fail[i] = k
    lps = fail[-1]  # length of the longest palindromic suffix of w
    return Word(w.alphabet, idx + idx[: n - lps][::-1])


class _EngineState:
    """Growing palindromic-prefix chain of a standard word.

    ``buf`` always holds the largest computed palindromic prefix;
    ``prefix_lengths[i]`` is the length of the (i+1)-th palindromic prefix
    (the first has length 0).  One step consumes one directive letter: if the
    letter last occurred at directive position j, the new prefix is the old
    one extended by its own suffix past prefix j, otherwise extended by a copy
    of itself around the new letter.
    """

    def __init__(self, directive: DirectiveWord) -> None:
        self.directive = directive
        self.buf: list[int] = []
        self.prefix_lengths: list[int] = [0]
        self._last_occurrence: dict[int, int] = {}

    def step(self) -> None:
        n = len(self.prefix_lengths)  # consuming directive letter number n
        x = self.directive.letter(n)
        length = self.prefix_lengths[-1]
        j = self._last_occurrence.get(x)
        self.buf.append(x)
        if j is None:
            self.buf.extend(self.buf[:length])
            new_length = 2 * length + 1
        else:
            prev = self.prefix_lengths[j - 1]
            self.buf.extend(self.buf[prev + 1 : length])
            new_length = 2 * length - prev
        self._last_occurrence[x] = n
        self.prefix_lengths.append(new_length)

    def extend_to(self, n: int) -> None:
        while self.prefix_lengths[-1] < n:
            self.step()

    def prefix_length(self, i: int) -> int:
        """Length of the i-th palindromic prefix, 1-indexed."""
        while len(self.prefix_lengths) < i:
            self.step()
        return self.prefix_lengths[i - 1]


class DirectiveStream(WordStream):
    """The standard episturmian word directed by an eventually periodic sequence."""

    kind = "episturmian"

    def __init__(self, directive: DirectiveWord) -> None:
        super().__init__(directive.alphabet)
        self.directive = directive
        self._state = _EngineState(directive)

    def _extend(self, n: int) -> None:
        self._state.extend_to(n)
        self._buf = self._state.buf

    def palindromic_prefix_lengths(self, up_to: int) -> list[int]:
        """Lengths of the palindromic prefixes not exceeding ``up_to``."""
        with self._lock:
            self._state.extend_to(up_to)
            return [n for n in self._state.prefix_lengths if n <= up_to]


def standard_word(directive: DirectiveWord) -> DirectiveStream:
    """The limit of the palindromic-prefix chain of ``directive``."""
    return DirectiveStream(directive)


def palindromic_prefixes(directive: DirectiveWord, n: int) -> list[Word]:
    """The first ``n`` palindromic prefixes, built by iterating the closure."""
    if n < 1:
        raise ValueError("need at least one prefix")
    out = [directive.alphabet.empty()]
    for i in range(1, n):
        x = Word(directive.alphabet, (directive.letter(i),))
        out.append(palindromic_closure(out[-1] + x))
    return out


def prefix_morphism(directive: DirectiveWord, n: int) -> PureEpistandardMorphism:
    """Composition of the generator morphisms of the first ``n`` directive letters."""
    if n < 0:
        raise ValueError("morphism index must be >= 0")
    return PureEpistandardMorphism(
        directive.alphabet, tuple(directive.letter(i) for i in range(1, n + 1))
    )


def builder_word(directive: DirectiveWord, n: int) -> Word:
    """Image of directive letter n+1 under the n-th prefix morphism.

    These words are prefixes of the standard word, and concatenating them in
    reverse order yields the palindromic prefixes.
    """
    if n < 0:
        raise ValueError("builder index must be >= 0")
    mu = prefix_morphism(directive, n)
    return mu.apply_word(Word(directive.alphabet, (directive.letter(n + 1),)))


@dataclass(frozen=True)
class StrictnessReport:
    """Which letters the directive uses, which recur forever, and where the tail starts."""

    alph: frozenset[str]
    ult: frozenset[str]
    strict_over: frozenset[str] | None
    m: int

    @property
    def strict(self) -> bool:
        return self.strict_over is not None


def strictness(directive: DirectiveWord, alphabet: Alphabet | None = None) -> StrictnessReport:
    """Strictness analysis of a directive.

    ``m`` is the length of the shortest directive prefix containing every
    letter that does not recur forever; past it the tail uses exactly the
    recurring letters.
    """
    alphabet = alphabet or directive.alphabet
    alph_idx = directive.alph()
    ult_idx = directive.ult()
    toks = directive.alphabet.letters
    alph = frozenset(toks[i] for i in alph_idx)
    ult = frozenset(toks[i] for i in ult_idx)
    vanishing = alph_idx - ult_idx
    # Vanishing letters live only in the preperiod; m is the position of the
    # last of their occurrences, so that the tail past m uses exactly Ult.
    m = 0
    for pos, c in enumerate(directive.preperiod, start=1):
        if c in vanishing:
            m = pos
    strict_over = ult if alph_idx == ult_idx else None
    return StrictnessReport(alph=alph, ult=ult, strict_over=strict_over, m=m)


def decompose_nonstrict(directive: DirectiveWord) -> tuple[PureEpistandardMorphism, DirectiveWord]:
    """Split a non-strict directive into its morphic shell and strict core.

    Returns the prefix morphism over the shortest prefix holding all vanishing
    letters, together with the correspondingly shifted directive; applying the
    morphism to the core's standard word rebuilds the original one.
    """
    report = strictness(directive)
    if report.strict:
        raise NothingToDecompose(f"directive {directive} is already strict")
    mu = prefix_morphism(directive, report.m)
    return mu, directive.shift(report.m)


@dataclass(frozen=True)
class ShiftChainRecord:
    """Witness of one verified link of the shift chain."""

    i: int
    peeled_letter: str
    horizon: int
    parent_prefix: Word
    image_prefix: Word

    @property
    def ok(self) -> bool:
        return self.parent_prefix == self.image_prefix


def shift_chain(directive: DirectiveWord, i: int, horizon: int) -> ShiftChainRecord:
    """Check that the i-th shifted word, mapped back through one generator, matches.

    Raises :class:`InternalConsistencyError` on mismatch: the two construction
    paths must agree letter for letter.
    """
    if i < 1:
        raise ValueError("shift index must be >= 1")
    parent = standard_word(directive.shift(i - 1))
    child = standard_word(directive.shift(i))
    x = directive.letter(i)
    image = MorphicImageStream(
        PureEpistandardMorphism(directive.alphabet, (x,)), child
    )
    rec = ShiftChainRecord(
        i=i,
        peeled_letter=directive.alphabet.letters[x],
        horizon=horizon,
        parent_prefix=parent.prefix(horizon),
        image_prefix=image.prefix(horizon),
    )
    if not rec.ok:
        raise InternalConsistencyError(
            f"shift chain link {i} of {directive} diverges within horizon {horizon}"
        )
    return rec


def as_directive(stream: WordStream) -> DirectiveWord | None:
    """The directive an episturmian-equivalent stream realizes, if the kind reveals one.

    A morphic image of a directive stream is itself directed by the generator
    letters prepended to the inner directive.
    """
    if isinstance(stream, DirectiveStream):
        return stream.directive
    if isinstance(stream, MorphicImageStream):
        inner = as_directive(stream.inner)
        if inner is None:
            return None
        return DirectiveWord(
            inner.alphabet, stream.morphism.letters + inner.preperiod, inner.period
        )
    return None


@lru_cache(maxsize=4096)
def exact_horizon(directive: DirectiveWord, k: int) -> int:
    """A prefix length at which every length-``k`` factor has appeared.

    With at least two recurring letters, factors of length ``k`` assemble
    within one more directive round past the palindromic prefix of length
    ``2k``: the rule takes that prefix and continues the chain for
    preperiod+period+1 further steps.  With a single recurring letter the
    word is purely periodic (period: the image of the recurring letter under
    the preperiod morphism) and one period plus ``2k`` suffices.  Calibrated
    empirically; extremal results label anything below this horizon-limited.
    """
    if k <= 0:
        return 1
    state = _EngineState(directive)
    if len(directive.ult()) >= 2:
        i = 1
        while state.prefix_length(i) < 2 * k:
            i += 1
        lag = len(directive.preperiod) + len(directive.period) + 1
        return state.prefix_length(i + lag)
    report = strictness(directive)
    mu = prefix_morphism(directive, report.m)
    y = directive.letter(report.m + 1)
    cycle = len(mu.image_of(y))
    return cycle + 2 * k + 2


def recover_directive_letters(seq: Sequence[int]) -> list[int]:
    """Read the directive letters of a standard word off one of its prefixes.

    Each directive letter sits immediately after the previous palindromic
    prefix; lengths advance by the same last-occurrence rule the engine uses.
    Content is not revalidated here, so callers must check any inferred
    directive by regeneration.
    """
    lengths = [0]
    last: dict[int, int] = {}
    letters: list[int] = []
    while lengths[-1] < len(seq):
        n = len(lengths)
        x = seq[lengths[-1]]
        letters.append(x)
        length = lengths[-1]
        j = last.get(x)
        lengths.append(2 * length + 1 if j is None else 2 * length - lengths[j - 1])
        last[x] = n
    return letters


def infer_eventually_periodic(
    alphabet: Alphabet, letters: Sequence[int], max_period: int = 64
) -> DirectiveWord:
    """Smallest eventually periodic directive consistent with the observed letters.

    A candidate needs two full periods of evidence beyond the preperiod and a
    periodic tail covering at least half the observation, so an observation
    that merely ends in a repeated letter is not mistaken for an eventually
    constant directive.  Raises ``ValueError`` when no period up to
    ``max_period`` fits.
    """
    n = len(letters)
    for q in range(1, min(max_period, max(n // 2, 1)) + 1):
        r = 0
        for i in range(n - q - 1, -1, -1):
            if letters[i] != letters[i + q]:
                r = i + 1
                break
        if r + 2 * q <= n and r <= n // 2:
            return DirectiveWord(alphabet, tuple(letters[:r]), tuple(letters[r : r + q]))
    raise ValueError("no eventually periodic directive fits the observed letters")

"""Fineness: words whose minimal factors share one tail under every order.

A word is fine (up to a checked depth) when there is a single word s such
that, for every order on its letters, the minimal length-k factor is the
least letter followed by a prefix of s.  Structurally the fine words are the
strict standard episturmian words and the skew words assembled by
:func:`construct_skew`; :func:`classify` decides which, and cross-checks the
structural verdict against the empirical scan.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .engine import (
    DirectiveWord,
    InternalConsistencyError,
    exact_horizon,
    infer_eventually_periodic,
    recover_directive_letters,
    standard_word,
    strictness,
)
from .morphisms import MorphicImageStream, PureEpistandardMorphism, psi
from .words import (
    Alphabet,
    ConcatStream,
    LexOrder,
    LiteralPeriodicStream,
    Word,
    WordStream,
    all_orders,
)
from .extremal import minimal_window_positions

__all__ = [
    "Classification",
    "FinenessVerdict",
    "NotSkewForm",
    "SkewSpec",
    "SpecError",
    "Witness",
    "classify",
    "common_s",
    "construct_skew",
    "is_fine_empirical",
    "reconstruct_skew",
    "verify_min_transfer",
]


class SpecError(ValueError):
    """A skew-word specification violates its invariants."""


class NotSkewForm(ValueError):
    """The scanned word cannot be peeled into the skew normal form."""


@dataclass(frozen=True)
class SkewSpec:
    """Data of a skew word: ``suffix . morphism(core)``.

    ``directive`` directs the recurrent core, which must be strict over its
    own letters B; ``x`` is the one letter outside B.  The word prepended to
    the morphic image is the suffix, of length ``suffix_len``, of the morphism
    applied to (mirrored core prefix of length ``p``) followed by ``x``.
    Storing the length instead of the suffix itself keeps the suffix condition
    true by construction.
    """

    directive: DirectiveWord
    x: str
    p: int
    morphism: PureEpistandardMorphism
    suffix_len: int

    @property
    def alphabet(self) -> Alphabet:
        return self.morphism.alphabet

    def core_letters(self) -> frozenset[str]:
        toks = self.directive.alphabet.letters
        return frozenset(toks[i] for i in self.directive.alph())

    def seed_word(self) -> Word:
        """The morphic image of the mirrored core prefix followed by ``x``."""
        core = standard_word(self.directive)
        mirrored = core.prefix(self.p).reversal()
        marker = Word(self.alphabet, (self.alphabet.index(self.x),))
        return self.morphism.apply_word(mirrored + marker)

    def suffix_word(self) -> Word:
        seed = self.seed_word()
        return seed[len(seed) - self.suffix_len :]

    def validate(self) -> None:
        if self.p < 0:
            raise SpecError("mirrored prefix length must be >= 0")
        if self.directive.alphabet != self.alphabet:
            raise SpecError("core directive and morphism must share an alphabet")
        if self.x not in self.alphabet:
            raise SpecError(f"letter {self.x!r} is not in the alphabet")
        x_idx = self.alphabet.index(self.x)
        core = self.directive.alph()
        if x_idx in core:
            raise SpecError(f"letter {self.x!r} must stay out of the recurrent core")
        report = strictness(self.directive)
        if not report.strict:
            raise SpecError(f"core directive {self.directive} is not strict")
        if any(z != x_idx and z not in core for z in self.morphism.letters):
            raise SpecError("morphism generators must stay inside the word's letters")
        seed_len = len(self.seed_word())
        if not 1 <= self.suffix_len <= seed_len:
            raise SpecError(
                f"suffix length {self.suffix_len} out of range 1..{seed_len}"
            )


def construct_skew(spec: SkewSpec) -> ConcatStream:
    """The stream ``suffix . morphism(core)`` described by ``spec``."""
    spec.validate()
    image = MorphicImageStream(spec.morphism, standard_word(spec.directive))
    return ConcatStream(spec.suffix_word(), image)


def skew_common_word(spec: SkewSpec) -> WordStream:
    """The word shared by all minimal factors of the skew word: the morphic core image."""
    return MorphicImageStream(spec.morphism, standard_word(spec.directive))


class Classification(Enum):
    STRICT_EPISTURMIAN = "StrictEpisturmian"
    SKEW_EPISTURMIAN = "SkewEpisturmian"
    NOT_FINE = "NotFine"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Witness:
    """A reproducible refutation of fineness at one order and length."""

    order: LexOrder
    k: int
    factor: Word
    required: Word
    reason: str  # "smaller-factor" or "required-missing"


@dataclass(frozen=True)
class FinenessVerdict:
    classification: Classification
    depth: int
    strict_alphabet: frozenset[str] | None = None
    skew: SkewSpec | None = None
    s_prefix: Word | None = None
    witness: Witness | None = None

    @property
    def fine_to_depth(self) -> bool:
        return self.classification is not Classification.NOT_FINE


def _present_tokens(stream: WordStream, seq: Sequence[int]) -> list[str]:
    toks = stream.alphabet.letters
    seen = set(seq)
    return [toks[i] for i in range(len(toks)) if i in seen]


def is_fine_empirical(t: WordStream, depth: int, horizon: int) -> FinenessVerdict:
    """Scan every order on the letters of ``t`` for a shared minimal-factor tail.

    Returns ``UNKNOWN`` with the common tail when the word is fine up to
    ``depth``, else ``NOT_FINE`` with the first offending (order, length,
    factor) found.  The number of orders is factorial in the number of
    distinct letters; keep alphabets small.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if horizon < 2 * depth:
        raise ValueError("horizon must be at least twice the depth")
    seq = t.raw(horizon)
    present = _present_tokens(t, seq)
    orders = all_orders(t.alphabet, subset=present)
    s_ref: list[int] | None = None
    for order in orders:
        rank = order.ranks
        chain = minimal_window_positions(seq, rank, depth)
        a_idx = min((i for i in set(seq)), key=lambda i: rank[i])
        if s_ref is None:
            p = chain[depth - 1][0]
            s_ref = seq[p + 1 : p + depth]
        for k in range(1, min(depth, len(chain)) + 1):
            p = chain[k - 1][0]
            actual = seq[p : p + k]
            required = [a_idx] + s_ref[: k - 1]
            if actual != required:
                reason = (
                    "smaller-factor"
                    if [rank[c] for c in actual] < [rank[c] for c in required]
                    else "required-missing"
                )
                return FinenessVerdict(
                    classification=Classification.NOT_FINE,
                    depth=depth,
                    witness=Witness(
                        order=order,
                        k=k,
                        factor=Word(t.alphabet, tuple(actual)),
                        required=Word(t.alphabet, tuple(required)),
                        reason=reason,
                    ),
                )
    assert s_ref is not None
    return FinenessVerdict(
        classification=Classification.UNKNOWN,
        depth=depth,
        s_prefix=Word(t.alphabet, tuple(s_ref)),
    )


def common_s(t: WordStream, depth: int, horizon: int) -> Word | None:
    """The shared minimal-factor tail, when the word is fine up to ``depth``.

    Over a two-letter alphabet the maximal factors must pair up with the same
    tail under the greatest letter; that is verified too, and a mismatch means
    no common word is reported.
    """
    verdict = is_fine_empirical(t, depth, horizon)
    if not verdict.fine_to_depth or verdict.s_prefix is None:
        return None
    seq = t.raw(horizon)
    present = _present_tokens(t, seq)
    if len(present) == 2:
        s_ref = list(verdict.s_prefix.indices)
        top = t.alphabet.size - 1
        for order in all_orders(t.alphabet, subset=present):
            inverted = [top - r for r in order.ranks]
            chain = minimal_window_positions(seq, inverted, depth)
            b_idx = max((i for i in set(seq)), key=lambda i: order.ranks[i])
            for k in range(1, min(depth, len(chain)) + 1):
                p = chain[k - 1][0]
                if seq[p : p + k] != [b_idx] + s_ref[: k - 1]:
                    return None
    return verdict.s_prefix


def _min_chain_matches(
    seq: Sequence[int], rank: Sequence[int], expected: Sequence[int], depth: int
) -> bool:
    """Whether min(seq|k) equals expected[:k] for every k up to depth."""
    chain = minimal_window_positions(seq, rank, depth)
    if len(chain) < depth or len(expected) < depth:
        return False
    for k in range(1, depth + 1):
        p = chain[k - 1][0]
        if seq[p : p + k] != list(expected[:k]):
            return False
    return True


def verify_min_transfer(
    t1: WordStream, s1: WordStream, z: str, a: str, depth: int, horizon: int
) -> bool:
    """Check the transfer of minimal factors through one generator morphism.

    For every order: the source pair satisfies min = a . s1 exactly when the
    image pair satisfies min = (z a . s) or (a . s), the first branch when z
    ranks below a.  Returns whether the two sides agree under all orders.
    """
    if t1.alphabet != s1.alphabet:
        raise ValueError("both streams must share an alphabet")
    alphabet = t1.alphabet
    a_idx = alphabet.index(a)
    z_idx = alphabet.index(z)
    gen = psi(alphabet, z)
    t_seq = MorphicImageStream(gen, t1).raw(horizon)
    s_img = MorphicImageStream(gen, s1).raw(depth + 2)
    t1_seq = t1.raw(horizon)
    s1_pref = s1.raw(depth + 1)
    lhs_expected = [a_idx] + s1_pref
    for order in all_orders(alphabet):
        rank = order.ranks
        lhs = _min_chain_matches(t1_seq, rank, lhs_expected, depth)
        if rank[z_idx] < rank[a_idx]:
            rhs_expected = [z_idx, a_idx] + s_img
        else:
            rhs_expected = [a_idx] + s_img
        rhs = _min_chain_matches(t_seq, rank, rhs_expected, depth)
        if lhs != rhs:
            return False
    return True


def _classify_directive(
    directive: DirectiveWord, depth: int, horizon: int | None
) -> FinenessVerdict:
    stream = standard_word(directive)
    h = max(horizon or 0, exact_horizon(directive, depth), 2 * depth)
    emp = is_fine_empirical(stream, depth, h)
    report = strictness(directive)
    if report.strict:
        if not emp.fine_to_depth:
            raise InternalConsistencyError(
                f"strict directive {directive} failed the empirical scan: {emp.witness}"
            )
        expected_s = stream.prefix(depth - 1)
        if emp.s_prefix != expected_s:
            raise InternalConsistencyError(
                f"strict directive {directive}: common tail differs from the word itself"
            )
        return FinenessVerdict(
            classification=Classification.STRICT_EPISTURMIAN,
            depth=depth,
            strict_alphabet=report.strict_over,
            s_prefix=emp.s_prefix,
        )
    # A non-strict directive never yields a fine word; the scan supplies the
    # witness when one exists within the checked depth.
    return FinenessVerdict(
        classification=Classification.NOT_FINE,
        depth=depth,
        witness=emp.witness,
    )


def _classify_skew(spec: SkewSpec, depth: int, horizon: int | None) -> FinenessVerdict:
    spec.validate()
    stream = construct_skew(spec)
    composed = DirectiveWord(
        spec.alphabet,
        spec.morphism.letters + spec.directive.preperiod,
        spec.directive.period,
    )
    h = max(horizon or 0, spec.suffix_len + exact_horizon(composed, depth) + depth, 2 * depth)
    emp = is_fine_empirical(stream, depth, h)
    if not emp.fine_to_depth:
        raise InternalConsistencyError(
            f"skew spec {spec} failed the empirical scan: {emp.witness}"
        )
    expected_s = skew_common_word(spec).prefix(depth - 1)
    if emp.s_prefix != expected_s:
        raise InternalConsistencyError(
            f"skew spec {spec}: common tail differs from the morphic core image"
        )
    return FinenessVerdict(
        classification=Classification.SKEW_EPISTURMIAN,
        depth=depth,
        skew=spec,
        s_prefix=emp.s_prefix,
    )


def _classify_literal(
    stream: LiteralPeriodicStream, depth: int, horizon: int | None
) -> FinenessVerdict:
    h = max(
        horizon or 0,
        2 * depth,
        4 * (len(stream.head) + len(stream.cycle)) + 8 * depth,
    )
    letters = set(stream.raw(h))
    if len(letters) == 1:
        # The one-letter periodic word is the degenerate strict case.
        tok = stream.alphabet.letters[next(iter(letters))]
        emp = is_fine_empirical(stream, depth, h)
        if not emp.fine_to_depth:
            raise InternalConsistencyError("one-letter word failed the empirical scan")
        return FinenessVerdict(
            classification=Classification.STRICT_EPISTURMIAN,
            depth=depth,
            strict_alphabet=frozenset((tok,)),
            s_prefix=emp.s_prefix,
        )
    try:
        spec = reconstruct_skew(stream, depth, h)
    except NotSkewForm:
        emp = is_fine_empirical(stream, depth, h)
        if emp.fine_to_depth:
            return replace(emp, classification=Classification.UNKNOWN)
        return FinenessVerdict(
            classification=Classification.NOT_FINE, depth=depth, witness=emp.witness
        )
    return _classify_skew(spec, depth, horizon)


def classify(
    spec: DirectiveWord | SkewSpec | LiteralPeriodicStream,
    depth: int,
    horizon: int | None = None,
) -> FinenessVerdict:
    """Exact fineness classification of a structured description.

    Directive words classify by strictness, skew specifications by their
    invariants, and literal ultimately periodic words by attempted peeling.
    Every structural verdict is cross-checked against the empirical scan, and
    a disagreement raises :class:`InternalConsistencyError` rather than being
    swallowed.
    """
    if isinstance(spec, DirectiveWord):
        return _classify_directive(spec, depth, horizon)
    if isinstance(spec, SkewSpec):
        return _classify_skew(spec, depth, horizon)
    if isinstance(spec, LiteralPeriodicStream):
        return _classify_literal(spec, depth, horizon)
    raise TypeError(f"cannot classify {type(spec).__name__}")


def _separating_letters(seq: Sequence[int]) -> list[int]:
    out = []
    for c in set(seq):
        if all(seq[i] == c or seq[i + 1] == c for i in range(len(seq) - 1)):
            out.append(c)
    return out


def _peel(seq: list[int], z: int) -> list[int]:
    """Invert one generator on a prefix known to have ``z`` separating.

    The image of every letter starts with ``z``, so the preimage is read off
    by splitting at each ``z``; a trailing lone ``z`` is ambiguous (it may be
    a truncated two-letter image) and is dropped.
    """
    if seq[0] != z:
        seq = [z] + seq
    out: list[int] = []
    i = 0
    n = len(seq)
    while i < n:
        if seq[i] != z:
            raise NotSkewForm("peeling desynchronized; letter is not separating")
        if i + 1 >= n:
            break
        if seq[i + 1] == z:
            out.append(z)
            i += 1
        else:
            out.append(seq[i + 1])
            i += 2
    return out


def reconstruct_skew(t: WordStream, depth: int, horizon: int) -> SkewSpec:
    """Recover a skew specification from a stream by peeling separating letters.

    Peels one generator at a time until some letter occurs exactly once in the
    scanned prefix, reads the core directive off the remainder, and chooses
    the longest seed suffix that regenerates the scanned prefix.  ``depth``
    (when positive) runs the empirical fineness scan first as a cheap gate.
    Raises :class:`NotSkewForm` whenever any stage fails.
    """
    seq = t.raw(horizon)
    if depth > 0:
        gate = is_fine_empirical(t, depth, max(horizon, 2 * depth))
        if not gate.fine_to_depth:
            raise NotSkewForm(f"not fine within depth {depth}: {gate.witness}")
    alphabet = t.alphabet
    gens: list[int] = []
    for _ in range(64):
        counts = Counter(seq)
        unique = [c for c, n in counts.items() if n == 1]
        if len(unique) > 1:
            raise NotSkewForm("several letters occur exactly once in the scanned prefix")
        if len(unique) == 1:
            x = unique[0]
            i = seq.index(x)
            head, tail = seq[:i], seq[i + 1 :]
            if len(tail) <= len(head) or len(tail) < 4:
                raise NotSkewForm("horizon too short past the unique letter")
            if head != tail[: len(head)][::-1]:
                raise NotSkewForm("prefix before the unique letter does not mirror the core")
            return _assemble_spec(t, alphabet, gens, x, head, tail, horizon)
        seps = _separating_letters(seq)
        if not seps:
            raise NotSkewForm("no separating letter to peel")
        if len(seps) > 1:
            raise NotSkewForm("prefix alternates two letters; periodic, not skew")
        z = seps[0]
        seq = _peel(seq, z)
        gens.append(z)
        if len(seq) < 8:
            raise NotSkewForm("horizon exhausted while peeling")
    raise NotSkewForm("peeling did not terminate")


def _assemble_spec(
    t: WordStream,
    alphabet: Alphabet,
    gens: list[int],
    x: int,
    head: list[int],
    tail: list[int],
    horizon: int,
) -> SkewSpec:
    try:
        core = infer_eventually_periodic(alphabet, recover_directive_letters(tail))
    except ValueError as exc:
        raise NotSkewForm(str(exc)) from None
    morphism = PureEpistandardMorphism(alphabet, tuple(gens))
    base = SkewSpec(
        directive=core,
        x=alphabet.letters[x],
        p=len(head),
        morphism=morphism,
        suffix_len=1,
    )
    try:
        base.validate()
    except SpecError as exc:
        raise NotSkewForm(str(exc)) from None
    seed = base.seed_word().indices
    image = MorphicImageStream(morphism, standard_word(core))
    t_seq = t.raw(horizon)
    for ell in range(len(seed), 0, -1):
        if list(seed[len(seed) - ell :]) != t_seq[:ell]:
            continue
        if image.raw(horizon - ell) == t_seq[ell:]:
            return replace(base, suffix_len=ell)
    raise NotSkewForm("no suffix of the seed regenerates the scanned prefix")

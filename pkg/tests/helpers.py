"""Shared brute-force oracles and random generators for the test suite.

Everything here is deliberately naive and independent of the library's fast
paths: closures by trying candidate lengths, reduction by rescanning to a
fixpoint, preimages by exhaustive search.  Expected values frozen in the
tests were produced by these oracles.
"""

from __future__ import annotations

import random
from itertools import product

from epilex import (
    Alphabet,
    DirectiveWord,
    PureEpistandardMorphism,
    SkewSpec,
    Word,
)

LETTERS = "abcd"


def brute_closure(w: Word) -> Word:
    """Shortest palindrome with prefix w: try candidates from shortest up."""
    for d in range(len(w) + 1):
        tail = w.indices[d:]
        if tail == tail[::-1]:
            return Word(w.alphabet, w.indices + w.indices[:d][::-1])
    raise AssertionError("unreachable: the doubled word is always a candidate")


def brute_reduce(alphabet: Alphabet, syllables: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Repeated single-pass cancellation until a fixpoint."""
    current = list(syllables)
    while True:
        out: list[tuple[int, int]] = []
        i = 0
        changed = False
        while i < len(current):
            if (
                i + 1 < len(current)
                and current[i][0] == current[i + 1][0]
                and current[i][1] == -current[i + 1][1]
            ):
                i += 2
                changed = True
            else:
                out.append(current[i])
                i += 1
        current = out
        if not changed:
            return tuple(current)


def brute_preimage_exists(morphism: PureEpistandardMorphism, w: Word) -> bool:
    """Exhaustively search for a positive preimage of w."""
    k = w.alphabet.size
    for n in range(len(w) + 1):
        for combo in product(range(k), repeat=n):
            if morphism.apply_word(Word(w.alphabet, combo)) == w:
                return True
    return False


def all_words(alphabet: Alphabet, max_len: int):
    for n in range(max_len + 1):
        for combo in product(range(alphabet.size), repeat=n):
            yield Word(alphabet, combo)


def random_directive(
    rng: random.Random,
    max_alpha: int = 4,
    max_pre: int = 3,
    max_per: int = 5,
    min_alpha: int = 1,
) -> DirectiveWord:
    """Eventually periodic directive whose alphabet is exactly its letters."""
    k = rng.randint(min_alpha, max_alpha)
    alphabet = Alphabet(tuple(LETTERS[:k]))
    while True:
        pre = [rng.randrange(k) for _ in range(rng.randint(0, max_pre))]
        per = [rng.randrange(k) for _ in range(rng.randint(1, max_per))]
        if set(pre) | set(per) == set(range(k)):
            return DirectiveWord(alphabet, tuple(pre), tuple(per))


def random_strict_directive(
    rng: random.Random, max_alpha: int = 4, max_pre: int = 3, max_per: int = 5
) -> DirectiveWord:
    """Directive with every letter recurring: the period covers the alphabet."""
    k = rng.randint(1, max_alpha)
    alphabet = Alphabet(tuple(LETTERS[:k]))
    while True:
        per = [rng.randrange(k) for _ in range(rng.randint(max(1, k), max_per + k))]
        if set(per) != set(range(k)):
            continue
        pre = [rng.randrange(k) for _ in range(rng.randint(0, max_pre))]
        return DirectiveWord(alphabet, tuple(pre), tuple(per))


def random_canonical_skew(rng: random.Random, max_alpha: int = 4) -> SkewSpec:
    """A skew spec in the canonical round-trippable form.

    The core period covers its letters, the morphism is empty or ends with the
    marker letter, and the suffix is the full seed: those are exactly the
    specs whose (p, marker, morphism length) survive a reconstruction.
    """
    k = rng.randint(2, max_alpha)
    alphabet = Alphabet(tuple(LETTERS[:k]))
    x_idx = rng.randrange(k)
    core_letters = [i for i in range(k) if i != x_idx]
    while True:
        per = [rng.choice(core_letters) for _ in range(rng.randint(1, 3))]
        if set(per) == set(core_letters):
            break
    pre = [rng.choice(core_letters) for _ in range(rng.randint(0, 2))]
    directive = DirectiveWord(alphabet, tuple(pre), tuple(per))
    p = rng.randint(0, 6)
    if rng.random() < 0.4:
        gens: tuple[int, ...] = ()
    else:
        gens = tuple(rng.randrange(k) for _ in range(rng.randint(0, 1))) + (x_idx,)
    morphism = PureEpistandardMorphism(alphabet, gens)
    spec = SkewSpec(
        directive=directive,
        x=alphabet.letters[x_idx],
        p=p,
        morphism=morphism,
        suffix_len=1,
    )
    full = len(spec.seed_word())
    return SkewSpec(
        directive=directive,
        x=alphabet.letters[x_idx],
        p=p,
        morphism=morphism,
        suffix_len=full,
    )


def chain_words(seq: list[int], ranks, depth: int) -> list[list[int]]:
    """min(seq|k) for k = 1..depth, via the library's position chain."""
    from epilex.extremal import minimal_window_positions

    chain = minimal_window_positions(seq, ranks, depth)
    return [seq[ps[0] : ps[0] + k] for k, ps in enumerate(chain, start=1)]

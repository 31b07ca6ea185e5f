"""Lexicographically extremal factors of finite words and streams.

The smallest length-k factor is computed by tracking every occurrence of the
current minimum and extending one letter at a time, which also yields the
whole chain of minima cheaply.  A deliberately naive sort-based oracle is kept
alongside for cross-checking; it shares no code with the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .engine import as_directive, exact_horizon
from .words import AlphabetError, LengthError, LexOrder, Word, WordStream

__all__ = [
    "Exactness",
    "ExtremalResult",
    "max_factor",
    "max_stream",
    "min_factor",
    "min_stream",
    "minimal_window_positions",
    "oracle_max",
    "oracle_min",
]


class Exactness(Enum):
    EXACT = "exact"
    HORIZON_LIMITED = "horizon-limited"


@dataclass(frozen=True)
class ExtremalResult:
    """An extremal factor together with the scan parameters that produced it."""

    word: Word
    k: int
    order: LexOrder
    horizon: int
    exactness: Exactness

    @property
    def exact(self) -> bool:
        return self.exactness is Exactness.EXACT


def _rescan_positions(seq: Sequence[int], rank: Sequence[int], k: int) -> list[int]:
    # Full window scan; only reached when every current minimum is flush with
    # the end of the scanned prefix.
    best: tuple[int, ...] | None = None
    out: list[int] = []
    for p in range(len(seq) - k + 1):
        key = tuple(rank[c] for c in seq[p : p + k])
        if best is None or key < best:
            best = key
            out = [p]
        elif key == best:
            out.append(p)
    return out


def minimal_window_positions(seq: Sequence[int], rank: Sequence[int], k_max: int) -> list[list[int]]:
    """For each k = 1..k_max, all start positions of the rank-minimal window.

    Positions for k+1 are the extendable positions for k that continue with
    the smallest letter; if none extends, the scan restarts from scratch.
    """
    n = len(seq)
    k_max = min(k_max, n)
    if k_max < 1:
        return []
    best = min(rank[c] for c in seq)
    positions = [i for i, c in enumerate(seq) if rank[c] == best]
    out = [positions]
    for k in range(2, k_max + 1):
        live = [p for p in positions if p + k <= n]
        if live:
            best = min(rank[seq[p + k - 1]] for p in live)
            positions = [p for p in live if rank[seq[p + k - 1]] == best]
        else:
            positions = _rescan_positions(seq, rank, k)
        out.append(positions)
    return out


def _min_position(seq: Sequence[int], rank: Sequence[int], k: int) -> int:
    return minimal_window_positions(seq, rank, k)[-1][0]


def _stream_exactness(w: WordStream, k: int, order: LexOrder, horizon: int, rank: Sequence[int]) -> Exactness:
    directive = as_directive(w)
    if directive is not None:
        return Exactness.EXACT if horizon >= exact_horizon(directive, k) else Exactness.HORIZON_LIMITED
    # Unstructured kinds: accept the scan as complete only if doubling the
    # horizon does not change the answer.
    seq = w.raw(horizon)
    seq2 = w.raw(2 * horizon)
    p1 = _min_position(seq, rank, k)
    p2 = _min_position(seq2, rank, k)
    same = seq[p1 : p1 + k] == seq2[p2 : p2 + k]
    return Exactness.EXACT if same else Exactness.HORIZON_LIMITED


def _extremal(w: Word | WordStream, k: int, order: LexOrder, horizon: int | None, invert: bool) -> ExtremalResult:
    if isinstance(w, Word):
        if k > len(w):
            raise LengthError(f"factor length {k} exceeds word length {len(w)}")
        seq: Sequence[int] = w.indices
        horizon = len(w)
        exactness = Exactness.EXACT
        alphabet = w.alphabet
    else:
        if horizon is None:
            raise ValueError("streams need an explicit horizon")
        if horizon < k:
            raise LengthError(f"horizon {horizon} is smaller than factor length {k}")
        seq = w.raw(horizon)
        alphabet = w.alphabet
        exactness = None  # filled below
    if alphabet != order.alphabet:
        raise AlphabetError("order alphabet does not match the word alphabet")
    rank: Sequence[int] = order.ranks
    if invert:
        top = alphabet.size - 1
        rank = [top - r for r in order.ranks]
    if k == 0:
        return ExtremalResult(
            word=Word(alphabet, ()), k=0, order=order, horizon=horizon, exactness=Exactness.EXACT
        )
    p = _min_position(seq, rank, k)
    word = Word(alphabet, tuple(seq[p : p + k]))
    if exactness is None:
        assert isinstance(w, WordStream)
        exactness = _stream_exactness(w, k, order, horizon, rank)
    return ExtremalResult(word=word, k=k, order=order, horizon=horizon, exactness=exactness)


def min_factor(w: Word | WordStream, k: int, order: LexOrder, horizon: int | None = None) -> ExtremalResult:
    """The lexicographically least length-``k`` factor seen within the horizon."""
    return _extremal(w, k, order, horizon, invert=False)


def max_factor(w: Word | WordStream, k: int, order: LexOrder, horizon: int | None = None) -> ExtremalResult:
    """The lexicographically greatest length-``k`` factor seen within the horizon."""
    return _extremal(w, k, order, horizon, invert=True)


def _limit_word(w: WordStream, order: LexOrder, horizon: int, invert: bool) -> Word:
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    k = max(1, horizon // 2)
    rank: Sequence[int] = order.ranks
    if invert:
        top = order.alphabet.size - 1
        rank = [top - r for r in order.ranks]
    directive = as_directive(w)
    if directive is not None:
        scan = max(horizon, exact_horizon(directive, k))
        seq = w.raw(scan)
        p = _min_position(seq, rank, k)
        return Word(w.alphabet, tuple(seq[p : p + k]))
    # No structural bound: deepen the scan until the answer stops moving.
    scan = max(horizon, 2 * k)
    seq = w.raw(scan)
    p = _min_position(seq, rank, k)
    word = seq[p : p + k]
    for _ in range(6):
        scan *= 2
        seq = w.raw(scan)
        p = _min_position(seq, rank, k)
        nxt = seq[p : p + k]
        if nxt == word:
            break
        word = nxt
    return Word(w.alphabet, tuple(word))


def min_stream(w: WordStream, order: LexOrder, horizon: int) -> Word:
    """The longest prefix of the limit of minimal factors the horizon supports.

    The chain of minima extends letter by letter, so its element at length
    ``horizon // 2`` is that prefix.  The internal scan is deepened past the
    horizon until the answer is stable (structurally for directive-backed
    streams, by doubling otherwise); the horizon only bounds the returned
    length.
    """
    return _limit_word(w, order, horizon, invert=False)


def max_stream(w: WordStream, order: LexOrder, horizon: int) -> Word:
    """Mirror of :func:`min_stream` for the greatest factors."""
    return _limit_word(w, order, horizon, invert=True)


def oracle_min(w: Word, k: int, order: LexOrder) -> Word:
    """Brute-force reference: sort every window and take the first."""
    if k > len(w):
        raise LengthError(f"factor length {k} exceeds word length {len(w)}")
    if k == 0:
        return Word(w.alphabet, ())
    ranks = order.ranks
    windows = [tuple(ranks[c] for c in w.indices[i : i + k]) for i in range(len(w) - k + 1)]
    least = sorted(windows)[0]
    inverse = {r: i for i, r in enumerate(ranks)}
    return Word(w.alphabet, tuple(inverse[r] for r in least))


def oracle_max(w: Word, k: int, order: LexOrder) -> Word:
    """Brute-force reference: sort every window and take the last."""
    if k > len(w):
        raise LengthError(f"factor length {k} exceeds word length {len(w)}")
    if k == 0:
        return Word(w.alphabet, ())
    ranks = order.ranks
    windows = [tuple(ranks[c] for c in w.indices[i : i + k]) for i in range(len(w) - k + 1)]
    greatest = sorted(windows)[-1]
    inverse = {r: i for i, r in enumerate(ranks)}
    return Word(w.alphabet, tuple(inverse[r] for r in greatest))

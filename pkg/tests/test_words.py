import pytest
from hypothesis import given, strategies as st

from epilex import (
    Alphabet,
    AlphabetError,
    CallbackStream,
    LexOrder,
    LiteralPeriodicStream,
    Ordering,
    Side,
    Word,
    all_orders,
    compare,
    complexity,
    factor_sets_equal,
    factors,
    is_palindrome,
    prefix,
    reversal,
    special_factors,
    standard_word,
)
from epilex.textio import parse_directive

AB = Alphabet.of("a", "b")
ABC = Alphabet.of("a", "b", "c")


def fib(alphabet=AB):
    return standard_word(parse_directive(alphabet, "(ab)"))


def trib():
    return standard_word(parse_directive(ABC, "(abc)"))


# --- alphabets and words ---------------------------------------------------

def test_alphabet_rejects_duplicates_and_reserved():
    with pytest.raises(ValueError):
        Alphabet.of("a", "a")
    with pytest.raises(ValueError):
        Alphabet.of("a", "b,c")
    with pytest.raises(ValueError):
        Alphabet(())


def test_word_basics():
    w = AB.word("abaab")
    assert len(w) == 5
    assert str(w) == "abaab"
    assert w[0] == "a"
    assert str(w[1:3]) == "ba"
    assert str(w + AB.word("ba")) == "abaabba"
    with pytest.raises(AlphabetError):
        AB.word("abc")


def test_multichar_alphabet_words_are_comma_separated():
    big = Alphabet.of("aa", "bb")
    w = big.word("aa,bb,aa")
    assert str(w) == "aa,bb,aa"
    assert w.tokens() == ("aa", "bb", "aa")


def test_reversal_and_palindromes():
    assert str(reversal(AB.word("abaa"))) == "aaba"
    assert is_palindrome(AB.word(""))
    assert is_palindrome(AB.word("abaaba"))
    assert not is_palindrome(AB.word("ab"))


@given(st.lists(st.integers(0, 2), max_size=30))
def test_reversal_is_involutive(indices):
    w = Word(ABC, tuple(indices))
    assert reversal(reversal(w)) == w


# --- lexicographic comparison ----------------------------------------------

def test_compare_examples():
    order = LexOrder.default(AB)
    assert compare(AB.word("aab"), AB.word("aba"), order) is Ordering.LESS
    assert compare(AB.word("ab"), AB.word("aba"), order) is Ordering.LESS  # proper prefix
    # Under c<a<b the second letters compare c < a, so "ca" > "cc".
    cab = LexOrder.from_letters(ABC, "cab")
    assert compare(ABC.word("ca"), ABC.word("cc"), cab) is Ordering.GREATER
    assert compare(ABC.word("cc"), ABC.word("ca"), cab) is Ordering.LESS


def test_compare_rejects_mismatched_alphabets():
    with pytest.raises(AlphabetError):
        compare(AB.word("a"), ABC.word("a"), LexOrder.default(AB))


def test_compare_is_a_total_order_exhaustively():
    # All words of length <= 4 over three letters, every order: compare must
    # agree with the rank-sequence key, which is a total order.
    from helpers import all_words

    words = list(all_words(ABC, 4))
    for order in all_orders(ABC):
        keys = {w: order.key(w) for w in words}
        for u in words[::7]:
            for v in words:
                got = compare(u, v, order)
                expect = (
                    Ordering.EQUAL
                    if keys[u] == keys[v]
                    else Ordering.LESS if keys[u] < keys[v] else Ordering.GREATER
                )
                assert got is expect


def test_all_orders_enumeration_is_deterministic():
    described = [o.describe() for o in all_orders(ABC)]
    assert described[0] == "a<b<c"
    assert described == sorted(set(described), key=described.index)
    assert len(described) == 6


# --- factors ----------------------------------------------------------------

def test_factors_examples():
    got = {str(f) for f in factors(AB.word("abaab"), 2)}
    assert got == {"ab", "ba", "aa"}
    assert factors(AB.word("abaab"), 0) == {AB.word("")}
    assert {str(f) for f in factors(fib().prefix(20), 3)} == {"aab", "aba", "baa", "bab"}
    assert factors(AB.word("ab"), 5) == set()


@given(st.lists(st.integers(0, 1), min_size=1, max_size=25), st.integers(0, 6))
def test_factors_reversal_invariance(indices, k):
    w = Word(AB, tuple(indices))
    left = {f.reversal() for f in factors(w, k)}
    assert left == factors(w.reversal(), k)


def test_special_factors():
    assert {str(f) for f in special_factors(fib().prefix(50), 1, Side.LEFT)} == {"a"}
    assert {str(f) for f in special_factors(trib().prefix(100), 0, Side.RIGHT)} == {""}
    assert len(factors(trib().prefix(100), 1)) == 3  # the empty factor has 3 extensions
    assert special_factors(AB.word("aaaa"), 1, Side.RIGHT) == set()


# --- streams ----------------------------------------------------------------

def test_prefix_examples():
    assert str(prefix(fib(), 14)) == "abaababaabaaba"
    assert prefix(fib(), 0) == AB.word("")
    ababa = LiteralPeriodicStream(AB.word(""), AB.word("ab"))
    assert str(prefix(ababa, 5)) == "ababa"


def test_literal_stream_requires_nonempty_cycle():
    with pytest.raises(ValueError):
        LiteralPeriodicStream(AB.word("a"), AB.word(""))


def test_stream_prefixes_are_monotone_and_deterministic():
    s = fib()
    p30 = s.prefix(30)
    assert s.prefix(12) == p30[:12]
    assert s.prefix(30) == p30


def test_complexity_examples():
    assert complexity(fib(), 5, 200) == 6
    assert complexity(trib(), 10, 2000) == 21
    assert complexity(fib(), 0, 1) == 1


def test_complexity_formulas_at_spec_horizons():
    f = fib()
    assert all(complexity(f, n, 5000) == n + 1 for n in range(1, 51))
    t = trib()
    assert all(complexity(t, n, 20000) == 2 * n + 1 for n in range(1, 51))


def test_factor_sets_equal():
    assert factor_sets_equal(fib(), fib(), 10, 500)
    shifted = CallbackStream(AB, lambda n: fib().raw(n + 1)[1:])
    assert factor_sets_equal(fib(), shifted, 8, 500)
    assert not factor_sets_equal(fib(), trib(), 2, 500)


def test_concurrent_stream_extension_is_safe():
    import threading

    s = fib()
    results = []

    def reader(n):
        results.append(s.prefix(n))

    threads = [threading.Thread(target=reader, args=(500 + 37 * i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    long = s.prefix(800)
    for r in results:
        assert r == long[: len(r)]

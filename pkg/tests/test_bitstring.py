from itertools import product

import pytest

from praegerxu.bitstring import (BitWord, bit_int, flip, flip_int, is_palindrome, parity, rev_int,
                                 reversal_table, reverse)


def w(s):
    return BitWord.parse(s)


def all_words(k):
    return [BitWord(bits) for bits in product((0, 1), repeat=k)]


@pytest.mark.parametrize("x, expected", [("001", "100"), ("101", "101"), ("0110", "0110"), ("0010", "0100")])
def test_reverse_examples(x, expected):
    assert reverse(w(x)) == w(expected)


@pytest.mark.parametrize("x, j, expected", [("000", 1, "010"), ("111", 0, "011")])
def test_flip_examples(x, j, expected):
    assert flip(w(x), j) == w(expected)


def test_flip_out_of_range():
    with pytest.raises(IndexError):
        flip(w("01"), 2)
    with pytest.raises(IndexError):
        flip(w("01"), -1)


@pytest.mark.parametrize("x, expected", [("00", "even"), ("01", "odd"), ("11", "even")])
def test_parity_examples(x, expected):
    assert parity(w(x)) == expected


def test_palindromes():
    assert is_palindrome(w("010"))
    assert not is_palindrome(w("011"))
    assert is_palindrome(w("0")) and is_palindrome(w("1"))


def test_encoding_is_msb_first():
    assert int(w("011")) == 3
    assert int(w("100")) == 4
    assert BitWord.from_int(6, 4) == w("0110")
    assert str(BitWord.from_int(1, 3)) == "001"


def test_words_of_different_length_differ():
    assert w("0") != w("00")
    assert int(w("0")) == int(w("00"))


@pytest.mark.parametrize("bad", ["", "012", "1 0", "x"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        BitWord.parse(bad)


def test_length_limits():
    with pytest.raises(ValueError):
        BitWord(())
    with pytest.raises(ValueError):
        BitWord((0,) * 25)
    with pytest.raises(ValueError):
        BitWord.from_int(8, 3)


def test_reverse_involution_exhaustive():
    for k in range(1, 13):
        table = reversal_table(k)
        v = list(range(1 << k))
        assert list(table[table]) == v
        if k <= 8:
            for x in all_words(k):
                assert reverse(reverse(x)) == x
                assert int(reverse(x)) == rev_int(int(x), k) == table[int(x)]


def test_flip_involution_and_commutation():
    for k in range(1, 7):
        for x in all_words(k):
            for j in range(k):
                assert flip(flip(x, j), j) == x
                assert parity(flip(x, j)) != parity(x)
                assert int(flip(x, j)) == flip_int(int(x), j, k)
                assert bit_int(int(x), j, k) == x[j]
                for jj in range(k):
                    if jj != j:
                        assert flip(flip(x, j), jj) == flip(flip(x, jj), j)


def test_reversal_table_read_only():
    with pytest.raises(ValueError):
        reversal_table(3)[0] = 1

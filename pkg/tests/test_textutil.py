import random

from hearinglens.textutil import (
    is_capitalized,
    is_word,
    norm_tokens_with_map,
    normalize_text,
    normalize_token,
    tokenize,
    word_count,
)


def test_word_count_examples():
    assert word_count("") == 0
    assert word_count("I support this bill .") == 4
    assert word_count("aye") == 1


def test_word_count_ignores_punctuation_tokens():
    assert word_count("well , yes ; okay !") == 3
    assert word_count("... --- ???") == 0


def test_word_count_whitespace_invariance():
    rng = random.Random(7)
    base_tokens = ["We", "support", "this", "bill", ".", "Thank", "you"]
    expected = word_count(" ".join(base_tokens))
    for _ in range(200):
        glue = ["".join(rng.choices([" ", "\t", "\n"], k=rng.randint(1, 4))) for _ in base_tokens]
        messy = "".join(g + t for g, t in zip(glue, base_tokens)) + rng.choice(["", "  ", "\n"])
        assert word_count(messy) == expected


def test_normalize_token():
    assert normalize_token("A.C.L.U.") == "aclu"
    assert normalize_token("Media,") == "media"
    assert normalize_token("...") == ""
    assert normalize_token("123") == "123"


def test_normalize_text_idempotent():
    rng = random.Random(3)
    alphabet = "AbC.,; -'\"xyz"
    for _ in range(300):
        text = "".join(rng.choices(alphabet, k=rng.randint(0, 30)))
        once = normalize_text(text)
        assert normalize_text(once) == once


def test_norm_tokens_with_map():
    tokens = tokenize("Hello , World !")
    norm, back = norm_tokens_with_map(tokens)
    assert norm == ["hello", "world"]
    assert back == [0, 2]
    assert [tokens[i] for i in back] == ["Hello", "World"]


def test_is_word_and_capitalized():
    assert is_word("bill") and not is_word(";")
    assert is_capitalized("Sierra") and is_capitalized('"Quoted')
    assert not is_capitalized("club") and not is_capitalized("123")

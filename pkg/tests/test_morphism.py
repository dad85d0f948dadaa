from __future__ import annotations

import pytest

from conftest import random_square_free_word, random_word
from src.constructor import construct
from src.morphism import (
    BERSTEL_WORDS,
    CROCHEMORE_WORDS,
    TernaryMorphism,
    apply,
    berstel_test,
    crochemore_test,
    from_images,
    from_seed,
)
from src.squarefree import find_square, witness_holds
from src.types import CertificateMethod
from src.words import EMPTY, cyclic_shift, word


def test_test_word_sets():
    assert len(BERSTEL_WORDS) == 12
    assert str(BERSTEL_WORDS[0]) == "010"
    assert len(CROCHEMORE_WORDS) == 69
    assert all(find_square(w) is None for w in CROCHEMORE_WORDS)


def test_from_seed():
    m = from_seed(word("012"))
    assert [str(image) for image in m.images] == ["012", "120", "201"]
    assert m.uniform and m.cyclic_shift_form
    assert m.width == 3
    assert [str(image) for image in from_seed(word("2")).images] == ["2", "0", "1"]


def test_from_seed_rejects_empty_seed():
    with pytest.raises(ValueError):
        from_seed(EMPTY)


def test_morphism_rejects_empty_images():
    with pytest.raises(ValueError):
        from_images([word("0"), EMPTY, word("2")])
    with pytest.raises(ValueError):
        TernaryMorphism((word("0"), word("1")))  # type: ignore[arg-type]


def test_non_uniform_metadata():
    m = from_images([word("0"), word("12"), word("2")])
    assert not m.uniform
    assert not m.cyclic_shift_form
    with pytest.raises(ValueError):
        _ = m.width


def test_apply():
    m = from_seed(word("012"))
    assert apply(m, word("0")) == word("012")
    image = apply(m, word("01"))
    assert image == word("012120")
    assert find_square(image) is not None
    assert apply(m, EMPTY) == EMPTY


def test_berstel_counterexample():
    certificate = berstel_test(from_seed(word("012")))
    assert certificate.method is CertificateMethod.BERSTEL_3
    assert not certificate.verdict
    assert certificate.tested_words == 12
    assert certificate.counterexample.word == "010"
    witness = certificate.counterexample.image_witness
    assert (witness.start, witness.half_length) == (1, 2)
    assert witness_holds(apply(from_seed(word("012")), word("010")), witness)


def test_crochemore_counterexample():
    certificate = crochemore_test(from_seed(word("012")))
    assert not certificate.verdict
    assert certificate.tested_words == 69
    assert certificate.counterexample.word == "01"


def test_length_one_seed_is_square_free():
    assert berstel_test(from_seed(word("0"))).verdict
    assert crochemore_test(from_images([word("0"), word("1"), word("2")])).verdict


def test_appendix_seed_13(appendix):
    m = from_seed(appendix[13])
    certificate = berstel_test(m)
    assert certificate.verdict
    assert certificate.counterexample is None
    image = apply(m, word("012"))
    assert len(image) == 39
    assert find_square(image) is None


def test_berstel_rejects_non_uniform():
    with pytest.raises(ValueError):
        berstel_test(from_images([word("0"), word("12"), word("2")]))


def test_muller_morphisms_pass_crochemore(muller):
    for images in muller.values():
        assert crochemore_test(from_images(images)).verdict


@pytest.mark.parametrize("n", [13, 23, 60, 123])
def test_certified_morphisms_map_random_square_free_words_to_square_free_words(n, rng):
    certified = construct(n)
    assert certified.certificate.verdict
    for _ in range(1000):
        w = random_square_free_word(rng, 50)
        assert find_square(apply(certified.morphism, w)) is None


@pytest.mark.parametrize("n", [20, 21, 22])
def test_muller_morphisms_map_random_square_free_words_to_square_free_words(n, muller, rng):
    m = from_images(muller[n])
    assert crochemore_test(m).verdict
    for _ in range(200):
        w = random_square_free_word(rng, 40)
        image = apply(m, w)
        assert len(image) == sum(len(m.images[a]) for a in w)
        assert find_square(image) is None


def test_berstel_and_crochemore_agree_on_uniform_morphisms(rng, appendix):
    seeds = [appendix[n] for n in (13, 18, 31)]
    seeds += [random_word(rng, rng.randrange(1, 12)) for _ in range(40)]
    for seed in seeds:
        m = from_seed(seed)
        assert berstel_test(m).verdict == crochemore_test(m).verdict


def test_morphism_laws(rng, appendix):
    m = from_seed(appendix[19])
    for _ in range(50):
        u = random_word(rng, rng.randrange(0, 20))
        v = random_word(rng, rng.randrange(0, 20))
        assert apply(m, u + v) == apply(m, u) + apply(m, v)
        assert apply(m, cyclic_shift(u, 1)) == cyclic_shift(apply(m, u), 1)

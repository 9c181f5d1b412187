import math

import pytest

from src.characters import (Character, all_characters, character_table, class_size, cycle_type,
                            induce_character, induce_to, invariant_dims, partitions_of,
                            projector_rank, representative, unordered_table, verify_theorem_c)
from src.e1_page import build_e1, differential
from src.errors import SignConsistencyError
from src.spectral import UNORDERED, e2


def test_partitions_and_classes():
    assert partitions_of(0) == [()]
    assert partitions_of(3) == [(1, 1, 1), (2, 1), (3,)]
    for n in range(1, 6):
        assert sum(class_size(lam) for lam in partitions_of(n)) == math.factorial(n)
    assert class_size((2, 1)) == 3
    assert cycle_type((1, 2, 0)) == (3,)
    for lam in partitions_of(4):
        assert cycle_type(representative(lam)) == lam


def test_character_arithmetic():
    assert Character.trivial(3) + Character.zero(3) == Character.trivial(3)
    assert Character.regular(3).dim == 6
    assert invariant_dims(Character.regular(3)) == 1
    assert invariant_dims(Character.trivial(4)) == 1
    with pytest.raises(ValueError):
        Character.trivial(2) + Character.trivial(3)
    with pytest.raises(SignConsistencyError):
        invariant_dims(Character(2, {(1, 1): 1, (2,): 0}))


def test_induction():
    assert induce_character(Character.trivial(1)) == Character(2, {(1, 1): 2, (2,): 0})
    assert induce_to(Character.trivial(0), 3) == Character.regular(3)
    # Ind of the trivial character of S_2 to S_3 is the permutation character on 3 points
    assert induce_to(Character.trivial(2), 3).as_list() == [3, 1, 0]
    with pytest.raises(ValueError):
        induce_to(Character.trivial(3), 2)


def test_induction_preserves_invariants(line):
    # Frobenius reciprocity with the trivial character: <Ind chi, 1> = <chi, 1>
    samples = [Character.trivial(2), Character.regular(3), Character(2, {(1, 1): 1, (2,): -1})]
    page, e2_page = _pieces(line, 1, 2)
    samples.extend(all_characters(page, e2_page).values())
    for character in samples:
        assert invariant_dims(induce_character(character)) == invariant_dims(character)
        assert induce_character(character).dim == (character.n + 1) * character.dim


def _pieces(model, r, n):
    page = differential(build_e1(model, r, n))
    return page, e2(page)


def test_punctured_line_two_points(line):
    page, e2_page = _pieces(line, 1, 2)
    characters = all_characters(page, e2_page)
    assert characters[(1, 1, 1)].as_list() == [3, 1]
    assert characters[(2, 2, 2)].as_list() == [2, 0]
    assert invariant_dims(characters[(1, 1, 1)]) == 2
    assert invariant_dims(characters[(2, 2, 2)]) == 1
    for level, character in characters.items():
        assert projector_rank(page, e2_page, level) == invariant_dims(character)


def test_braid_characters(line):
    page, e2_page = _pieces(line, 0, 3)
    top = character_table(page, e2_page, (2, 2, 2))
    # H^2(F(C, 3)) has no invariants
    assert top.dim == 2
    assert invariant_dims(top) == 0


def test_unordered_table(line):
    characters = {n: all_characters(*_pieces(line, 1, n)) for n in range(3)}
    table = unordered_table(characters, "Conf(C*)")
    assert table.kind == UNORDERED
    assert table.betti(2) == [1, 2, 1]
    assert (2, 1, 1, 1, 2) in table.rows()


def test_character_identity_on_the_line(line):
    chars_x = {n: all_characters(*_pieces(line, 0, n)) for n in range(5)}
    chars_xp = {n: all_characters(*_pieces(line, 1, n)) for n in range(5)}
    report = verify_theorem_c(chars_xp, chars_x, 1)
    assert report["pass"], report["first_failure"]
    assert 4 in {level["n"] for level in report["levels"]}
    assert report["levels"]


def test_character_identity_detects_mismatch(line):
    chars_x = {n: all_characters(*_pieces(line, 0, n)) for n in range(3)}
    report = verify_theorem_c(chars_x, chars_x, 1)
    assert not report["pass"]
    assert report["first_failure"]["n"] >= 1


@pytest.mark.slow
def test_character_identity_on_the_once_punctured_elliptic_curve(once_punctured_elliptic):
    chars_x = {n: all_characters(*_pieces(once_punctured_elliptic, 0, n)) for n in range(4)}
    chars_xp = {n: all_characters(*_pieces(once_punctured_elliptic, 1, n)) for n in range(4)}
    assert verify_theorem_c(chars_xp, chars_x, 1)["pass"]

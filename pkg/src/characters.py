"""
symmetric group characters on E2 levels, induction and invariants
"""
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import partitions

from src.e1_page import sn_action
from src.errors import SignConsistencyError
from src.linalg import SparseMatrix, rank
from src.spectral import UNORDERED, HodgeTable


def partitions_of(n):
    """partitions of n as descending tuples, identity class (1,...,1) first"""
    if n == 0:
        return [()]
    found = []
    for part in partitions(n):
        cycle = []
        for length, count in part.items():
            cycle.extend([length] * count)
        found.append(tuple(sorted(cycle, reverse=True)))
    return sorted(found)


def cycle_type(sigma):
    """partition of the cycle lengths of a permutation tuple"""
    if not sigma:
        return ()
    structure = Permutation(list(sigma)).cycle_structure
    cycle = []
    for length, count in structure.items():
        cycle.extend([length] * count)
    return tuple(sorted(cycle, reverse=True))


def representative(partition):
    """permutation with consecutive cycles of the given lengths"""
    sigma = []
    start = 0
    for length in partition:
        block = list(range(start, start + length))
        sigma.extend(block[1:] + block[:1])
        start += length
    return tuple(sigma)


def centralizer_order(partition):
    order = 1
    for length in set(partition):
        count = partition.count(length)
        order *= length ** count * math.factorial(count)
    return order


def class_size(partition):
    return math.factorial(sum(partition)) // centralizer_order(partition)


@dataclass
class Character:
    """class function on S_n, keyed by cycle type"""
    n: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {lam: Fraction(self.values.get(lam, 0)) for lam in partitions_of(self.n)}

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def trivial(cls, n):
        return cls(n, {lam: 1 for lam in partitions_of(n)})

    @classmethod
    def regular(cls, n):
        return cls(n, {lam: (math.factorial(n) if all(x == 1 for x in lam) else 0)
                       for lam in partitions_of(n)})

    @property
    def dim(self):
        return self.values[(1,) * self.n]

    def __getitem__(self, partition):
        return self.values[tuple(partition)]

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError(f"cannot add characters of S_{self.n} and S_{other.n}")
        return Character(self.n, {lam: self.values[lam] + other.values[lam] for lam in self.values})

    def __eq__(self, other):
        return isinstance(other, Character) and self.n == other.n and self.values == other.values

    def is_zero(self):
        return not any(self.values.values())

    def as_list(self):
        """values in partitions_of order"""
        return [self.values[lam] for lam in partitions_of(self.n)]

    def to_dict(self):
        return {",".join(str(x) for x in lam) or "()": str(v) for lam, v in self.values.items()}


def invariant_dims(character):
    """dimension of the S_n invariants: (1/n!) sum_sigma chi(sigma)"""
    n = character.n
    total = sum(class_size(lam) * value for lam, value in character.values.items())
    average = Fraction(total, math.factorial(n))
    if average.denominator != 1 or average < 0:
        raise SignConsistencyError(
            f"invariant dimension {average} of a character of S_{n} is not a nonnegative integer",
            {"character": character.to_dict()})
    return int(average)


def induce_character(character):
    """Ind from S_n to S_{n+1}: chi(lambda) = m_1(lambda) * chi(lambda minus a fixed point)"""
    n = character.n + 1
    values = {}
    for lam in partitions_of(n):
        fixed = lam.count(1)
        if fixed == 0:
            values[lam] = 0
        else:
            smaller = list(lam)
            smaller.remove(1)
            values[lam] = fixed * character.values[tuple(smaller)]
    return Character(n, values)


def induce_to(character, n):
    """Ind from S_{character.n} up to S_n"""
    if n < character.n:
        raise ValueError(f"cannot induce from S_{character.n} down to S_{n}")
    for _ in range(n - character.n):
        character = induce_character(character)
    return character


def level_keys(e2_page, level):
    """E2 keys (k + t, t, p, q) making up gr H^k at (p, q)"""
    k, p, q = level
    return [key for key in e2_page.levels if key[0] - key[1] == k and key[2] == p and key[3] == q]


def character_table(page, e2_page, level):
    """character of gr H^i at hodge type (p, q), level = (i, p, q)"""
    keys = level_keys(e2_page, level)
    values = {}
    for lam in partitions_of(page.n):
        if all(x == 1 for x in lam):
            values[lam] = sum(e2_page.levels[key].dim for key in keys)
            continue
        action = sn_action(page, representative(lam))
        values[lam] = sum((e2_page.trace(action, key) for key in keys), Fraction(0))
    return Character(page.n, values)


def all_characters(page, e2_page):
    """{(i, p, q): Character} for every nonzero level of H^*(F(X_r, n))"""
    levels = sorted({(i - j, p, q) for (i, j, p, q), level in e2_page.levels.items() if level.dim})
    return {level: character_table(page, e2_page, level) for level in levels}


def projector_rank(page, e2_page, level):
    """rank of the averaging projector (1/n!) sum sigma on the E2 representatives"""
    total = 0
    n = page.n
    for key in level_keys(e2_page, level):
        e2_level = e2_page.levels[key]
        if not e2_level.dim:
            continue
        acc = SparseMatrix(e2_level.dim, e2_level.dim)
        for sigma in itertools.permutations(range(n)):
            induced = e2_level.induced_matrix(sn_action(page, sigma)[key])
            acc = acc + induced
        total += rank(acc)
    return total


def unordered_table(characters_by_n, label=""):
    """Conf^n hodge table from the invariant dimensions of each level"""
    table = HodgeTable(UNORDERED, label)
    for n, characters in sorted(characters_by_n.items()):
        for (i, p, q), character in sorted(characters.items()):
            table.add(n, i, p, q, invariant_dims(character))
    return table


def verify_theorem_c(chars_xp, chars_x, d, n_values=None):
    """
    compare chi of gr H^i(F(X - P, n)) at (p, q) with
    sum_t Ind_{S_{n-t}}^{S_n} chi of gr H^{i-(2d-1)t}(F(X, n-t)) at (p - dt, q - dt)

    chars_xp and chars_x map n -> {(i, p, q): Character}
    """
    if n_values is None:
        n_values = sorted(set(chars_xp) & set(chars_x))
    compared = []
    first_failure = None
    for n in n_values:
        levels = set(chars_xp.get(n, {}))
        for t in range(n + 1):
            for (i, p, q) in chars_x.get(n - t, {}):
                levels.add((i + (2 * d - 1) * t, p + d * t, q + d * t))
        for level in sorted(levels):
            i, p, q = level
            lhs = chars_xp.get(n, {}).get(level, Character.zero(n))
            rhs = Character.zero(n)
            for t in range(n + 1):
                source = (i - (2 * d - 1) * t, p - d * t, q - d * t)
                piece = chars_x.get(n - t, {}).get(source)
                if piece is not None:
                    rhs = rhs + induce_to(piece, n)
            ok = lhs == rhs
            record = {"n": n, "i": i, "p": p, "q": q,
                      "lhs": [str(v) for v in lhs.as_list()],
                      "rhs": [str(v) for v in rhs.as_list()],
                      "pass": ok}
            compared.append(record)
            if not ok and first_failure is None:
                first_failure = record
    return {
        "identity": "theorem-c",
        "levels": compared,
        "pass": first_failure is None,
        "first_failure": first_failure,
    }

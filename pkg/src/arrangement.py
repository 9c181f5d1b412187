"""
diagonal + puncture arrangement on X^n: intersection lattice and
orlik-solomon algebra with no-broken-circuit bases
"""
import itertools
import math
from dataclasses import dataclass

from sympy.utilities.iterables import multiset_partitions

import config
from src.errors import ResourceGuardError
from src.linalg import SparseMatrix, rank

DIAGONAL = "diagonal"
PUNCTURE = "puncture"


@dataclass(frozen=True)
class Generator:
    """g_ij (kind diagonal, i < j) or g_i^s (kind puncture); coordinates are 0-based"""
    kind: str
    i: int
    j: int = -1
    s: int = 0

    @property
    def label(self):
        if self.kind == DIAGONAL:
            return f"g{self.i + 1}{self.j + 1}"
        return f"g{self.i + 1}^{self.s}"

    def relabel(self, mapping):
        """apply a coordinate map (sequence or dict) to the subscripts"""
        if self.kind == DIAGONAL:
            return diagonal(mapping[self.i], mapping[self.j])
        return puncture(mapping[self.i], self.s)


def diagonal(i, j):
    if i == j:
        raise ValueError("a diagonal generator needs two distinct coordinates")
    return Generator(DIAGONAL, min(i, j), max(i, j))


def puncture(i, s):
    return Generator(PUNCTURE, i, s=s)


def generators(n, r):
    """global order: punctures sorted by (s, i), then diagonals lexicographically"""
    gens = [puncture(i, s) for s in range(1, r + 1) for i in range(n)]
    gens.extend(diagonal(i, j) for i, j in itertools.combinations(range(n), 2))
    return gens


@dataclass(frozen=True)
class Stratum:
    """
    intersection stratum indexed by a coloring of [n] (0 = uncolored) and a
    partition of the uncolored coordinates into blocks sorted by minimum
    """
    colors: tuple
    blocks: tuple

    @property
    def n(self):
        return len(self.colors)

    @property
    def rank(self):
        return self.n - len(self.blocks)

    def lies_on(self, gen):
        """True when the stratum is contained in the hypersurface of gen"""
        if gen.kind == PUNCTURE:
            return self.colors[gen.i] == gen.s
        ci, cj = self.colors[gen.i], self.colors[gen.j]
        if ci or cj:
            return ci == cj
        return self.block_of(gen.i) == self.block_of(gen.j)

    def block_of(self, coordinate):
        for k, block in enumerate(self.blocks):
            if coordinate in block:
                return k
        return None

    def satisfies(self, other):
        """True when self is contained in other (every constraint of other holds)"""
        for i, s in enumerate(other.colors):
            if s and self.colors[i] != s:
                return False
        for block in other.blocks:
            first = block[0]
            for coordinate in block[1:]:
                if not self.lies_on(diagonal(first, coordinate)):
                    return False
        return True

    def label(self):
        parts = []
        for i, s in enumerate(self.colors):
            if s:
                parts.append(f"x{i + 1}=P{s}")
        for block in self.blocks:
            if len(block) > 1:
                parts.append("=".join(f"x{c + 1}" for c in block))
        return ", ".join(parts) if parts else "X^n"


def meet(n, gens):
    """intersection of the hypersurfaces of gens, or None when it is empty"""
    parent = list(range(n))
    color = [0] * n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in gens:
        if gen.kind == DIAGONAL:
            a, b = find(gen.i), find(gen.j)
            if a == b:
                continue
            if color[a] and color[b] and color[a] != color[b]:
                return None
            parent[b] = a
            color[a] = color[a] or color[b]
        else:
            a = find(gen.i)
            if color[a] and color[a] != gen.s:
                return None
            color[a] = gen.s
    colors = tuple(color[find(i)] for i in range(n))
    groups = {}
    for i in range(n):
        if not colors[i]:
            groups.setdefault(find(i), []).append(i)
    blocks = tuple(sorted(tuple(group) for group in groups.values()))
    return Stratum(colors, blocks)


def _set_partitions(elements):
    if not elements:
        yield ()
        return
    for partition in multiset_partitions(list(elements)):
        yield tuple(sorted(tuple(sorted(block)) for block in partition))


class StrataLattice:
    """all strata (chi, ~) for given n, r with their order and mobius numbers"""

    def __init__(self, n, r):
        self.n = n
        self.r = r
        strata = []
        for colors in itertools.product(range(r + 1), repeat=n):
            free = [i for i in range(n) if colors[i] == 0]
            for blocks in _set_partitions(free):
                strata.append(Stratum(colors, blocks))
        strata.sort(key=lambda F: (F.rank, F.colors, F.blocks))
        self.strata = strata
        self.position = {F: k for k, F in enumerate(strata)}
        self._mobius = None

    def __len__(self):
        return len(self.strata)

    def __iter__(self):
        return iter(self.strata)

    @property
    def top(self):
        """the whole space X^n (rank 0)"""
        return self.strata[0]

    def ranks(self):
        return [F.rank for F in self.strata]

    def above(self, F):
        """strata strictly containing F"""
        return [G for G in self.strata if G != F and F.satisfies(G)]

    def mobius(self):
        """{stratum: mu(F, X^n)} by recursion down from the whole space"""
        if self._mobius is None:
            mu = {}
            for F in self.strata:
                if F.rank == 0:
                    mu[F] = 1
                else:
                    mu[F] = -sum(mu[G] for G in self.above(F))
            self._mobius = mu
        return self._mobius


def mobius_number(F):
    """mu(F, X^n) in closed form: (-1)^rank prod (|B|-1)! over blocks, times prod k_s! over colors"""
    value = (-1) ** F.rank
    for block in F.blocks:
        value *= math.factorial(len(block) - 1)
    for s in set(F.colors) - {0}:
        value *= math.factorial(F.colors.count(s))
    return value


def build_strata(n, r):
    return StrataLattice(n, r)


def sort_with_sign(seq):
    """sort a sequence of distinct odd elements; returns (sign, sorted tuple)"""
    items = list(seq)
    sign = 1
    for a in range(len(items)):
        for b in range(len(items) - 1 - a):
            if items[b] > items[b + 1]:
                items[b], items[b + 1] = items[b + 1], items[b]
                sign = -sign
    return sign, tuple(items)


class OSAlgebra:
    """
    orlik-solomon algebra of the arrangement, monomials written as sorted
    tuples of generator indices; normal_form rewrites into the nbc basis
    """

    def __init__(self, n, r):
        self.n = n
        self.r = r
        self.gens = generators(n, r)
        self.gen_index = {gen: k for k, gen in enumerate(self.gens)}
        self._meet_cache = {}
        self._reduce_cache = {}
        self.nbc = self._enumerate_nbc()
        self.nbc_by_stratum = {}
        for S in self.nbc:
            self.nbc_by_stratum.setdefault(self.meet(S), []).append(S)
        self.nbc_set = set(self.nbc)

    def index(self, gen):
        return self.gen_index[gen]

    def meet(self, S):
        key = tuple(S)
        if key not in self._meet_cache:
            self._meet_cache[key] = meet(self.n, [self.gens[k] for k in key])
        return self._meet_cache[key]

    def is_independent(self, S):
        F = self.meet(S)
        return F is not None and F.rank == len(S)

    def _broken_circuit_witness(self, S):
        """(position, h) with h < S[position] in the closure of S[position:], or None"""
        for position in range(len(S)):
            F = self.meet(S[position:])
            for h in range(S[position]):
                if F.lies_on(self.gens[h]):
                    return position, h
        return None

    def is_nbc(self, S):
        return self.is_independent(S) and self._broken_circuit_witness(S) is None

    def _enumerate_nbc(self):
        found = [()]
        frontier = [()]
        while frontier:
            grown = []
            for S in frontier:
                start = S[-1] + 1 if S else 0
                for g in range(start, len(self.gens)):
                    candidate = S + (g,)
                    if self.is_nbc(candidate):
                        grown.append(candidate)
            found.extend(grown)
            frontier = grown
        return sorted(found, key=lambda S: (len(S), S))

    def basis(self, F):
        """nbc basis of A_F"""
        return self.nbc_by_stratum.get(F, [])

    def dims_by_rank(self):
        dims = {}
        for S in self.nbc:
            dims[len(S)] = dims.get(len(S), 0) + 1
        return [dims.get(k, 0) for k in range(max(dims) + 1)]

    def normal_form(self, seq):
        """product of generators in the given order, as {nbc tuple: int}"""
        if len(set(seq)) < len(seq):
            return {}
        sign, S = sort_with_sign(seq)
        reduced = self._reduce(S)
        if sign == 1:
            return dict(reduced)
        return {T: -c for T, c in reduced.items()}

    def _reduce(self, S):
        if S in self._reduce_cache:
            return self._reduce_cache[S]
        result = {}
        if self.is_independent(S):
            witness = self._broken_circuit_witness(S)
            if witness is None:
                result = {S: 1}
            else:
                result = self._rewrite_broken_circuit(S, *witness)
        self._reduce_cache[S] = result
        return result

    def _rewrite_broken_circuit(self, S, position, h):
        # shrink the suffix to a minimal T with h in its closure
        T = list(S[position:])
        for t in list(T):
            rest = [x for x in T if x != t]
            if rest and self.meet(tuple(rest)).lies_on(self.gens[h]):
                T = rest
        rest_of_S = [x for x in S if x not in T]
        sign, _ = sort_with_sign(T + rest_of_S)
        # S = sign * T * rest in that order; T reordered by the sort above
        circuit = sorted(T + [h])
        result = {}
        for k in range(1, len(circuit)):
            term = [x for m, x in enumerate(circuit) if m != k]
            coeff = sign * (1 if k % 2 else -1)
            for U, c in self.normal_form(term + rest_of_S).items():
                value = result.get(U, 0) + coeff * c
                if value:
                    result[U] = value
                else:
                    result.pop(U, None)
        return result

    def multiply(self, S, T):
        return self.normal_form(tuple(S) + tuple(T))

    def boundary(self, S):
        """d(e_S) = sum_k (-1)^k e_{S - s_k} for an nbc monomial S"""
        out = {}
        for k in range(len(S)):
            face = S[:k] + S[k + 1:]
            for U, c in self.normal_form(face).items():
                value = out.get(U, 0) + (-1 if k % 2 else 1) * c
                if value:
                    out[U] = value
                else:
                    out.pop(U, None)
        return out

    def boundary_of_combination(self, combo):
        out = {}
        for S, c in combo.items():
            for U, v in self.boundary(S).items():
                value = out.get(U, 0) + c * v
                if value:
                    out[U] = value
                else:
                    out.pop(U, None)
        return out


def os_algebra(n, r):
    return OSAlgebra(n, r)


def circuits(n, gens):
    """minimal dependent sets with nonempty intersection"""
    found = []
    for size in range(2, n + 2):
        for C in itertools.combinations(range(len(gens)), size):
            F = meet(n, [gens[k] for k in C])
            if F is None or F.rank == size:
                continue
            minimal = all(
                meet(n, [gens[k] for k in C if k != drop]).rank == size - 1 for drop in C)
            if minimal:
                found.append(C)
    return found


def brute_force_os_dims(n, r, max_generators=None):
    """
    dimensions of B / I per degree, with B the exterior algebra on all
    generators and I spanned by vanishing monomials and e_T * d(e_C) for
    circuits C
    """
    if max_generators is None:
        max_generators = config.ORACLE_MAX_GENERATORS
    gens = generators(n, r)
    if len(gens) > max_generators:
        raise ResourceGuardError(
            f"OS oracle needs {len(gens)} generators, limit is {max_generators}",
            size=len(gens), ceiling=max_generators)
    count = len(gens)
    alive = {}
    for size in range(count + 1):
        for S in itertools.combinations(range(count), size):
            if meet(n, [gens[k] for k in S]) is not None:
                alive[S] = True
    circuit_list = circuits(n, gens)

    dims = []
    for degree in range(count + 1):
        columns = [S for S in alive if len(S) == degree]
        if not columns:
            break
        position = {S: k for k, S in enumerate(columns)}
        relations = []
        for C in circuit_list:
            extra = degree - (len(C) - 1)
            if extra < 0:
                continue
            for T in itertools.combinations(range(count), extra):
                row = {}
                for k in range(len(C)):
                    face = C[:k] + C[k + 1:]
                    if set(face) & set(T):
                        continue
                    sign, U = sort_with_sign(T + face)
                    if U not in position:
                        continue
                    coeff = sign * (-1 if k % 2 else 1)
                    value = row.get(position[U], 0) + coeff
                    if value:
                        row[position[U]] = value
                    else:
                        row.pop(position[U], None)
                if row:
                    relations.append(row)
        dims.append(len(columns) - rank(SparseMatrix.from_rows(len(columns), relations)))
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims

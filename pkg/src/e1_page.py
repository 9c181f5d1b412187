"""
the E1 page of the arrangement spectral sequence for F(X_r, n)

basis: one element per (stratum F, class of H^*(F), nbc monomial of A_F).
H^*(F) is the tensor power of H^*(X-bar) over the uncolored blocks of F,
and A_F sits in bidegree (2d rank, rank) with hodge type (d rank, d rank).
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import config
from src.arrangement import DIAGONAL, OSAlgebra, StrataLattice, generators, sort_with_sign
from src.errors import ResourceGuardError, SignConsistencyError
from src.linalg import SparseMatrix, rank, vec_axpy
from src.variety import multiply_combinations, tensor_degree, tensor_multiply


@dataclass(frozen=True)
class BasisElement:
    stratum: object
    classes: tuple
    monomial: tuple


def estimate_basis_size(model, r, n):
    """
    number of E1 basis elements, in closed form
    sum over strata of |mu(F)| m^blocks: f uncolored points contribute the
    rising factorial m(m+1)...(m+f-1), the n-f colored points spread over r
    punctures contribute (n-f)! times the number of compositions
    """
    m = len(model.classes)
    total = 0
    for free in range(n + 1):
        colored = n - free
        if colored and not r:
            continue
        placements = math.comb(colored + r - 1, r - 1) if r else 1
        rising = math.prod(range(m, m + free))
        total += math.comb(n, free) * rising * math.factorial(colored) * placements
    return total


class E1Page:
    def __init__(self, model, r, n, basis_ceiling=None):
        if basis_ceiling is None:
            basis_ceiling = config.DEFAULT_BASIS_CEILING
        self.model = model
        self.r = r
        self.n = n
        self.d = model.dim_c
        size = estimate_basis_size(model, r, n)
        if size > basis_ceiling:
            raise ResourceGuardError(
                f"E1 page for n={n}, r={r} over {model.name} needs {size} basis elements, "
                f"ceiling is {basis_ceiling}", size=size, ceiling=basis_ceiling)
        self.lattice = StrataLattice(n, r)
        self.os = OSAlgebra(n, r)
        self.d1 = None
        self._actions = {}
        self._block_maps = {}
        self._build_basis()

    def __repr__(self):
        return f"E1Page({self.model.name}, r={self.r}, n={self.n}, dim={len(self.elements)})"

    # -- basis --------------------------------------------------------

    def _build_basis(self):
        model = self.model
        d = self.d
        m = len(model.classes)
        self.elements = []
        self.keys = []
        self.blocks = {}
        self.locate = {}
        for F in self.lattice:
            monomials = self.os.basis(F)
            if not monomials:
                continue
            for classes in itertools.product(range(m), repeat=len(F.blocks)):
                degree = sum(model.degrees[c] for c in classes)
                p = sum(model.hodge[c].p for c in classes) + d * F.rank
                q = sum(model.hodge[c].q for c in classes) + d * F.rank
                key = (degree + 2 * d * F.rank, F.rank, p, q)
                for S in monomials:
                    element = BasisElement(F, classes, S)
                    block = self.blocks.setdefault(key, [])
                    self.locate[element] = (key, len(block))
                    block.append(len(self.elements))
                    self.elements.append(element)
                    self.keys.append(key)

    def dims(self):
        """{(i, j): dimension}"""
        out = {}
        for (i, j, p, q), members in self.blocks.items():
            out[(i, j)] = out.get((i, j), 0) + len(members)
        return dict(sorted(out.items()))

    def hodge_dims(self):
        """{(i, j, p, q): dimension}"""
        return {key: len(members) for key, members in sorted(self.blocks.items())}

    def block_dim(self, key):
        return len(self.blocks.get(key, []))

    def euler_characteristic(self):
        return sum((-1) ** ((i - j) % 2) * dim for (i, j), dim in self.dims().items())

    def gen_index(self, gen):
        return self.os.index(gen)

    def label(self, element):
        """readable form such as 'a@1 * g12 g1^1'"""
        parts = []
        for block, cls in zip(element.stratum.blocks, element.classes):
            if cls != self.model.unit:
                parts.append(f"{self.model.classes[cls].name}@{block[0] + 1}")
        gens = " ".join(self.os.gens[g].label for g in element.monomial)
        if gens:
            parts.append(gens)
        return " * ".join(parts) if parts else "1"

    # -- algebra ------------------------------------------------------

    def lift(self, element):
        """representative tensor of H^*(X^n): block classes at block minima"""
        tensor = [self.model.unit] * self.n
        for block, cls in zip(element.stratum.blocks, element.classes):
            tensor[block[0]] = cls
        return tuple(tensor)

    def _block_map(self, F):
        if F not in self._block_maps:
            owner = [-1] * self.n
            for k, block in enumerate(F.blocks):
                for c in block:
                    owner[c] = k
            self._block_maps[F] = tuple(owner)
        return self._block_maps[F]

    def restrict(self, tensor, F):
        """image of a basis tensor of H^*(X^n) in H^*(F) as {classes: Fraction}"""
        model = self.model
        owner = self._block_map(F)
        picked = []
        for coordinate, cls in enumerate(tensor):
            if owner[coordinate] < 0:
                if cls != model.unit:
                    return {}
            else:
                picked.append((owner[coordinate], cls))
        parity = 0
        for (ba, ca), (bb, cb) in itertools.combinations(picked, 2):
            if ba > bb and model.degrees[ca] % 2 and model.degrees[cb] % 2:
                parity += 1
        per_block = [{model.unit: Fraction(1)} for _ in F.blocks]
        for block, cls in picked:
            combo = {}
            for prev, coeff in per_block[block].items():
                for out, value in model.multiply(prev, cls).items():
                    vec_axpy(combo, {out: value}, coeff)
            if not combo:
                return {}
            per_block[block] = combo
        result = {(): Fraction(-1 if parity % 2 else 1)}
        for combo in per_block:
            result = {head + (cls,): c * v for head, c in result.items() for cls, v in combo.items()}
        return result

    def reduce_term(self, coeff, tensor, seq):
        """coeff * tensor * g_seq written in the basis, as {global index: Fraction}"""
        out = {}
        if not coeff:
            return out
        for T, c in self.os.normal_form(tuple(seq)).items():
            F = self.os.meet(T)
            for classes, v in self.restrict(tensor, F).items():
                index = self.locate_index(BasisElement(F, classes, T))
                vec_axpy(out, {index: coeff * c * v})
        return out

    def reduce_combination(self, combo, seq):
        out = {}
        for tensor, coeff in combo.items():
            vec_axpy(out, self.reduce_term(coeff, tensor, seq))
        return out

    def locate_index(self, element):
        key, position = self.locate[element]
        return self.blocks[key][position]

    def multiply(self, a, b):
        """product of two basis elements (global indices), computed on demand"""
        x, y = self.elements[a], self.elements[b]
        tx, ty = self.lift(x), self.lift(y)
        sign = -1 if len(x.monomial) * tensor_degree(self.model, ty) % 2 else 1
        product = tensor_multiply(self.model, tx, ty)
        combo = {t: sign * v for t, v in product.items()}
        return self.reduce_combination(combo, x.monomial + y.monomial)

    # -- differential -------------------------------------------------

    def generator_class(self, gen):
        """dg as a combination of tensors: p_ij^*[Delta] or the point class at i"""
        unit = self.model.unit
        combo = {}
        if gen.kind == DIAGONAL:
            for coeff, left, right in self.model.diagonal_terms():
                tensor = [unit] * self.n
                tensor[gen.i] = left
                tensor[gen.j] = right
                vec_axpy(combo, {tuple(tensor): coeff})
        else:
            for coeff, cls in self.model.point_terms():
                tensor = [unit] * self.n
                tensor[gen.i] = cls
                vec_axpy(combo, {tuple(tensor): coeff})
        return combo

    def d1_of(self, index):
        """d1 of one basis element by the graded leibniz rule"""
        element = self.elements[index]
        alpha = self.lift(element)
        sign = -1 if tensor_degree(self.model, alpha) % 2 else 1
        out = {}
        S = element.monomial
        for position, g in enumerate(S):
            dg = self.generator_class(self.os.gens[g])
            if not dg:
                continue
            product = multiply_combinations(self.model, {alpha: Fraction(1)}, dg)
            coeff = sign * (-1 if position % 2 else 1)
            rest = S[:position] + S[position + 1:]
            for tensor, value in product.items():
                vec_axpy(out, self.reduce_term(coeff * value, tensor, rest))
        return out

    def local(self, key, vec):
        """global-index vector -> coordinates inside block key"""
        out = {}
        for index, value in vec.items():
            element = self.elements[index]
            block_key, position = self.locate[element]
            if block_key != key:
                raise SignConsistencyError(
                    f"vector leaves block {key}: component in {block_key}",
                    {"expected": key, "found": block_key})
            out[position] = value
        return out

    def d1_block(self, key):
        """d1 restricted to block key, as a matrix into block (i, j-1, p, q)"""
        if self.d1 is None:
            differential(self)
        return self.d1.get(key, SparseMatrix(0, self.block_dim(key)))


def build_e1(model, r, n, basis_ceiling=None):
    return E1Page(model, r, n, basis_ceiling=basis_ceiling)


def differential(page):
    """populate page.d1 and check d1 o d1 = 0; returns the page"""
    d1 = {}
    for key in sorted(page.blocks):
        i, j, p, q = key
        target = (i, j - 1, p, q)
        columns = []
        for index in page.blocks[key]:
            image = page.d1_of(index) if j > 0 else {}
            columns.append(page.local(target, image) if image else {})
        d1[key] = SparseMatrix.from_columns(page.block_dim(target), columns)
    page.d1 = d1
    for key, matrix in d1.items():
        i, j, p, q = key
        below = (i, j - 1, p, q)
        if j < 2 or below not in d1:
            continue
        square = d1[below] @ matrix
        if not square.is_zero():
            raise SignConsistencyError(
                f"d1 o d1 != 0 on block {key} of {page!r}",
                {"block": key, "nonzero": [(r, c, str(v)) for r, c, v in square.entries[:10]]})
    return page


def _permute_tensor(model, tensor, sigma):
    """sigma acting on a basis tensor: factor i moves to position sigma[i]"""
    moved = [None] * len(tensor)
    for i, cls in enumerate(tensor):
        moved[sigma[i]] = cls
    parity = 0
    for a, b in itertools.combinations(range(len(tensor)), 2):
        if sigma[a] > sigma[b] and model.degrees[tensor[a]] % 2 and model.degrees[tensor[b]] % 2:
            parity += 1
    return (-1 if parity % 2 else 1), tuple(moved)


def apply_permutation(page, sigma, index):
    """sigma . (basis element index) as {global index: Fraction}"""
    element = page.elements[index]
    sign, tensor = _permute_tensor(page.model, page.lift(element), sigma)
    seq = [page.gen_index(page.os.gens[g].relabel(sigma)) for g in element.monomial]
    return page.reduce_term(Fraction(sign), tensor, seq)


def sn_action(page, sigma):
    """{key: square matrix of sigma on that block}; sigma[i] is the image of i"""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(page.n)):
        raise ValueError(f"{sigma} is not a permutation of {page.n} coordinates")
    if sigma not in page._actions:
        action = {}
        for key, members in sorted(page.blocks.items()):
            columns = [page.local(key, apply_permutation(page, sigma, index)) for index in members]
            action[key] = SparseMatrix.from_columns(len(members), columns)
        page._actions[sigma] = action
    return page._actions[sigma]


def adjacent_transposition(n, k):
    sigma = list(range(n))
    sigma[k], sigma[k + 1] = sigma[k + 1], sigma[k]
    return tuple(sigma)


def check_sn_relations(page):
    """
    involution, braid and commuting relations of the adjacent transpositions
    and their commutation with d1; returns a list of failures
    """
    if page.d1 is None:
        differential(page)
    n = page.n
    failures = []
    s = [sn_action(page, adjacent_transposition(n, k)) for k in range(n - 1)]
    for key in sorted(page.blocks):
        size = page.block_dim(key)
        identity = SparseMatrix.identity(size)
        for k in range(n - 1):
            if s[k][key] @ s[k][key] != identity:
                failures.append(f"s{k + 1}^2 != 1 on {key}")
            if k + 1 < n - 1:
                lhs = s[k][key] @ s[k + 1][key] @ s[k][key]
                rhs = s[k + 1][key] @ s[k][key] @ s[k + 1][key]
                if lhs != rhs:
                    failures.append(f"braid relation fails for s{k + 1}, s{k + 2} on {key}")
            for l in range(k + 2, n - 1):
                if s[k][key] @ s[l][key] != s[l][key] @ s[k][key]:
                    failures.append(f"s{k + 1}, s{l + 1} do not commute on {key}")
            i, j, p, q = key
            below = (i, j - 1, p, q)
            if j > 0 and below in page.blocks:
                if page.d1[key] @ s[k][key] != s[k][below] @ page.d1[key]:
                    failures.append(f"s{k + 1} does not commute with d1 on {key}")
    return failures


# -- quotient presentation oracle ------------------------------------------

def _presentation_relations(model, r, n, gens, gen_index):
    """relations of the quadratic presentation as lists of (coeff, tensor, sequence)"""
    unit = (model.unit,) * n
    positive = model.positive_classes()

    def placed(cls, i):
        tensor = list(unit)
        tensor[i] = cls
        return tuple(tensor)

    def diag(i, j):
        return gen_index[gens_by_key[("d", min(i, j), max(i, j))]]

    def punct(i, s):
        return gen_index[gens_by_key[("p", i, s)]]

    gens_by_key = {}
    for gen in gens:
        if gen.kind == DIAGONAL:
            gens_by_key[("d", gen.i, gen.j)] = gen
        else:
            gens_by_key[("p", gen.i, gen.s)] = gen

    relations = []
    # arnold
    for i, j, k in itertools.combinations(range(n), 3):
        relations.append([(1, unit, (diag(i, j), diag(j, k))),
                          (1, unit, (diag(j, k), diag(k, i))),
                          (1, unit, (diag(k, i), diag(i, j)))])
    # g_ij alpha_i = g_ij alpha_j, written with alpha moved to the left
    for i, j in itertools.combinations(range(n), 2):
        for cls in positive:
            sign = -1 if model.degrees[cls] % 2 else 1
            relations.append([(sign, placed(cls, i), (diag(i, j),)),
                              (-sign, placed(cls, j), (diag(i, j),))])
    for s in range(1, r + 1):
        # g_i^s alpha_i = 0
        for i in range(n):
            for cls in positive:
                relations.append([(1, placed(cls, i), (punct(i, s),))])
        # g_i^s g_j^s + g_ij g_i^s - g_ij g_j^s = 0, the orientation d1 preserves
        for i, j in itertools.combinations(range(n), 2):
            relations.append([(1, unit, (punct(i, s), punct(j, s))),
                              (1, unit, (diag(i, j), punct(i, s))),
                              (-1, unit, (diag(i, j), punct(j, s)))])
    # g_i^s g_i^t = 0
    for i in range(n):
        for s, t in itertools.combinations(range(1, r + 1), 2):
            relations.append([(1, unit, (punct(i, s), punct(i, t)))])
    return relations


def brute_force_e1_dims(model, r, n, max_generators=None, max_monomials=None):
    """
    dimensions of (H^*(X^n) (x) exterior[g]) / (relations) per (i, j, p, q),
    spanning the ideal by multiplying every relation with every monomial
    """
    if max_generators is None:
        max_generators = config.ORACLE_MAX_GENERATORS
    if max_monomials is None:
        max_monomials = config.ORACLE_MAX_FREE_MONOMIALS
    gens = generators(n, r)
    if len(gens) > max_generators:
        raise ResourceGuardError(
            f"E1 oracle needs {len(gens)} generators, limit is {max_generators}",
            size=len(gens), ceiling=max_generators)
    m = len(model.classes)
    free_size = m ** n * 2 ** len(gens)
    if free_size > max_monomials:
        raise ResourceGuardError(
            f"E1 oracle free algebra has {free_size} monomials, limit is {max_monomials}",
            size=free_size, ceiling=max_monomials)
    gen_index = {gen: k for k, gen in enumerate(gens)}
    d = model.dim_c

    def key_of(tensor, S):
        degree = tensor_degree(model, tensor)
        p = sum(model.hodge[c].p for c in tensor) + d * len(S)
        q = sum(model.hodge[c].q for c in tensor) + d * len(S)
        return (degree + 2 * d * len(S), len(S), p, q)

    monomials = []
    for tensor in itertools.product(range(m), repeat=n):
        for size in range(len(gens) + 1):
            for S in itertools.combinations(range(len(gens)), size):
                monomials.append((tensor, S))
    columns = {}
    for tensor, S in monomials:
        bucket = columns.setdefault(key_of(tensor, S), {})
        bucket[(tensor, S)] = len(bucket)
    relations = {key: [] for key in columns}

    for relation in _presentation_relations(model, r, n, gens, gen_index):
        for beta, T in monomials:
            row = {}
            key = None
            for coeff, alpha, U in relation:
                if set(T) & set(U):
                    continue
                sign, merged = sort_with_sign(T + tuple(U))
                if len(T) * tensor_degree(model, alpha) % 2:
                    sign = -sign
                for tensor, value in tensor_multiply(model, beta, alpha).items():
                    key = key_of(tensor, merged)
                    column = columns[key][(tensor, merged)]
                    vec_axpy(row, {column: sign * coeff * value})
            if row:
                relations[key].append(row)

    dims = {}
    for key in sorted(columns):
        width = len(columns[key])
        dim = width - rank(SparseMatrix.from_rows(width, relations[key]))
        if dim:
            dims[key] = dim
    return dims

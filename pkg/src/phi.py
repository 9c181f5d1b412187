"""
the decomposition map

    Phi: E1(X, n) (+) sum_k E1(X - P, [n] - k) -> E1(X - P, n)

X has r - 1 punctures and X - P has r, with P the puncture of color r.
On E1(X, n) Phi is the natural algebra map. On the k-th summand it is the
E1(X, [n] - k)-linear map sending 1 to g_k^r and g_j^r to g_kj g_k^r.
"""
from fractions import Fraction

from src.arrangement import PUNCTURE, diagonal, puncture
from src.e1_page import build_e1, differential
from src.errors import BasisMismatchError
from src.linalg import SparseMatrix, rank, vec_axpy


def split_last_puncture(seq, gens, r):
    """
    reorder a generator sequence into (others, punctures of color r) keeping
    relative order; returns (sign, others, puncture coordinates)
    """
    others = []
    colored = []
    parity = 0
    for g in seq:
        gen = gens[g]
        if gen.kind == PUNCTURE and gen.s == r:
            colored.append(gen.i)
        else:
            others.append(gen)
            parity += len(colored)
    return (-1 if parity % 2 else 1), others, colored


def expand_punctures(coordinates):
    """
    rewrite g_{j1}^r ... g_{jm}^r (m >= 1) with g_i g_j = g_ij g_j - g_ij g_i
    into terms (sign, diagonal pairs, j) meaning sign * prod g_pairs * g_j^r
    """
    if len(coordinates) == 1:
        return [(1, [], coordinates[0])]
    first, second, rest = coordinates[0], coordinates[1], list(coordinates[2:])
    terms = []
    for sign, pairs, j in expand_punctures([first] + rest):
        terms.append((-sign, [(first, second)] + pairs, j))
    for sign, pairs, j in expand_punctures([second] + rest):
        terms.append((sign, [(first, second)] + pairs, j))
    return terms


class PhiMap:
    """Phi per (i, j, p, q) block of the target page"""

    def __init__(self, model, r, n, basis_ceiling=None):
        if r < 1:
            raise ValueError("Phi needs at least one puncture on X - P")
        self.model = model
        self.r = r
        self.n = n
        self.d = model.dim_c
        self.target = differential(build_e1(model, r, n, basis_ceiling))
        self.source_x = differential(build_e1(model, r - 1, n, basis_ceiling))
        self.source_sub = differential(build_e1(model, r, n - 1, basis_ceiling)) if n else None
        self.blocks = {}
        self.column_labels = {}
        self._build()

    def _source_keys(self, key):
        """(summand, source key) pairs that land in target key"""
        i, j, p, q = key
        d = self.d
        out = [("X", key)]
        if self.source_sub is not None:
            shifted = (i - 2 * d, j - 1, p - d, q - d)
            for k in range(self.n):
                out.append((k, shifted))
        return out

    def source_dim(self, key):
        total = 0
        for summand, source_key in self._source_keys(key):
            page = self.source_x if summand == "X" else self.source_sub
            total += page.block_dim(source_key)
        return total

    def image_of_x(self, index):
        """natural map on a basis element of E1(X, n)"""
        element = self.source_x.elements[index]
        tensor = self.source_x.lift(element)
        seq = [self.target.gen_index(self.source_x.os.gens[g]) for g in element.monomial]
        return self.target.reduce_term(Fraction(1), tensor, seq)

    def image_of_summand(self, k, index):
        """Phi_k on a basis element of E1(X - P, [n] - k)"""
        sub = self.source_sub
        element = sub.elements[index]
        relabel = [c if c < k else c + 1 for c in range(self.n - 1)]
        tensor = [self.model.unit] * self.n
        for c, cls in enumerate(sub.lift(element)):
            tensor[relabel[c]] = cls
        tensor = tuple(tensor)
        sign, others, colored = split_last_puncture(element.monomial, sub.os.gens, self.r)
        front = [self.target.gen_index(gen.relabel(relabel)) for gen in others]
        marked = self.target.gen_index(puncture(k, self.r))
        out = {}
        if not colored:
            return self.target.reduce_term(Fraction(sign), tensor, front + [marked])
        for term_sign, pairs, j in expand_punctures([relabel[c] for c in colored]):
            seq = list(front)
            seq.extend(self.target.gen_index(diagonal(a, b)) for a, b in pairs)
            seq.append(self.target.gen_index(diagonal(k, j)))
            seq.append(marked)
            vec_axpy(out, self.target.reduce_term(Fraction(sign * term_sign), tensor, seq))
        return out

    def _build(self):
        for key in sorted(self.target.blocks):
            columns = []
            labels = []
            for summand, source_key in self._source_keys(key):
                if summand == "X":
                    for index in self.source_x.blocks.get(source_key, []):
                        columns.append(self.target.local(key, self.image_of_x(index)))
                        labels.append(("X", self.source_x.label(self.source_x.elements[index])))
                else:
                    for index in self.source_sub.blocks.get(source_key, []):
                        columns.append(self.target.local(key, self.image_of_summand(summand, index)))
                        labels.append((summand, self.source_sub.label(self.source_sub.elements[index])))
            self.blocks[key] = SparseMatrix.from_columns(self.target.block_dim(key), columns)
            self.column_labels[key] = labels
        for key in self.target_missing_keys():
            raise BasisMismatchError(f"source block {key} has no target block",
                                     {"key": key, "source_dim": self.source_dim(key)})

    def target_missing_keys(self):
        missing = []
        keys = set(self.source_x.blocks)
        if self.source_sub is not None:
            d = self.d
            keys |= {(i + 2 * d, j + 1, p + d, q + d) for i, j, p, q in self.source_sub.blocks}
        for key in sorted(keys):
            if key not in self.target.blocks:
                missing.append(key)
        return missing

    def is_square(self, key):
        matrix = self.blocks[key]
        return matrix.rows == matrix.cols

    def bijectivity_report(self):
        """{key: (target dim, source dim, rank)} for every target block"""
        report = {}
        for key, matrix in self.blocks.items():
            report[key] = (matrix.rows, matrix.cols, rank(matrix))
        return report

    def is_bijective(self):
        return all(rows == cols == r for rows, cols, r in self.bijectivity_report().values())

    def source_d1(self, key):
        """block-diagonal differential on the source side of target key"""
        i, j, p, q = key
        below = (i, j - 1, p, q)
        out_summands = self._source_keys(key)
        in_summands = self._source_keys(below)
        rows = sum(self._summand_page(s).block_dim(k) for s, k in in_summands)
        cols = sum(self._summand_page(s).block_dim(k) for s, k in out_summands)
        entries = {}
        row_offset = 0
        col_offset = 0
        for (summand, source_key), (_, lower_key) in zip(out_summands, in_summands):
            page = self._summand_page(summand)
            block = page.d1_block(source_key)
            for r, c, v in block.entries:
                entries[(row_offset + r, col_offset + c)] = v
            row_offset += page.block_dim(lower_key)
            col_offset += page.block_dim(source_key)
        return SparseMatrix(rows, cols, entries)

    def _summand_page(self, summand):
        return self.source_x if summand == "X" else self.source_sub

    def commutation_failures(self):
        """target keys where d1 o Phi != Phi o d1"""
        failures = []
        for key in sorted(self.blocks):
            i, j, p, q = key
            if j == 0:
                continue
            below = (i, j - 1, p, q)
            lhs = self.target.d1_block(key) @ self.blocks[key]
            phi_below = self.blocks.get(below, SparseMatrix(0, self.source_dim(below)))
            rhs = phi_below @ self.source_d1(key)
            if lhs != rhs:
                failures.append(key)
        return failures


def phi_map(model, r, n, basis_ceiling=None):
    return PhiMap(model, r, n, basis_ceiling=basis_ceiling)

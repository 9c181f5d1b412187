"""
exact linear algebra over the rationals
sparse vectors are dicts {index: Fraction} with no stored zeros; matrices
are handed to sympy's sparse domain matrices over QQ for elimination
"""
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import SDM


def to_fraction(value):
    """parse ints, Fractions and "num/den" strings into a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


def to_qq(value):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))


def vec_axpy(target, source, scale=1):
    """target += scale * source, in place, dropping zeros"""
    if scale == 0:
        return target
    for index, value in source.items():
        new_value = target.get(index, 0) + scale * value
        if new_value:
            target[index] = new_value
        else:
            target.pop(index, None)
    return target


class SparseMatrix:
    """rows x cols matrix over Q stored as a dict of nonzero entries"""
    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        self._entries = {}
        if entries is None:
            return
        items = entries.items() if isinstance(entries, dict) else ((rc[:2], rc[2]) for rc in entries)
        for (row, col), value in items:
            if not (0 <= row < rows and 0 <= col < cols):
                raise IndexError(f"entry ({row}, {col}) outside a {rows}x{cols} matrix")
            if (row, col) in self._entries:
                raise ValueError(f"duplicate entry ({row}, {col})")
            value = to_fraction(value)
            if value:
                self._entries[(row, col)] = value

    @classmethod
    def from_columns(cls, rows, columns):
        """build from a list of sparse column vectors"""
        entries = {}
        for col, vec in enumerate(columns):
            for row, value in vec.items():
                if value:
                    entries[(row, col)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def from_rows(cls, cols, rows):
        """build from a list of sparse row vectors"""
        entries = {}
        for row, vec in enumerate(rows):
            for col, value in vec.items():
                if value:
                    entries[(row, col)] = value
        return cls(len(rows), cols, entries)

    @classmethod
    def identity(cls, size):
        return cls(size, size, {(k, k): 1 for k in range(size)})

    @classmethod
    def from_sdm(cls, sdm):
        rows, cols = sdm.shape
        return cls(rows, cols, {(r, c): from_qq(v) for r, row in sdm.items() for c, v in row.items()})

    def to_sdm(self):
        """the same matrix as a sympy SDM over QQ"""
        rows = {}
        for (r, c), v in self._entries.items():
            rows.setdefault(r, {})[c] = to_qq(v)
        return SDM(rows, (self.rows, self.cols), QQ)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        """nonzero entries as a sorted list of (row, col, value)"""
        return [(r, c, v) for (r, c), v in sorted(self._entries.items())]

    def __getitem__(self, key):
        return self._entries.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    def is_zero(self):
        return not self._entries

    def column_vectors(self):
        out = [{} for _ in range(self.cols)]
        for (r, c), v in self._entries.items():
            out[c][r] = v
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return SparseMatrix.from_sdm(self.to_sdm().matmul(other.to_sdm()))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return SparseMatrix.from_sdm(self.to_sdm().add(other.to_sdm()))

    def trace(self):
        return sum((v for (r, c), v in self._entries.items() if r == c), Fraction(0))


def _sdm_rows(sdm):
    return {r: {c: from_qq(v) for c, v in row.items()} for r, row in sdm.items()}


def rref(m):
    """reduced row echelon form of m as a list of (pivot column, row vector)"""
    if m.is_zero():
        return []
    reduced, _ = m.to_sdm().rref()
    return sorted((min(row), row) for row in _sdm_rows(reduced).values() if row)


def rank(m):
    if m.is_zero():
        return 0
    _, pivots = m.to_sdm().rref()
    return len(pivots)


def _nullspace(m):
    if m.is_zero():
        return [{col: Fraction(1)} for col in range(m.cols)], list(range(m.cols))
    kernel, free = m.to_sdm().nullspace()
    rows = _sdm_rows(kernel)
    return [rows.get(k, {}) for k in range(len(free))], list(free)


def kernel_basis(m):
    """
    basis of the right kernel of m
    one vector per free column, with a 1 at that column; the coordinates of a
    kernel vector in this basis are therefore its entries at the free columns
    """
    return _nullspace(m)[0]


def kernel_free_columns(m):
    """the free columns that index kernel_basis(m), in the same order"""
    return _nullspace(m)[1]


class QuotientBasis:
    """
    complement of a subspace of Q^ambient_dim
    representatives are unit vectors at the non-pivot columns of the
    subspace's reduced echelon form; project() reads coordinates modulo the
    subspace
    """

    def __init__(self, ambient_dim, subspace):
        self.ambient_dim = ambient_dim
        for vec in subspace:
            for index in vec:
                if not 0 <= index < ambient_dim:
                    raise IndexError(f"vector index {index} outside ambient dimension {ambient_dim}")
        vectors = [vec for vec in subspace if vec]
        self.pivot_rows = dict(rref(SparseMatrix.from_rows(ambient_dim, vectors))) if vectors else {}
        self.columns = [col for col in range(ambient_dim) if col not in self.pivot_rows]
        self._position = {col: k for k, col in enumerate(self.columns)}

    @property
    def representatives(self):
        return [{col: Fraction(1)} for col in self.columns]

    def __len__(self):
        return len(self.columns)

    def project(self, vec):
        """coordinates of vec in the representative basis, modulo the subspace"""
        residue = dict(vec)
        for pivot, row in self.pivot_rows.items():
            value = vec.get(pivot)
            if value:
                vec_axpy(residue, row, -value)
        return {self._position[col]: value for col, value in residue.items()}


def quotient_basis(ambient_dim, subspace):
    """returns (representatives, projection) for Q^ambient_dim / span(subspace)"""
    quotient = QuotientBasis(ambient_dim, subspace)
    return quotient.representatives, quotient.project

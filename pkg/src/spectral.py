"""
E2 = ker d1 / im d1, the weight degeneration certificate and assembly of
gr H^k(F(X_r, n)) = sum_t E2^{k+t, t}
"""
from dataclasses import dataclass, field

from src.e1_page import differential
from src.errors import CertificateError
from src.linalg import QuotientBasis, SparseMatrix, kernel_basis, kernel_free_columns, rank, vec_axpy

ORDERED = "ordered"
UNORDERED = "unordered"


class E2Level:
    """ker(d1 out of key) / im(d1 into key) with explicit representatives"""

    def __init__(self, page, key):
        i, j, p, q = key
        self.key = key
        outgoing = page.d1_block(key)
        above = (i, j + 1, p, q)
        if above in page.blocks:
            incoming = page.d1_block(above)
        else:
            incoming = SparseMatrix(page.block_dim(key), 0)
        self.kernel = kernel_basis(outgoing)
        self.free = kernel_free_columns(outgoing)
        self._free_position = {col: k for k, col in enumerate(self.free)}
        image = [self.kernel_coordinates(vec) for vec in incoming.column_vectors()]
        self.quotient = QuotientBasis(len(self.kernel), image)

    @property
    def dim(self):
        return len(self.quotient)

    def kernel_coordinates(self, vec):
        """coordinates of a kernel vector in the kernel basis (its free-column entries)"""
        return {self._free_position[col]: v for col, v in vec.items() if col in self._free_position}

    def representatives(self):
        """block-local vectors spanning E2 at this level"""
        return [self.kernel[col] for col in self.quotient.columns]

    def induced_matrix(self, matrix):
        """a d1-compatible block endomorphism written on the E2 representatives"""
        columns = matrix.column_vectors()
        images = []
        for rep in self.representatives():
            image = {}
            for index, value in rep.items():
                vec_axpy(image, columns[index], value)
            images.append(self.quotient.project(self.kernel_coordinates(image)))
        return SparseMatrix.from_columns(self.dim, images)

    def trace(self, matrix):
        """trace of a d1-compatible block endomorphism on this E2 level"""
        return self.induced_matrix(matrix).trace()


class E2Page:
    def __init__(self, page):
        if page.d1 is None:
            differential(page)
        self.page = page
        self.levels = {key: E2Level(page, key) for key in sorted(page.blocks)}

    def hodge_dims(self):
        return {key: level.dim for key, level in self.levels.items() if level.dim}

    def dims(self):
        out = {}
        for (i, j, p, q), level in self.levels.items():
            if level.dim:
                out[(i, j)] = out.get((i, j), 0) + level.dim
        return dict(sorted(out.items()))

    def trace(self, action, key):
        return self.levels[key].trace(action[key])

    def total_degree_keys(self, k):
        """E2 keys contributing to H^k: (k + t, t, p, q)"""
        return [key for key in self.levels if key[0] - key[1] == k]


def e2(page):
    return E2Page(page)


# -- degeneration certificate -------------------------------------------------

PASS = "pass"
FAIL = "fail"
NONE = "none"


@dataclass
class DegenerationCertificate:
    slope: object
    dim_c: int
    verdict: str
    witness: object = None
    notes: list = field(default_factory=list)

    @property
    def passes(self):
        return self.verdict == PASS

    def to_dict(self):
        return {
            "slope": None if self.slope is None else str(self.slope),
            "dim_c": self.dim_c,
            "verdict": self.verdict,
            "witness": self.witness,
            "notes": list(self.notes),
        }


def degeneration_certificate(model):
    """
    d_h (h >= 2) can only be nonzero when h = lambda / (2d - lambda(2d - 1))
    is an integer >= 2; pass otherwise
    """
    d = model.dim_c
    notes = []
    if model.compact:
        notes.append("compact base: certified from the weight equation only; "
                     "Phi commutation with d1 is reported, not asserted")
    if model.slope is None:
        notes.append("model has no slope: no certificate")
        return DegenerationCertificate(None, d, NONE, None, notes)
    slope = model.slope
    denominator = 2 * d - slope * (2 * d - 1)
    if denominator == 0:
        return DegenerationCertificate(slope, d, PASS, None, notes)
    h = slope / denominator
    if h.denominator == 1 and h >= 2:
        return DegenerationCertificate(slope, d, FAIL, int(h), notes)
    return DegenerationCertificate(slope, d, PASS, None, notes)


def d1_vanishes_by_weight(model):
    """slope lambda != 1 forces d1 = 0 ([Delta] and [P] sit in H^{2d} of weight 2d lambda)"""
    return model.slope is not None and model.slope != 1


# -- hodge tables -------------------------------------------------------------

class HodgeTable:
    """(n, i, p, q) -> dimension for F(X, n) (ordered) or Conf^n(X) (unordered)"""

    def __init__(self, kind=ORDERED, label=""):
        self.kind = kind
        self.label = label
        self.entries = {}
        self.warnings = []

    def __repr__(self):
        return f"HodgeTable({self.kind}, {self.label!r}, rows={len(self.rows())})"

    def add(self, n, i, p, q, dim):
        if dim < 0:
            raise ValueError(f"negative dimension at {(n, i, p, q)}")
        if dim:
            key = (n, i, p, q)
            self.entries[key] = self.entries.get(key, 0) + int(dim)

    def get(self, n, i, p, q):
        return self.entries.get((n, i, p, q), 0)

    def rows(self):
        """sorted (n, i, p, q, dim) with dim > 0"""
        return [key + (dim,) for key, dim in sorted(self.entries.items()) if dim]

    def ns(self):
        return sorted({key[0] for key in self.entries})

    @property
    def n_max(self):
        return max(self.ns(), default=-1)

    def betti(self, n):
        """[h^0, h^1, ...] for one n"""
        degrees = {}
        for (m, i, p, q), dim in self.entries.items():
            if m == n:
                degrees[i] = degrees.get(i, 0) + dim
        top = max(degrees, default=0)
        return [degrees.get(i, 0) for i in range(top + 1)]

    def weights(self, n, i):
        return sorted({p + q for (m, k, p, q) in self.entries if m == n and k == i})

    def merge(self, other):
        for key, dim in other.entries.items():
            self.add(*key, dim)
        self.warnings.extend(w for w in other.warnings if w not in self.warnings)
        return self


def assemble(page, e2_page, certificate, allow_uncertified=False):
    """HodgeTable rows of F(X_r, n) for the page's n"""
    table = HodgeTable(ORDERED, f"F({page.model.name} - {page.r} pts, n)")
    if not certificate.passes:
        message = (f"degeneration at E2 not certified for {page.model.name} "
                   f"(verdict {certificate.verdict}, witness {certificate.witness})")
        if not allow_uncertified:
            raise CertificateError(message)
        table.warnings.append(f"uncertified: {message}; table read off E2")
    for (i, j, p, q), dim in e2_page.hodge_dims().items():
        table.add(page.n, i - j, p, q, dim)
    return table


# -- consistency checks -------------------------------------------------------

def euler_characteristics(page, table):
    """(sum (-1)^{i-j} dim E1^{i,j}, sum (-1)^k h^k) for the page's n"""
    from_e1 = page.euler_characteristic()
    from_h = sum((-1) ** (k % 2) * h for k, h in enumerate(table.betti(page.n)))
    return from_e1, from_h


def dimension_only_betti(page):
    """betti numbers from d1 ranks with the hodge grading erased"""
    if page.d1 is None:
        differential(page)
    merged = {}
    for key, matrix in page.d1.items():
        merged.setdefault((key[0], key[1]), []).append((key, matrix))
    ranks = {}
    dims = page.dims()
    for (i, j), parts in merged.items():
        rows = sum(m.rows for _, m in parts)
        cols = sum(m.cols for _, m in parts)
        entries = {}
        row_offset = col_offset = 0
        for _, m in parts:
            for r, c, v in m.entries:
                entries[(row_offset + r, col_offset + c)] = v
            row_offset += m.rows
            col_offset += m.cols
        ranks[(i, j)] = rank(SparseMatrix(rows, cols, entries))
    betti = {}
    for (i, j), dim in dims.items():
        e2_dim = dim - ranks.get((i, j), 0) - ranks.get((i, j + 1), 0)
        if e2_dim:
            betti[i - j] = betti.get(i - j, 0) + e2_dim
    top = max(betti, default=0)
    return [betti.get(k, 0) for k in range(top + 1)]


def weight_obstructions(e2_page, max_h=None):
    """
    (h, k, l, weight) where E2^{k,l} and E2^{k-h+1, l-h} share a weight, so
    d_h is not excluded; an empty list means the page degenerates at E2
    """
    weights = {}
    for (i, j, p, q), dim in e2_page.hodge_dims().items():
        weights.setdefault((i, j), set()).add(p + q)
    if max_h is None:
        max_h = max((j for _, j in weights), default=0)
    found = []
    for h in range(2, max_h + 1):
        for (k, l), source in sorted(weights.items()):
            target = weights.get((k - h + 1, l - h))
            if not target:
                continue
            for w in sorted(source & target):
                found.append((h, k, l, w))
    return found

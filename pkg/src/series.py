"""
truncated generating series of hodge numbers and E-polynomials

HodgeSeries stores the coefficient of x^p y^q u^i t^n of
sum h^{p,q;i}(Conf^n) x^p y^q (-u)^i t^n, i.e. (-1)^i h, in a numpy array
indexed [n, i, p, q].
"""
import numpy as np
from sympy import ZZ
from sympy.polys.rings import ring

from src.errors import IdentityInputError
from src.variety import tensor_power

E_RING, X, Y = ring("x,y", ZZ)


class HodgeSeries:
    def __init__(self, coefficients, truncation):
        coefficients = np.asarray(coefficients, dtype=np.int64)
        if coefficients.ndim != 4:
            raise ValueError("hodge series coefficients must be indexed [n, i, p, q]")
        if coefficients.shape[0] != truncation + 1:
            raise ValueError(f"array holds n <= {coefficients.shape[0] - 1}, truncation is {truncation}")
        self.coefficients = coefficients
        self.truncation = truncation

    @classmethod
    def from_table(cls, table, truncation=None):
        """signed series of a hodge table, truncated at n <= truncation"""
        if truncation is None:
            truncation = table.n_max
        keys = [key for key in table.entries if key[0] <= truncation]
        top_i = max((k[1] for k in keys), default=0)
        top_p = max((k[2] for k in keys), default=0)
        top_q = max((k[3] for k in keys), default=0)
        coefficients = np.zeros((truncation + 1, top_i + 1, top_p + 1, top_q + 1), dtype=np.int64)
        for (n, i, p, q) in keys:
            coefficients[n, i, p, q] = (-1) ** (i % 2) * table.entries[(n, i, p, q)]
        return cls(coefficients, truncation)

    @property
    def N(self):
        return self.truncation

    def __repr__(self):
        return f"HodgeSeries(N={self.truncation}, shape={self.coefficients.shape})"

    def padded(self, shape):
        """coefficient array zero-padded to at least the given shape"""
        target = tuple(max(a, b) for a, b in zip(self.coefficients.shape, shape))
        out = np.zeros(target, dtype=np.int64)
        n, i, p, q = self.coefficients.shape
        out[:n, :i, :p, :q] = self.coefficients
        return out

    def hodge_number(self, n, i, p, q):
        """unsigned h^{p,q;i}(Conf^n)"""
        c = self.coefficients
        if not (0 <= n < c.shape[0] and 0 <= i < c.shape[1] and 0 <= p < c.shape[2] and 0 <= q < c.shape[3]):
            return 0
        return int(c[n, i, p, q]) * (-1) ** (i % 2)

    def __eq__(self, other):
        if not isinstance(other, HodgeSeries) or self.truncation != other.truncation:
            return False
        shape = tuple(max(a, b) for a, b in zip(self.coefficients.shape, other.coefficients.shape))
        return bool(np.array_equal(self.padded(shape), other.padded(shape)))

    def times_geometric(self, d):
        """
        this series times 1 / (1 + (xy)^d u^{2d-1} t), truncated at the same N:
        out[n, i, p, q] = sum_t (-1)^t c[n - t, i - (2d-1)t, p - dt, q - dt]
        """
        c = self.coefficients
        N = self.truncation
        step = 2 * d - 1
        n_len, i_len, p_len, q_len = c.shape
        out = np.zeros((N + 1, i_len + step * N, p_len + d * N, q_len + d * N), dtype=np.int64)
        for t in range(N + 1):
            sign = -1 if t % 2 else 1
            out[t:, step * t:step * t + i_len, d * t:d * t + p_len, d * t:d * t + q_len] += \
                sign * c[:N + 1 - t]
        return HodgeSeries(out, N)

    def betti(self):
        """x = y = 1 specialization: array [n, i] of (-1)^i h^i"""
        return self.coefficients.sum(axis=(2, 3))

    def e_polynomials(self, d):
        """x -> 1/x, y -> 1/y, u -> 1, t -> (xy)^d t: one EPolynomial per n"""
        out = []
        c = self.coefficients
        for n in range(self.truncation + 1):
            poly = E_RING.zero
            for i, p, q in zip(*np.nonzero(c[n])):
                a, b = d * n - int(p), d * n - int(q)
                if a < 0 or b < 0:
                    raise ValueError(f"hodge type ({p},{q}) exceeds dimension {d * n} at n={n}")
                poly += int(c[n, i, p, q]) * X ** a * Y ** b
            out.append(EPolynomial(n, d, poly))
        return out

    def compact_support(self, d):
        """
        unsigned compactly supported hodge numbers by poincare duality,
        h_c^{p,q;i}(Conf^n) = h^{dn-p, dn-q; 2dn-i}(Conf^n), as array [n, i, p, q]
        """
        N = self.truncation
        out = np.zeros((N + 1, 2 * d * N + 1, d * N + 1, d * N + 1), dtype=np.int64)
        c = self.coefficients
        for n, i, p, q in zip(*np.nonzero(c)):
            n, i, p, q = int(n), int(i), int(p), int(q)
            h = int(c[n, i, p, q]) * (-1) ** (i % 2)
            out[n, 2 * d * n - i, d * n - p, d * n - q] += h
        return out


class EPolynomial:
    """E(Conf^n; x, y) as an element of ZZ[x, y]"""

    def __init__(self, n, d, poly):
        self.n = n
        self.d = d
        self.poly = poly

    def __eq__(self, other):
        return isinstance(other, EPolynomial) and self.poly == other.poly

    def __add__(self, other):
        return EPolynomial(self.n, self.d, self.poly + other.poly)

    def __mul__(self, other):
        return EPolynomial(self.n + other.n, self.d, self.poly * other.poly)

    def __repr__(self):
        return f"EPolynomial(n={self.n}, {self.as_string()})"

    def as_string(self):
        return str(self.poly.as_expr())

    def terms(self):
        """[(x exponent, y exponent, coefficient)] sorted"""
        return sorted((a, b, int(c)) for (a, b), c in self.poly.terms())


def e_polynomial(table, d, n):
    """E = sum (-1)^i h^{p,q;i} x^{dn-p} y^{dn-q} for the n-th row of a table"""
    poly = E_RING.zero
    for (m, i, p, q), h in sorted(table.entries.items()):
        if m != n:
            continue
        a, b = d * n - p, d * n - q
        if a < 0 or b < 0:
            raise ValueError(f"hodge type ({p},{q}) exceeds dimension {d * n}")
        poly += (-1) ** (i % 2) * h * X ** a * Y ** b
    return EPolynomial(n, d, poly)


def e_series(table, d, truncation):
    """[E(Conf^0), ..., E(Conf^N)]"""
    return [e_polynomial(table, d, n) for n in range(truncation + 1)]


def model_e_polynomial(model):
    poly = E_RING.zero
    d = model.dim_c
    for cls in model.classes:
        poly += (-1) ** (cls.degree % 2) * X ** (d - cls.hodge.p) * Y ** (d - cls.hodge.q)
    return EPolynomial(1, d, poly)


def tensor_power_e_polynomial(model, n):
    """E(X^n) read off the basis of the tensor power"""
    power = tensor_power(model, n)
    d = model.dim_c
    poly = E_RING.zero
    for tensor in power.basis():
        hodge = power.hodge(tensor)
        poly += (-1) ** (power.degree(tensor) % 2) * X ** (d * n - hodge.p) * Y ** (d * n - hodge.q)
    return EPolynomial(n, d, poly)


def require_same_truncation(left, right):
    if left.truncation != right.truncation:
        raise IdentityInputError(
            f"series truncated at different N ({left.truncation} vs {right.truncation})")


def specialize_to_betti(series):
    """x = y = 1: signed betti array [n, i]"""
    return series.betti()


def specialize_to_e(series, d):
    """x -> 1/x, y -> 1/y, u -> 1, t -> (xy)^d t"""
    return series.e_polynomials(d)

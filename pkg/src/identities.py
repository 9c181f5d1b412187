"""
checkers for the splitting identities relating Conf^n(X - P) to Conf^n(X)
every comparison is exact integer equality
"""
import math
from dataclasses import dataclass, field

import numpy as np

from src.errors import ConfigError, IdentityInputError
from src.linalg import to_fraction
from src.series import require_same_truncation, specialize_to_betti, specialize_to_e


@dataclass
class Verdict:
    identity: str
    inputs: dict
    N: int
    passed: bool
    first_failure: object = None
    details: list = field(default_factory=list)

    def to_dict(self):
        return {
            "identity": self.identity,
            "inputs": self.inputs,
            "N": self.N,
            "pass": self.passed,
            "first_failure": self.first_failure,
            "details": self.details,
        }


def _first_mismatch(lhs, rhs):
    """first index (lexicographic) where two arrays differ, after padding"""
    shape = tuple(max(a, b) for a, b in zip(lhs.shape, rhs.shape))
    left = np.zeros(shape, dtype=np.int64)
    right = np.zeros(shape, dtype=np.int64)
    left[tuple(slice(0, s) for s in lhs.shape)] = lhs
    right[tuple(slice(0, s) for s in rhs.shape)] = rhs
    bad = np.argwhere(left != right)
    if not len(bad):
        return None
    index = tuple(int(v) for v in min(map(tuple, bad)))
    return index, int(left[index]), int(right[index])


def verify_splitting_hodge(series_xp, series_x, d, inputs=None):
    """h^{p,q;i}(Conf^n(X-P)) = sum_t h^{p-dt, q-dt; i-(2d-1)t}(Conf^{n-t}(X))"""
    require_same_truncation(series_xp, series_x)
    rhs = series_x.times_geometric(d)
    mismatch = _first_mismatch(series_xp.coefficients, rhs.coefficients)
    failure = None
    if mismatch is not None:
        (n, i, p, q), lhs_value, rhs_value = mismatch
        sign = (-1) ** (i % 2)
        failure = {"p": p, "q": q, "i": i, "n": n, "lhs": sign * lhs_value, "rhs": sign * rhs_value}
    return Verdict("splitting-hodge", dict(inputs or {}, d=d), series_xp.truncation,
                   failure is None, failure)


def _betti_rhs(betti_x, d, truncation):
    step = 2 * d - 1
    n_len, i_len = betti_x.shape
    out = np.zeros((truncation + 1, i_len + step * truncation), dtype=np.int64)
    for t in range(truncation + 1):
        sign = -1 if t % 2 else 1
        out[t:, step * t:step * t + i_len] += sign * betti_x[:truncation + 1 - t]
    return out


def verify_splitting_betti(series_xp, series_x, d, inputs=None, identity="splitting-betti"):
    """x = y = 1: h^i(Conf^n(X-P)) = sum_t h^{i-(2d-1)t}(Conf^{n-t}(X))"""
    require_same_truncation(series_xp, series_x)
    lhs = specialize_to_betti(series_xp)
    rhs = _betti_rhs(specialize_to_betti(series_x), d, series_x.truncation)
    mismatch = _first_mismatch(lhs, rhs)
    failure = None
    if mismatch is not None:
        (n, i), lhs_value, rhs_value = mismatch
        sign = (-1) ** (i % 2)
        failure = {"i": i, "n": n, "lhs": sign * lhs_value, "rhs": sign * rhs_value}
    return Verdict(identity, dict(inputs or {}, d=d), series_xp.truncation, failure is None, failure)


def verify_napolitano(series_xp, series_x, d, inputs=None):
    """rational form of h^i(Conf^n(X-P)) = sum_t h^{i-t}(Conf^{n-t}(X)) for curves"""
    if d != 1:
        raise IdentityInputError(f"the napolitano identity needs a curve (d = 1), got d = {d}")
    return verify_splitting_betti(series_xp, series_x, 1, inputs, identity="napolitano")


def verify_vakilwood(e_series_xp, e_series_x, inputs=None):
    """sum E(Conf^n(X-P)) t^n (1 + t) = sum E(Conf^n(X)) t^n up to t^N"""
    if len(e_series_xp) != len(e_series_x):
        raise IdentityInputError(
            f"E-series truncated at different N ({len(e_series_xp) - 1} vs {len(e_series_x) - 1})")
    failure = None
    details = []
    for n, target in enumerate(e_series_x):
        lhs = e_series_xp[n].poly
        if n:
            lhs = lhs + e_series_xp[n - 1].poly
        ok = lhs == target.poly
        details.append({"n": n, "lhs": str(lhs.as_expr()), "rhs": target.as_string(), "pass": ok})
        if not ok and failure is None:
            failure = details[-1]
    return Verdict("vakilwood", dict(inputs or {}), len(e_series_x) - 1, failure is None, failure, details)


def verify_splitting_compact_support(series_xp, series_x, d, inputs=None):
    """h_c^{p,q;i}(Conf^n(X-P)) = sum_t h_c^{p,q;i-t}(Conf^{n-t}(X))"""
    require_same_truncation(series_xp, series_x)
    N = series_x.truncation
    lhs = series_xp.compact_support(d)
    hc_x = series_x.compact_support(d)
    n_len, i_len, p_len, q_len = hc_x.shape
    rhs = np.zeros((N + 1, i_len + N, p_len, q_len), dtype=np.int64)
    for t in range(N + 1):
        rhs[t:, t:t + i_len] += hc_x[:N + 1 - t]
    mismatch = _first_mismatch(lhs, rhs)
    failure = None
    if mismatch is not None:
        (n, i, p, q), lhs_value, rhs_value = mismatch
        failure = {"p": p, "q": q, "i": i, "n": n, "lhs": lhs_value, "rhs": rhs_value}
    return Verdict("compact-support", dict(inputs or {}, d=d), N, failure is None, failure)


WEIGHT_RULES = ("linear", "floor")


def parse_weight_function(text):
    """
    "linear:c" gives i -> c i and "floor:c" gives i -> floor(c i), with c a
    rational such as 3/2
    """
    rule, _, coefficient = text.partition(":")
    if rule not in WEIGHT_RULES or not coefficient:
        raise ConfigError(f"--weights must be linear:C or floor:C, got {text!r}")
    try:
        c = to_fraction(coefficient)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"--weights coefficient {coefficient!r} is not a rational number")
    if rule == "floor":
        return lambda i: math.floor(c * i)
    return lambda i: c * i


def purity_check(table, slope=None, weight_function=None):
    """
    per (n, i): are all nonzero entries of weight slope * i (or weight_function(i))?
    with neither given, only the single-weight property is checked
    """
    details = []
    for n in table.ns():
        for i in range(len(table.betti(n))):
            weights = table.weights(n, i)
            if not weights:
                continue
            if weight_function is not None:
                expected = weight_function(i)
            elif slope is not None:
                expected = slope * i
            else:
                expected = None
            if expected is None:
                ok = len(weights) == 1
            else:
                ok = weights == [expected]
            details.append({
                "n": n, "i": i, "weights": weights,
                "expected": None if expected is None else str(expected),
                "pure": len(weights) == 1, "pass": ok,
            })
    failure = next((row for row in details if not row["pass"]), None)
    return Verdict("purity", {"table": table.label}, table.n_max, failure is None, failure, details)


def check_specialization_coherence(series_xp, series_x, d):
    """
    the hodge identity specializes to the betti identity (x = y = 1) and to
    the E-polynomial identity; returns the three verdicts and whether the
    implication holds on this data
    """
    hodge = verify_splitting_hodge(series_xp, series_x, d)
    betti = verify_splitting_betti(series_xp, series_x, d)
    vakil = verify_vakilwood(specialize_to_e(series_xp, d), specialize_to_e(series_x, d))
    coherent = (not hodge.passed) or (betti.passed and vakil.passed)
    return {"hodge": hodge, "betti": betti, "vakilwood": vakil, "coherent": coherent}

"""
variety models: finite presentations of H^*(X;Q) with hodge bigrading
"""
import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.errors import ModelError
from src.linalg import to_fraction, vec_axpy


@dataclass(frozen=True, order=True)
class HodgeType:
    p: int
    q: int

    @property
    def weight(self):
        return self.p + self.q

    def twist(self, t):
        """tate twist: (p, q) -> (p + t, q + t)"""
        return HodgeType(self.p + t, self.q + t)

    def __add__(self, other):
        return HodgeType(self.p + other.p, self.q + other.q)


@dataclass(frozen=True)
class CohClass:
    name: str
    degree: int
    hodge: HodgeType


class VarietyModel:
    """
    cohomology ring of a smooth complex variety X-bar

    products maps (left name, right name) -> {class name: coefficient}; only
    one order per unordered pair is needed, the other follows from graded
    commutativity. diagonal is a list of (coefficient, left, right) giving
    [Delta] in H^{2d}(X x X); point_class is {class name: coefficient}.
    """

    def __init__(self, dim_c, compact, classes, products=None, diagonal=None,
                 point_class=None, slope=None, name="model"):
        self.dim_c = dim_c
        self.compact = bool(compact)
        self.classes = tuple(classes)
        self.name = name
        self.slope = None if slope is None else to_fraction(slope)
        self.products = {}
        for key, terms in (products or {}).items():
            self.products[tuple(key)] = {cls: to_fraction(c) for cls, c in terms.items() if to_fraction(c)}
        self.diagonal = [(to_fraction(c), left, right) for c, left, right in (diagonal or []) if to_fraction(c)]
        self.point_class = {cls: to_fraction(c) for cls, c in (point_class or {}).items() if to_fraction(c)}

        self.index = {}
        for k, cls in enumerate(self.classes):
            self.index.setdefault(cls.name, k)
        units = [k for k, cls in enumerate(self.classes) if cls.degree == 0]
        self.unit = units[0] if units else None
        self.degrees = tuple(cls.degree for cls in self.classes)
        self.hodge = tuple(cls.hodge for cls in self.classes)
        self._table = None

    def __repr__(self):
        return f"VarietyModel({self.name!r}, d={self.dim_c}, classes={len(self.classes)})"

    # -- ring structure ------------------------------------------------

    def _build_table(self):
        table = {}
        for (left, right), terms in self.products.items():
            if left not in self.index or right not in self.index:
                continue
            a, b = self.index[left], self.index[right]
            table[(a, b)] = {self.index[c]: v for c, v in terms.items() if c in self.index}
        for (a, b), terms in list(table.items()):
            if (b, a) not in table:
                sign = -1 if self.degrees[a] * self.degrees[b] % 2 else 1
                table[(b, a)] = {c: sign * v for c, v in terms.items()}
        self._table = table

    def multiply(self, a, b):
        """product of basis classes a*b (indices) as {index: Fraction}"""
        if self._table is None:
            self._build_table()
        if (a, b) in self._table:
            return self._table[(a, b)]
        if a == self.unit:
            return {b: Fraction(1)}
        if b == self.unit:
            return {a: Fraction(1)}
        return {}

    def diagonal_terms(self):
        """[Delta] as a list of (coefficient, left index, right index)"""
        return [(c, self.index[l], self.index[r]) for c, l, r in self.diagonal
                if l in self.index and r in self.index]

    def point_terms(self):
        return [(c, self.index[name]) for name, c in self.point_class.items() if name in self.index]

    def positive_classes(self):
        return [k for k, deg in enumerate(self.degrees) if deg > 0]

    def poincare_polynomial(self):
        """betti numbers of X-bar as a list indexed by degree"""
        top = max(self.degrees, default=0)
        dims = [0] * (top + 1)
        for deg in self.degrees:
            dims[deg] += 1
        return dims

    def hodge_numbers(self):
        """{(degree, p, q): count}"""
        counts = {}
        for cls in self.classes:
            key = (cls.degree, cls.hodge.p, cls.hodge.q)
            counts[key] = counts.get(key, 0) + 1
        return counts

    # -- derived models -----------------------------------------------

    def punctured(self):
        """model of X-bar minus one point (compact models only)"""
        if not self.compact:
            raise ModelError(f"{self.name}: only a compact model can be punctured once more")
        top = 2 * self.dim_c
        keep = [cls for cls in self.classes if cls.degree < top]
        kept = {cls.name for cls in keep}
        products = {}
        for (left, right), terms in self.products.items():
            if left in kept and right in kept:
                rest = {c: v for c, v in terms.items() if c in kept}
                if rest:
                    products[(left, right)] = rest
        diagonal = [(c, l, r) for c, l, r in self.diagonal if l in kept and r in kept]
        return VarietyModel(self.dim_c, False, keep, products, diagonal, {}, self.slope,
                            name=f"{self.name}-pt")

    def describe(self):
        """summary used by catalog listings and report headers"""
        betti = self.poincare_polynomial()
        return {
            "name": self.name,
            "dim_c": self.dim_c,
            "compact": self.compact,
            "slope": None if self.slope is None else str(self.slope),
            "betti": betti,
            "classes": len(self.classes),
        }

    def to_dict(self):
        """model file document (inverse of model_from_dict)"""
        return {
            "dim_c": self.dim_c,
            "compact": self.compact,
            "classes": [{"name": c.name, "degree": c.degree, "p": c.hodge.p, "q": c.hodge.q}
                        for c in self.classes],
            "products": [{"left": l, "right": r,
                          "terms": [{"coeff": str(v), "class": c} for c, v in terms.items()]}
                         for (l, r), terms in self.products.items()],
            "diagonal": [{"coeff": str(c), "left": l, "right": r} for c, l, r in self.diagonal],
            "point_class": [{"coeff": str(v), "class": c} for c, v in self.point_class.items()],
            "slope": None if self.slope is None else str(self.slope),
        }


# -- tensor powers ------------------------------------------------------

def tensor_degree(model, tensor):
    return sum(model.degrees[k] for k in tensor)


def tensor_hodge(model, tensor):
    p = sum(model.hodge[k].p for k in tensor)
    q = sum(model.hodge[k].q for k in tensor)
    return HodgeType(p, q)


def tensor_multiply(model, x, y):
    """
    product of basis tensors x, y in H^*(X^n) as {tensor: Fraction}
    sign (-1)^{sum_{j<i} |y_j||x_i|} from moving each y_j past x_{j+1..n}
    """
    degrees = model.degrees
    parity = 0
    passed = 0
    for xi, yi in zip(x, y):
        parity += degrees[xi] * passed
        passed += degrees[yi]
    result = {(): Fraction(-1 if parity % 2 else 1)}
    for xi, yi in zip(x, y):
        factor = model.multiply(xi, yi)
        if not factor:
            return {}
        step = {}
        for head, coeff in result.items():
            for cls, value in factor.items():
                step[head + (cls,)] = coeff * value
        result = step
    return result


def multiply_combinations(model, left, right):
    """product of two {tensor: coeff} combinations"""
    out = {}
    for x, cx in left.items():
        for y, cy in right.items():
            for z, cz in tensor_multiply(model, x, y).items():
                value = out.get(z, 0) + cx * cy * cz
                if value:
                    out[z] = value
                else:
                    out.pop(z, None)
    return out


class TensorPower:
    """graded algebra H^*(X^n) = H^*(X)^{tensor n} with koszul signs"""

    def __init__(self, model, n):
        self.model = model
        self.n = n

    def basis(self):
        return list(itertools.product(range(len(self.model.classes)), repeat=self.n))

    def degree(self, tensor):
        return tensor_degree(self.model, tensor)

    def hodge(self, tensor):
        return tensor_hodge(self.model, tensor)

    def multiply(self, x, y):
        return tensor_multiply(self.model, x, y)

    @property
    def unit(self):
        return (self.model.unit,) * self.n

    def poincare_polynomial(self):
        dims = {}
        for tensor in self.basis():
            deg = self.degree(tensor)
            dims[deg] = dims.get(deg, 0) + 1
        top = max(dims, default=0)
        return [dims.get(k, 0) for k in range(top + 1)]

    def expected_poincare_polynomial(self):
        """n-th power of the model's poincare polynomial"""
        poly = np.array([1], dtype=np.int64)
        base = np.array(self.model.poincare_polynomial(), dtype=np.int64)
        for _ in range(self.n):
            poly = np.convolve(poly, base)
        return [int(v) for v in poly]


def tensor_power(model, n):
    return TensorPower(model, n)


# -- validation ---------------------------------------------------------

def algebra_violations(basis, degree, multiply, unit, label=""):
    """
    check graded commutativity, associativity and the unit on basis elements
    multiply(x, y) returns {basis element: coeff}
    """
    problems = []

    def mult_combo(combo, y, on_left):
        out = {}
        for x, cx in combo.items():
            product = multiply(y, x) if on_left else multiply(x, y)
            for z, cz in product.items():
                vec_axpy(out, {z: cz}, cx)
        return out

    for x in basis:
        if multiply(unit, x) != {x: 1} or multiply(x, unit) != {x: 1}:
            problems.append(f"{label}unit does not act as identity on {x}")
    for x, y in itertools.combinations_with_replacement(basis, 2):
        xy = multiply(x, y)
        yx = multiply(y, x)
        sign = -1 if degree(x) * degree(y) % 2 else 1
        if xy != {z: sign * v for z, v in yx.items()}:
            problems.append(f"{label}graded commutativity fails for {x}, {y}")
    for x, y, z in itertools.product(basis, repeat=3):
        left = mult_combo(multiply(x, y), z, on_left=False)
        right = mult_combo(multiply(y, z), x, on_left=True)
        if left != right:
            problems.append(f"{label}associativity fails for {x}, {y}, {z}")
    return problems


def validate(model):
    """list every violated model invariant; an empty list means valid"""
    problems = []
    d = model.dim_c
    if not isinstance(d, int) or d < 1:
        problems.append(f"dim_c must be a positive integer, got {d!r}")
        return problems

    names = [cls.name for cls in model.classes]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        problems.append(f"duplicate class names: {', '.join(duplicates)}")
    for cls in model.classes:
        if cls.degree < 0 or cls.hodge.p < 0 or cls.hodge.q < 0:
            problems.append(f"class {cls.name} has negative degree or hodge numbers")

    units = [cls for cls in model.classes if cls.degree == 0]
    if len(units) != 1:
        problems.append(f"expected exactly one degree-0 class, found {len(units)}")
    elif units[0].hodge != HodgeType(0, 0):
        problems.append(f"degree-0 class {units[0].name} must have hodge type (0,0)")

    # products
    for (left, right), terms in model.products.items():
        if left not in model.index or right not in model.index:
            problems.append(f"product {left}*{right} names an unknown class")
            continue
        a, b = model.index[left], model.index[right]
        for name in terms:
            if name not in model.index:
                problems.append(f"product {left}*{right} produces unknown class {name}")
                continue
            c = model.index[name]
            if model.degrees[c] != model.degrees[a] + model.degrees[b]:
                problems.append(f"product {left}*{right} -> {name} breaks degree additivity")
            if model.hodge[c] != model.hodge[a] + model.hodge[b]:
                problems.append(f"product {left}*{right} -> {name} breaks hodge additivity")
    if problems or model.unit is None:
        return problems

    basis = list(range(len(model.classes)))
    problems.extend(algebra_violations(
        basis, lambda k: model.degrees[k], model.multiply, model.unit))

    # diagonal class
    for coeff, left, right in model.diagonal:
        if left not in model.index or right not in model.index:
            problems.append(f"diagonal term {left}(x){right} names an unknown class")
            continue
        a, b = model.index[left], model.index[right]
        if model.degrees[a] + model.degrees[b] != 2 * d:
            problems.append(f"diagonal term {left}(x){right} is not in degree {2 * d}")
        if model.hodge[a] + model.hodge[b] != HodgeType(d, d):
            problems.append(f"diagonal term {left}(x){right} is not of type ({d},{d})")
    if problems:
        return problems
    delta = {}
    for coeff, a, b in model.diagonal_terms():
        vec_axpy(delta, {(a, b): coeff})
    swapped = {}
    for (a, b), coeff in delta.items():
        sign = -1 if model.degrees[a] * model.degrees[b] % 2 else 1
        vec_axpy(swapped, {(b, a): sign * coeff})
    if swapped != delta:
        problems.append("diagonal class is not symmetric under swapping factors")
    u = model.unit
    for k, cls in enumerate(model.classes):
        on_left = multiply_combinations(model, delta, {(k, u): Fraction(1)})
        on_right = multiply_combinations(model, delta, {(u, k): Fraction(1)})
        if on_left != on_right:
            problems.append(f"diagonal class does not absorb {cls.name}: "
                            f"[Delta]({cls.name}(x)1) != [Delta](1(x){cls.name})")

    # point class
    for name in model.point_class:
        if name not in model.index:
            problems.append(f"point class names unknown class {name}")
            continue
        k = model.index[name]
        if model.degrees[k] != 2 * d or model.hodge[k] != HodgeType(d, d):
            problems.append(f"point class term {name} is not of degree {2 * d} and type ({d},{d})")

    if not model.compact:
        high = [cls.name for cls in model.classes if cls.degree >= 2 * d]
        if high:
            problems.append(f"noncompact model has classes in degree >= {2 * d}: {', '.join(high)}")
        if model.point_class:
            problems.append("noncompact model must have point_class = 0")

    if model.slope is not None:
        for cls in model.classes:
            weight = model.slope * cls.degree
            if weight.denominator != 1:
                problems.append(f"slope {model.slope} gives non-integer weight in degree {cls.degree}")
            elif cls.hodge.weight != weight:
                problems.append(f"class {cls.name} has weight {cls.hodge.weight}, "
                                f"slope {model.slope} requires {weight}")
    return problems


def require_valid(model):
    problems = validate(model)
    if problems:
        raise ModelError(f"model {model.name} failed validation", problems)
    return model


# -- model files --------------------------------------------------------

MODEL_FIELDS = {"dim_c", "compact", "classes", "products", "diagonal", "point_class", "slope"}


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ModelError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ModelError(f"{where}: unknown field(s) {', '.join(unknown)}")


def _parse_coeff(value, where):
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ModelError(f"{where}: bad coefficient {value!r} ({e})")


def _field(entry, key, where):
    if key not in entry:
        raise ModelError(f"{where}: missing field {key}")
    return entry[key]


def _int_field(entry, key, where):
    value = _field(entry, key, where)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ModelError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def _name_field(entry, key, where):
    value = _field(entry, key, where)
    if not isinstance(value, str):
        raise ModelError(f"{where}.{key}: expected a class name, got {value!r}")
    return value


def _list_field(data, key, where="model", required=False):
    if key not in data and not required:
        return []
    value = _field(data, key, where)
    if not isinstance(value, list):
        raise ModelError(f"{where}.{key}: expected a list, got {type(value).__name__}")
    return value


def model_from_dict(data, name="model"):
    """build a model from a parsed model-file document"""
    _check_keys(data, MODEL_FIELDS, "model")
    dim_c = _int_field(data, "dim_c", "model")
    compact = _field(data, "compact", "model")
    if not isinstance(compact, bool):
        raise ModelError("model.compact: expected a boolean")

    classes = []
    for k, entry in enumerate(_list_field(data, "classes", required=True)):
        where = f"classes[{k}]"
        _check_keys(entry, {"name", "degree", "p", "q"}, where)
        classes.append(CohClass(_name_field(entry, "name", where), _int_field(entry, "degree", where),
                                HodgeType(_int_field(entry, "p", where), _int_field(entry, "q", where))))

    products = {}
    for k, entry in enumerate(_list_field(data, "products")):
        where = f"products[{k}]"
        _check_keys(entry, {"left", "right", "terms"}, where)
        terms = {}
        for t, term in enumerate(_list_field(entry, "terms", where)):
            term_where = f"{where}.terms[{t}]"
            _check_keys(term, {"coeff", "class"}, term_where)
            terms[_name_field(term, "class", term_where)] = _parse_coeff(_field(term, "coeff", term_where),
                                                                         term_where)
        products[(_name_field(entry, "left", where), _name_field(entry, "right", where))] = terms

    diagonal = []
    for k, entry in enumerate(_list_field(data, "diagonal")):
        where = f"diagonal[{k}]"
        _check_keys(entry, {"coeff", "left", "right"}, where)
        diagonal.append((_parse_coeff(_field(entry, "coeff", where), where),
                         _name_field(entry, "left", where), _name_field(entry, "right", where)))

    point_class = {}
    for k, entry in enumerate(_list_field(data, "point_class")):
        where = f"point_class[{k}]"
        _check_keys(entry, {"coeff", "class"}, where)
        point_class[_name_field(entry, "class", where)] = _parse_coeff(_field(entry, "coeff", where), where)

    slope = data.get("slope")
    if slope is not None:
        slope = _parse_coeff(slope, "slope")
    return VarietyModel(dim_c, compact, classes, products, diagonal, point_class, slope, name=name)


def load_model(path):
    """read and validate a model file"""
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except OSError as e:
        raise ModelError(f"cannot read model file {path}: {e}")
    except json.JSONDecodeError as e:
        raise ModelError(f"model file {path} is not valid JSON: {e}")
    name = os.path.splitext(os.path.basename(path))[0]
    return require_valid(model_from_dict(data, name=name))


def save_model(model, path):
    with open(path, "w") as file:
        json.dump(model.to_dict(), file, indent=2, sort_keys=True)

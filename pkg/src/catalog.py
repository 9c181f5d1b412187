"""
built-in variety models
"""
import itertools
import re
from fractions import Fraction

from src.errors import ModelError
from src.variety import CohClass, HodgeType, VarietyModel, require_valid

UNIT = CohClass("1", 0, HodgeType(0, 0))


def affine_space(d=1):
    """C^d: only the unit, [Delta] = 0"""
    return VarietyModel(d, False, [UNIT], slope=1, name=f"affine_space:{d}")


def torus(d=1):
    """(C*)^d: exterior algebra on d classes of type (1,1) in degree 1"""
    classes = []
    subsets = []
    for size in range(d + 1):
        for subset in itertools.combinations(range(1, d + 1), size):
            subsets.append(subset)
            name = "1" if not subset else "e" + "".join(str(k) for k in subset)
            classes.append(CohClass(name, size, HodgeType(size, size)))
    names = {subset: cls.name for subset, cls in zip(subsets, classes)}
    products = {}
    for left, right in itertools.product(subsets, repeat=2):
        if not left or not right or set(left) & set(right):
            continue
        merged = left + right
        inversions = sum(1 for a, b in itertools.combinations(merged, 2) if a > b)
        sign = -1 if inversions % 2 else 1
        products[(names[left], names[right])] = {names[tuple(sorted(merged))]: sign}
    return VarietyModel(d, False, classes, products, slope=2, name=f"torus:{d}")


def proj_line():
    pt = CohClass("pt", 2, HodgeType(1, 1))
    diagonal = [(1, "pt", "1"), (1, "1", "pt")]
    return VarietyModel(1, True, [UNIT, pt], diagonal=diagonal, point_class={"pt": 1},
                        slope=1, name="proj_line")


def _curve_names(g):
    if g == 1:
        return [("a", "b")]
    return [(f"a{k}", f"b{k}") for k in range(1, g + 1)]


def curve_compact(g=1):
    """
    closed genus-g curve: a_k of type (1,0), b_k of type (0,1), a_k b_k = -pt
    [Delta] = sum (a_k (x) b_k - b_k (x) a_k) + pt (x) 1 + 1 (x) pt
    """
    pairs = _curve_names(g)
    classes = [UNIT]
    for a, b in pairs:
        classes.append(CohClass(a, 1, HodgeType(1, 0)))
        classes.append(CohClass(b, 1, HodgeType(0, 1)))
    classes.append(CohClass("pt", 2, HodgeType(1, 1)))
    products = {}
    diagonal = []
    for a, b in pairs:
        products[(a, b)] = {"pt": -1}
        diagonal.append((1, a, b))
        diagonal.append((-1, b, a))
    diagonal.append((1, "pt", "1"))
    diagonal.append((1, "1", "pt"))
    name = "elliptic" if g == 1 else f"curve_compact:{g}"
    return VarietyModel(1, True, classes, products, diagonal, {"pt": 1}, slope=1, name=name)


def elliptic():
    return curve_compact(1)


def curve_open(g=0, r=1):
    """
    genus-g curve minus r >= 1 points; the r-1 extra classes c_s are of
    type (1,1) in degree 1, so the model has no slope once r >= 2
    """
    if r < 1:
        raise ModelError("curve_open needs at least one puncture")
    classes = [UNIT]
    diagonal = []
    for a, b in _curve_names(g) if g else []:
        classes.append(CohClass(a, 1, HodgeType(1, 0)))
        classes.append(CohClass(b, 1, HodgeType(0, 1)))
        diagonal.append((1, a, b))
        diagonal.append((-1, b, a))
    for s in range(1, r):
        classes.append(CohClass(f"c{s}", 1, HodgeType(1, 1)))
    slope = 1 if r == 1 else None
    return VarietyModel(1, False, classes, diagonal=diagonal, slope=slope, name=f"curve_open:{g},{r}")


def p2_minus_curve(g=1):
    """complement of a smooth genus-g plane curve: H^2 of weight 3, nothing else"""
    classes = [UNIT]
    for k in range(1, g + 1):
        classes.append(CohClass(f"u{k}", 2, HodgeType(2, 1)))
        classes.append(CohClass(f"v{k}", 2, HodgeType(1, 2)))
    return VarietyModel(2, False, classes, slope=Fraction(3, 2), name=f"p2_minus_curve:{g}")


def conf2_elliptic_open():
    """H^*(Conf^2(E - O)) as a base: weights 0, 1, 3 in degrees 0, 1, 2"""
    classes = [
        UNIT,
        CohClass("a", 1, HodgeType(1, 0)),
        CohClass("b", 1, HodgeType(0, 1)),
        CohClass("u", 2, HodgeType(2, 1)),
        CohClass("v", 2, HodgeType(1, 2)),
    ]
    return VarietyModel(2, False, classes, name="conf2_elliptic_open")


# name -> (builder, number of integer arguments, default arguments, description)
CATALOG = {
    "affine_space": (affine_space, 1, (1,), "complex affine space C^d"),
    "torus": (torus, 1, (1,), "algebraic torus (C*)^d"),
    "proj_line": (proj_line, 0, (), "projective line P^1"),
    "elliptic": (elliptic, 0, (), "elliptic curve E"),
    "curve_compact": (curve_compact, 1, (1,), "closed curve of genus g"),
    "curve_open": (curve_open, 2, (0, 1), "genus g curve minus r >= 1 points"),
    "p2_minus_curve": (p2_minus_curve, 1, (1,), "P^2 minus a smooth curve of genus g"),
    "conf2_elliptic_open": (conf2_elliptic_open, 0, (), "Conf^2(E - O) as a base variety"),
}

_SPEC_PATTERN = re.compile(r"^\s*([a-z0-9_]+)\s*(?:[:(]\s*([0-9,\s]*)\)?)?\s*$")


def catalog(name, *args):
    """validated catalog model; missing arguments take their defaults"""
    if name not in CATALOG:
        raise ModelError(f"unknown catalog model '{name}' (known: {', '.join(sorted(CATALOG))})")
    builder, arity, defaults, _ = CATALOG[name]
    if len(args) > arity:
        raise ModelError(f"{name} takes at most {arity} argument(s), got {len(args)}")
    full = tuple(args) + tuple(defaults[len(args):])
    if any(not isinstance(a, int) or a < 0 for a in full):
        raise ModelError(f"{name}: arguments must be nonnegative integers, got {full}")
    if name in ("affine_space", "torus") and full[0] < 1:
        raise ModelError(f"{name}: dimension must be positive")
    return require_valid(builder(*full))


def parse_catalog_spec(spec):
    """'curve_open:1,2' or 'curve_open(1,2)' -> validated model"""
    match = _SPEC_PATTERN.match(spec)
    if not match:
        raise ModelError(f"cannot parse catalog name '{spec}' (expected NAME[:ARGS])")
    name, raw = match.group(1), match.group(2)
    args = []
    if raw:
        for part in raw.split(","):
            part = part.strip()
            if not part:
                continue
            args.append(int(part))
    return catalog(name, *args)


def catalog_entries():
    """one summary per catalog entry, built with default arguments"""
    entries = []
    for name in sorted(CATALOG):
        _, arity, defaults, description = CATALOG[name]
        model = catalog(name)
        entry = model.describe()
        entry["entry"] = name
        entry["arguments"] = arity
        entry["defaults"] = list(defaults)
        entry["description"] = description
        entries.append(entry)
    return entries

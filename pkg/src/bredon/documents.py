"""JSON input documents for groups, complexes, pairs, coefficient systems and matrices."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .coeff import (CoefficientSystem, GroupMismatch, NotAFunctor, NotAnAction, check_functoriality,
                    coinduced_system, constant_system, fixed_point_system, literal_system, permutation_module,
                    representable_system)
from .gcomplex import GPair, GSimplicialComplex, InvalidComplex, action_from_generators, face_closure
from .groups import (FiniteGroup, NotAGroup, OrbitMorphism, OrderBoundExceeded, Subgroup, cyclic_group,
                     dihedral_group, klein_four, symmetric_group, trivial_group)
from .linalg import FGAbGroup, IntMatrix


class ParseError(ValueError):
    """Malformed input; names the source and the offending field."""

    def __init__(self, source: str, fieldname: str, message: str):
        super().__init__(f"{source}: field '{fieldname}': {message}")
        self.source = source
        self.field = fieldname


class ValidationError(ValueError):
    def __init__(self, source: str, fieldname: str, message: str):
        super().__init__(f"{source}: field '{fieldname}': {message}")
        self.source = source
        self.field = fieldname


def load(arg: str) -> tuple[Any, str]:
    """A document from a path or an inline JSON string; returns it with a source label."""
    text = arg.strip()
    if text.startswith("{") or text.startswith("["):
        source = "<inline>"
    else:
        path = Path(arg)
        if not path.exists():
            raise ParseError(arg, "<file>", "no such file")
        source, text = str(path), path.read_text()
    try:
        return json.loads(text), source
    except json.JSONDecodeError as exc:
        raise ParseError(source, "<json>", f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _get(doc: dict, key: str, source: str, kind: type | tuple = object, default: Any = ...) -> Any:
    if not isinstance(doc, dict):
        raise ParseError(source, key, "expected an object")
    if key not in doc:
        if default is ...:
            raise ParseError(source, key, "missing")
        return default
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(source, key, f"expected {getattr(kind, '__name__', kind)}")
    return value


def _int_rows(value: Any, source: str, fieldname: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(source, fieldname, "expected an array of arrays")
    for r in value:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(source, fieldname, "entries must be integers")
    return value


# groups ---------------------------------------------------------------------

_NAMED = [
    (re.compile(r"^(1|trivial)$"), lambda m: trivial_group()),
    (re.compile(r"^(?:Z/|C)(\d+)$"), lambda m: cyclic_group(int(m.group(1)))),
    (re.compile(r"^S_?(\d+)$"), lambda m: symmetric_group(int(m.group(1)))),
    (re.compile(r"^D_?(\d+)$"), lambda m: dihedral_group(int(m.group(1)))),
    (re.compile(r"^(V4|Z/2xZ/2)$"), lambda m: klein_four()),
]


def named_group(name: str) -> FiniteGroup | None:
    for pattern, build in _NAMED:
        m = pattern.match(name.strip())
        if m:
            return build(m)
    return None


def group_from_document(doc: Any, source: str = "<group>") -> FiniteGroup:
    if isinstance(doc, str):
        G = named_group(doc)
        if G is None:
            raise ParseError(source, "group", f"unknown group name {doc!r}")
        return G
    if not isinstance(doc, dict):
        raise ParseError(source, "group", "expected an object or a group name")
    try:
        if "name" in doc and "table" not in doc and "permutations" not in doc:
            return group_from_document(_get(doc, "name", source, str), source)
        if "table" in doc:
            table = _int_rows(doc["table"], source, "table")
            gens = doc.get("generators")
            return FiniteGroup(table, generators=gens)
        if "permutations" in doc:
            perms = _int_rows(doc["permutations"], source, "permutations")
            bound = _get(doc, "order_bound", source, int, 64)
            degree = doc.get("degree")
            return FiniteGroup.from_permutations(perms, degree=degree, order_bound=bound)
    except NotAGroup as exc:
        raise ValidationError(source, "table", str(exc)) from None
    except OrderBoundExceeded as exc:
        raise ValidationError(source, "permutations", str(exc)) from None
    except (ValueError, TypeError, IndexError) as exc:
        if isinstance(exc, (ParseError, ValidationError)):
            raise
        raise ValidationError(source, "permutations" if "permutations" in doc else "table", str(exc)) from None
    raise ParseError(source, "table", "need 'table', 'permutations' or 'name'")


def load_group(arg: str) -> FiniteGroup:
    G = named_group(arg)
    if G is not None:
        return G
    doc, source = load(arg)
    return group_from_document(doc, source)


def subgroup_from(G: FiniteGroup, value: Any, source: str, fieldname: str) -> Subgroup:
    """A subgroup as an element list, an index into ``G.subgroups``, or ``"e"``/``"G"``."""
    if value in ("e", "trivial"):
        return G.trivial_subgroup
    if value in ("G", "whole"):
        return G.whole
    if isinstance(value, int) and not isinstance(value, bool):
        if not 0 <= value < len(G.subgroups):
            raise ValidationError(source, fieldname, f"subgroup index {value} out of range")
        return G.subgroups[value]
    if isinstance(value, list) and all(isinstance(x, int) for x in value):
        if not all(0 <= x < G.order for x in value) or not G.is_subgroup(value):
            raise ValidationError(source, fieldname, f"{value} is not a subgroup")
        return Subgroup(tuple(sorted(set(value))))
    raise ParseError(source, fieldname, "expected an element list, a subgroup index, 'e' or 'G'")


# complexes and pairs --------------------------------------------------------


def complex_from_document(doc: Any, G: FiniteGroup | None, source: str = "<complex>") -> GSimplicialComplex:
    if isinstance(doc, dict) and "group" in doc:
        embedded = group_from_document(doc["group"], source)
        if G is not None and embedded != G:
            raise GroupMismatch(f"{source}: field 'group': differs from the group given separately")
        G = embedded
    if G is None:
        raise ParseError(source, "group", "no group given")
    n = _get(doc, "vertices", source, int)
    facets = _int_rows(_get(doc, "facets", source, list), source, "facets")
    action = _get(doc, "action", source, dict, {})
    images = action.get("generator_images")
    try:
        if "element_images" in action:
            perms = _int_rows(action["element_images"], source, "action.element_images")
        else:
            if images is not None:
                images = _int_rows(images, source, "action.generator_images")
            perms = action_from_generators(G, n, images)
        X = GSimplicialComplex(G, n, facets, perms)
    except InvalidComplex as exc:
        raise ValidationError(source, "action" if "permutation" in str(exc) or "generator" in str(exc)
                              else "facets", str(exc)) from None
    report = X.validate()
    if not report.valid:
        raise ValidationError(source, "action", "; ".join(report.violations[:3]))
    return X


def load_complex(arg: str, G: FiniteGroup | None) -> GSimplicialComplex:
    doc, source = load(arg)
    return complex_from_document(doc, G, source)


def pair_from_document(doc: Any, G: FiniteGroup | None, source: str = "<pair>") -> GPair:
    X = complex_from_document(doc, G, source)
    sub = _int_rows(_get(doc, "subcomplex_facets", source, list, []), source, "subcomplex_facets")
    simplices = face_closure(sub)
    for s in simplices:
        if s not in X.index:
            raise ValidationError(source, "subcomplex_facets", f"{list(s)} is not a simplex of the complex")
    if not X.is_invariant(simplices):
        raise ValidationError(source, "subcomplex_facets", "subcomplex is not invariant under the group")
    return GPair(X, frozenset(simplices))


def load_pair(arg: str, G: FiniteGroup | None) -> GPair:
    doc, source = load(arg)
    return pair_from_document(doc, G, source)


# coefficient systems --------------------------------------------------------


def abelian_from(value: Any, source: str, fieldname: str) -> FGAbGroup:
    """``{"rank": r, "torsion": [...]}`` or ``{"generators": n, "relations": [[...], ...]}``."""
    if value is None:
        return FGAbGroup.free(1)
    if not isinstance(value, dict):
        raise ParseError(source, fieldname, "expected an object")
    if "generators" in value:
        n = _get(value, "generators", source, int)
        rows = _int_rows(value.get("relations", []), source, f"{fieldname}.relations")
        if any(len(r) != n for r in rows):
            raise ValidationError(source, f"{fieldname}.relations", f"each relation needs {n} entries")
        return FGAbGroup.from_relation_rows(n, rows)
    rank = _get(value, "rank", source, int, 0)
    torsion = value.get("torsion", [])
    try:
        return FGAbGroup.from_normal_form(rank, torsion)
    except ValueError as exc:
        raise ValidationError(source, f"{fieldname}.torsion", str(exc)) from None


def system_from_document(doc: Any, G: FiniteGroup | None, source: str = "<coefficients>") -> CoefficientSystem:
    if isinstance(doc, dict) and "group" in doc:
        embedded = group_from_document(doc["group"], source)
        if G is not None and embedded != G:
            raise GroupMismatch(f"{source}: field 'group': differs from the group of the complex")
        G = embedded
    if G is None:
        raise ParseError(source, "group", "no group given")
    kind = _get(doc, "kind", source, str)
    try:
        if kind == "constant":
            return constant_system(G, abelian_from(doc.get("value"), source, "value"))
        if kind == "representable":
            return representable_system(G, subgroup_from(G, _get(doc, "subgroup", source), source, "subgroup"))
        if kind == "fixed_point":
            module = doc.get("module")
            if module in ("regular", "coinduced"):
                return coinduced_system(G)
            if module == "permutation":
                M, mats = permutation_module(G, subgroup_from(G, _get(doc, "subgroup", source), source, "subgroup"))
                return fixed_point_system(G, M, element_matrices=mats)
            M = abelian_from(module, source, "module")
            gens = _get(doc, "generator_matrices", source, list)
            mats = [IntMatrix.from_dense(_int_rows(m, source, "generator_matrices"), M.ngens) for m in gens]
            return fixed_point_system(G, M, mats)
        if kind == "literal":
            return _literal(doc, G, source)
    except NotAnAction as exc:
        raise ValidationError(source, "generator_matrices", str(exc)) from None
    raise ParseError(source, "kind", f"unknown kind {kind!r}")


def _literal(doc: dict, G: FiniteGroup, source: str) -> CoefficientSystem:
    values = {}
    for i, entry in enumerate(_get(doc, "values", source, list)):
        H = subgroup_from(G, _get(entry, "subgroup", source), source, f"values[{i}].subgroup")
        values[H] = abelian_from(entry, source, f"values[{i}]")
    missing = [H for H in G.subgroups if H not in values]
    if missing:
        raise ValidationError(source, "values", f"no value for subgroup {list(missing[0].elements)}")
    maps = {}
    for i, entry in enumerate(_get(doc, "maps", source, list, [])):
        H = subgroup_from(G, _get(entry, "source", source), source, f"maps[{i}].source")
        K = subgroup_from(G, _get(entry, "target", source), source, f"maps[{i}].target")
        g = _get(entry, "coset", source, int)
        if not G.conjugate(G.inv(g), H).issubset(K):
            raise ValidationError(source, f"maps[{i}].coset", f"element {g} gives no map G/H -> G/K")
        rows = _int_rows(_get(entry, "matrix", source, list), source, f"maps[{i}].matrix")
        M = IntMatrix.from_dense(rows, values[K].ngens)
        if M.shape != (values[H].ngens, values[K].ngens):
            raise ValidationError(source, f"maps[{i}].matrix", f"shape {M.shape} does not fit")
        maps[OrbitMorphism(H, K, g)] = M
    E = literal_system(G, values, maps)
    report = check_functoriality(E, max_witnesses=1)
    if not report:
        raise ValidationError(source, "maps", f"not a functor: {report.witnesses[0]}")
    return E


def load_system(arg: str, G: FiniteGroup | None) -> CoefficientSystem:
    doc, source = load(arg)
    return system_from_document(doc, G, source)


# matrices -------------------------------------------------------------------


def matrix_from_document(doc: Any, source: str = "<matrix>") -> IntMatrix:
    try:
        if isinstance(doc, list):
            return IntMatrix.from_dense(_int_rows(doc, source, "matrix"))
        if isinstance(doc, dict) and "matrix" in doc:
            rows = _int_rows(doc["matrix"], source, "matrix")
            return IntMatrix.from_dense(rows, _get(doc, "cols", source, int, len(rows[0]) if rows else 0))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(source, "matrix", str(exc)) from None
    if isinstance(doc, dict) and "entries" in doc:
        try:
            return IntMatrix.from_document(doc)
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise ParseError(source, "entries", str(exc)) from None
    raise ParseError(source, "matrix", "need a dense 'matrix' or 'rows'/'cols'/'entries' triplets")


def load_matrix(arg: str) -> IntMatrix:
    doc, source = load(arg)
    return matrix_from_document(doc, source)


__all__ = ["ParseError", "ValidationError", "GroupMismatch", "NotAFunctor", "load", "load_group", "load_complex",
           "load_pair", "load_system", "load_matrix", "group_from_document", "complex_from_document",
           "pair_from_document", "system_from_document", "matrix_from_document", "named_group"]

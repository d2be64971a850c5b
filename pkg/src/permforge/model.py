"""Declarative constraint models and their JSON file format.

A model document looks like::

    {
      "length": 9,
      "constraints": [
        {"type": "classic", "mode": "avoid", "pattern": [1, 3, 2, 4]},
        {"type": "mesh", "mode": "avoid", "pattern": [2, 1, 3],
         "regions": [[0, 0], [0, 1], [1, 0], [1, 1]]},
        {"type": "property", "name": "involution"},
        {"type": "statistic", "terms": [{"coef": 1, "stat": "inversions"}],
         "op": "eq", "value": 9}
      ],
      "emit": ["descents", "inversions"]
    }

Constraints are conjunctive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from .patterns import KINDS, InvalidPattern, Mode, PatternSpec
from .perm import NotABijection, Permutation
from .properties import PropertyKind
from .statistics import Comparator, MalformedPredicate, StatisticKind, StatisticPredicate

__all__ = [
    "MAX_PATTERN_LENGTH",
    "ModelError",
    "ModelSyntaxError",
    "ModelValidationError",
    "PatternConstraint",
    "PropertyConstraint",
    "StatisticConstraint",
    "Constraint",
    "Model",
    "parse_model",
    "load_model",
    "serialize_model",
    "constraint_to_dict",
]

MAX_PATTERN_LENGTH = 64


class ModelError(ValueError):
    """A model document could not be turned into a Model; ``location`` says where."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.message = message
        self.location = location


class ModelSyntaxError(ModelError):
    pass


class ModelValidationError(ModelError):
    pass


@dataclass(frozen=True)
class PatternConstraint:
    pattern: PatternSpec
    mode: Mode = Mode.AVOID

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))

    def describe(self) -> str:
        return f"{self.mode.value} {self.pattern.describe()}"


@dataclass(frozen=True)
class PropertyConstraint:
    kind: PropertyKind
    negate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", PropertyKind(self.kind))

    def describe(self) -> str:
        return ("not " if self.negate else "") + self.kind.value


@dataclass(frozen=True)
class StatisticConstraint:
    pred: StatisticPredicate

    def describe(self) -> str:
        lhs = " + ".join(f"{c}*{s.value}" for c, s in self.pred.terms)
        if self.pred.modulus is not None:
            lhs = f"({lhs}) mod {self.pred.modulus}"
        return f"{lhs} {self.pred.comparator.value} {self.pred.rhs}"


Constraint = Union[PatternConstraint, PropertyConstraint, StatisticConstraint]


@dataclass(frozen=True)
class Model:
    length: int
    constraints: tuple[Constraint, ...] = ()
    emit: tuple[StatisticKind, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.length, bool) or not isinstance(self.length, int) or self.length < 1:
            raise ModelValidationError(f"length must be an integer >= 1, got {self.length!r}", "$.length")
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "emit", tuple(dict.fromkeys(StatisticKind(s) for s in self.emit)))
        for i, c in enumerate(self.constraints):
            if isinstance(c, PatternConstraint) and c.pattern.k > MAX_PATTERN_LENGTH:
                raise ModelValidationError(
                    f"pattern longer than {MAX_PATTERN_LENGTH}", f"$.constraints[{i}].pattern"
                )


# -- parsing -----------------------------------------------------------------

_PATTERN_KEYS = {
    "classic": (),
    "boxed": (),
    "consecutive": (),
    "vincular": ("adjacencies",),
    "bivincular": ("index_adjacencies", "value_adjacencies"),
    "mesh": ("regions",),
}


def _reject_duplicates(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise ModelSyntaxError(f"duplicate key {key!r}")
        obj[key] = value
    return obj


def _reject_constant(name):
    raise ModelSyntaxError(f"non-finite number {name}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _expect_int(x, where: str) -> int:
    if not _is_int(x):
        raise ModelValidationError(f"expected an integer, got {_kind(x)}", where)
    return x


def _expect_list(x, where: str) -> list:
    if not isinstance(x, list):
        raise ModelValidationError(f"expected an array, got {_kind(x)}", where)
    return x


def _expect_object(x, where: str) -> dict:
    if not isinstance(x, dict):
        raise ModelValidationError(f"expected an object, got {_kind(x)}", where)
    return x


def _kind(x) -> str:
    return {
        dict: "object",
        list: "array",
        str: "string",
        bool: "boolean",
        type(None): "null",
        float: "number",
    }.get(type(x), type(x).__name__)


def _check_keys(obj: dict, required, optional, where: str) -> None:
    for key in required:
        if key not in obj:
            raise ModelValidationError(f"missing key {key!r}", where)
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise ModelValidationError(f"unknown key {key!r}", where)


def _enum(cls, value, where: str):
    if not isinstance(value, str):
        raise ModelValidationError(f"expected a string, got {_kind(value)}", where)
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(repr(m.value) for m in cls)
        raise ModelValidationError(f"unknown name {value!r} (expected one of {choices})", where) from None


def _int_set(x, where: str) -> frozenset[int]:
    return frozenset(_expect_int(v, f"{where}[{i}]") for i, v in enumerate(_expect_list(x, where)))


def _parse_pattern(obj: dict, kind: str, where: str) -> PatternSpec:
    raw = _expect_list(obj["pattern"], f"{where}.pattern")
    values = [_expect_int(v, f"{where}.pattern[{i}]") for i, v in enumerate(raw)]
    if len(values) > MAX_PATTERN_LENGTH:
        raise ModelValidationError(f"pattern longer than {MAX_PATTERN_LENGTH}", f"{where}.pattern")
    try:
        base = Permutation(tuple(values))
    except NotABijection as exc:
        raise ModelValidationError(f"pattern is not a permutation: {exc}", f"{where}.pattern") from None
    payload: dict[str, Any] = {}
    if kind == "vincular":
        payload["adjacencies"] = _int_set(obj["adjacencies"], f"{where}.adjacencies")
    elif kind == "bivincular":
        payload["adjacencies"] = _int_set(obj["index_adjacencies"], f"{where}.index_adjacencies")
        payload["value_adjacencies"] = _int_set(obj["value_adjacencies"], f"{where}.value_adjacencies")
    elif kind == "mesh":
        cells = set()
        for i, cell in enumerate(_expect_list(obj["regions"], f"{where}.regions")):
            cw = f"{where}.regions[{i}]"
            cell = _expect_list(cell, cw)
            if len(cell) != 2:
                raise ModelValidationError("region must be a pair [x, y]", cw)
            cells.add((_expect_int(cell[0], f"{cw}[0]"), _expect_int(cell[1], f"{cw}[1]")))
        payload["regions"] = frozenset(cells)
    try:
        return PatternSpec(kind, base, **payload)
    except InvalidPattern as exc:
        raise ModelValidationError(str(exc), where) from None


def _parse_constraint(obj, where: str) -> Constraint:
    obj = _expect_object(obj, where)
    if "type" not in obj:
        raise ModelValidationError("missing key 'type'", where)
    ctype = obj["type"]
    if not isinstance(ctype, str):
        raise ModelValidationError(f"expected a string, got {_kind(ctype)}", f"{where}.type")
    if ctype in KINDS:
        _check_keys(obj, ("type", "mode", "pattern", *_PATTERN_KEYS[ctype]), (), where)
        mode = _enum(Mode, obj["mode"], f"{where}.mode")
        return PatternConstraint(_parse_pattern(obj, ctype, where), mode)
    if ctype == "property":
        _check_keys(obj, ("type", "name"), ("negate",), where)
        kind = _enum(PropertyKind, obj["name"], f"{where}.name")
        negate = obj.get("negate", False)
        if not isinstance(negate, bool):
            raise ModelValidationError(f"expected a boolean, got {_kind(negate)}", f"{where}.negate")
        return PropertyConstraint(kind, negate)
    if ctype == "statistic":
        _check_keys(obj, ("type", "terms", "op", "value"), ("mod",), where)
        terms = []
        raw_terms = _expect_list(obj["terms"], f"{where}.terms")
        if not raw_terms:
            raise ModelValidationError("terms must be nonempty", f"{where}.terms")
        for i, term in enumerate(raw_terms):
            tw = f"{where}.terms[{i}]"
            term = _expect_object(term, tw)
            _check_keys(term, ("coef", "stat"), (), tw)
            terms.append((_expect_int(term["coef"], f"{tw}.coef"), _enum(StatisticKind, term["stat"], f"{tw}.stat")))
        op = _enum(Comparator, obj["op"], f"{where}.op")
        value = _expect_int(obj["value"], f"{where}.value")
        mod = obj.get("mod")
        if mod is not None:
            mod = _expect_int(mod, f"{where}.mod")
        try:
            return StatisticConstraint(StatisticPredicate(tuple(terms), op, value, mod))
        except MalformedPredicate as exc:
            raise ModelValidationError(str(exc), where) from None
    raise ModelValidationError(f"unknown constraint type {ctype!r}", f"{where}.type")


def parse_model(text: bytes | str) -> Model:
    """Parse and validate a JSON model document.

    Raises ModelSyntaxError for malformed JSON (including duplicate keys) and
    ModelValidationError for well-formed documents that break the schema.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ModelSyntaxError(f"invalid UTF-8 at byte {exc.start}") from None
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    except ModelError:
        raise
    except RecursionError:
        raise ModelSyntaxError("document nested too deeply") from None
    except ValueError as exc:  # e.g. integer literals past the digit limit
        raise ModelSyntaxError(str(exc)) from None

    doc = _expect_object(doc, "$")
    _check_keys(doc, ("length",), ("constraints", "emit"), "$")
    length = _expect_int(doc["length"], "$.length")
    if length < 1:
        raise ModelValidationError(f"length must be >= 1, got {length}", "$.length")
    raw = _expect_list(doc.get("constraints", []), "$.constraints")
    constraints = tuple(_parse_constraint(c, f"$.constraints[{i}]") for i, c in enumerate(raw))
    emit = tuple(
        _enum(StatisticKind, s, f"$.emit[{i}]") for i, s in enumerate(_expect_list(doc.get("emit", []), "$.emit"))
    )
    return Model(length, constraints, emit)


def load_model(path: str | Path) -> Model:
    return parse_model(Path(path).read_bytes())


# -- serialization -------------------------------------------------------------


def constraint_to_dict(c: Constraint) -> dict:
    if isinstance(c, PatternConstraint):
        p = c.pattern
        out: dict[str, Any] = {"type": p.kind, "mode": c.mode.value, "pattern": list(p.base.images)}
        if p.kind == "vincular":
            out["adjacencies"] = sorted(p.adjacencies)
        elif p.kind == "bivincular":
            out["index_adjacencies"] = sorted(p.adjacencies)
            out["value_adjacencies"] = sorted(p.value_adjacencies)
        elif p.kind == "mesh":
            out["regions"] = [list(cell) for cell in sorted(p.regions)]
        return out
    if isinstance(c, PropertyConstraint):
        out = {"type": "property", "name": c.kind.value}
        if c.negate:
            out["negate"] = True
        return out
    if isinstance(c, StatisticConstraint):
        pred = c.pred
        out = {
            "type": "statistic",
            "terms": [{"coef": coef, "stat": stat.value} for coef, stat in pred.terms],
            "op": pred.comparator.value,
            "value": pred.rhs,
        }
        if pred.modulus is not None:
            out["mod"] = pred.modulus
        return out
    raise TypeError(f"not a constraint: {c!r}")


def serialize_model(m: Model) -> bytes:
    doc: dict[str, Any] = {"length": m.length, "constraints": [constraint_to_dict(c) for c in m.constraints]}
    if m.emit:
        doc["emit"] = [s.value for s in m.emit]
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")

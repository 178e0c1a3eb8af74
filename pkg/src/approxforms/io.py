"""Readers for the JSON input files accepted by the command line.

Every reader raises :class:`ParseError` (with line and column) for text
that is not valid JSON and :class:`ValidationError` for well-formed
documents that break a structural or referential rule.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .algebra import DUAL, PRIMAL, OperationSystem, make_system
from .errors import ApproxFormsError, ParseError, ValidationError
from .lefebvre import SUM_TOL, EnsembleCharacteristic
from .poset import FinitePoset, PosetMap


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=str(path)) from None
    return parse_json(text, str(path))


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source=source, line=exc.lineno, column=exc.colno) from None


def _require(obj: Any, key: str, kind, source: str):
    if not isinstance(obj, dict):
        raise ValidationError(f"{source}: expected an object at top level")
    if key not in obj:
        raise ValidationError(f"{source}: missing required field '{key}'")
    val = obj[key]
    if not isinstance(val, kind):
        raise ValidationError(f"{source}: field '{key}' has the wrong type")
    return val


def poset_from_obj(obj: Any, source: str = "<poset>") -> FinitePoset:
    elements = _require(obj, "elements", list, source)
    pairs = obj.get("le", []) if isinstance(obj, dict) else []
    if not all(isinstance(e, str) for e in elements):
        raise ValidationError(f"{source}: elements must be strings")
    if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(v, str) for v in p) for p in pairs):
        raise ValidationError(f"{source}: 'le' must be a list of [lower, upper] string pairs")
    try:
        return FinitePoset(elements, [tuple(p) for p in pairs])
    except ApproxFormsError as exc:
        raise ValidationError(f"{source}: {exc}") from None


def _poset_ref(ref: Any, base: Path | None, source: str) -> FinitePoset:
    if isinstance(ref, str):
        path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
        return poset_from_obj(load_json(path), str(path))
    return poset_from_obj(ref, source)


def load_poset(path: str | Path) -> FinitePoset:
    return poset_from_obj(load_json(path), str(path))


def map_from_obj(obj: Any, source: str = "<map>", base: Path | None = None,
                 domain: FinitePoset | None = None, codomain: FinitePoset | None = None) -> PosetMap:
    """Build a map; an explicit ``domain``/``codomain`` must agree with the file's own."""
    assoc = _require(obj, "map", dict, source)
    if "domain" in obj:
        d = _poset_ref(obj["domain"], base, f"{source}: domain")
        if domain is not None and d != domain:
            raise ValidationError(f"{source}: domain differs from the given poset")
        domain = d
    if "codomain" in obj:
        c = _poset_ref(obj["codomain"], base, f"{source}: codomain")
        if codomain is not None and c != codomain:
            raise ValidationError(f"{source}: codomain differs from the given codomain")
        codomain = c
    if domain is None or codomain is None:
        raise ValidationError(f"{source}: domain and codomain must be given")
    unknown = sorted(set(assoc) - set(domain.elements))
    if unknown:
        raise ValidationError(f"{source}: map references elements absent from the domain: {unknown}")
    missing = [x for x in domain.elements if x not in assoc]
    if missing:
        raise ValidationError(f"{source}: map has no image for {missing}")
    bad = sorted({str(v) for v in assoc.values() if v not in codomain.elements})
    if bad:
        raise ValidationError(f"{source}: map images absent from the codomain: {bad}")
    return PosetMap(domain, codomain, assoc)


def load_map(path: str | Path, domain: FinitePoset | None = None,
             codomain: FinitePoset | None = None) -> PosetMap:
    path = Path(path)
    return map_from_obj(load_json(path), str(path), path.parent, domain, codomain)


def algebra_from_obj(obj: Any, source: str = "<algebra>", base: Path | None = None,
                     codomain: FinitePoset | None = None) -> OperationSystem:
    if not isinstance(obj, dict):
        raise ValidationError(f"{source}: expected an object at top level")
    if "codomain" in obj:
        c = _poset_ref(obj["codomain"], base, f"{source}: codomain")
        if codomain is not None and c != codomain:
            raise ValidationError(f"{source}: codomain differs from the given codomain")
        codomain = c
    if codomain is None:
        raise ValidationError(f"{source}: missing required field 'codomain'")
    polarity = obj.get("polarity", PRIMAL)
    if polarity not in (PRIMAL, DUAL):
        raise ValidationError(f"{source}: polarity must be 'primal' or 'dual'")
    diss = _require(obj, "dissociate", list, source)
    null = _require(obj, "null_op", list, source)
    comb = obj.get("combine_binary")
    join = obj.get("combine_join", False)
    if not isinstance(join, bool):
        raise ValidationError(f"{source}: combine_join must be true or false")
    try:
        return make_system(codomain, diss, null, comb, join, polarity)
    except ApproxFormsError as exc:
        raise ValidationError(f"{source}: {exc}") from None


def load_algebra(path: str | Path, codomain: FinitePoset | None = None) -> OperationSystem:
    path = Path(path)
    return algebra_from_obj(load_json(path), str(path), path.parent, codomain)


def ensemble_from_obj(obj: Any, source: str = "<ensemble>") -> EnsembleCharacteristic:
    p = _require(obj, "p", list, source)
    if len(p) != 8:
        raise ValidationError(f"{source}: 'p' must hold 8 probabilities, got {len(p)}")
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p):
        raise ValidationError(f"{source}: 'p' entries must be numbers")
    total = math.fsum(p)
    if abs(total - 1.0) > SUM_TOL:
        raise ValidationError(
            f"{source}: probabilities sum to {total!r}, not 1 within {SUM_TOL} (normalization)")
    try:
        return EnsembleCharacteristic(tuple(float(v) for v in p))
    except ApproxFormsError as exc:
        raise ValidationError(f"{source}: {exc}") from None


def load_ensemble(path: str | Path) -> EnsembleCharacteristic:
    return ensemble_from_obj(load_json(path), str(path))

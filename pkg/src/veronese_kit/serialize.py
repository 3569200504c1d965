"""JSON codecs for fields, configurations, and bracket polynomials.

The configuration document is:

    {"field": "Q" | {"Fp": p}, "d": d, "n": n, "columns": [[...], ...]}

with rational scalars as fraction strings ("3", "-5/7") and prime-field
scalars as plain ints. Round-tripping preserves configurations up to nothing
at all — coordinates are written verbatim.
"""

from __future__ import annotations

from typing import Any

from .brackets import BracketPolynomial, format_bracket_poly
from .configurations import PointConfiguration, make_config
from .fields import Field


def field_to_json(f: Field) -> Any:
    return "Q" if f.kind == "Q" else {"Fp": f.p}


def field_from_json(doc: Any) -> Field:
    if doc == "Q":
        return Field.rationals()
    if isinstance(doc, dict) and set(doc) == {"Fp"}:
        return Field.prime(int(doc["Fp"]))
    raise ValueError(f"bad field document: {doc!r}")


def parse_field_spec(spec: str) -> Field:
    """CLI shorthand: 'Q', 'Fp' (default prime), or 'Fp:65521'."""
    s = spec.strip()
    if s in ("Q", "q"):
        return Field.rationals()
    if s in ("Fp", "fp"):
        return Field.prime()
    for sep in (":", "="):
        if s.lower().startswith("fp" + sep):
            return Field.prime(int(s[3:]))
    raise ValueError(f"bad field spec {spec!r}; use Q, Fp, or Fp:<prime>")


def config_to_json(p: PointConfiguration) -> dict:
    f = p.field
    return {
        "field": field_to_json(f),
        "d": p.d,
        "n": p.n,
        "columns": [[f.scalar_to_json(x) for x in col] for col in p.points()],
    }


def config_from_json(doc: dict) -> PointConfiguration:
    if not isinstance(doc, dict):
        raise ValueError("configuration document must be an object")
    missing = {"field", "d", "n", "columns"} - set(doc)
    if missing:
        raise ValueError(f"configuration document missing keys: {sorted(missing)}")
    f = field_from_json(doc["field"])
    d, n = int(doc["d"]), int(doc["n"])
    cols = doc["columns"]
    if not isinstance(cols, list) or len(cols) != n:
        raise ValueError(f"expected {n} columns")
    if any(len(c) != d + 1 for c in cols):
        raise ValueError(f"every column must have {d + 1} coordinates")
    return make_config(f, d, n, [[f.scalar_from_json(x) for x in col] for col in cols])


def bracket_poly_to_json(P: BracketPolynomial) -> dict:
    return {
        "ground": P.ground,
        "width": P.width,
        "terms": [{"coef": c, "factors": [list(f) for f in fs]} for c, fs in P.terms],
        "text": format_bracket_poly(P),
    }

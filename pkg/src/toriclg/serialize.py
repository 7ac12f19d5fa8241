"""JSON model files and canonical report output.

Every file is an object ``{"format_version": "1", "type": T, ...}`` with
``T`` one of ``lg-model``, ``sigma-input``, ``nef-data``, ``bh-data`` or
``polyhedron``; the remaining keys are the payload.  Rationals are written
as ``"p/q"`` strings, integers as JSON integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from . import exactlinalg as xl
from .constructions.batyrev_borisov import NefData
from .constructions.berglund_hubsch import BHData
from .lineardata import LinearData, ToricLGModel
from .polyhedra import PointSet, Polyhedron
from .sigma import CANONICAL, LEX, SectionSpec, SplitBundleData, ToricVarietyData, build_lg

FORMAT_VERSION = "1"
TYPES = ("lg-model", "sigma-input", "nef-data", "bh-data", "polyhedron")


class SchemaError(ValueError):
    """A model file that does not match the expected layout; ``path`` names the field."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


def dumps(obj: Any, pretty: bool = False) -> str:
    """Canonical JSON: sorted keys, fixed separators, ASCII only, trailing newline."""
    if pretty:
        s = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True)
    else:
        s = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return s + "\n"


def loads_plain(text: str):
    """Parse JSON, reporting syntax errors by line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}", e.msg) from None


def loads(text: str) -> dict:
    data = loads_plain(text)
    if not isinstance(data, dict):
        raise SchemaError("$", "a model file must be a JSON object")
    v = data.get("format_version")
    if v != FORMAT_VERSION:
        raise SchemaError("$.format_version", f"expected {FORMAT_VERSION!r}, found {v!r}")
    if data.get("type") not in TYPES:
        raise SchemaError("$.type", f"expected one of {', '.join(TYPES)}, found {data.get('type')!r}")
    return data


def envelope(kind: str, payload: dict) -> dict:
    return {"format_version": FORMAT_VERSION, "type": kind, **payload}


def _field(data: dict, key: str, path: str):
    if key not in data:
        raise SchemaError(f"{path}.{key}", "missing field")
    return data[key]


def _wrap(path: str, fn, *args):
    try:
        return fn(*args)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, xl.TorsionError):
            raise
        raise SchemaError(path, str(e) if not isinstance(e, KeyError) else f"missing field {e}") from None


# ---------------------------------------------------------------------------
# sigma input


def _lift_list(values, path: str) -> tuple:
    out = []
    for i, c in enumerate(values):
        if isinstance(c, dict):
            out.append(xl.CZ(xl.parse_fraction(c.get("re", 0)), xl.parse_fraction(c.get("im", 0))))
        elif isinstance(c, (list, tuple)) and len(c) == 2:
            out.append(xl.CZ(xl.parse_fraction(c[0]), xl.parse_fraction(c[1])))
        else:
            try:
                out.append(xl.CZ(0, xl.parse_fraction(c)))
            except (TypeError, ValueError) as e:
                raise SchemaError(f"{path}[{i}]", str(e)) from None
    return tuple(out)


def _lift_json(lift) -> list:
    return [{"re": xl.format_fraction(c.re), "im": xl.format_fraction(c.im)} for c in lift]


def section_from_json(data, path: str = "$.section") -> SectionSpec:
    if data is None or data == "generic":
        return SectionSpec.generic_section()
    if isinstance(data, dict) and data.get("generic"):
        default = _lift_list([data.get("default", 0)], f"{path}.default")[0]
        return SectionSpec.generic_section(default)
    terms = data.get("terms") if isinstance(data, dict) else data
    if not isinstance(terms, list):
        raise SchemaError(path, "expected 'generic' or an object with a 'terms' list")
    out = []
    for k, t in enumerate(terms):
        p = f"{path}.terms[{k}]"
        j = _field(t, "j", p)
        if not isinstance(j, int) or j < 1:
            raise SchemaError(f"{p}.j", "components are numbered from 1")
        nu = _field(t, "nu", p)
        lift = _lift_list([t.get("lift", 0)], f"{p}.lift")[0]
        out.append((j - 1, tuple(nu), lift))
    return SectionSpec.explicit(out)


def section_to_json(S: SectionSpec):
    if S.generic:
        return {"generic": True, "default": _lift_json([S.default])[0]}
    return {"terms": [{"j": j + 1, "nu": list(nu), "lift": _lift_json([lift])[0]} for j, nu, lift in S.terms]}


def variety_from_json(data: dict, path: str) -> ToricVarietyData:
    return _wrap(path, ToricVarietyData.from_json, data)


@dataclass(frozen=True)
class SigmaInput:
    bundle: SplitBundleData
    K: tuple
    section: SectionSpec
    order: str = CANONICAL

    def build(self) -> ToricLGModel:
        return build_lg(self.bundle, self.K, self.section, self.order)

    def to_json(self) -> dict:
        return envelope("sigma-input", {
            "base": self.bundle.base.to_json(),
            "divisors": [list(D) for D in self.bundle.divisors],
            "K": _lift_json(self.K),
            "section": section_to_json(self.section),
            "order": self.order,
        })


def sigma_from_json(data: dict) -> SigmaInput:
    base = variety_from_json(_field(data, "base", "$"), "$.base")
    divs = _field(data, "divisors", "$")
    B = _wrap("$.divisors", SplitBundleData, base, tuple(tuple(D) for D in divs))
    K = _lift_list(data.get("K", [0] * base.r), "$.K")
    if len(K) not in (base.r, base.r + B.c):
        raise SchemaError("$.K", f"expected {base.r} or {base.r + B.c} entries, found {len(K)}")
    S = section_from_json(data.get("section"))
    order = data.get("order", CANONICAL)
    if order not in (CANONICAL, LEX):
        raise SchemaError("$.order", f"expected {CANONICAL!r} or {LEX!r}")
    return SigmaInput(B, K, S, order)


# ---------------------------------------------------------------------------
# lg models


def model_to_json(M: ToricLGModel, source: SigmaInput | None = None) -> dict:
    d = {
        "A": M.A.to_json(),
        "B": M.B.to_json(),
        "orientation": M.orientation,
        "a_realized": M.a_realized,
    }
    if source is not None:
        d["source"] = source.to_json()
    return envelope("lg-model", d)


def model_from_json(data: dict) -> ToricLGModel:
    A = _wrap("$.A", LinearData.from_json, _field(data, "A", "$"))
    B = _wrap("$.B", LinearData.from_json, _field(data, "B", "$"))
    orientation = data.get("orientation", "sigma")
    blocks = None
    if "source" in data:
        src = sigma_from_json(data["source"])
        built = _wrap("$.source", src.build)
        want = (built.A.matrix, built.B.matrix) if orientation == "sigma" else (built.B.matrix, built.A.matrix)
        if (A.matrix, B.matrix) != want:
            raise SchemaError("$.source", "the source does not rebuild the stored matrices")
        blocks = built.blocks
    return _wrap("$", ToricLGModel, A, B, blocks, orientation, bool(data.get("a_realized", True)))


def load_model(data: dict) -> tuple[ToricLGModel, SigmaInput | None]:
    """An LG model from an ``lg-model`` or a ``sigma-input`` file."""
    if data["type"] == "sigma-input":
        src = sigma_from_json(data)
        return _wrap("$", src.build), src
    if data["type"] == "lg-model":
        M = model_from_json(data)
        src = sigma_from_json(data["source"]) if "source" in data else None
        return M, src
    raise SchemaError("$.type", f"expected lg-model or sigma-input, found {data['type']!r}")


# ---------------------------------------------------------------------------
# other payloads


def nef_from_json(data: dict) -> NefData:
    base = variety_from_json(_field(data, "base", "$"), "$.base")
    return _wrap("$.parts", NefData, base, tuple(tuple(D) for D in _field(data, "parts", "$")))


def nef_to_json(N: NefData) -> dict:
    return envelope("nef-data", N.to_json())


def bh_from_json(data: dict) -> BHData:
    return _wrap("$", BHData.from_json, data)


def bh_to_json(B: BHData) -> dict:
    return envelope("bh-data", B.to_json())


def polyhedron_from_json(data: dict) -> Polyhedron | PointSet:
    if "normals" in data:
        return _wrap("$", Polyhedron.from_json, data)
    if "vertices" in data:
        return _wrap("$", PointSet.from_json, data)
    raise SchemaError("$", "a polyhedron needs 'normals'/'offsets' or 'vertices'/'rays'")


def polyhedron_to_json(P) -> dict:
    return envelope("polyhedron", P.to_json())

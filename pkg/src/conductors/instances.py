"""JSON instance files: parsing, validation and serialization.

Rationals are always written as exact "p/q" strings, cyclotomic values as
``{"order": n, "coeffs": [...]}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import linalg as la
from .characters import Character, NotACharacterError
from .exactnum import Cyclotomic, embed, format_rational
from .groups import FiniteGroup, GroupAxiomError, cyclic, from_table, unit_group_mod
from .ramification import FiltrationError, RamifiedGroup
from .weildeligne import Frobenius, MatrixRep, RepresentationError, WeilDeligneRep

SCHEMA_VERSION = 1
KINDS = ("filtration", "character", "wd")


class InstanceError(ValueError):
    pass


@dataclass
class InstanceFile:
    kind: str
    rg: RamifiedGroup
    character: Character | None = None
    wd: WeilDeligneRep | None = None
    group_doc: dict | None = field(default=None, compare=False)
    schema_version: int = SCHEMA_VERSION

    def __eq__(self, other):
        if not isinstance(other, InstanceFile):
            return NotImplemented
        if (self.kind, self.schema_version, self.rg, self.rg.realizable) != \
                (other.kind, other.schema_version, other.rg, other.rg.realizable):
            return False
        if (self.character is None) != (other.character is None):
            return False
        if self.character is not None and self.character != other.character:
            return False
        if (self.wd is None) != (other.wd is None):
            return False
        if self.wd is not None:
            a, b = self.wd, other.wd
            if (a.order, a.q, a.rep.mats, a.N) != (b.order, b.q, b.rep.mats, b.N):
                return False
            if (a.frobenius is None) != (b.frobenius is None):
                return False
            if a.frobenius and a.frobenius != b.frobenius:
                return False
        return True


# -- values ----------------------------------------------------------------

def _cyc(doc, order: int, where: str) -> Cyclotomic:
    try:
        return embed(Cyclotomic.from_json(doc), order)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InstanceError(f"{where}: bad value {doc!r}: {exc}") from exc


def _matrix(doc, order: int, dim: int, where: str) -> la.Matrix:
    if not isinstance(doc, list) or len(doc) != dim:
        raise InstanceError(f"{where}: expected {dim} rows")
    rows = []
    for i, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != dim:
            raise InstanceError(f"{where}[{i}]: expected {dim} entries")
        rows.append(tuple(_cyc(x, order, f"{where}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def value_to_json(x: Cyclotomic):
    return x.to_json()


def matrix_to_json(M: la.Matrix):
    return [[value_to_json(x) for x in row] for row in M]


# -- group and filtration --------------------------------------------------

def parse_group(doc: Any) -> FiniteGroup:
    if not isinstance(doc, dict):
        raise InstanceError("group: expected an object")
    try:
        if "preset" in doc:
            preset, k = doc["preset"], int(doc["param"])
            if preset == "cyclic":
                return cyclic(k)
            if preset == "units_mod":
                return unit_group_mod(k)
            raise InstanceError(f"group.preset: unknown preset {preset!r}; allowed: cyclic, units_mod")
        mul = doc["mul"]
        if "size" in doc and int(doc["size"]) != len(mul):
            raise InstanceError(f"group.size = {doc['size']} but the table has {len(mul)} rows")
        return from_table(mul, doc.get("labels"))
    except GroupAxiomError as exc:
        raise InstanceError(f"group: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(f"group: malformed ({exc})") from exc


def group_to_json(G: FiniteGroup) -> dict:
    doc = {"size": G.size, "mul": [list(r) for r in G.mul]}
    if G.labels:
        doc["labels"] = list(G.labels)
    return doc


def parse_filtration(doc: dict) -> RamifiedGroup:
    G = parse_group(doc.get("group"))
    chain = doc.get("chain")
    if not isinstance(chain, list):
        raise InstanceError("chain: expected a list of element-index lists")
    try:
        return RamifiedGroup.from_indices(G, chain, bool(doc.get("realizable", False)))
    except (FiltrationError, GroupAxiomError) as exc:
        raise InstanceError(f"chain: {exc}") from exc


def parse_document(doc: Any) -> InstanceFile:
    if not isinstance(doc, dict):
        raise InstanceError("instance: expected a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InstanceError(f"schema_version: unknown version {version!r} (supported: {SCHEMA_VERSION})")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InstanceError(f"kind: unknown kind {kind!r}; allowed kinds: {', '.join(KINDS)}")
    rg = parse_filtration(doc)
    inst = InstanceFile(kind, rg, group_doc=doc["group"] if "preset" in doc["group"] else None)
    G = rg.G
    if kind == "character":
        cdoc = doc.get("character")
        if not isinstance(cdoc, dict) or "values" not in cdoc:
            raise InstanceError("character: expected {'order': n, 'values': [...]}")
        order = int(cdoc.get("order", 1))
        values = cdoc["values"]
        if not isinstance(values, list) or len(values) != G.size:
            raise InstanceError(f"character.values: expected {G.size} values")
        vals = [_cyc(v, order, f"character.values[{g}]") for g, v in enumerate(values)]
        try:
            inst.character = Character(rg, vals, order)
        except (ValueError, NotACharacterError) as exc:
            raise InstanceError(f"character: {exc}") from exc
    elif kind == "wd":
        try:
            dim = int(doc["dim"])
            order = int(doc.get("order", 1))
            mdoc = doc["mats"]
            if isinstance(mdoc, dict):
                missing = [g for g in G.elements if str(g) not in mdoc]
                if missing:
                    raise InstanceError(f"mats: no matrix for element {missing[0]}")
                mats = [_matrix(mdoc[str(g)], order, dim, f"mats[{g}]") for g in G.elements]
            else:
                raise InstanceError("mats: expected an object keyed by element index")
            N = _matrix(doc["N"], order, dim, "N")
            q = int(doc["q"])
            frob = None
            if doc.get("frobenius") is not None:
                fdoc = doc["frobenius"]
                frob = Frobenius(_matrix(fdoc["F"], order, dim, "frobenius.F"),
                                 tuple(int(x) for x in fdoc["theta"]))
            inst.wd = WeilDeligneRep(MatrixRep(rg, mats, order), N, q, frob)
        except RepresentationError as exc:
            raise InstanceError(f"wd: {exc}") from exc
        except KeyError as exc:
            raise InstanceError(f"wd: missing field {exc}") from exc
    return inst


def parse_instance(path: str | Path) -> InstanceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_document(doc)


def serialize(inst: InstanceFile) -> dict:
    rg = inst.rg
    doc: dict[str, Any] = {
        "schema_version": inst.schema_version,
        "kind": inst.kind,
        "group": inst.group_doc if inst.group_doc else group_to_json(rg.G),
        "chain": [list(H.elements) for H in rg.chain],
        "realizable": rg.realizable,
    }
    if inst.kind == "character":
        chi = inst.character
        doc["character"] = {"order": chi.order, "values": [value_to_json(v) for v in chi.values]}
    elif inst.kind == "wd":
        wd = inst.wd
        doc.update({
            "dim": wd.dim,
            "order": wd.order,
            "mats": {str(g): matrix_to_json(wd.rep(g)) for g in rg.G.elements},
            "N": matrix_to_json(wd.N),
            "q": wd.q,
            "frobenius": None if wd.frobenius is None else {
                "F": matrix_to_json(wd.frobenius.F), "theta": list(wd.frobenius.theta)},
        })
    return doc


def dumps(inst: InstanceFile) -> str:
    return json.dumps(serialize(inst), indent=1, sort_keys=True) + "\n"


def character_instance(chi: Character, group_doc: dict | None = None) -> InstanceFile:
    return InstanceFile("character", chi.rg, character=chi, group_doc=group_doc)


def wd_instance(wd: WeilDeligneRep, group_doc: dict | None = None) -> InstanceFile:
    return InstanceFile("wd", wd.rg, wd=wd, group_doc=group_doc)


def filtration_instance(rg: RamifiedGroup, group_doc: dict | None = None) -> InstanceFile:
    return InstanceFile("filtration", rg, group_doc=group_doc)


__all__ = ["InstanceError", "InstanceFile", "parse_instance", "parse_document", "serialize",
           "dumps", "format_rational", "character_instance", "wd_instance", "filtration_instance"]

"""Read-only catalog of operators, recursion signatures and recorded relations.

Printed operators live in ``data/catalog.txt``; family members (Hadamard
products with closed forms, binomial lifts, hypergeometric quintics) are
built on demand from their parameters.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import NotFoundError
from .exact import Polynomial
from .families import (
    BINOM_LIFT,
    DEGREE_TWO,
    EXCLUDED_PRODUCTS,
    HYPER_SECOND,
    PRODUCT_GRID,
    TILDE_ROWS,
    binom_lift_third,
    hadamard_product,
    hypergeometric_quintic,
    tilde_spec,
)
from .opalg import ThetaOperator
from .text import parse_machine

CATALOG_VERSION = 1


@dataclass
class CatalogEntry:
    id: str
    aliases: list[str] = field(default_factory=list)
    operator: ThetaOperator | None = None
    source: str = ""
    corrected: bool = False
    excluded: bool = False
    tags: list[str] = field(default_factory=list)
    Q0: Polynomial | None = None
    notes: str = ""
    printed: str = ""


@dataclass
class SuperseekerRow:
    id: str
    abs_D: int
    D_text: str
    Q0: Polynomial | None
    ids: list[str]
    degree: str
    garbled: bool = False
    erratum: bool = False
    notes: str = ""

    @property
    def printed_D(self) -> int:
        return -self.abs_D if self.D_text.lstrip().startswith("-") else self.abs_D

    @property
    def D_text_value(self) -> int | None:
        """Value of the printed factorization, if it is a complete product."""
        expr = self.D_text.strip()
        if not re.fullmatch(r"-?\d+(\^\d+)?(\*\d+(\^\d+)?)*", expr):
            return None
        sign = -1 if expr.startswith("-") else 1
        total = 1
        for factor in expr.lstrip("-").split("*"):
            base, _, exp = factor.partition("^")
            total *= int(base) ** int(exp or 1)
        return sign * total


@dataclass(frozen=True)
class Relation:
    kind: str
    args: tuple[str, ...]


@dataclass
class Catalog:
    entries: dict[str, CatalogEntry]
    rows: list[SuperseekerRow]
    relations: list[Relation]
    aliases: dict[str, str]

    def get(self, key: str) -> CatalogEntry:
        k = key.strip()
        if k in self.entries:
            return self.entries[k]
        if k in self.aliases:
            return self.entries[self.aliases[k]]
        for row in self.rows:
            if row.id == k:
                return CatalogEntry(row.id, [], None, "recursion signature table", False, row.garbled,
                                    ["superseeker"], row.Q0, row.notes)
        names = list(self.entries) + list(self.aliases) + [r.id for r in self.rows]
        raise NotFoundError(key, difflib.get_close_matches(k, names, n=5, cutoff=0.5))

    def ids(self) -> list[str]:
        return sorted(self.entries)


def _split_records(text: str):
    lines = text.splitlines()
    if not lines or lines[0].split() != ["CYCATALOG", str(CATALOG_VERSION)]:
        raise ValueError("catalog file must start with 'CYCATALOG 1'")
    i = 1
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition(" ")
        if kind == "relation":
            yield "relation", rest.split(), None
            continue
        if kind not in ("entry", "row"):
            raise ValueError(f"unexpected catalog line {i}: {line!r}")
        meta, body = {}, []
        while i < len(lines) and lines[i].strip() != "end":
            cur = lines[i].strip()
            i += 1
            if body or cur.startswith("CYOP"):
                body.append(cur)
            elif cur:
                key, _, val = cur.partition(":")
                meta[key.strip()] = val.strip()
        i += 1
        yield kind, (rest.strip(), meta), "\n".join(body)


def _int_poly(text: str) -> Polynomial | None:
    if not text:
        return None
    a, b, c = (int(t) for t in text.split())
    return Polynomial([c, b, a], "n")


def _flags(meta) -> set[str]:
    return set(meta.get("flags", "").split())


def load_catalog(text: str | None = None) -> Catalog:
    if text is None:
        text = resources.files("cykit").joinpath("data/catalog.txt").read_text(encoding="utf-8")
    entries: dict[str, CatalogEntry] = {}
    rows: list[SuperseekerRow] = []
    relations: list[Relation] = []
    for kind, payload, body in _split_records(text):
        if kind == "relation":
            relations.append(Relation(payload[0], tuple(payload[1:])))
            continue
        ident, meta = payload
        if kind == "row":
            rows.append(SuperseekerRow(ident, int(meta["absD"]), meta.get("D", ""), _int_poly(meta.get("Q0", "")),
                                       meta.get("ids", "").split(), meta.get("degree", "?"),
                                       "garbled" in _flags(meta), "erratum" in _flags(meta), meta.get("notes", "")))
            continue
        fl = _flags(meta)
        op = parse_machine(body) if body else None
        entries[ident] = CatalogEntry(ident, meta.get("aliases", "").split(), op, meta.get("source", ""),
                                      "corrected" in fl, "excluded" in fl, meta.get("tags", "").split(),
                                      _int_poly(meta.get("Q0", "")), meta.get("notes", ""), meta.get("printed", ""))
    for entry in _constructed():
        entries.setdefault(entry.id, entry)
    aliases = {}
    for e in entries.values():
        for a in e.aliases:
            aliases.setdefault(a, e.id)
    return Catalog(entries, rows, relations, aliases)


def _constructed() -> list[CatalogEntry]:
    out = []
    for h_idx, h in enumerate(HYPER_SECOND):
        for d in DEGREE_TWO:
            ref = PRODUCT_GRID[d][h_idx]
            aliases = [f"{h}*{d}", f"{h}*({d})", f"({h})*({d})"]
            if ref.isdigit():
                aliases.append(f"#{ref}")
            reason = EXCLUDED_PRODUCTS.get((h, d))
            out.append(CatalogEntry(
                f"hadamard-{h}-{d}", aliases, hadamard_product(h, d), "Hadamard product grid",
                excluded=reason is not None, tags=["hadamard", "degree-2"],
                notes=f"grid cell {ref}" + (f"; excluded: {reason}" if reason else "")))
    for name, (ref, P, c) in BINOM_LIFT.items():
        out.append(CatalogEntry(f"binomlift-{name}", [f"#{ref}"] if ref.isdigit() else [],
                                binom_lift_third(P, c), "binomial lift table", tags=["binomial-lift", "degree-2"],
                                notes=f"big-table reference {ref}"))
    for m in TILDE_ROWS:
        out.append(CatalogEntry(f"quintic-tilde-{m}", [], hypergeometric_quintic(tilde_spec(m)),
                                "hypergeometric quintic parameter table", tags=["hypergeometric-quintic"]))
    return out


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog()


def catalog_get(key: str) -> CatalogEntry:
    return default_catalog().get(key)


def superseeker_rows() -> list[SuperseekerRow]:
    return default_catalog().rows

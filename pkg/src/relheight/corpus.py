"""JSON-lines corpus of polynomials with optional base fields.

One object per line: {"name": str, "coeffs": [c0, ..., cd], "base":
optional ascending coefficient list for the base field's defining
polynomial, "galois_tower": optional bool}.  Coefficients are ascending,
so coeffs[0] is the constant term.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    coeffs: tuple[int, ...]
    base: tuple[int, ...] | None = None
    galois_tower: bool | None = None


def parse_entry(obj: dict) -> CorpusEntry:
    if not isinstance(obj, dict):
        raise InputError("entry must be a JSON object")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise InputError("missing or empty 'name'")
    coeffs = _int_list(obj.get("coeffs"), "coeffs")
    base = obj.get("base")
    if base is not None:
        base = _int_list(base, "base")
    gt = obj.get("galois_tower")
    if gt is not None and not isinstance(gt, bool):
        raise InputError("'galois_tower' must be a boolean")
    extra = set(obj) - {"name", "coeffs", "base", "galois_tower"}
    if extra:
        raise InputError(f"unknown fields: {sorted(extra)}")
    return CorpusEntry(name=name, coeffs=coeffs, base=base, galois_tower=gt)


def _int_list(value, label: str) -> tuple[int, ...]:
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(c, int) and not isinstance(c, bool) for c in value)
    ):
        raise InputError(f"'{label}' must be a nonempty list of integers")
    if value[-1] == 0:
        raise InputError(f"'{label}' must have a nonzero leading coefficient")
    return tuple(value)


def iter_corpus(lines: Iterable[str]) -> Iterator[tuple[int, CorpusEntry | None, str | None]]:
    """Yield (line_number, entry, error) per nonempty line; one of entry/error is None."""
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            yield lineno, None, f"line {lineno}: invalid JSON: {exc.msg}"
            continue
        try:
            yield lineno, parse_entry(obj), None
        except InputError as exc:
            yield lineno, None, f"line {lineno}: {exc}"


def load_corpus(path: str) -> list[CorpusEntry]:
    """Strict load: raises on the first malformed line."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for _lineno, entry, error in iter_corpus(fh):
            if error is not None:
                raise InputError(error)
            out.append(entry)
    return out

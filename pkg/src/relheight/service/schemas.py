"""Request/response models for the HTTP service.

The service and the CLI share one wire format: entries mirror the
JSON-lines corpus objects, options mirror the CLI flags, and responses
carry the same schema-versioned records the pipeline produces.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..boundeval import ConstantsConfig
from ..corpus import CorpusEntry, parse_entry
from ..errors import InputError


class EntryModel(BaseModel):
    """One corpus entry: a polynomial with an optional base field."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    coeffs: list[int] = Field(min_length=1)
    base: list[int] | None = None
    galois_tower: bool | None = None

    def to_entry(self) -> CorpusEntry:
        # parse_entry re-runs the strict corpus validation (nonzero
        # leading coefficients) so service and file inputs agree.
        return parse_entry(self.model_dump(exclude_none=True))


class OptionsModel(BaseModel):
    """Shared numeric options; defaults match the CLI defaults."""

    model_config = ConfigDict(extra="forbid")

    eps: str = "1/2"
    cad: float = 1.0
    precision: int = Field(default=128, ge=32, le=4096)

    @field_validator("eps")
    @classmethod
    def _eps_is_rational(cls, v: str) -> str:
        try:
            Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"eps must be a rational number: {exc}") from exc
        return v

    def to_config(self) -> ConstantsConfig:
        try:
            return ConstantsConfig(
                eps=Fraction(self.eps), c_AD=self.cad, precision_bits=self.precision
            )
        except InputError as exc:
            raise ValueError(str(exc)) from exc


class HeightRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entry: EntryModel
    precision: int = Field(default=128, ge=32, le=4096)


class RankRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entry: EntryModel
    exponent_bound: int = Field(default=6, ge=1, le=64)
    precision: int = Field(default=128, ge=32, le=4096)


class BoundRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    theorem: Literal["voutier", "1", "2", "corollary"]
    params: dict[str, int | bool] = Field(default_factory=dict)
    options: OptionsModel = Field(default_factory=OptionsModel)
    r: int | None = Field(default=None, ge=1, le=16)


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: list[EntryModel] = Field(min_length=1)
    options: OptionsModel = Field(default_factory=OptionsModel)
    strict_unconditional: bool = False
    exponent_bound: int = Field(default=5, ge=1, le=64)


class RecordResponse(BaseModel):
    record: dict[str, Any]


class BoundResponse(BaseModel):
    schema_id: str
    reports: list[dict[str, Any]]


class VerifyResponse(BaseModel):
    records: list[dict[str, Any]]
    summary: dict[str, Any]

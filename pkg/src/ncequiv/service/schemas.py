"""Validated request models shared by the HTTP service and the CLI.

Every command takes a :class:`RunConfig` carrying the coefficient field,
the variable names, the seed, and the sampling/degree budgets.  All
budgets must be positive; with a fixed seed and config every handler is
deterministic, so equal requests produce byte-identical reports.
"""

from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class RunConfig(BaseModel):
    """Execution knobs shared by every command."""

    model_config = ConfigDict(extra="forbid")

    field: str = "Q"
    vars: List[str] = Field(default=["x", "y"], min_length=1)
    seed: int = Field(default=0, ge=0)
    max_size: int = Field(default=5, gt=0)
    samples: int = Field(default=50, gt=0)
    max_degree: Optional[int] = Field(default=None, gt=0)
    combos: int = Field(default=32, gt=0)
    tolerance: Optional[float] = Field(default=None, gt=0)
    precision: int = Field(default=53, ge=2)
    output: Literal["text", "json"] = "text"

    @field_validator("vars")
    @classmethod
    def _identifier_names(cls, names: List[str]) -> List[str]:
        for name in names:
            if not name.isidentifier():
                raise ValueError("variable name %r is not an identifier" % name)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        return names


class MatrixTuplePayload(BaseModel):
    """A square matrix tuple with exact entries rendered as strings."""

    model_config = ConfigDict(extra="forbid")

    field: str
    size: int = Field(gt=0)
    matrices: List[List[List[str]]] = Field(min_length=1)

    @model_validator(mode="after")
    def _square_entries(self) -> "MatrixTuplePayload":
        for mat in self.matrices:
            if len(mat) != self.size or any(len(row) != self.size for row in mat):
                raise ValueError("every matrix must be %d x %d" % (self.size, self.size))
        return self


class RectangularTuplePayload(BaseModel):
    """A tuple of equal-shape rectangular matrices with string entries."""

    model_config = ConfigDict(extra="forbid")

    field: str
    matrices: List[List[List[str]]] = Field(min_length=1)

    @model_validator(mode="after")
    def _consistent_shape(self) -> "RectangularTuplePayload":
        first = self.matrices[0]
        rows = len(first)
        if rows == 0:
            raise ValueError("matrices must have at least one row")
        cols = len(first[0])
        if cols == 0:
            raise ValueError("matrices must have at least one column")
        for mat in self.matrices:
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ValueError("every matrix must be %d x %d" % (rows, cols))
        return self

    @property
    def rows(self) -> int:
        return len(self.matrices[0])

    @property
    def cols(self) -> int:
        return len(self.matrices[0][0])


class PencilPayload(BaseModel):
    """A linear matrix pencil: coefficient matrices plus an optional
    constant term (present exactly when the pencil is affine)."""

    model_config = ConfigDict(extra="forbid")

    field: str
    size: int = Field(gt=0)
    kind: Literal["affine", "homogeneous"]
    coefficients: List[List[List[str]]] = Field(min_length=1)
    constant: Optional[List[List[str]]] = None

    @model_validator(mode="after")
    def _shapes_and_kind(self) -> "PencilPayload":
        for mat in self.coefficients:
            if len(mat) != self.size or any(len(row) != self.size for row in mat):
                raise ValueError("every coefficient must be %d x %d"
                                 % (self.size, self.size))
        if self.kind == "affine":
            if self.constant is None:
                raise ValueError("an affine pencil needs a constant term")
            if (len(self.constant) != self.size
                    or any(len(row) != self.size for row in self.constant)):
                raise ValueError("the constant term must be %d x %d"
                                 % (self.size, self.size))
        elif self.constant is not None:
            raise ValueError("a homogeneous pencil has no constant term")
        return self


class PolyRequest(BaseModel):
    """A single polynomial given as source text."""

    model_config = ConfigDict(extra="forbid")

    f: str
    config: RunConfig = Field(default_factory=RunConfig)


class PolyPairRequest(BaseModel):
    """A pair of polynomials given as source text."""

    model_config = ConfigDict(extra="forbid")

    f: str
    g: str
    config: RunConfig = Field(default_factory=RunConfig)


class ComaxRequest(BaseModel):
    """Comaximality request; ``side`` picks u*f + v*g == 1 (left) or
    f*u + g*v == 1 (right)."""

    model_config = ConfigDict(extra="forbid")

    f: str
    g: str
    side: Literal["left", "right"] = "right"
    config: RunConfig = Field(default_factory=RunConfig)


class EvalRequest(BaseModel):
    """Evaluate a polynomial at an explicit tuple, or at the
    deterministically sampled tuple of the given size and stream index."""

    model_config = ConfigDict(extra="forbid")

    f: str
    tuple: Optional[MatrixTuplePayload] = None
    size: Optional[int] = Field(default=None, gt=0)
    index: int = Field(default=0, ge=0)
    config: RunConfig = Field(default_factory=RunConfig)


class PencilSimilarityRequest(BaseModel):
    """Joint similarity of two matrix tuples of equal size and arity."""

    model_config = ConfigDict(extra="forbid")

    a: MatrixTuplePayload
    b: MatrixTuplePayload
    config: RunConfig = Field(default_factory=RunConfig)


class PadPencilRequest(BaseModel):
    """Pad a full homogeneous pencil along a rectangular matrix tuple."""

    model_config = ConfigDict(extra="forbid")

    pencil: PencilPayload
    matrices: RectangularTuplePayload
    config: RunConfig = Field(default_factory=RunConfig)


class VerifyPaperRequest(BaseModel):
    """Run the golden corpus of worked examples."""

    model_config = ConfigDict(extra="forbid")

    config: RunConfig = Field(default_factory=RunConfig)

"""Request and response models for the service; the CLI reuses them.

Rationals travel as ``"num/den"`` strings, always accompanied by a float
twin for humans. Distribution inputs use the same config shape as the JSON
file format: ``{"kind": "infinite_geometric"}`` or ``{"kind": "finite",
"pieces": [{"left": "0/1", "right": "1/3", "density": "3/2"}, ...]}``.
"""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from .distributions import PiecewiseUniform

ThetaInput = Union[Literal["golden"], float]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PieceSpec(_Model):
    left: str
    right: str
    density: str


class DistSpec(_Model):
    kind: Literal["infinite_geometric", "finite"]
    pieces: list[PieceSpec] | None = None

    def to_distribution(self) -> PiecewiseUniform:
        return PiecewiseUniform.from_config(self.model_dump())

    @classmethod
    def infinite(cls) -> "DistSpec":
        return cls(kind="infinite_geometric")

    @classmethod
    def from_distribution(cls, dist: PiecewiseUniform) -> "DistSpec":
        return cls.model_validate(dist.to_config())


# ----------------------------------------------------------------------
# requests

class CanonicalRequest(_Model):
    n: int = Field(ge=2)


class TableRequest(_Model):
    min_n: int = Field(default=2, ge=2)
    max_n: int = Field(ge=2)


class AllocateRequest(_Model):
    dist: DistSpec
    n: int = Field(ge=1)


class DistortionRequest(_Model):
    dist: DistSpec
    points: list[str] = Field(min_length=1)


class MomentsRequest(_Model):
    dist: DistSpec
    pieces: int = Field(default=6, ge=1)  # leading pieces reported for the infinite family


class RandomRequest(_Model):
    n: int = Field(ge=1)
    trials: int = Field(default=100_000, ge=1)
    seed: int | None = None
    t_values: list[float] = Field(default=[0.25, 0.5, 1.0])


class KroneckerRequest(_Model):
    n: int = Field(ge=1)
    theta: ThetaInput = "golden"
    include_points: bool = False


class CompareRequest(_Model):
    dist: DistSpec = Field(default_factory=DistSpec.infinite)
    n_values: list[int] = Field(min_length=1)
    theta: ThetaInput = "golden"
    trials: int = Field(default=100, ge=1)
    seed: int | None = None


class VerifyRequest(_Model):
    max_n_infinite: int = Field(default=10, ge=2, le=20)
    max_n_finite: int = Field(default=24, ge=3)
    lloyd_max_n: int = Field(default=3, ge=0, le=8)
    restarts: int = Field(default=50, ge=1)
    consistency_max_n: int = Field(default=60, ge=2)
    include_golden: bool = True
    rel_tol: float = Field(default=1e-9, gt=0)
    seed: int | None = None


# ----------------------------------------------------------------------
# responses

class CanonicalResponse(_Model):
    n: int
    sequence: list[int]  # printed form, trailing tail 1 included
    blocks: list[int]
    V_n: str
    V_n_float: float
    points: list[str]
    points_float: list[float]


class TableRow(_Model):
    n: int
    sequence: list[int]
    V_n: str
    V_n_float: float


class TableResponse(_Model):
    rows: list[TableRow]


class AllocateResponse(_Model):
    n: int
    allocations: list[list[int]]  # every optimum, descending; points are the first one's
    V_n: str
    V_n_float: float
    points: list[str]
    points_float: list[float]


class DistortionResponse(_Model):
    n: int
    distortion: str
    distortion_float: float


class MomentsResponse(_Model):
    kind: str
    mean: str
    mean_float: float
    variance: str
    variance_float: float
    piece_means: list[str]
    piece_means_float: list[float]
    tail_means: list[str] | None = None  # infinite family: mean beyond piece k, k = 1..
    tail_means_float: list[float] | None = None


class SurvivalPoint(_Model):
    t: float
    empirical: float
    law: float
    limit: float


class RandomResponse(_Model):
    n: int
    trials: int
    seed: int
    generator: str
    mean_scaled_min_distance: float
    se: float
    law_mean: float
    survival: list[SurvivalPoint]


class KroneckerResponse(_Model):
    n: int
    theta: float
    d_star: float
    d_extreme: float
    sample_distortion: float
    equal_spacing_distortion: float
    points: list[float] | None = None


class CompareRow(_Model):
    n: int
    V_opt: float
    V_iid_mean: float
    V_iid_se: float
    V_kron: float
    Dstar_iid_mean: float
    Dstar_kron: float


class CompareResponse(_Model):
    kind: str
    theta: float
    trials: int
    seed: int
    rows: list[CompareRow]


class VerifyCheck(_Model):
    check: str
    n: int | None = None
    passed: bool
    detail: str = ""


class VerifyResponse(_Model):
    passed: bool
    checks: list[VerifyCheck]


class ServiceInfo(_Model):
    name: str
    version: str
    endpoints: list[str]

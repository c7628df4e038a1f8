"""Pydantic models for scene files.

Scalars and coordinates stay as raw JSON here; ``scene`` turns them into
kernel values once the overall shape has been validated.
"""

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import SceneParseError

Ref = Union[str, list]  # point name or inline coordinate list


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid')


class SphereSpec(_Strict):
    center: Ref
    radius: Any


class HyperplaneSpec(_Strict):
    basepoint: Ref
    normal: Ref


class TripleSpec(_Strict):
    """Three point names; ``expect`` maps check names to the expected verdict."""
    points: list[str] = Field(min_length=3, max_length=3)
    expect: dict[str, bool] = Field(default_factory=dict)


class TouchingSpec(_Strict):
    figures: list[str] = Field(min_length=2, max_length=2)
    at: Optional[str] = None        # touching point; computed for sphere pairs when omitted
    expect: bool = True


class HuygensSpec(_Strict):
    center: Ref
    r: Any = 2
    s: list[Any] = Field(default_factory=lambda: [1])
    m: int = Field(12, ge=1)

    @field_validator('s', mode='before')
    @classmethod
    def _listify(cls, value):
        return value if isinstance(value, list) else [value]


class SurfaceSpec(_Strict):
    sphere: Optional[str] = None
    hyperplane: Optional[str] = None
    m: int = Field(8, ge=1)
    spacing: Any = 1
    orientation: Literal[1, -1] = 1

    @model_validator(mode='after')
    def _one_source(self):
        if (self.sphere is None) == (self.hyperplane is None):
            raise ValueError('give exactly one of sphere or hyperplane')
        return self


class FootSpec(_Strict):
    point: str
    surface: str
    expect: Optional[list[int]] = None  # sample indices; None only reports


class ParallelSpec(_Strict):
    surface: str
    s: Any
    t: Any = None                       # when given, also check the semigroup law


class BatchSpec(_Strict):
    name: str
    size: int = Field(ge=1)


class SceneModel(_Strict):
    name: str = 'scene'
    dim: int = Field(2, ge=1, le=6)
    batches: list[BatchSpec] = Field(default_factory=list)
    points: dict[str, list[Any]] = Field(default_factory=dict)
    spheres: dict[str, SphereSpec] = Field(default_factory=dict)
    hyperplanes: dict[str, HyperplaneSpec] = Field(default_factory=dict)
    surfaces: dict[str, SurfaceSpec] = Field(default_factory=dict)
    triples: list[TripleSpec] = Field(default_factory=list)
    touching: list[TouchingSpec] = Field(default_factory=list)
    huygens: Optional[HuygensSpec] = None
    feet: list[FootSpec] = Field(default_factory=list)
    parallel: list[ParallelSpec] = Field(default_factory=list)
    segments: list[list[str]] = Field(default_factory=list)   # drawn by the plotter only

    @field_validator('batches', mode='before')
    @classmethod
    def _batch_list(cls, value):
        # {"eps": 1} is shorthand for [{"name": "eps", "size": 1}]
        if isinstance(value, dict):
            return [{'name': name, 'size': size} for name, size in value.items()]
        return value

    @field_validator('batches')
    @classmethod
    def _unique_names(cls, value):
        names = [b.name for b in value]
        for name in names:
            if names.count(name) > 1:
                raise ValueError(f'duplicate batch name {name!r}')
        return value


def format_location(loc) -> str:
    """('points', 'a', 1) -> 'points.a[1]'."""
    out = ''
    for part in loc:
        if isinstance(part, int):
            out += f'[{part}]'
        else:
            out += f'.{part}' if out else str(part)
    return out


def validate_scene(data) -> SceneModel:
    if not isinstance(data, dict):
        raise SceneParseError('scene must be a JSON object')
    try:
        return SceneModel.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise SceneParseError(first['msg'], format_location(first['loc'])) from exc

"""Pydantic request/response models shared by the HTTP service and the CLI.

Every request model rejects unknown keys, so a case configuration file is
validated strictly when it is parsed into ``CaseConfig``.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..lti import TransferFunction
from ..sim import SignalSpec
from ..tuning import TuningConfig

MODE_NAMES = ("bw", "half-k", "half-l", "half-kl")


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PlantModel(StrictModel):
    """Plant transfer function as coefficient lists, descending powers."""

    num: list[float] = Field(min_length=1)
    den: list[float] = Field(min_length=1)

    def to_tf(self) -> TransferFunction:
        return TransferFunction(self.num, self.den)


class TuningParams(StrictModel):
    order: int = Field(ge=1)
    omega_cl: float = Field(gt=0)
    k_eso: float = Field(gt=0)
    b0: float
    mode: Literal["bw", "half-k", "half-l", "half-kl"] = "bw"

    @field_validator("b0")
    @classmethod
    def _b0_nonzero(cls, v: float) -> float:
        if v == 0:
            raise ValueError("b0 must be nonzero")
        return v

    def to_config(self, mode: str | None = None) -> TuningConfig:
        return TuningConfig(n=self.order, omega_cl=self.omega_cl, k_eso=self.k_eso,
                            b0=self.b0, mode=mode or self.mode)


class SignalModel(StrictModel):
    kind: Literal["step", "zero", "white-noise"] = "zero"
    amplitude: float = 0.0
    start_time: float = 0.0
    noise_std: float = 0.0
    seed: int | None = None

    def to_spec(self) -> SignalSpec:
        return SignalSpec(kind=self.kind, amplitude=self.amplitude,
                          start_time=self.start_time, noise_std=self.noise_std,
                          seed=self.seed)


class SimulationParams(StrictModel):
    ts: float = Field(default=1e-3, gt=0)
    t_final: float = Field(default=20.0, gt=0)
    reference: SignalModel = SignalModel(kind="step", amplitude=1.0)
    input_disturbance: SignalModel = SignalModel()
    noise: SignalModel = SignalModel()


class CaseConfig(StrictModel):
    """One complete study: plant, tuning, and simulation signals."""

    plant: PlantModel
    tuning: TuningParams
    simulation: SimulationParams = SimulationParams()


class TuneRequest(TuningParams):
    pass


class TuneResponse(BaseModel):
    k: list[float]
    l: list[float]
    mode: str
    poles_controller: list[list[float]]
    poles_observer: list[list[float]]


class VerifyTheoremRequest(StrictModel):
    order: int = Field(ge=1)
    alpha: float = Field(gt=0)
    design: Literal["controller", "observer"] = "controller"


class VerifyTheoremResponse(BaseModel):
    order: int
    alpha: float
    design: str
    iterations: int
    residual: float
    gains_riccati: list[float]
    gains_half_bandwidth: list[float]
    max_rel_deviation: float
    passed: bool


class FrequencyGrid(StrictModel):
    omega_min: float = Field(default=1e-2, gt=0)
    omega_max: float = Field(default=1e3, gt=0)
    points: int = Field(default=200, ge=2)


class BodeRequest(StrictModel):
    plant: PlantModel
    tuning: TuningParams
    modes: list[Literal["bw", "half-k", "half-l", "half-kl"]] = list(MODE_NAMES)
    target: Literal["controller-feedback", "loop-gain"] = "controller-feedback"
    grid: FrequencyGrid = FrequencyGrid()


class GangOfSixRequest(StrictModel):
    plant: PlantModel
    tuning: TuningParams
    modes: list[Literal["bw", "half-k", "half-l", "half-kl"]] = list(MODE_NAMES)
    output: Literal["freq", "step"] = "freq"
    grid: FrequencyGrid = FrequencyGrid()
    t_final: float = Field(default=20.0, gt=0)
    dt: float = Field(default=1e-2, gt=0)


class StepRequest(StrictModel):
    """Normalized step comparison of full state feedback on the pure chain."""

    order: int = Field(ge=1)
    omega_cl: float = Field(gt=0)
    t_final: float = Field(default=20.0, gt=0)
    dt: float = Field(default=1e-2, gt=0)


class TableResponse(BaseModel):
    """Columnar numeric data ready for CSV emission."""

    columns: list[str]
    rows: list[list[float]]


class MetricsModel(BaseModel):
    rms_u: float
    rms_y_err: float
    overshoot_pct: float
    settling_time_2pct: float


class SimulateResponse(BaseModel):
    mode: str
    metrics: MetricsModel
    trace: TableResponse

from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from Sepdec.utils.load_config import load_config

Family = Literal["monotone_curve", "coordinate_pairs", "random_noarray"]
FunctionKind = Literal["smooth", "additive", "zero"]


class GeneratorSpec(BaseModel):
    """Which synthetic sample to build instead of reading a CSV."""

    family: Family
    size: int = Field(ge=1)
    seed: int = 0
    function: FunctionKind = "smooth"


class RunConfig(BaseModel):
    """
    Everything one ``sepdec decompose`` invocation needs.

    Attributes:
        input (Optional[Path]): CSV sample; exclusive with ``generator``
        generator (Optional[GeneratorSpec]): synthetic sample spec
        tol (float): target sup-norm residual
        max_iter (int): iteration cap for the solver
        eps (Optional[float]): step size for single-step mode
        single_step (bool): run one step with ``eps`` instead of the solver
        max_n (int): finest lattice level tried
        out (Path): output directory
        verify (bool): run the oracle cross-checks and add them to report.json
        plot (bool): also write points.csv, g_plot.csv and h_plot.csv
        contraction_divisor (float): eps_i = ||f_{i-1}|| / contraction_divisor
    """

    input: Optional[Path] = None
    generator: Optional[GeneratorSpec] = None
    tol: float = Field(gt=0)
    max_iter: int = Field(ge=1)
    eps: Optional[float] = Field(default=None, gt=0)
    single_step: bool = False
    max_n: int = Field(ge=0, le=40)
    out: Path
    verify: bool = False
    plot: bool = False
    contraction_divisor: float = Field(default=12, gt=6)
    min_exponent: int = 0
    max_exponent: int = 60
    rtol: float = Field(default=1e-12, ge=0)
    plot_samples: int = Field(default=1000, ge=2)

    @model_validator(mode="after")
    def _check_source_and_mode(self) -> "RunConfig":
        if (self.input is None) == (self.generator is None):
            raise ValueError("exactly one of input or generator must be given")
        if self.single_step and self.eps is None:
            raise ValueError("single-step mode needs eps")
        return self

    @classmethod
    def from_defaults(
        cls, config_path: Optional[str] = None, **overrides: Any
    ) -> "RunConfig":
        """Packaged config.toml (plus SEPDEC_CONFIG / ``config_path``) under explicit
        overrides; ``None`` overrides fall back to the file."""
        config = load_config(config_path)
        defaults: Dict[str, Any] = {
            "tol": config["decompose"]["tol"],
            "max_iter": config["decompose"]["max_iter"],
            "max_n": config["decompose"]["max_n"],
            "contraction_divisor": config["decompose"]["contraction_divisor"],
            "min_exponent": config["modulus"]["min_exponent"],
            "max_exponent": config["modulus"]["max_exponent"],
            "rtol": config["certificate"]["rtol"],
            "plot_samples": config["plot"]["samples"],
        }
        defaults.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**defaults)

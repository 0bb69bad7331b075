from Sepdec.geometry.arrays import detect_three_array, scan_three_array_bruteforce
from Sepdec.geometry.modulus import modulus_delta, sup_norm
from Sepdec.geometry.sample import (
    ArrayWitness,
    ExactCoord,
    PlaneSample,
    SamplePoint,
    cell_index,
)

__all__ = [
    "ArrayWitness",
    "ExactCoord",
    "PlaneSample",
    "SamplePoint",
    "cell_index",
    "detect_three_array",
    "modulus_delta",
    "scan_three_array_bruteforce",
    "sup_norm",
]

"""surfenc: encoding circuits for surface codes.

Generation of unitary and measurement-based encoders, noisy stabilizer
simulation, matching-based decoding, and exhaustive fault enumeration.
"""

__version__ = "0.1.0"

from .circuit_ir import Circuit, Instruction
from .code_model import CodeVariant, SurfaceCode, build_code
from .decoder import SyndromeDecoder
from .encoders import Scheme, Target, build_plan, generate_circuit
from .fault_analysis import analyze_faults, hook_catalogue
from .harness import ExperimentConfig, run_experiment

__all__ = [
    "Circuit",
    "CodeVariant",
    "ExperimentConfig",
    "Instruction",
    "Scheme",
    "SurfaceCode",
    "SyndromeDecoder",
    "Target",
    "analyze_faults",
    "build_code",
    "build_plan",
    "generate_circuit",
    "hook_catalogue",
    "run_experiment",
    "__version__",
]

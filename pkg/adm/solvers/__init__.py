from adm.solvers.experiment import ExperimentOutput, Sample, load_experiment, run_experiment
from adm.solvers.integrator import Integrator, SolverState, adm_step, dns_step

__all__ = [
    "ExperimentOutput",
    "Integrator",
    "Sample",
    "SolverState",
    "adm_step",
    "dns_step",
    "load_experiment",
    "run_experiment",
]

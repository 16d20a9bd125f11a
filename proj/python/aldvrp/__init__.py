"""Energy-minimizing electric vehicle routing with time-dependent speeds."""

from ._core import (
    ArcEnergy,
    Instance,
    Solution,
    SpeedProfile,
    VehicleParams,
    arc_energy,
    arrival_time,
    check_feasible,
    compare_load_models,
    evaluate_route,
    exact_solve,
    generate_instance,
    load_instance,
    solve,
    split,
)

__version__ = "0.1.0"

__all__ = [
    "ArcEnergy",
    "Instance",
    "Solution",
    "SpeedProfile",
    "VehicleParams",
    "arc_energy",
    "arrival_time",
    "check_feasible",
    "compare_load_models",
    "evaluate_route",
    "exact_solve",
    "generate_instance",
    "load_instance",
    "solve",
    "split",
]

"""Unfitted Nitsche finite elements for high-contrast interface problems."""

from ._cutfem import (
    Side,
    Mesh,
    LevelSet,
    CutTopology,
    build_mesh,
    make_circle,
    make_flower,
    make_vertical_line,
    edge_root,
    reflect,
    classify,
    eoc,
    run_solve,
    run_convergence,
    run_contrast_sweep,
    run_diagnostics,
    ConfigError,
    NumericalError,
)

__all__ = [
    "Side",
    "Mesh",
    "LevelSet",
    "CutTopology",
    "build_mesh",
    "make_circle",
    "make_flower",
    "make_vertical_line",
    "edge_root",
    "reflect",
    "classify",
    "eoc",
    "run_solve",
    "run_convergence",
    "run_contrast_sweep",
    "run_diagnostics",
    "ConfigError",
    "NumericalError",
]

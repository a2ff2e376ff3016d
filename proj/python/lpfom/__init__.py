"""First-order LP solver (raPDHG / r2HPDHG) with an SPO+ layer."""

import numpy as np

from . import _core
from ._core import (
    Algorithm,
    BatchMemberError,
    BatchShapeError,
    CertificateKind,
    DimensionError,
    Error,
    ParameterError,
    ParseError,
    Precision,
    Problem,
    SolveResult,
    SolveStatus,
    SolverOptions,
    UndefinedMetricError,
    ValidationError,
    batch_solve,
    feasibility_polish,
    gen_grid_shortest_path,
    gen_knapsack,
    kkt_residuals,
    knapsack_weights,
    normalized_regret,
    parse_mps,
    parse_problem_json,
    read_problem,
    solve,
    spo_plus_loss,
    spo_plus_subgradient,
    write_mps,
    write_problem_json,
)

__all__ = [
    "Algorithm", "BatchMemberError", "BatchShapeError", "CertificateKind",
    "DimensionError", "Error", "ParameterError", "ParseError", "Precision",
    "Problem", "SolveResult", "SolveStatus", "SolverOptions",
    "UndefinedMetricError", "ValidationError", "batch_solve",
    "feasibility_polish", "gen_grid_shortest_path", "gen_knapsack",
    "kkt_residuals", "knapsack_weights", "make_problem", "normalized_regret",
    "options", "parse_mps", "parse_problem_json", "read_problem", "solve",
    "spo_plus_loss", "spo_plus_subgradient", "write_mps", "write_problem_json",
]


def _coo(mat, n):
    if mat is None:
        return 0, np.zeros(0, np.int32), np.zeros(0, np.int32), np.zeros(0)
    if hasattr(mat, "tocoo"):  # scipy.sparse
        m = mat.tocoo()
        if m.shape[1] != n:
            raise DimensionError(f"matrix has {m.shape[1]} columns, expected {n}")
        return m.shape[0], m.row.astype(np.int32), m.col.astype(np.int32), m.data.astype(float)
    d = np.atleast_2d(np.asarray(mat, dtype=float))
    if d.size == 0:
        return 0, np.zeros(0, np.int32), np.zeros(0, np.int32), np.zeros(0)
    if d.shape[1] != n:
        raise DimensionError(f"matrix has {d.shape[1]} columns, expected {n}")
    i, j = np.nonzero(d)
    return d.shape[0], i.astype(np.int32), j.astype(np.int32), d[i, j]


def make_problem(c, A=None, b=None, G=None, h=None, l=None, u=None,
                 storage="sparse", objective_offset=0.0, name=""):
    """min c'x s.t. A x = b, G x >= h, l <= x <= u.

    A and G may be dense array-likes or scipy.sparse matrices. Missing
    bounds default to [0, inf).
    """
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    am, ai, aj, av = _coo(A, n)
    gm, gi, gj, gv = _coo(G, n)
    b = np.zeros(0) if b is None else np.asarray(b, dtype=float).ravel()
    h = np.zeros(0) if h is None else np.asarray(h, dtype=float).ravel()
    l = np.zeros(n) if l is None else np.asarray(l, dtype=float).ravel()
    u = np.full(n, np.inf) if u is None else np.asarray(u, dtype=float).ravel()
    return _core._make_problem(c, am, ai, aj, av, b, gm, gi, gj, gv, h, l, u,
                               storage, float(objective_offset), name)


_ALGORITHMS = {"rapdhg": Algorithm.RAPDHG, "r2hpdhg": Algorithm.R2HPDHG}
_PRECISIONS = {"f64": Precision.F64, "f32": Precision.F32}


def options(**kwargs):
    """SolverOptions from keyword arguments; algorithm / precision may be strings."""
    o = SolverOptions()
    for key, value in kwargs.items():
        if key == "algorithm" and isinstance(value, str):
            value = _ALGORITHMS[value.lower()]
        elif key == "precision" and isinstance(value, str):
            value = _PRECISIONS[value.lower()]
        if not hasattr(o, key):
            raise ParameterError(f"unknown option '{key}'")
        setattr(o, key, value)
    o.validate()
    return o


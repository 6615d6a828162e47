"""Sign-constrained linear SVM solvers.

Thin wrapper over the compiled core. Feature matrices are (n, d) float
arrays, labels are +-1, and `pos`/`neg` list the feature indices whose
weights are constrained non-negative / non-positive.
"""

from ._core import (
    auc,
    build_pairwise,
    full_schedule,
    log_schedule,
    primal_objective,
    project_ball,
    project_sign_cone,
    train_fw,
    train_pg,
)

__all__ = [
    "auc",
    "build_pairwise",
    "full_schedule",
    "log_schedule",
    "primal_objective",
    "project_ball",
    "project_sign_cone",
    "train",
    "train_fw",
    "train_pg",
]


def train(features, labels, pos=(), neg=(), lam=1.0, solver="fw", **kwargs):
    """Train with either solver; see train_fw / train_pg for the knobs."""
    if solver == "fw":
        return train_fw(features, labels, list(pos), list(neg), lam, **kwargs)
    if solver == "pg":
        return train_pg(features, labels, list(pos), list(neg), lam, **kwargs)
    raise ValueError(f"unknown solver {solver!r}; expected 'fw' or 'pg'")

from .critique import (
    CRITIQUE_SCHEMA,
    DEFAULT_RUBRIC,
    DEFAULT_THRESHOLD,
    DIMENSIONS,
    Critique,
    DimensionJudgment,
    NotAnImage,
    VisualQcError,
    critique,
)
from .exemplars import DEFAULT_EXEMPLARS, Exemplar, ExemplarCatalog, select_exemplar
from .loop import MAX_ITERATIONS, FigureWorkerDeps, QcIteration, QcRecord, qc_loop

__all__ = [
    "CRITIQUE_SCHEMA", "Critique", "DEFAULT_EXEMPLARS", "DEFAULT_RUBRIC",
    "DEFAULT_THRESHOLD", "DIMENSIONS", "DimensionJudgment", "Exemplar",
    "ExemplarCatalog", "FigureWorkerDeps", "MAX_ITERATIONS", "NotAnImage",
    "QcIteration", "QcRecord", "VisualQcError", "critique", "qc_loop",
    "select_exemplar",
]

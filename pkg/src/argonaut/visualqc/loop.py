"""The bounded critique-refactor cycle around figure generation."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..gateway import Backend
from ..sandbox import KernelHandle, RepairOutcome, repair_loop
from ..sandbox.repair import Observer
from .critique import DEFAULT_THRESHOLD, Critique, critique

MAX_ITERATIONS = 5


@dataclass(frozen=True)
class QcIteration:
    artifact_path: str
    critique: Critique


@dataclass(frozen=True)
class QcRecord:
    iterations: tuple[QcIteration, ...]
    accepted: bool
    failure: str | None = None  # set when generation itself failed

    def __post_init__(self) -> None:
        if len(self.iterations) > MAX_ITERATIONS:
            raise ValueError("more than five critique iterations recorded")

    @property
    def scores(self) -> list[int]:
        return [it.critique.composite for it in self.iterations]


@dataclass
class FigureWorkerDeps:
    kernel: KernelHandle
    llm_primary: Backend
    llm_secondary: Backend | None
    vlm: Backend
    budget: int = 3
    model_tag: str = "primary-model"
    secondary_model_tag: str = "secondary-model"
    vision_model_tag: str = "vision-model"
    observer: Observer | None = None


def _latest_image(outcome: RepairOutcome) -> tuple[str, str] | None:
    images = [
        a for a in (outcome.result.new_artifacts if outcome.result else ())
        if a.media_type.startswith("image/")
    ]
    if not images:
        return None
    chosen = images[-1]
    return chosen.path, chosen.media_type


def qc_loop(
    figure_task: str,
    deps: FigureWorkerDeps,
    threshold: int = DEFAULT_THRESHOLD,
    max_iter: int = MAX_ITERATIONS,
) -> QcRecord:
    """Generate a figure, critique it, regenerate with the feedback appended.

    Stops on acceptance (composite >= threshold) or after ``max_iter``
    critique cycles; every iteration is recorded. Generation failures come
    back as an unaccepted record rather than an exception.
    """
    if not 1 <= max_iter <= MAX_ITERATIONS:
        raise ValueError(f"max_iter must be in [1, {MAX_ITERATIONS}]")

    iterations: list[QcIteration] = []
    feedback_context: tuple[str, ...] = ()
    for iteration in range(1, max_iter + 1):
        outcome = repair_loop(
            figure_task,
            "Visualization",
            deps.kernel,
            deps.llm_primary,
            deps.llm_secondary,
            deps.budget,
            model_tag=deps.model_tag,
            secondary_model_tag=deps.secondary_model_tag,
            extra_context=feedback_context,
            observer=deps.observer,
        )
        if not outcome.ok:
            return QcRecord(iterations=tuple(iterations), accepted=False,
                            failure="figure generation failed")
        located = _latest_image(outcome)
        if located is None:
            return QcRecord(iterations=tuple(iterations), accepted=False,
                            failure="execution produced no image artifact")
        rel_path, media_type = located
        image_bytes = (Path(deps.kernel.workspace_root) / rel_path).read_bytes()
        verdict = critique(image_bytes, media_type, deps.vlm, threshold=threshold,
                           model_tag=deps.vision_model_tag)
        iterations.append(QcIteration(artifact_path=rel_path, critique=verdict))
        if deps.observer:
            deps.observer("critique", {
                "iteration": iteration, "artifact": rel_path,
                "composite": verdict.composite, "feedback": list(verdict.feedback),
            })
        if verdict.composite >= threshold:
            return QcRecord(iterations=tuple(iterations), accepted=True)
        feedback_context = ("Reviewer feedback on the previous figure:",) + verdict.feedback
    return QcRecord(iterations=tuple(iterations), accepted=False)

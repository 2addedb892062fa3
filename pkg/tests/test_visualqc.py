"""Reflexive figure QC: critique parsing, loop progressions, exemplars."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argonaut.gateway import ChatRequest, ChatResponse, ScriptedBackend
from argonaut.sandbox import ScriptedKernel, ScriptedReply
from argonaut.visualqc import (
    DIMENSIONS,
    Exemplar,
    ExemplarCatalog,
    FigureWorkerDeps,
    NotAnImage,
    critique,
    qc_loop,
    select_exemplar,
)

PNG = b"\x89PNG\r\n\x1a\n fake image bytes"


def critic_doc(composite: int, feedback=None, dims=None):
    return {
        "composite": composite,
        "dimensions": dims or [],
        "feedback": feedback if feedback is not None else [],
    }


def scripted_critic(*docs) -> ScriptedBackend:
    vlm = ScriptedBackend()
    for doc in docs[:-1]:
        vlm.add_rule("Score the figure", structured=doc, consume_once=True)
    vlm.add_rule("Score the figure", structured=docs[-1])
    return vlm


class TestCritique:
    def test_low_score_with_overlap_feedback(self):
        vlm = scripted_critic(critic_doc(
            3,
            feedback=["legend overlaps with map area, significantly impacts readability"],
            dims=[{"name": "overlap", "pass": False, "note": "legend over map"}],
        ))
        out = critique(PNG, "image/png", vlm)
        assert out.composite == 3
        assert out.feedback
        assert tuple(d.name for d in out.dimensions) == DIMENSIONS

    def test_accepted_grade_critique(self):
        vlm = scripted_critic(critic_doc(9, feedback=[]))
        out = critique(PNG, "image/png", vlm)
        assert out.composite == 9
        assert out.feedback == ()  # nothing to fix at accepted grade

    def test_below_threshold_feedback_synthesized_when_missing(self):
        vlm = scripted_critic(critic_doc(
            4, feedback=[],
            dims=[{"name": "legend", "pass": False, "note": "legend missing"}],
        ))
        out = critique(PNG, "image/png", vlm)
        assert out.feedback == ("legend missing",)

    def test_zero_byte_image_rejected(self):
        with pytest.raises(NotAnImage):
            critique(b"", "image/png", scripted_critic(critic_doc(9)))

    def test_non_image_media_type_rejected(self):
        with pytest.raises(NotAnImage):
            critique(b"data", "text/csv", scripted_critic(critic_doc(9)))


def make_deps(scores: list[int], tmp_path, feedback_for_low=None) -> FigureWorkerDeps:
    """Kernel writes a fresh figure per generation; critic replays ``scores``."""
    llm = ScriptedBackend()
    llm.add_rule("You are the Visualization agent",
                 text="```python\nrender_figure()\n```")
    replies = [ScriptedReply(writes={f"figure_{i}.png": PNG}) for i in range(len(scores))]
    kernel = ScriptedKernel(replies, tmp_path)
    docs = []
    for s in scores:
        fb = feedback_for_low if s < 8 else []
        docs.append(critic_doc(s, feedback=fb or (
            [f"fix issue at score {s}"] if s < 8 else [])))
    vlm = scripted_critic(*docs)
    return FigureWorkerDeps(kernel=kernel, llm_primary=llm, llm_secondary=None, vlm=vlm)


class TestQcLoop:
    @pytest.mark.parametrize(
        "scores,expected_iters,expected_accepted",
        [
            ([3, 9], 2, True),
            ([3, 4, 4, 5, 9], 5, True),
            ([7, 9], 2, True),
            ([8], 1, True),
            ([3, 3, 3, 3, 3], 5, False),
        ],
    )
    def test_logged_progressions(self, scores, expected_iters, expected_accepted, tmp_path):
        deps = make_deps(scores, tmp_path)
        record = qc_loop("render the regional map", deps, threshold=8, max_iter=5)
        assert len(record.iterations) == expected_iters
        assert record.accepted is expected_accepted
        assert record.scores == scores[:expected_iters]

    def test_feedback_appears_verbatim_in_next_generation_prompt(self, tmp_path):
        captured: list[ChatRequest] = []

        class Capture:
            def __init__(self, inner):
                self.inner = inner

            def complete(self, request: ChatRequest) -> ChatResponse:
                captured.append(request)
                return self.inner.complete(request)

            def supports_vision(self, model_tag):
                return True

        feedback = "legend overlaps with map area, significantly impacts readability"
        deps = make_deps([3, 9], tmp_path, feedback_for_low=[feedback])
        deps.llm_primary = Capture(deps.llm_primary)
        record = qc_loop("render the regional map", deps)
        assert record.accepted
        assert feedback not in captured[0].combined_text()
        assert feedback in captured[1].combined_text()

    def test_generation_failure_returns_unaccepted_record(self, tmp_path):
        llm = ScriptedBackend()
        llm.add_rule("You are the Visualization agent", text="no code, sorry")
        kernel = ScriptedKernel([], tmp_path, default=ScriptedReply())
        deps = FigureWorkerDeps(kernel=kernel, llm_primary=llm, llm_secondary=None,
                                vlm=scripted_critic(critic_doc(9)))
        record = qc_loop("render", deps)
        assert not record.accepted
        assert record.failure is not None
        assert record.iterations == ()

    def test_no_image_artifact_is_failure(self, tmp_path):
        llm = ScriptedBackend()
        llm.add_rule("You are the Visualization agent", text="```python\nok()\n```")
        kernel = ScriptedKernel([ScriptedReply(writes={"table.csv": "a,b\n"})], tmp_path)
        deps = FigureWorkerDeps(kernel=kernel, llm_primary=llm, llm_secondary=None,
                                vlm=scripted_critic(critic_doc(9)))
        record = qc_loop("render", deps)
        assert not record.accepted
        assert "no image artifact" in record.failure

    def test_overwritten_figure_detected_as_new_artifact(self, tmp_path):
        # regeneration rewrites the same filename; the signature diff must
        # still surface it
        llm = ScriptedBackend()
        llm.add_rule("You are the Visualization agent", text="```python\nrender()\n```")
        replies = [ScriptedReply(writes={"fig.png": PNG}),
                   ScriptedReply(writes={"fig.png": PNG + b"v2"})]
        kernel = ScriptedKernel(replies, tmp_path)
        deps = FigureWorkerDeps(kernel=kernel, llm_primary=llm, llm_secondary=None,
                                vlm=scripted_critic(critic_doc(3), critic_doc(9)))
        record = qc_loop("render", deps)
        assert record.accepted
        assert [it.artifact_path for it in record.iterations] == ["fig.png", "fig.png"]

    @given(st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=5))
    @settings(max_examples=60, deadline=None)
    def test_accepted_iff_last_composite_reaches_threshold(self, scores):
        # property over arbitrary score sequences: the loop consumes scores up
        # to the first acceptance, or all five
        threshold = 8
        planned = []
        for s in scores:
            planned.append(s)
            if s >= threshold:
                break
        while len(planned) < 5 and planned[-1] < threshold:
            planned.append(planned[-1])
        import tempfile

        with tempfile.TemporaryDirectory() as tmp:
            deps = make_deps(planned, tmp)
            record = qc_loop("render", deps, threshold=threshold, max_iter=5)
        assert len(record.iterations) <= 5
        assert record.accepted == (record.scores[-1] >= threshold)

    def test_max_iter_bounds(self, tmp_path):
        with pytest.raises(ValueError):
            qc_loop("x", make_deps([9], tmp_path), max_iter=6)
        with pytest.raises(ValueError):
            qc_loop("x", make_deps([9], tmp_path), max_iter=0)


class TestExemplars:
    def test_known_pair_returned(self):
        ex = select_exemplar("gridded", "map")
        assert ex is not None
        assert "colorbar" in ex.guidance_text.lower()

    def test_unknown_pair_none(self):
        assert select_exemplar("holographic", "sculpture") is None

    def test_duplicate_registration_rejected(self):
        with pytest.raises(ValueError):
            ExemplarCatalog([
                Exemplar("a", "b", "one"),
                Exemplar("a", "b", "two"),
            ])

"""Feature-flag task routing and role-constraint enforcement."""

from __future__ import annotations

from ..catalog import DatasetMetadata, FeatureFlags, tokenize
from .types import AgentRole, Task, UnresolvedRef

# Parameter-name tokens that mark a dataset as taxonomic; a dataset counts as
# taxonomic when at least MIN_TAXA_MATCHES parameter names hit the lexicon.
TAXA_LEXICON = frozenset({
    "taxa", "taxon", "species", "genus", "abundance", "biomass", "diversity",
    "phytoplankton", "zooplankton", "copepoda", "amphipoda", "chaetognatha",
    "euphausiacea", "ostracoda", "appendicularia", "hydrozoa", "jellyfish",
})
MIN_TAXA_MATCHES = 3


def is_taxonomic(meta: DatasetMetadata, lexicon: frozenset[str] = TAXA_LEXICON,
                 min_matches: int = MIN_TAXA_MATCHES) -> bool:
    hits = sum(
        1 for p in meta.parameters if any(tok in lexicon for tok in tokenize(p.name))
    )
    return hits >= min_matches


def _resolve(task: Task, flags_by_ref: dict[str, FeatureFlags]) -> list[FeatureFlags]:
    missing = [ref for ref in task.dataset_refs if ref not in flags_by_ref]
    if missing:
        raise UnresolvedRef(f"task {task.id} references unknown datasets {missing}")
    return [flags_by_ref[ref] for ref in task.dataset_refs]


def route(
    task: Task,
    flags_by_ref: dict[str, FeatureFlags],
    taxonomic: frozenset[str] | set[str] = frozenset(),
) -> AgentRole:
    """Deterministic routing table over (kind, feature flags).

    Task kind dominates data modality: visualization work always goes to the
    Visualization agent regardless of the referenced layouts.
    """
    flags = _resolve(task, flags_by_ref)
    if task.kind == "visualization":
        return AgentRole.VISUALIZATION
    if task.kind == "retrieval":
        return AgentRole.OCEANOGRAPHER if task.external_data else AgentRole.SEARCH
    if task.kind == "synthesis":
        return AgentRole.WRITER
    # analysis
    if any(f.is_gridded for f in flags):
        return AgentRole.OCEANOGRAPHER
    if task.dataset_refs and all(ref in taxonomic for ref in task.dataset_refs):
        return AgentRole.ECOLOGIST
    return AgentRole.DATAFRAME


def violates_role_constraints(
    task: Task, role: AgentRole, flags_by_ref: dict[str, FeatureFlags]
) -> str | None:
    """Architectural prohibitions; returns the violation description or None.

    The DataFrame agent never produces visualizations, and tabular-data agents
    never analyze gridded arrays.
    """
    if task.kind == "visualization" and role is AgentRole.DATAFRAME:
        return "the DataFrame agent is prohibited from generating visualizations"
    if task.kind == "analysis" and role in (AgentRole.DATAFRAME, AgentRole.ECOLOGIST):
        flags = _resolve(task, flags_by_ref)
        if any(f.is_gridded for f in flags):
            return f"{role.value} agent cannot analyze gridded arrays"
    return None


def fallback_role(task: Task, role: AgentRole,
                  flags_by_ref: dict[str, FeatureFlags]) -> AgentRole | None:
    """Single table-driven reroute for a constraint violation."""
    if task.kind == "visualization" and role is not AgentRole.VISUALIZATION:
        return AgentRole.VISUALIZATION
    if task.kind == "analysis" and role in (AgentRole.DATAFRAME, AgentRole.ECOLOGIST):
        flags = _resolve(task, flags_by_ref)
        if any(f.is_gridded for f in flags):
            return AgentRole.OCEANOGRAPHER
    return None

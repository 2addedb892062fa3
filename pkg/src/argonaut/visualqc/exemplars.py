"""Static exemplar catalog: plot-type guidance keyed by (dimensionality, intent)."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Exemplar:
    dimensionality: str
    intent: str
    guidance_text: str

    @property
    def tags(self) -> tuple[str, str]:
        return (self.dimensionality, self.intent)


class ExemplarCatalog:
    def __init__(self, exemplars: list[Exemplar]):
        self._by_tags: dict[tuple[str, str], Exemplar] = {}
        for ex in exemplars:
            if ex.tags in self._by_tags:
                raise ValueError(f"duplicate exemplar tags {ex.tags}")
            self._by_tags[ex.tags] = ex

    def __len__(self) -> int:
        return len(self._by_tags)

    def select(self, dimensionality: str, intent: str) -> Exemplar | None:
        return self._by_tags.get((dimensionality, intent))


DEFAULT_EXEMPLARS = ExemplarCatalog([
    Exemplar("gridded", "map",
             "Regional map: projection suited to the latitude band, heatmap with "
             "perceptually uniform palette, streamlines over the field, colorbars "
             "in dedicated axes, size legends outside the plot area."),
    Exemplar("gridded", "windrose",
             "Stacked polar bar chart, 0 deg at North, clockwise sectors, one fewer "
             "category label than speed-bin edges, categorical palette with legend."),
    Exemplar("tabular", "distribution",
             "Violin or box plot with jittered points, annotations in axes "
             "coordinates, headroom above the violins, units on the y axis."),
    Exemplar("tabular", "scatter",
             "Scatter with 1:1 reference line where comparing like quantities, "
             "statistics annotation box, colorbar for the third variable."),
    Exemplar("trajectory", "timeseries",
             "Dual-line time series with contrasting colors, shared time axis, "
             "explicit units, legend outside the data region."),
])


def select_exemplar(dimensionality: str, intent: str,
                    catalog: ExemplarCatalog = DEFAULT_EXEMPLARS) -> Exemplar | None:
    """Exact tag-pair lookup; None when no exemplar is registered."""
    return catalog.select(dimensionality, intent)

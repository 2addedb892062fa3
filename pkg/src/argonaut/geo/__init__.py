from . import io, kernels
from .ops import (
    GridIndex,
    bounding_box,
    colocate_nearest,
    edge_recovery,
    expand_bbox,
    haversine_km,
    haversine_nearest,
    interp_4d,
    nearest_grid_point,
    time_mean,
    wind_rose,
)
from .stats import (
    depth_bin_stats,
    inferential_suite,
    log10p1,
    mann_whitney,
    ols,
    shannon_index,
    spearman,
    validation_stats,
    vector_speed,
    welch,
)
from .types import (
    BEAUFORT_EDGES,
    BEAUFORT_LABELS,
    EARTH_RADIUS_KM,
    SECTOR_LABELS,
    AllZero,
    BBox,
    DateNotInGrid,
    DegenerateInput,
    DepthBinStats,
    EmptyInput,
    GeoNumericsError,
    GeoPoint,
    Grid3D,
    Grid4D,
    InferentialStats,
    LabelEdgeMismatch,
    MatchupRow,
    MatchupTable,
    NegativeInput,
    NoValidRows,
    ObsPoint,
    RecoveryReport,
    StillMissing,
    ValidationStats,
    WindRoseTable,
)

__all__ = [
    "AllZero", "BBox", "BEAUFORT_EDGES", "BEAUFORT_LABELS", "DateNotInGrid",
    "DegenerateInput", "DepthBinStats", "EARTH_RADIUS_KM", "EmptyInput",
    "GeoNumericsError", "GeoPoint", "Grid3D", "Grid4D", "GridIndex",
    "InferentialStats", "LabelEdgeMismatch", "MatchupRow", "MatchupTable",
    "NegativeInput", "NoValidRows", "ObsPoint", "RecoveryReport",
    "SECTOR_LABELS", "StillMissing", "ValidationStats", "WindRoseTable",
    "bounding_box", "colocate_nearest", "depth_bin_stats", "edge_recovery",
    "expand_bbox", "haversine_km", "haversine_nearest", "inferential_suite",
    "interp_4d", "io", "kernels", "log10p1", "mann_whitney",
    "nearest_grid_point", "ols", "shannon_index", "spearman", "time_mean",
    "validation_stats", "vector_speed", "welch", "wind_rose",
]

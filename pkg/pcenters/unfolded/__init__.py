from pcenters.unfolded.region import (
    UnfoldedRegion,
    fold_grid,
    folding_threshold,
    uf_contains,
    unfolded_region,
    write_region_csv,
)

__all__ = ["UnfoldedRegion", "fold_grid", "folding_threshold", "uf_contains", "unfolded_region", "write_region_csv"]

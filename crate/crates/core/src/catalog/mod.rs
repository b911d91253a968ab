//! Parametrized fixtures with expected verdicts.

mod builders;
mod charts;
mod table;

pub use builders::{
    build_product_hypersurface, build_small_hypersurface, compose_minimal, is_critical_radius,
    max_mean_curvature, offset_normal, offset_normal_scale, product_verdict,
    small_hypersurface_verdict, CompositionInfo, Target, MINIMAL_INPUT_TOL,
};
pub use charts::{
    build_pseudo_hyperbolic, build_pseudo_sphere, pseudo_hyperbolic_patch, pseudo_sphere_patch,
    Namer, Patch, ANGLE_RANGE, RAPIDITY_RANGE,
};
pub use table::{
    all_entries, check_entries, check_entry, example_rows, example_table, find, product_entry,
    small_entry, BuilderParams, CatalogEntry, EntryCheck, ExampleRow,
};

//! Exact Tate cohomology and hypercohomology over `Z[(Z/p)^r]`, syzygies,
//! gluing of equivariant chain complexes and exponent bounds.

pub mod error;
pub mod exactlin;
pub mod gallery;
pub mod groupring;
pub mod modpres;
pub mod resolve;
pub mod surgery;
pub mod tate;

pub use error::{Error, Result};
pub use exactlin::{exponent, AbelianInvariants, Exponent, IntMatrix, Integer};
pub use gallery::{lens_complex, product_complex, random_free_complex};
pub use groupring::{
    full_norm, norm_element, ElementaryAbelianGroup, GroupRingElement, GroupRingMatrix,
};
pub use modpres::{
    dual_complex, tensor_complex, FreeChainComplex, LatticeComplex, ModulePresentation,
    PresentedCochainComplex, Violation,
};
pub use resolve::{
    complete_resolution, partial_resolution, periodic_complete_resolution, resolution_step, syzygy,
    CompleteResolutionWindow,
};
pub use surgery::{
    browder_check, browder_pipeline, browder_schedule, dimension_rows, filtration_exponent_check,
    glue, glue_rows, BrowderReport, Filtration, GluingCertificate, RowTable, ScheduleStep,
};
pub use tate::{
    concentrated_check, exponent_profile, suspension, tate_cohomology, tate_cohomology_range,
    tate_hypercohomology, tate_hypercohomology_range, CohomologyTable,
};

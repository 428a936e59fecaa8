//! Fixtures shared by the benchmarks.

use nksl2r_core::catalog::{catalog_entry, CatalogName, Params};
use nksl2r_core::CatalogEntry;

/// One entry per structural family: product, degenerate and non-degenerate.
pub fn fixtures() -> Vec<CatalogEntry> {
    [CatalogName::IsoIa, CatalogName::MainThm1, CatalogName::IIIIa, CatalogName::IVIV]
        .into_iter()
        .map(|n| catalog_entry(n, &Params::default()).expect("default parameters are valid"))
        .collect()
}

//! Almost complex surfaces in the nearly Kähler SL2R × SL2R.

pub mod algebra;
pub mod calculus;
pub mod catalog;
pub mod error;
pub mod manifold;
pub mod report;
pub mod verifier;

pub use algebra::{Mat2, Sl2Alg, Sl2Elem};
pub use calculus::{Jet2, Rect, ShapeData, SurfaceMap, Target, TypeLabel};
pub use catalog::{AngleParams, CatalogEntry, CatalogName, CongruencySolution, FactorParams, Params};
pub use error::{Error, Result};
pub use manifold::{NKPoint, NKVector, Pair};
pub use verifier::{Check, CheckReport, FrameConnectionTable, XFrame};

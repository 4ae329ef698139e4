//! Representations of `U_n` as polynomial matrices and their coefficient
//! tables: verification, construction from Frobenius layers, and
//! decomposition back into layers.

mod chi;
mod construct;
mod decompose;
mod layers;
mod lemmas;
mod morphism;
pub mod random;
mod report;
mod verify;

pub use chi::{assemble, extract_chi, ChiTable};
pub use construct::{construct_from_layers, construct_layer, construct_single_layer, layer_exponent, CONSTRUCT_REGIME};
pub use decompose::{decompose_to_layers, top_layer, DECOMPOSE_REGIME};
pub use layers::LieLayerData;
pub use lemmas::{audit_structure_lemmas, factorized_chi, LemmaOptions};
pub use morphism::{check_morphism, frobenius_twist_rep, layer_morphism_equivalence, MorphismComparison};
pub use report::{Finding, Report};
pub use verify::{
    group_element, verify_chi_relations, verify_comodule, verify_comodule_with, verify_group_law_pointwise,
    CoproductRoute, PointwiseMode, EXHAUSTIVE_PAIR_LIMIT,
};

use thiserror::Error;

use crate::arith::{ArithError, Field};
use crate::hopf::{HopfError, PolyMatrix};
use crate::linalg::LinalgError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("hypothesis {regime} fails: n = {n}, d = {d}, p = {p}")]
    Hypothesis { regime: &'static str, n: usize, d: usize, p: u64 },
    #[error("layer data violates {} invariant(s); first: {}", .0.findings.len(), .0.findings.first().map(ToString::to_string).unwrap_or_default())]
    InvalidLayers(Report),
    #[error("layer {layer}: the exponent is not nilpotent within {cap} powers")]
    ExponentNotNilpotent { layer: usize, cap: usize },
    #[error("unsupported mode: {0}")]
    Mode(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// A coefficient table together with its assembled polynomial matrix.
///
/// Nothing about validity is stored; every check recomputes from the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    chi: ChiTable,
    poly: PolyMatrix,
}

impl Representation {
    pub fn from_chi(chi: ChiTable) -> Self {
        let poly = chi.assemble();
        Representation { chi, poly }
    }

    pub fn from_poly(poly: PolyMatrix) -> Result<Self, RepError> {
        let chi = ChiTable::extract(&poly)?;
        Ok(Representation { chi, poly })
    }

    pub fn chi(&self) -> &ChiTable {
        &self.chi
    }

    pub fn poly(&self) -> &PolyMatrix {
        &self.poly
    }

    pub fn ambient_size(&self) -> usize {
        self.chi.ambient_size()
    }

    pub fn field(&self) -> Field {
        self.chi.field()
    }

    pub fn characteristic(&self) -> u64 {
        self.chi.characteristic()
    }

    pub fn dimension(&self) -> usize {
        self.chi.dimension()
    }
}

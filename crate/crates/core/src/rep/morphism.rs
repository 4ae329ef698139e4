use std::collections::BTreeSet;

use super::decompose::{check_decompose_regime, decompose_to_layers};
use super::{RepError, Report, Representation};
use crate::hopf::{frobenius_substitute_matrix, ExponentMatrix, Variable};
use crate::linalg::ScalarMatrix;

/// The representation `(a_ij)^[p]`.
pub fn frobenius_twist_rep(r: &Representation) -> Result<Representation, RepError> {
    let p = r.characteristic();
    if p == 0 {
        return Err(RepError::Mode("the Frobenius twist needs positive characteristic".into()));
    }
    Representation::from_poly(frobenius_substitute_matrix(r.poly(), p))
}

fn check_compatible(t: &ScalarMatrix, src: &Representation, dst: &Representation) -> Result<(), RepError> {
    if src.ambient_size() != dst.ambient_size() || src.field() != dst.field() {
        return Err(RepError::Dimension("representations of different groups or fields".into()));
    }
    if t.rows() != dst.dimension() || t.cols() != src.dimension() {
        return Err(RepError::Dimension(format!(
            "a map from dimension {} to {} must be {}x{}, got {}x{}",
            src.dimension(),
            dst.dimension(),
            dst.dimension(),
            src.dimension(),
            t.rows(),
            t.cols()
        )));
    }
    if t.field() != src.field() {
        return Err(RepError::Dimension(format!("map over {}, representations over {}", t.field(), src.field())));
    }
    Ok(())
}

/// `T χ_src(M) = χ_dst(M) T` for every `M`.
pub fn check_morphism(t: &ScalarMatrix, src: &Representation, dst: &Representation) -> Result<bool, RepError> {
    check_compatible(t, src, dst)?;
    let support: BTreeSet<&ExponentMatrix> = src.chi().iter().chain(dst.chi().iter()).map(|(m, _)| m).collect();
    Ok(support.into_iter().all(|m| t.mul(&src.chi().chi(m)) == dst.chi().chi(m).mul(t)))
}

/// The two sides of the layer-wise morphism criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismComparison {
    /// `T` intertwines the full representations.
    pub full: bool,
    /// `T` intertwines every layer `φ_l` with `ψ_l`.
    pub layered: bool,
    pub report: Report,
}

impl MorphismComparison {
    pub fn agree(&self) -> bool {
        self.full == self.layered
    }
}

/// Compare intertwining of the representations with intertwining of their
/// Frobenius layers.
pub fn layer_morphism_equivalence(
    t: &ScalarMatrix,
    src: &Representation,
    dst: &Representation,
) -> Result<MorphismComparison, RepError> {
    check_compatible(t, src, dst)?;
    let p = src.characteristic();
    for r in [src, dst] {
        check_decompose_regime(r.ambient_size(), r.dimension(), p)?;
    }
    let full = check_morphism(t, src, dst)?;
    let (phi, _) = decompose_to_layers(src)?;
    let (psi, _) = decompose_to_layers(dst)?;
    let n = src.ambient_size();
    let layers = phi.layer_count().max(psi.layer_count());
    let mut per_layer = Report::new("layer-intertwining");
    for l in 0..layers {
        for v in Variable::all(n) {
            let a = if l < phi.layer_count() { phi.image(l, v).clone() } else { ScalarMatrix::zeros_in(src.field(), src.dimension(), src.dimension()) };
            let b = if l < psi.layer_count() { psi.image(l, v).clone() } else { ScalarMatrix::zeros_in(dst.field(), dst.dimension(), dst.dimension()) };
            let (lhs, rhs) = (t.mul(&a), b.mul(t));
            per_layer.expect(
                lhs == rhs,
                "layer-intertwining",
                || format!("layer {l}, e{}{}", v.i, v.j),
                || rhs.to_string(),
                || lhs.to_string(),
            );
        }
    }
    let layered = per_layer.passed();
    let mut report = Report::new("morphism-criterion");
    report.expect(
        full == layered,
        "morphism-criterion",
        || "full vs layer-wise intertwining".into(),
        || format!("full = {full}"),
        || format!("layer-wise = {layered}"),
    );
    Ok(MorphismComparison { full, layered, report })
}

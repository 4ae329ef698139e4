use super::{LieLayerData, RepError, Report, Representation};
use crate::hopf::Variable;

/// The regime under which the Frobenius layers of a representation are Lie
/// algebra maps and determine it.
pub const DECOMPOSE_REGIME: &str = "p >= max(n, 2d)";

pub(crate) fn check_decompose_regime(n: usize, d: usize, p: u64) -> Result<(), RepError> {
    if p > 0 && p < n.max(2 * d) as u64 {
        return Err(RepError::Hypothesis { regime: DECOMPOSE_REGIME, n, d, p });
    }
    Ok(())
}

/// Largest `l` with some `χ(p^l ε_ij) ≠ 0`, if any.
pub fn top_layer(r: &Representation) -> Option<usize> {
    let p = r.characteristic();
    r.chi()
        .iter()
        .filter_map(|(m, _)| m.as_single_entry())
        .filter_map(|(_, e)| layer_of(e, p))
        .max()
}

/// `Some(l)` when `e = p^l` (with `p = 0` meaning only `e = 1`).
fn layer_of(e: u64, p: u64) -> Option<usize> {
    if p == 0 || e == 0 {
        return (e == 1).then_some(0);
    }
    let mut l = 0;
    let mut q = e;
    while q % p == 0 {
        q /= p;
        l += 1;
    }
    (q == 1).then_some(l)
}

/// `φ_l(ε_ij) = χ(p^l ε_ij)`, with trailing zero layers trimmed.
///
/// The returned report holds the layer invariants of the result; under
/// the regime they always hold, so any finding signals an input that is not
/// a representation.
pub fn decompose_to_layers(r: &Representation) -> Result<(LieLayerData, Report), RepError> {
    let (n, d, p) = (r.ambient_size(), r.dimension(), r.characteristic());
    check_decompose_regime(n, d, p)?;
    let chi = r.chi();
    let top = if p == 0 { 0 } else { top_layer(r).unwrap_or(0) };
    let mut data = LieLayerData::zero(n, r.field(), d);
    let mut scale = 1u64;
    for l in 0..=top {
        if l > 0 {
            scale *= p;
        }
        for v in Variable::all(n) {
            data.set_image(l, v, chi.chi_single(v.i, v.j, scale))?;
        }
    }
    let data = data.trimmed();
    let mut report = data.check_invariants();
    report.check = "decomposition".into();
    Ok((data, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::linalg::ScalarMatrix;
    use crate::rep::construct_from_layers;

    #[test]
    fn layer_detection() {
        assert_eq!(layer_of(1, 5), Some(0));
        assert_eq!(layer_of(25, 5), Some(2));
        assert_eq!(layer_of(10, 5), None);
        assert_eq!(layer_of(1, 0), Some(0));
        assert_eq!(layer_of(3, 0), None);
    }

    #[test]
    fn tautological_single_layer() {
        let f = Field::prime(7).unwrap();
        let data = LieLayerData::tautological(3, f);
        let r = construct_from_layers(&data).unwrap();
        let (back, report) = decompose_to_layers(&r).unwrap();
        assert!(report.passed());
        assert_eq!(back, data);
    }

    #[test]
    fn ga_two_layers_round_trip() {
        let f = Field::prime(5).unwrap();
        let e = ScalarMatrix::unit_in(f, 2, 0, 1);
        let data = LieLayerData::new(2, f, 2, vec![vec![e.clone()], vec![e]]).unwrap();
        let r = construct_from_layers(&data).unwrap();
        assert_eq!(decompose_to_layers(&r).unwrap().0, data);
    }

    #[test]
    fn regime_error() {
        let f = Field::prime(5).unwrap();
        let r = construct_from_layers(&LieLayerData::tautological(3, f)).unwrap();
        let err = decompose_to_layers(&r).unwrap_err();
        assert!(err.to_string().contains("p >= max(n, 2d)"));
    }
}

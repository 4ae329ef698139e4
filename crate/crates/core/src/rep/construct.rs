use super::{LieLayerData, RepError, Representation};
use crate::hopf::{frobenius_substitute_matrix, generic_element, PolyMatrix, Polynomial, Variable};
use crate::linalg::{exp_nilpotent, log_unipotent, nilpotency_index, CharBound, LinalgError, Matrix};

/// The regime needed to build a representation from layers.
pub const CONSTRUCT_REGIME: &str = "p >= max(n, d)";

pub(crate) fn check_construct_regime(n: usize, d: usize, p: u64) -> Result<(), RepError> {
    if p > 0 && p < n.max(d) as u64 {
        return Err(RepError::Hypothesis { regime: CONSTRUCT_REGIME, n, d, p });
    }
    Ok(())
}

/// `φ_l(log g)` for the generic element `g`, as a polynomial matrix.
pub fn layer_exponent(data: &LieLayerData, l: usize) -> Result<PolyMatrix, RepError> {
    let (n, field, d) = (data.ambient_size(), data.field(), data.dimension());
    let bound = CharBound::from_characteristic(field.characteristic());
    let log_g = log_unipotent(&generic_element(n, field), bound)?;
    let zero = Polynomial::zero(n, field);
    let mut acc = Matrix::zeros(d, d, &zero);
    for v in Variable::all(n) {
        let coeff = &log_g[(v.i - 1, v.j - 1)];
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&data.image(l, v).map(|c| coeff.scale(c)));
    }
    Ok(acc)
}

/// `e^{φ_l(log g)}` for one layer.
pub fn construct_layer(data: &LieLayerData, l: usize) -> Result<PolyMatrix, RepError> {
    let (n, d, p) = (data.ambient_size(), data.dimension(), data.characteristic());
    check_construct_regime(n, d, p)?;
    let x = layer_exponent(data, l)?;
    let cap = if p == 0 { d } else { d.min(p as usize) };
    match nilpotency_index(&x, cap) {
        Ok(_) => {}
        Err(LinalgError::NotNilpotent { cap }) => {
            return Err(RepError::ExponentNotNilpotent { layer: l, cap });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(exp_nilpotent(&x, CharBound::from_characteristic(p))?)
}

/// `e^{φ(log g)}` for one-layer data, after validating the layer.
pub fn construct_single_layer(data: &LieLayerData) -> Result<PolyMatrix, RepError> {
    if data.layer_count() != 1 {
        return Err(RepError::Dimension(format!("expected one layer, got {}", data.layer_count())));
    }
    check_construct_regime(data.ambient_size(), data.dimension(), data.characteristic())?;
    let report = data.check_invariants();
    if !report.passed() {
        return Err(RepError::InvalidLayers(report));
    }
    construct_layer(data, 0)
}

/// `Φ(g) = Φ_0(g) Φ_1(g)^[p] ... Φ_m(g)^[p^m]`.
pub fn construct_from_layers(data: &LieLayerData) -> Result<Representation, RepError> {
    let (n, d, p) = (data.ambient_size(), data.dimension(), data.characteristic());
    check_construct_regime(n, d, p)?;
    if p == 0 && data.layer_count() > 1 {
        return Err(RepError::Dimension("characteristic zero admits a single layer only".into()));
    }
    let report = data.check_invariants();
    if !report.passed() {
        return Err(RepError::InvalidLayers(report));
    }
    let mut acc: Option<PolyMatrix> = None;
    let mut twist = 1u64;
    for l in 0..data.layer_count() {
        if l > 0 {
            twist = twist.checked_mul(p).ok_or_else(|| RepError::Dimension("Frobenius twist overflows u64".into()))?;
        }
        if data.is_zero_layer(l) {
            continue;
        }
        let factor = frobenius_substitute_matrix(&construct_layer(data, l)?, twist);
        acc = Some(match acc {
            None => factor,
            Some(a) => a.mul(&factor),
        });
    }
    let poly = match acc {
        Some(m) => m,
        None => {
            let zero = Polynomial::zero(n, data.field());
            PolyMatrix::identity(d, &zero)
        }
    };
    Representation::from_poly(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Scalar};
    use crate::hopf::ExponentMatrix;
    use crate::linalg::ScalarMatrix;

    fn var(n: usize, f: Field, i: usize, j: usize) -> Polynomial {
        Polynomial::variable(n, f, Variable { i, j })
    }

    #[test]
    fn single_linear_term() {
        let f = Field::prime(3).unwrap();
        let mut data = LieLayerData::zero(3, f, 2);
        data.set_image(0, Variable { i: 1, j: 2 }, ScalarMatrix::unit_in(f, 2, 0, 1)).unwrap();
        let m = construct_single_layer(&data).unwrap();
        assert_eq!(m[(0, 1)], var(3, f, 1, 2));
        assert_eq!(m[(0, 0)], Polynomial::one(3, f));
        assert!(m[(1, 0)].is_zero());
    }

    #[test]
    fn tautological_layer_gives_generic_matrix() {
        let f = Field::prime(3).unwrap();
        let m = construct_single_layer(&LieLayerData::tautological(3, f)).unwrap();
        assert_eq!(m, generic_element(3, f));
    }

    #[test]
    fn heisenberg_exponent() {
        // x X + y Y + (z - xy/2) Z with X, Y, Z the tautological basis
        let f = Field::Rational;
        let x = layer_exponent(&LieLayerData::tautological(3, f), 0).unwrap();
        let half: Scalar = crate::arith::rational(1, 2);
        let corner = var(3, f, 1, 3).sub(&var(3, f, 1, 2).mul(&var(3, f, 2, 3)).scale(&half));
        assert_eq!(x[(0, 1)], var(3, f, 1, 2));
        assert_eq!(x[(1, 2)], var(3, f, 2, 3));
        assert_eq!(x[(0, 2)], corner);
    }

    #[test]
    fn ga_two_layers() {
        let f = Field::prime(5).unwrap();
        let e = ScalarMatrix::unit_in(f, 2, 0, 1);
        let data = LieLayerData::new(2, f, 2, vec![vec![e.clone()], vec![e]]).unwrap();
        let r = construct_from_layers(&data).unwrap();
        let x = var(2, f, 1, 2);
        assert_eq!(r.poly()[(0, 1)], x.add(&x.pow(5)));
        assert_eq!(r.chi().support_len(), 3);
        assert!(r.chi().get(&ExponentMatrix::elementary(2, 1, 2, 6)).is_none());
    }

    #[test]
    fn zero_second_layer_is_harmless() {
        let f = Field::prime(7).unwrap();
        let mut data = LieLayerData::tautological(3, f);
        data.set_image(1, Variable { i: 1, j: 2 }, ScalarMatrix::zeros_in(f, 3, 3)).unwrap();
        let r = construct_from_layers(&data).unwrap();
        assert_eq!(r.poly(), &generic_element(3, f));
    }

    #[test]
    fn regime_enforced() {
        let f = Field::prime(3).unwrap();
        let data = LieLayerData::tautological(4, f);
        assert!(matches!(construct_from_layers(&data), Err(RepError::Hypothesis { .. })));
    }
}

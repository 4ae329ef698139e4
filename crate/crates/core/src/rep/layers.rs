use super::{RepError, Report};
use crate::arith::Field;
use crate::hopf::{pair_index, variable_count, Polynomial, Variable};
use crate::linalg::{nilpotency_index, Matrix, ScalarMatrix};

/// Images `φ_l(ε_ij)` of the basis of the strictly upper triangular Lie
/// algebra under each Frobenius layer `l = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieLayerData {
    n: usize,
    field: Field,
    d: usize,
    /// `layers[l][pair_index(n, i, j)] = φ_l(ε_ij)`.
    layers: Vec<Vec<ScalarMatrix>>,
}

impl LieLayerData {
    pub fn new(n: usize, field: Field, d: usize, layers: Vec<Vec<ScalarMatrix>>) -> Result<Self, RepError> {
        if n < 2 || d < 1 {
            return Err(RepError::Dimension(format!("need n >= 2 and d >= 1, got n={n}, d={d}")));
        }
        let slots = variable_count(n);
        for (l, layer) in layers.iter().enumerate() {
            if layer.len() != slots {
                return Err(RepError::Dimension(format!("layer {l} has {} images, expected {slots}", layer.len())));
            }
            for m in layer {
                if m.rows() != d || m.cols() != d || m.field() != field {
                    return Err(RepError::Dimension(format!("layer {l} has an image that is not {d}x{d} over {field}")));
                }
            }
        }
        Ok(LieLayerData { n, field, d, layers })
    }

    /// A single all-zero layer.
    pub fn zero(n: usize, field: Field, d: usize) -> Self {
        LieLayerData { n, field, d, layers: vec![Self::zero_layer(n, field, d)] }
    }

    pub fn zero_layer(n: usize, field: Field, d: usize) -> Vec<ScalarMatrix> {
        vec![ScalarMatrix::zeros_in(field, d, d); variable_count(n)]
    }

    /// The tautological layer `ε_ij -> ε_ij` (so `d = n`).
    pub fn tautological(n: usize, field: Field) -> Self {
        let layer = Variable::all(n).map(|v| ScalarMatrix::unit_in(field, n, v.i - 1, v.j - 1)).collect();
        LieLayerData { n, field, d: n, layers: vec![layer] }
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<ScalarMatrix>] {
        &self.layers
    }

    pub fn layer(&self, l: usize) -> &[ScalarMatrix] {
        &self.layers[l]
    }

    pub fn image(&self, l: usize, v: Variable) -> &ScalarMatrix {
        &self.layers[l][pair_index(self.n, v.i, v.j)]
    }

    pub fn set_image(&mut self, l: usize, v: Variable, m: ScalarMatrix) -> Result<(), RepError> {
        if m.rows() != self.d || m.cols() != self.d || m.field() != self.field {
            return Err(RepError::Dimension(format!("image is not {}x{} over {}", self.d, self.d, self.field)));
        }
        while self.layers.len() <= l {
            self.layers.push(Self::zero_layer(self.n, self.field, self.d));
        }
        self.layers[l][pair_index(self.n, v.i, v.j)] = m;
        Ok(())
    }

    pub fn is_zero_layer(&self, l: usize) -> bool {
        self.layers[l].iter().all(Matrix::is_zero)
    }

    /// Drop trailing zero layers, keeping at least one layer.
    pub fn trimmed(&self) -> LieLayerData {
        let mut out = self.clone();
        while out.layers.len() > 1 && out.is_zero_layer(out.layers.len() - 1) {
            out.layers.pop();
        }
        if out.layers.is_empty() {
            out.layers.push(Self::zero_layer(self.n, self.field, self.d));
        }
        out
    }

    /// Prepend a zero layer: the layers of the `[p]`-twisted representation.
    pub fn shifted(&self) -> LieLayerData {
        let mut out = self.clone();
        out.layers.insert(0, Self::zero_layer(self.n, self.field, self.d));
        out
    }

    /// Conjugate every image by `P`: `φ -> P φ P^{-1}`.
    pub fn conjugated(&self, p: &ScalarMatrix, p_inv: &ScalarMatrix) -> LieLayerData {
        let layers = self.layers.iter().map(|layer| layer.iter().map(|m| p.mul(m).mul(p_inv)).collect()).collect();
        LieLayerData { layers, ..self.clone() }
    }

    /// `Σ_ij x_ij φ_l(ε_ij)`, the image of the generic Lie algebra element.
    pub fn generic_image(&self, l: usize) -> Matrix<Polynomial> {
        let zero = Polynomial::zero(self.n, self.field);
        let mut acc = Matrix::zeros(self.d, self.d, &zero);
        for v in Variable::all(self.n) {
            let x = Polynomial::variable(self.n, self.field, v);
            let img = self.image(l, v);
            acc = acc.add(&img.map(|c| x.scale(c)));
        }
        acc
    }

    /// Check that each layer is a Lie homomorphism with nilpotent image and
    /// that images from distinct layers commute.
    pub fn check_invariants(&self) -> Report {
        let mut report = Report::new("layer-invariants");
        let vars: Vec<Variable> = Variable::all(self.n).collect();
        for l in 0..self.layers.len() {
            for (a, &u) in vars.iter().enumerate() {
                for &w in &vars[a + 1..] {
                    let actual = self.image(l, u).commutator(self.image(l, w)).expect("square images");
                    let expected = match u.bracket(w) {
                        Some((sign, c)) => self.image(l, c).scale(&self.field.from_i64(sign)),
                        None => ScalarMatrix::zeros_in(self.field, self.d, self.d),
                    };
                    report.expect(
                        actual == expected,
                        "lie-homomorphism",
                        || format!("layer {l}, [e{}{}, e{}{}]", u.i, u.j, w.i, w.j),
                        || expected.to_string(),
                        || actual.to_string(),
                    );
                }
            }
            for &v in &vars {
                let nil = nilpotency_index(self.image(l, v), self.d).is_ok();
                report.expect(
                    nil,
                    "nilpotent-image",
                    || format!("layer {l}, e{}{}", v.i, v.j),
                    || format!("nilpotent of index <= {}", self.d),
                    || "not nilpotent".into(),
                );
            }
            let generic = nilpotency_index(&self.generic_image(l), self.d).is_ok();
            report.expect(
                generic,
                "nilpotent-image",
                || format!("layer {l}, generic element"),
                || format!("nilpotent of index <= {}", self.d),
                || "not nilpotent".into(),
            );
        }
        for l in 0..self.layers.len() {
            for k in l + 1..self.layers.len() {
                for &u in &vars {
                    for &w in &vars {
                        let c = self.image(l, u).commutator(self.image(k, w)).expect("square images");
                        report.expect(
                            c.is_zero(),
                            "cross-layer-commutation",
                            || format!("layers {l}/{k}, e{}{} vs e{}{}", u.i, u.j, w.i, w.j),
                            || "0".into(),
                            || c.to_string(),
                        );
                    }
                }
            }
        }
        report
    }
}

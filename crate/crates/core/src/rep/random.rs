//! Seeded generators for layer data, coefficient tables and morphism
//! candidates.

use rand::Rng;

use super::{ChiTable, LieLayerData};
use crate::arith::{Field, Scalar};
use crate::hopf::{ExponentMatrix, Variable};
use crate::linalg::{inverse, nullspace, ScalarMatrix};

fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_nonzero(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut impl Rng) -> ScalarMatrix {
    ScalarMatrix::from_fn(rows, cols, |_, _| random_scalar(field, rng))
}

/// A random invertible matrix together with its inverse.
pub fn random_invertible(field: Field, d: usize, rng: &mut impl Rng) -> (ScalarMatrix, ScalarMatrix) {
    loop {
        let m = random_matrix(field, d, d, rng);
        if let Ok(inv) = inverse(&m) {
            return (m, inv);
        }
    }
}

/// A block `[offset, offset + size)` of the ambient space.
#[derive(Clone, Copy, Debug)]
struct Block {
    offset: usize,
    size: usize,
}

/// The interval sub-quotient of the tautological action on `e_a..e_b`,
/// twisted by a diagonal torus element: `ε_ij -> (t_i / t_j) E_ij` for
/// `a <= i < j <= b`, zero otherwise.
fn interval_images(n: usize, field: Field, d: usize, block: Block, rng: &mut impl Rng) -> Vec<ScalarMatrix> {
    let a = rng.gen_range(1..=n + 1 - block.size);
    let torus: Vec<Scalar> = (0..block.size).map(|_| random_nonzero(field, rng)).collect();
    Variable::all(n)
        .map(|v| {
            let mut m = ScalarMatrix::zeros_in(field, d, d);
            if v.i >= a && v.j < a + block.size {
                let (r, c) = (v.i - a, v.j - a);
                m[(block.offset + r, block.offset + c)] = torus[r].try_div(&torus[c]).expect("nonzero torus");
            }
            m
        })
        .collect()
}

/// Simple roots go to polynomials without constant term in the Jordan
/// block `N`; all other roots go to zero. Any two such layers commute.
fn abelian_images(n: usize, field: Field, d: usize, block: Block, rng: &mut impl Rng) -> Vec<ScalarMatrix> {
    let mut jordan = ScalarMatrix::zeros_in(field, d, d);
    for k in 0..block.size.saturating_sub(1) {
        jordan[(block.offset + k, block.offset + k + 1)] = field.one();
    }
    let powers: Vec<ScalarMatrix> = (1..block.size as u64).map(|k| jordan.pow(k)).collect();
    Variable::all(n)
        .map(|v| {
            let mut m = ScalarMatrix::zeros_in(field, d, d);
            if v.j == v.i + 1 {
                for pk in &powers {
                    m = m.add(&pk.scale(&random_scalar(field, rng)));
                }
            }
            m
        })
        .collect()
}

fn add_images(acc: &mut [ScalarMatrix], extra: &[ScalarMatrix]) {
    for (a, b) in acc.iter_mut().zip(extra) {
        *a = a.add(b);
    }
}

/// Random layer data satisfying all layer invariants, with every layer
/// nonzero whenever `d >= 2`.
///
/// Each layer may own a block carrying an interval sub-quotient of the
/// tautological representation (nontrivial brackets), and layers may share
/// a block on which they act through commuting polynomials in one Jordan
/// block. The result is conjugated by a random invertible matrix.
pub fn random_layer_data(n: usize, field: Field, d: usize, layer_count: usize, rng: &mut impl Rng) -> LieLayerData {
    assert!(layer_count >= 1);
    let mut chosen = None;
    for _ in 0..64 {
        let mut layers = vec![LieLayerData::zero_layer(n, field, d); layer_count];
        let mut offset = 0;
        let mut owns = vec![false; layer_count];
        for (l, layer) in layers.iter_mut().enumerate() {
            let remaining = d - offset;
            if remaining >= 2 && rng.gen_bool(0.6) {
                let size = rng.gen_range(2..=remaining.min(n));
                let block = Block { offset, size };
                add_images(layer, &interval_images(n, field, d, block, rng));
                offset += size;
                owns[l] = true;
            }
        }
        let shared = Block { offset, size: d - offset };
        if shared.size >= 2 {
            for (l, layer) in layers.iter_mut().enumerate() {
                if !owns[l] || rng.gen_bool(0.5) {
                    add_images(layer, &abelian_images(n, field, d, shared, rng));
                }
            }
        }
        if layers.iter().all(|layer| layer.iter().any(|m| !m.is_zero())) {
            chosen = Some(layers);
            break;
        }
    }
    let layers = chosen.unwrap_or_else(|| {
        let whole = Block { offset: 0, size: d };
        (0..layer_count).map(|_| abelian_images(n, field, d, whole, rng)).collect()
    });
    let data = LieLayerData::new(n, field, d, layers).expect("consistent shapes");
    let (p, p_inv) = random_invertible(field, d, rng);
    data.conjugated(&p, &p_inv)
}

/// An arbitrary coefficient table (not necessarily a representation).
pub fn random_chi_table(
    n: usize,
    field: Field,
    d: usize,
    max_support: usize,
    max_entry: u64,
    rng: &mut impl Rng,
) -> ChiTable {
    let mut t = ChiTable::new(n, field, d);
    let size = rng.gen_range(1..=max_support);
    let slots = crate::hopf::variable_count(n);
    for _ in 0..size {
        let entries = (0..slots).map(|_| rng.gen_range(0..=max_entry)).collect();
        let m = ExponentMatrix::from_raw(n, entries).expect("valid shape");
        t.insert(m, random_matrix(field, d, d, rng)).expect("valid shape");
    }
    t
}

/// A basis of `{ C : C A = A C for all A in mats }`.
pub fn centralizer_basis(field: Field, d: usize, mats: &[ScalarMatrix]) -> Vec<ScalarMatrix> {
    let mut rows = Vec::new();
    for a in mats {
        for r in 0..d {
            for s in 0..d {
                let row: Vec<Scalar> = (0..d * d)
                    .map(|col| {
                        let (u, v) = (col / d, col % d);
                        let mut x = field.zero();
                        if u == r {
                            x = &x + &a[(v, s)];
                        }
                        if v == s {
                            x = &x - &a[(r, u)];
                        }
                        x
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![field.zero(); d * d]);
    }
    let system = ScalarMatrix::from_rows(rows).expect("rectangular system");
    nullspace(&system).into_iter().map(|v| ScalarMatrix::from_fn(d, d, |r, c| v[r * d + c].clone())).collect()
}

/// A morphism candidate: the map and the layer data of both sides.
#[derive(Clone, Debug)]
pub struct MorphismCase {
    pub map: ScalarMatrix,
    pub src: LieLayerData,
    pub dst: LieLayerData,
    /// True when the map intertwines by construction.
    pub designed: bool,
}

/// Designed cases conjugate the source layers by `P` and take
/// `T = P C` with `C` a random element of the centralizer of every source
/// image; adversarial cases use an unrelated random `T`.
pub fn random_morphism_case(
    n: usize,
    field: Field,
    d: usize,
    layer_count: usize,
    designed: bool,
    rng: &mut impl Rng,
) -> MorphismCase {
    let src = random_layer_data(n, field, d, layer_count, rng);
    let (p, p_inv) = random_invertible(field, d, rng);
    if designed {
        let dst = src.conjugated(&p, &p_inv);
        let images: Vec<ScalarMatrix> = src.layers().iter().flatten().cloned().collect();
        let basis = centralizer_basis(field, d, &images);
        let mut c = ScalarMatrix::zeros_in(field, d, d);
        for b in &basis {
            c = c.add(&b.scale(&random_scalar(field, rng)));
        }
        MorphismCase { map: p.mul(&c), src, dst, designed }
    } else {
        let dst = if rng.gen_bool(0.5) {
            src.conjugated(&p, &p_inv)
        } else {
            random_layer_data(n, field, d, layer_count, rng)
        };
        MorphismCase { map: random_matrix(field, d, d, rng), src, dst, designed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_layers_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, d, p, count) in &[(2, 2, 5, 2), (3, 3, 7, 1), (4, 3, 11, 2), (4, 2, 11, 3), (3, 4, 11, 2)] {
            let f = Field::prime(p).unwrap();
            for _ in 0..5 {
                let data = random_layer_data(n, f, d, count, &mut rng);
                assert!(data.check_invariants().passed());
                assert_eq!(data.trimmed().layer_count(), count);
            }
        }
    }

    #[test]
    fn centralizer_of_jordan_block() {
        let f = Field::prime(5).unwrap();
        let n = ScalarMatrix::from_i64_rows(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let basis = centralizer_basis(f, 3, &[n.clone()]);
        assert_eq!(basis.len(), 3);
        for c in basis {
            assert!(c.commutes_with(&n));
        }
    }
}

//! Integer combinatorics: factorials, multinomials, p-ary digits and the
//! digit-factorial product `Γ(r)`.

use num::{BigUint, One};

use super::ArithError;
use crate::hopf::ExponentMatrix;

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `total! / (parts[0]! parts[1]! ...)`; the parts must sum to `total`.
pub fn multinomial(total: u64, parts: &[u64]) -> Result<BigUint, ArithError> {
    let sum: u64 = parts.iter().sum();
    if sum != total {
        return Err(ArithError::Shape(format!("parts sum to {sum}, expected {total}")));
    }
    // product of binomials C(s_k, a_k) with running sums s_k
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &a in parts {
        running += a;
        acc *= binomial(running, a);
    }
    Ok(acc)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Product over matrix entries of the multinomial coefficient of that entry.
pub fn matrix_multinomial(whole: &ExponentMatrix, parts: &[ExponentMatrix]) -> Result<BigUint, ArithError> {
    if parts.iter().any(|m| m.size() != whole.size()) {
        return Err(ArithError::Shape("exponent matrices of different sizes".into()));
    }
    let mut acc = BigUint::one();
    let mut column = Vec::with_capacity(parts.len());
    for (idx, &total) in whole.raw().iter().enumerate() {
        column.clear();
        column.extend(parts.iter().map(|m| m.raw()[idx]));
        acc *= multinomial(total, &column)?;
    }
    Ok(acc)
}

/// Base-`p` expansion, least significant digit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAryDigits {
    digits: Vec<u64>,
    modulus: u64,
}

impl PAryDigits {
    pub fn new(mut r: u64, p: u64) -> Self {
        assert!(p >= 2, "base must be at least 2");
        if r == 0 {
            return PAryDigits { digits: vec![0], modulus: p };
        }
        let mut digits = Vec::new();
        while r > 0 {
            digits.push(r % p);
            r /= p;
        }
        PAryDigits { digits, modulus: p }
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Digit at position `l`, zero beyond the stored length.
    pub fn digit(&self, l: usize) -> u64 {
        self.digits.get(l).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.modulus + d)
    }
}

pub fn p_ary_digits(r: u64, p: u64) -> PAryDigits {
    PAryDigits::new(r, p)
}

/// Whether adding `r` and `s` in base `p` produces a carry.
pub fn sum_carries(r: u64, s: u64, p: u64) -> bool {
    let (a, b) = (PAryDigits::new(r, p), PAryDigits::new(s, p));
    let len = a.digits.len().max(b.digits.len());
    (0..len).any(|l| a.digit(l) + b.digit(l) >= p)
}

/// `Γ(r) = r_0! r_1! ... r_m!` for the base-`p` digits of `r`.
pub fn gamma_factor(r: u64, p: u64) -> BigUint {
    PAryDigits::new(r, p).digits.iter().map(|&d| factorial(d)).product()
}

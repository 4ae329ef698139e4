use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use super::BchError;

/// One of the two free generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    Y,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::X => "x",
            Gen::Y => "y",
        })
    }
}

/// A word in `x` and `y`; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<Gen>);

impl FreeWord {
    pub fn unit() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    /// Parse a word such as `"xxy"` or `"x^2y"`; `"1"` is the unit word.
    pub fn parse(s: &str) -> Result<Self, BchError> {
        if s == "1" {
            return Ok(FreeWord::unit());
        }
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let g = match c {
                'x' => Gen::X,
                'y' => Gen::Y,
                _ => return Err(BchError::Parse(format!("unexpected {c:?} in word {s:?}"))),
            };
            let mut count = 1usize;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                count = digits.parse().map_err(|_| BchError::Parse(format!("bad exponent in {s:?}")))?;
            }
            out.extend(std::iter::repeat(g).take(count));
        }
        Ok(FreeWord(out))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut k = 0;
        while k < self.0.len() {
            let g = self.0[k];
            let run = self.0[k..].iter().take_while(|&&h| h == g).count();
            if run == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

/// A finite rational combination of words in the free associative algebra
/// on `x` and `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeElement {
    terms: BTreeMap<FreeWord, BigRational>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn unit() -> Self {
        Self::word(FreeWord::unit(), BigRational::one())
    }

    pub fn word(w: FreeWord, c: BigRational) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(w, &c);
        e
    }

    pub fn generator(g: Gen) -> Self {
        Self::word(FreeWord(vec![g]), BigRational::one())
    }

    /// Build from `(word, numerator, denominator)` triples.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, i64, i64)>) -> Result<Self, BchError> {
        let mut e = FreeElement::zero();
        for (w, a, b) in terms {
            e.add_term(FreeWord::parse(w)?, &BigRational::new(a.into(), b.into()));
        }
        Ok(e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &FreeWord) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: FreeWord, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&w) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if !s.is_zero() {
            self.terms.insert(w, s);
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), &(ca * cb));
            }
        }
        out
    }

    /// `ab - ba`.
    pub fn bracket(&self, other: &FreeElement) -> FreeElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Drop every word longer than `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> FreeElement {
        FreeElement { terms: self.terms.iter().filter(|(w, _)| w.len() <= max_degree).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(FreeWord::len).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // shortest words first, then lexicographic
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// A formal bracket expression in the two generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(Gen),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn leaf(g: Gen) -> Self {
        BracketTree::Leaf(g)
    }

    pub fn node(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    /// `(((g_1 ∘ g_2) ∘ g_3) ∘ ...)`.
    pub fn left_nested(letters: &[Gen]) -> Self {
        assert!(!letters.is_empty(), "a bracket needs at least one letter");
        letters[1..].iter().fold(BracketTree::Leaf(letters[0]), |acc, &g| BracketTree::node(acc, BracketTree::Leaf(g)))
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Expansion into the word basis with `a ∘ b = ab - ba`.
    pub fn expand(&self) -> FreeElement {
        match self {
            BracketTree::Leaf(g) => FreeElement::generator(*g),
            BracketTree::Node(a, b) => a.expand().bracket(&b.expand()),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(g) => write!(f, "{g}"),
            BracketTree::Node(a, b) => write!(f, "({a} ∘ {b})"),
        }
    }
}

/// `coeff · (((g_1 ∘ g_2) ∘ g_3) ∘ ... ∘ g_n)` expanded into words.
pub fn left_nested_expand(letters: &[Gen], coeff: &BigRational) -> FreeElement {
    assert!(!letters.is_empty(), "a bracket needs at least one letter");
    let mut acc = FreeElement::generator(letters[0]);
    for &g in &letters[1..] {
        acc = acc.bracket(&FreeElement::generator(g));
    }
    acc.scale(coeff)
}

/// The linear map sending a word `w` of length `n` to `(1/n)` times its
/// left-nested bracket.
pub fn dynkin_projection(e: &FreeElement) -> Result<FreeElement, BchError> {
    let mut out = FreeElement::zero();
    for (w, c) in e.terms() {
        if w.is_empty() {
            return Err(BchError::DegreeZero);
        }
        let weight = c / BigRational::from_integer(w.len().into());
        out = out.add(&left_nested_expand(w.letters(), &weight));
    }
    Ok(out)
}

/// Rewrite a bracket tree as a signed sum of left-nested brackets.
///
/// Uses `P ∘ (Q ∘ x) = -(P ∘ x) ∘ Q + (P ∘ Q) ∘ x` repeatedly, so each
/// output coefficient is `±coeff` and all sequences have the tree's length.
/// Terms are not merged.
pub fn bracket_normalize(t: &BracketTree, coeff: &BigRational) -> Vec<(Vec<Gen>, BigRational)> {
    normalize(t).into_iter().map(|(s, sign)| (s, if sign > 0 { coeff.clone() } else { -coeff.clone() })).collect()
}

fn normalize(t: &BracketTree) -> Vec<(Vec<Gen>, i8)> {
    match t {
        BracketTree::Leaf(g) => vec![(vec![*g], 1)],
        BracketTree::Node(a, b) => {
            let (left, right) = (normalize(a), normalize(b));
            let mut out = Vec::new();
            for (p, sp) in &left {
                for (q, sq) in &right {
                    for (s, sign) in nested_bracket(p, q) {
                        out.push((s, sign * sp * sq));
                    }
                }
            }
            out
        }
    }
}

/// `P ∘ Q` for left-nested `P`, `Q`, as left-nested terms.
fn nested_bracket(p: &[Gen], q: &[Gen]) -> Vec<(Vec<Gen>, i8)> {
    let (&x, rest) = q.split_last().expect("non-empty bracket");
    if rest.is_empty() {
        let mut s = p.to_vec();
        s.push(x);
        return vec![(s, 1)];
    }
    let mut px = p.to_vec();
    px.push(x);
    let mut out: Vec<_> = nested_bracket(&px, rest).into_iter().map(|(s, sign)| (s, -sign)).collect();
    for (mut s, sign) in nested_bracket(p, rest) {
        s.push(x);
        out.push((s, sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{X, Y};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn word_parse_and_display() {
        let w = FreeWord::parse("x^2yx").unwrap();
        assert_eq!(w.letters(), &[X, X, Y, X]);
        assert_eq!(w.to_string(), "x^2yx");
        assert!(FreeWord::parse("xz").is_err());
        assert_eq!(FreeWord::parse("1").unwrap(), FreeWord::unit());
    }

    #[test]
    fn left_nested_examples() {
        assert_eq!(left_nested_expand(&[X], &q(1, 1)), FreeElement::generator(X));
        let xy = FreeElement::from_terms([("xy", 1, 1), ("yx", -1, 1)]).unwrap();
        assert_eq!(left_nested_expand(&[X, Y], &q(1, 1)), xy);
        // (x∘y)∘x = 2xyx - x^2y - yx^2
        let xyx = FreeElement::from_terms([("xyx", 2, 1), ("x^2y", -1, 1), ("yx^2", -1, 1)]).unwrap();
        assert_eq!(left_nested_expand(&[X, Y, X], &q(1, 1)), xyx);
    }

    #[test]
    fn projection_of_word_xy() {
        let e = FreeElement::from_terms([("xy", 1, 1)]).unwrap();
        let expected = FreeElement::from_terms([("xy", 1, 2), ("yx", -1, 2)]).unwrap();
        assert_eq!(dynkin_projection(&e).unwrap(), expected);
        assert!(matches!(dynkin_projection(&FreeElement::unit()), Err(BchError::DegreeZero)));
    }

    #[test]
    fn projection_mixed_example() {
        // x^2y + x + 2xyx -> 1/3 x∘x∘y + x + 2/3 x∘y∘x
        let e = FreeElement::from_terms([("x^2y", 1, 1), ("x", 1, 1), ("xyx", 2, 1)]).unwrap();
        let expected = left_nested_expand(&[X, X, Y], &q(1, 3))
            .add(&FreeElement::generator(X))
            .add(&left_nested_expand(&[X, Y, X], &q(2, 3)));
        assert_eq!(dynkin_projection(&e).unwrap(), expected);
    }

    #[test]
    fn normalize_right_nested() {
        let t = BracketTree::node(BracketTree::leaf(X), BracketTree::node(BracketTree::leaf(Y), BracketTree::leaf(X)));
        let terms = bracket_normalize(&t, &q(1, 1));
        assert_eq!(terms, vec![(vec![X, X, Y], q(-1, 1)), (vec![X, Y, X], q(1, 1))]);
        let sum = terms.iter().fold(FreeElement::zero(), |acc, (s, c)| acc.add(&left_nested_expand(s, c)));
        assert_eq!(sum, t.expand());
        assert_eq!(bracket_normalize(&BracketTree::leaf(Y), &q(3, 1)), vec![(vec![Y], q(3, 1))]);
        let xy = BracketTree::left_nested(&[X, Y]);
        assert_eq!(bracket_normalize(&xy, &q(1, 1)), vec![(vec![X, Y], q(1, 1))]);
    }
}

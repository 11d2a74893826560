use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{identity, CMatrix};

/// A monomial: variable indices (1-based) read left to right.
pub type Word = Vec<u32>;

/// Element of the free algebra ℂ⟨X₁, X₂, …⟩ in canonical form: one
/// coefficient per distinct word, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Word, Complex64>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(c, Vec::new())
    }

    /// The variable X_index. Panics on index 0.
    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        Self::monomial(Complex64::new(1.0, 0.0), vec![index])
    }

    pub fn monomial(coeff: Complex64, word: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, word);
        p
    }

    /// Builds a polynomial from arbitrary terms, merging repeated words.
    pub fn from_terms<I: IntoIterator<Item = (Complex64, Word)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, w) in terms {
            p.add_term(c, w);
        }
        p
    }

    fn add_term(&mut self, coeff: Complex64, word: Word) {
        assert!(word.iter().all(|&v| v >= 1), "variables are numbered from 1");
        let slot = self.terms.entry(word).or_insert(Complex64::new(0.0, 0.0));
        *slot += coeff;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        }
    }

    /// Terms in canonical (lexicographic word) order.
    pub fn terms(&self) -> impl Iterator<Item = (Complex64, &Word)> + '_ {
        self.terms.iter().map(|(w, c)| (*c, w))
    }

    pub fn coefficient(&self, word: &[u32]) -> Complex64 {
        self.terms.get(word).copied().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest m with every index ≤ m.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().flatten().copied().max().unwrap_or(0) as usize
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c * s, w.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(ca * cb, w);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(Complex64::new(1.0, 0.0));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// [a, b] = ab − ba.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }

    /// Every word is a permutation of the same variable set, with no
    /// repeats; the constant-free zero polynomial is not multilinear.
    pub fn is_multilinear(&self) -> bool {
        let mut vars: Option<Vec<u32>> = None;
        for w in self.terms.keys() {
            let mut sorted = w.clone();
            sorted.sort_unstable();
            if sorted.is_empty() || sorted.windows(2).any(|p| p[0] == p[1]) {
                return false;
            }
            match &vars {
                None => vars = Some(sorted),
                Some(v) if *v == sorted => {}
                Some(_) => return false,
            }
        }
        vars.is_some()
    }

    /// f(a₁, …, a_m): each word is multiplied out left to right and the
    /// constant term contributes coeff·I.
    pub fn evaluate(&self, args: &[CMatrix]) -> Result<CMatrix> {
        let needed = self.num_vars();
        if args.len() < needed {
            return Err(Error::TooFewArguments { needed, given: args.len() });
        }
        let n = match args.first() {
            Some(a) => a.nrows(),
            None => {
                return Err(Error::InvalidInput(
                    "evaluation needs at least one argument to fix the matrix size".into(),
                ))
            }
        };
        if let Some(bad) = args.iter().find(|a| a.nrows() != n || a.ncols() != n) {
            return Err(Error::DimensionMismatch(format!(
                "arguments must all be {n}x{n}, found {}x{}",
                bad.nrows(),
                bad.ncols()
            )));
        }
        let mut out = CMatrix::zeros(n, n);
        for (word, coeff) in &self.terms {
            let product = match word.split_first() {
                None => identity(n),
                Some((&first, rest)) => {
                    let mut acc = args[first as usize - 1].clone();
                    for &v in rest {
                        acc = &acc * &args[v as usize - 1];
                    }
                    acc
                }
            };
            out += product * *coeff;
        }
        Ok(out)
    }

    /// Σ |c|·∏ ‖a_x‖_F over terms, with ‖I‖_F for the constant term. An
    /// a-priori magnitude for f(args) used to scale numerical zero tests.
    pub fn magnitude_bound(&self, args: &[CMatrix]) -> f64 {
        let n = args.first().map_or(1, |a| a.nrows());
        let norms: Vec<f64> = args.iter().map(|a| a.norm()).collect();
        self.terms
            .iter()
            .map(|(w, c)| {
                let prod: f64 = if w.is_empty() {
                    (n as f64).sqrt()
                } else {
                    w.iter().map(|&v| norms[v as usize - 1]).product()
                };
                c.norm() * prod
            })
            .sum()
    }
}

fn write_real(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    // `{}` on f64 prints the shortest string that parses back exactly.
    write!(f, "{}", x)
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[u32]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < word.len() {
        let v = word[i];
        let mut run = 1;
        while i + run < word.len() && word[i + run] == v {
            run += 1;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if run == 1 {
            write!(f, "X{v}")?;
        } else {
            write!(f, "X{v}^{run}")?;
        }
        i += run;
    }
    Ok(())
}

/// Prints the canonical text form, which `parse` reads back exactly.
impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (word, c)) in self.terms.iter().enumerate() {
            // Factor out a sign so the literal parts are unsigned.
            let negative = c.re.is_sign_negative();
            let (re, im) = if negative { (-c.re, -c.im) } else { (c.re, c.im) };
            match (k, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let unit = re == 1.0 && im == 0.0;
            if im != 0.0 {
                f.write_str("(")?;
                write_real(f, re)?;
                f.write_str(if im.is_sign_negative() { "-" } else { "+" })?;
                write_real(f, im.abs())?;
                f.write_str("i)")?;
            } else if !unit || word.is_empty() {
                write_real(f, re)?;
            }
            if !word.is_empty() {
                if !unit || im != 0.0 {
                    f.write_str("*")?;
                }
                write_word(f, word)?;
            }
        }
        Ok(())
    }
}

impl Serialize for NcPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for NcPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, frobenius, from_real_rows, unit};

    fn x(i: u32) -> NcPolynomial {
        NcPolynomial::var(i)
    }

    #[test]
    fn commutator_expansion() {
        let f = NcPolynomial::commutator(&x(1), &x(2));
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&[1, 2]), c64(1.0, 0.0));
        assert_eq!(f.coefficient(&[2, 1]), c64(-1.0, 0.0));
        assert_eq!(f.num_vars(), 2);
        assert!(NcPolynomial::commutator(&x(1), &x(1)).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let f = NcPolynomial::commutator(&x(1), &x(2));
        let m = from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(frobenius(&f.evaluate(&[identity(2), m]).unwrap()), 0.0);

        let sq = x(1).pow(2);
        let nil = from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(frobenius(&sq.evaluate(&[nil]).unwrap()), 0.0);

        // E11·E12 − E12·E11 = E12
        let e = f.evaluate(&[unit(2, 0, 0), unit(2, 0, 1)]).unwrap();
        assert_eq!(e, unit(2, 0, 1));
    }

    #[test]
    fn constant_term_is_scalar() {
        let f = NcPolynomial::constant(c64(0.5, 0.0));
        let e = f.evaluate(&[unit(3, 0, 1)]).unwrap();
        assert_eq!(e, identity(3) * c64(0.5, 0.0));
    }

    #[test]
    fn evaluate_errors() {
        let f = NcPolynomial::commutator(&x(1), &x(2));
        assert!(matches!(
            f.evaluate(&[identity(2)]),
            Err(Error::TooFewArguments { needed: 2, given: 1 })
        ));
        assert!(matches!(
            f.evaluate(&[identity(2), identity(3)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn multilinearity_is_structural() {
        let f = x(1).mul(&x(2)).mul(&x(3)).sub(&x(3).mul(&x(2)).mul(&x(1)));
        assert!(f.is_multilinear());
        assert!(NcPolynomial::commutator(&x(1), &x(2)).is_multilinear());
        assert!(x(1).is_multilinear());
        assert!(!x(1).pow(2).add(&x(2)).is_multilinear());
        assert!(!x(1).mul(&x(2)).add(&x(1)).is_multilinear());
        assert!(!NcPolynomial::commutator(&x(1), &x(2)).pow(2).is_multilinear());
        assert!(!NcPolynomial::zero().is_multilinear());
    }

    #[test]
    fn display_forms() {
        assert_eq!(NcPolynomial::commutator(&x(1), &x(2)).to_string(), "X1*X2 - X2*X1");
        assert_eq!(x(1).pow(2).mul(&x(2)).to_string(), "X1^2*X2");
        assert_eq!(NcPolynomial::constant(c64(0.5, -2.0)).to_string(), "(0.5-2i)");
        assert_eq!(NcPolynomial::zero().to_string(), "0");
        assert_eq!(x(3).scale(c64(-2.5, 0.0)).to_string(), "-2.5*X3");
    }
}

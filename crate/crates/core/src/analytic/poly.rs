//! Multivariate error polynomials over the error-model symbol alphabet,
//! truncated at total degree 2, with exact rational coefficients.

use crate::channels::{ErrorModel, Rational, Symbol};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{ToPrimitive, Zero};

/// A monomial of total degree at most 2: empty (constant), one symbol, or a
/// sorted symbol pair (squares allowed).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<Symbol>);

impl Monomial {
    pub const ONE: fn() -> Monomial = || Monomial(Vec::new());

    pub fn single(s: Symbol) -> Self {
        Monomial(alloc::vec![s])
    }

    pub fn pair(a: Symbol, b: Symbol) -> Self {
        let mut v = alloc::vec![a, b];
        v.sort();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Product, or `None` when the degree would exceed 2.
    fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if self.0.len() + other.0.len() > 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        v.sort();
        Some(Monomial(v))
    }

    fn evaluate(&self, model: &ErrorModel) -> Rational {
        self.0
            .iter()
            .fold(Rational::new(1, 1), |acc, &s| acc * model.value(s))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A polynomial in error-model symbols, truncated at total degree 2.
/// Multiplication silently discards degree-3+ terms, which keeps the
/// algebra closed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ErrorPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ErrorPoly {
    pub fn zero() -> Self {
        ErrorPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ErrorPoly::zero();
        p.add_term(Monomial::ONE(), c);
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = ErrorPoly::zero();
        p.add_term(Monomial::single(s), Rational::new(1, 1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(|| Rational::new(0, 1));
        *entry += c;
        if entry.is_zero() {
            // Drop cancelled terms to keep equality structural.
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(key) = key {
                self.terms.remove(&key);
            }
        }
    }

    pub fn add(&self, other: &ErrorPoly) -> ErrorPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &ErrorPoly) -> ErrorPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: Rational) -> ErrorPoly {
        let mut out = ErrorPoly::zero();
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), coeff * c);
        }
        out
    }

    /// Product with truncation: any term of degree 3 or higher is dropped.
    pub fn mul(&self, other: &ErrorPoly) -> ErrorPoly {
        let mut out = ErrorPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.mul(mb) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    /// The degree-1 part.
    pub fn first_order(&self) -> ErrorPoly {
        let mut out = ErrorPoly::zero();
        for (m, c) in &self.terms {
            if m.degree() == 1 {
                out.add_term(m.clone(), *c);
            }
        }
        out
    }

    /// The degree-2 part.
    pub fn second_order(&self) -> ErrorPoly {
        let mut out = ErrorPoly::zero();
        for (m, c) in &self.terms {
            if m.degree() == 2 {
                out.add_term(m.clone(), *c);
            }
        }
        out
    }

    /// Exact evaluation with symbol values drawn from a model.
    pub fn evaluate_rational(&self, model: &ErrorModel) -> Rational {
        self.terms
            .iter()
            .fold(Rational::new(0, 1), |acc, (m, c)| acc + c * m.evaluate(model))
    }

    pub fn evaluate_f64(&self, model: &ErrorModel) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(0.0) * m.evaluate(model).to_f64().unwrap_or(0.0))
            .sum()
    }

    /// True when every coefficient of `other − self` is nonnegative, i.e.
    /// `other` dominates termwise.
    pub fn dominated_by(&self, other: &ErrorPoly) -> bool {
        let diff = other.sub(self);
        diff.terms.values().all(|c| *c >= Rational::new(0, 1))
    }

    /// Canonical plain text: monomials in sorted order, `c SYM` terms joined
    /// by ` + `.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                let _ = write!(s, " + ");
            }
            if *c == Rational::new(1, 1) && m.degree() > 0 {
                let _ = write!(s, "{m}");
            } else if m.degree() == 0 {
                let _ = write!(s, "{c}");
            } else {
                let _ = write!(s, "{c} {m}");
            }
        }
        s
    }
}

/// How a branch set combines.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BranchKind {
    Max,
    Min,
}

/// A strand-error expression: a base polynomial plus one unevaluated
/// `max(...)` or `min(...)` over alternative polynomials, resolved only at
/// numeric assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct StrandExpr {
    pub base: ErrorPoly,
    pub branch_kind: Option<BranchKind>,
    pub branches: Vec<ErrorPoly>,
}

impl StrandExpr {
    pub fn plain(base: ErrorPoly) -> Self {
        StrandExpr {
            base,
            branch_kind: None,
            branches: Vec::new(),
        }
    }

    pub fn with_branches(base: ErrorPoly, kind: BranchKind, branches: Vec<ErrorPoly>) -> Self {
        StrandExpr {
            base,
            branch_kind: Some(kind),
            branches,
        }
    }

    pub fn evaluate_rational(&self, model: &ErrorModel) -> Rational {
        let base = self.base.evaluate_rational(model);
        match self.branch_kind {
            None => base,
            Some(kind) => {
                let vals = self.branches.iter().map(|b| b.evaluate_rational(model));
                let chosen = match kind {
                    BranchKind::Max => vals.max(),
                    BranchKind::Min => vals.min(),
                };
                base + chosen.unwrap_or_else(|| Rational::new(0, 1))
            }
        }
    }

    pub fn evaluate_f64(&self, model: &ErrorModel) -> f64 {
        self.evaluate_rational(model).to_f64().unwrap_or(f64::NAN)
    }

    /// Canonical text with the branch printed unevaluated.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = self.base.to_text();
        if let Some(kind) = self.branch_kind {
            let _ = write!(
                s,
                " + {}(",
                match kind {
                    BranchKind::Max => "max",
                    BranchKind::Min => "min",
                }
            );
            for (i, b) in self.branches.iter().enumerate() {
                if i > 0 {
                    let _ = write!(s, ", ");
                }
                let _ = write!(s, "{}", b.to_text());
            }
            let _ = write!(s, ")");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{Preset, TwoQubitPauli};

    fn sym(s: &str) -> Symbol {
        crate::channels::parse_symbol(s).unwrap()
    }

    #[test]
    fn truncation_commutes_with_addition() {
        let a = ErrorPoly::symbol(sym("p1.X")).mul(&ErrorPoly::symbol(sym("pM")));
        let b = ErrorPoly::symbol(sym("p1.Y"));
        let cubic = a.mul(&b); // degree 3: dropped entirely
        assert!(cubic.is_zero());
        let sum_then_mul = a.add(&b).mul(&ErrorPoly::symbol(sym("p2.XZ")));
        let mul_then_sum = a
            .mul(&ErrorPoly::symbol(sym("p2.XZ")))
            .add(&b.mul(&ErrorPoly::symbol(sym("p2.XZ"))));
        assert_eq!(sum_then_mul, mul_then_sum);
    }

    #[test]
    fn canonical_text_is_sorted_and_stable() {
        let mut p = ErrorPoly::zero();
        p.add_term(Monomial::single(sym("pM")), Rational::new(2, 1));
        p.add_term(Monomial::single(sym("p1.X")), Rational::new(1, 1));
        p.add_term(
            Monomial::pair(sym("p1.X"), sym("p1.X")),
            Rational::new(1, 1),
        );
        assert_eq!(p.to_text(), "p1.X + p1.X*p1.X + 2 pM");
    }

    #[test]
    fn evaluation_uses_exact_rationals() {
        let m = Preset::Model1.coefficients(Rational::new(0, 1));
        let p = ErrorPoly::symbol(Symbol::Two(TwoQubitPauli::parse("XZ").unwrap()))
            .scale(Rational::new(3, 1))
            .add(&ErrorPoly::symbol(Symbol::Meas));
        assert_eq!(
            p.evaluate_rational(&m),
            Rational::new(3, 16) + Rational::new(1, 2)
        );
    }

    #[test]
    fn branch_resolution_at_numbers_only() {
        let a = ErrorPoly::symbol(sym("p1.X"));
        let b = ErrorPoly::symbol(sym("pM"));
        let e = StrandExpr::with_branches(ErrorPoly::zero(), BranchKind::Max, alloc::vec![a, b]);
        let mut model = ErrorModel::zero();
        model.set(sym("p1.X"), Rational::new(1, 10));
        model.set(sym("pM"), Rational::new(1, 5));
        assert_eq!(e.evaluate_rational(&model), Rational::new(1, 5));
        let text = e.to_text();
        assert_eq!(text, "0 + max(p1.X, pM)");
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = ErrorPoly::symbol(sym("p1.X"));
        assert!(a.sub(&a).is_zero());
    }
}

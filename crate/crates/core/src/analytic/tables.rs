//! Maximal single-strand error expressions for the three procedures and
//! four encoded gates, as first-order symbolic polynomials with unevaluated
//! `max`/`min` branches.
//!
//! Rows are stored in a compact shorthand and parsed on demand: bare
//! `X`/`Y`/`Z` are one-qubit gate errors, `M` the measurement flip, `AΓ`
//! and `BΓ` the ancilla-qubit errors, and two-letter Pauli pairs such as
//! `XZ` or `IY` the two-qubit-gate errors (first letter control, second
//! target).

use super::poly::{BranchKind, ErrorPoly, StrandExpr};
use super::{GateLabel, Procedure};
use crate::channels::{Rational, Symbol, TwoQubitPauli, GAMMA};
use alloc::vec::Vec;

const SINGLE_NONE: &str = "2 AY + 2 BY + IY + 2 M + XY + XZ + YI + 3 YX + 3 YY + YZ + 4 ZX + 3 ZY \
  + max(2 AZ + 2 BZ + IZ + 2 X + 2 Y + 3 YI + YX + 2 YZ + 4 ZI + 3 ZZ, \
        2 AY + 2 BY + IY + 2 M + XY + XZ + YI + 3 YX + 3 YY + YZ + 4 ZX + 3 ZY)";

const SINGLE_H: &str = "AX + 2 AY + AZ + BY + BZ + IX + IY + 2 M + X + XZ + 2 Y + 2 YI + 2 YX \
  + 2 YY + YZ + 2 ZI + 3 ZX + 2 ZY + ZZ \
  + max(XI + YI + 2 YZ + Z + ZY + ZZ, IY + IZ + X + XX + 2 XY + YX)";

const SINGLE_CX: &str = "AY + BY + 2 IY + 3 M + 2 XY + 2 XZ + 2 YI + 3 YX + 3 YY + 2 YZ + 5 ZX \
  + 3 ZY \
  + max(AZ + 2 BY + 3 BZ + 2 IZ + 3 X + 3 Y + 3 YI + 2 YX + YZ + 5 ZI, \
        3 AX + 2 AZ + BX + 5 IX + 3 IY + 2 XI + 3 XX + XY + 2 ZY)";

const SINGLE_TP: &str = "BY + M + YI + YX + YY + YZ + ZX + ZY \
  + max(AX + AY + BX + 2 IX + 2 IY + M + XI + XX + XY + XZ + ZX + ZY, \
        BY + 2 BZ + X + Y + ZI + ZZ)";

const DOUBLE_NONE: &str = "AY + BY + 3 IY + M + 3 XY + 3 XZ + 3 YI + 5 YX + 7 YY + 3 YZ + 5 ZX \
  + 5 ZY \
  + max(3 AY + 4 AZ + BZ + 3 IZ + X + Y + 2 YI + 4 YZ + 5 ZI + 2 ZY + 7 ZZ, \
        AX + 4 BX + 3 BY + 5 IX + 2 IY + 3 XI + 7 XX + 4 XY + 2 YX)";

const DOUBLE_H: &str = "2 AY + 2 AZ + IY + IZ + M + X + XI + XX + 2 XY + 3 XZ + Y + 3 YI + 4 YX \
  + 5 YY + 5 YZ + 2 ZI + 3 ZX + 4 ZY + 3 ZZ \
  + max(AX + AY + IX + 2 IY + IZ + XX + 2 XY, \
        BY + BZ + XI + Y + 2 YI + 2 YZ + Z + ZI + ZZ)";

const DOUBLE_CX: &str = "AY + BY + 4 IY + M + 5 XY + 5 XZ + 4 YI + 4 YX + 7 YY + 5 YZ + 4 ZX \
  + 4 ZY \
  + max(AY + 2 AZ + BZ + IY + 5 IZ + X + Y + 2 YZ + 4 ZI + 3 ZY + 7 ZZ, \
        AX + 2 BX + BY + 4 IX + 5 XI + 7 XX + 2 XY + YI + 3 YX)";

const DOUBLE_TP: &str = "2 BY + IY + M + XY + YX + 2 YY + ZX + 2 ZY \
  + max(2 BX + 2 IX + IY + 2 XI + 3 XX + 2 XY + 2 XZ + 2 YI + 2 YX + YY + 2 YZ + ZX, \
        2 BZ + IZ + X + XZ + Y + YI + 2 YZ + ZI + 2 ZZ, \
        AX + AY + 3 BX + BY + 3 IX + 2 IY + 3 XX + 2 XY + 2 YX + YY + 2 ZX + ZY)";

const KNILL_NONE_TP: &str = "AY + BY + M + YX + YY + ZX + ZY \
  + max(AZ + BZ + X + Y + YI + YZ + ZI + ZZ, AX + BX + IX + IY + XX + XY)";

const KNILL_H: &str = "BX + 2 BY + BZ + M + X + Y + YX + YY + ZX + ZY \
  + min(IX + IY + XX + XY, Y + YI + YZ + Z + ZI + ZZ)";

const KNILL_CX: &str = "AY + BY + M + YX + 2 YY + ZX + ZY \
  + max(AY + 2 AZ + BZ + X + Y + 2 YI + YX + 2 YZ + 2 ZI + ZX + ZY + 2 ZZ, \
        AX + BX + IX + IY + XI + 2 XX + 2 XY + XZ + YI + YX + YZ, \
        AX + 2 BX + BY + 2 IX + 2 IY + 2 XX + 2 XY + YX + ZX + ZY, \
        AZ + BZ + IY + IZ + X + XY + XZ + Y + YI + 2 YZ + ZI + ZY + 2 ZZ)";

/// The tabulated maximal strand-error expression for a procedure and gate.
pub fn strand_table_entry(procedure: Procedure, gate: GateLabel) -> StrandExpr {
    let text = match (procedure, gate) {
        (Procedure::SingleSteane, GateLabel::None) => SINGLE_NONE,
        (Procedure::SingleSteane, GateLabel::H) => SINGLE_H,
        (Procedure::SingleSteane, GateLabel::Cx) => SINGLE_CX,
        (Procedure::SingleSteane, GateLabel::TP) => SINGLE_TP,
        (Procedure::DoubleSteane, GateLabel::None) => DOUBLE_NONE,
        (Procedure::DoubleSteane, GateLabel::H) => DOUBLE_H,
        (Procedure::DoubleSteane, GateLabel::Cx) => DOUBLE_CX,
        (Procedure::DoubleSteane, GateLabel::TP) => DOUBLE_TP,
        (Procedure::Knill, GateLabel::None) | (Procedure::Knill, GateLabel::TP) => KNILL_NONE_TP,
        (Procedure::Knill, GateLabel::H) => KNILL_H,
        (Procedure::Knill, GateLabel::Cx) => KNILL_CX,
    };
    parse_expr(text)
}

/// Parses the shorthand expression grammar used by the table constants.
pub fn parse_expr(text: &str) -> StrandExpr {
    let text: alloc::string::String = text.split_whitespace().collect::<Vec<_>>().join(" ");
    let (kind, split_at) = match (text.find("max("), text.find("min(")) {
        (Some(i), _) => (Some(BranchKind::Max), Some(i)),
        (_, Some(i)) => (Some(BranchKind::Min), Some(i)),
        _ => (None, None),
    };
    match (kind, split_at) {
        (Some(kind), Some(i)) => {
            let base_text = text[..i].trim().trim_end_matches('+').trim();
            let inner = text[i + 4..].trim_end_matches(')');
            let branches = inner.split(',').map(|b| parse_poly(b.trim())).collect();
            StrandExpr::with_branches(parse_poly(base_text), kind, branches)
        }
        _ => StrandExpr::plain(parse_poly(text.trim())),
    }
}

fn parse_poly(text: &str) -> ErrorPoly {
    let mut poly = ErrorPoly::zero();
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let mut parts = term.split_whitespace();
        let first = parts.next().expect("nonempty term");
        let (coeff, sym_text) = match first.parse::<i64>() {
            Ok(c) => (c, parts.next().expect("symbol after coefficient")),
            Err(_) => (1, first),
        };
        assert!(parts.next().is_none(), "malformed term {term:?}");
        let sym = parse_short_symbol(sym_text)
            .unwrap_or_else(|| panic!("unknown symbol {sym_text:?}"));
        poly.add_term(
            super::poly::Monomial::single(sym),
            Rational::new(coeff, 1),
        );
    }
    poly
}

/// Shorthand symbols: `M`, bare `X`/`Y`/`Z`, `AΓ`, `BΓ`, `PΓ`, `qΛΞ`, and
/// two-letter Pauli pairs.
pub fn parse_short_symbol(s: &str) -> Option<Symbol> {
    let gamma = |c: &str| GAMMA.iter().position(|g| *g == c);
    match s.len() {
        1 => match s {
            "M" => Some(Symbol::Meas),
            _ => gamma(s).map(Symbol::One),
        },
        2 => {
            if let Some(rest) = s.strip_prefix('A') {
                return gamma(rest).map(Symbol::AncillaA);
            }
            if let Some(rest) = s.strip_prefix('B') {
                return gamma(rest).map(Symbol::AncillaB);
            }
            if let Some(rest) = s.strip_prefix('P') {
                return gamma(rest).map(Symbol::Prep);
            }
            TwoQubitPauli::parse(s).map(Symbol::Two)
        }
        3 => {
            let rest = s.strip_prefix('q')?;
            TwoQubitPauli::parse(rest).map(Symbol::TwoCz)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::Preset;
    use num_traits::ToPrimitive;

    #[test]
    fn knill_h_row_uses_min_branch() {
        let e = strand_table_entry(Procedure::Knill, GateLabel::H);
        assert_eq!(e.branch_kind, Some(BranchKind::Min));
        assert_eq!(e.branches.len(), 2);
    }

    #[test]
    fn single_tp_row_matches_symbol_for_symbol() {
        // Base: BY + M + YI + YX + YY + YZ + ZX + ZY, then a two-branch max.
        let e = strand_table_entry(Procedure::SingleSteane, GateLabel::TP);
        let want_base = parse_expr("BY + M + YI + YX + YY + YZ + ZX + ZY");
        assert_eq!(e.base, want_base.base);
        assert_eq!(e.base.to_text(), want_base.base.to_text());
        assert_eq!(e.branch_kind, Some(BranchKind::Max));
        assert_eq!(e.branches.len(), 2);
        let b2 = parse_expr("BY + 2 BZ + X + Y + ZI + ZZ");
        assert_eq!(e.branches[1], b2.base);
    }

    #[test]
    fn double_cx_worst_location_slope_model1_is_47_over_8() {
        let coeffs = Preset::Model1.coefficients(Rational::new(0, 1));
        let e = strand_table_entry(Procedure::DoubleSteane, GateLabel::Cx);
        assert_eq!(e.evaluate_rational(&coeffs), Rational::new(47, 8));
    }

    #[test]
    fn double_none_worst_location_slope_model1_is_49_over_8() {
        let coeffs = Preset::Model1.coefficients(Rational::new(0, 1));
        let e = strand_table_entry(Procedure::DoubleSteane, GateLabel::None);
        assert_eq!(e.evaluate_rational(&coeffs), Rational::new(49, 8));
    }

    #[test]
    fn knill_gate_slopes_model1() {
        let coeffs = Preset::Model1.coefficients(Rational::new(0, 1));
        let slope = |g| {
            strand_table_entry(Procedure::Knill, g)
                .evaluate_rational(&coeffs)
                .to_f64()
                .unwrap()
        };
        assert!((slope(GateLabel::None) - 2.125).abs() < 1e-12);
        assert!((slope(GateLabel::H) - 2.125).abs() < 1e-12);
        assert!((slope(GateLabel::Cx) - 2.875).abs() < 1e-12);
    }
}

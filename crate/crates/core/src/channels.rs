//! Stochastic Pauli error models: named presets, ancilla error derivation,
//! the associated-channel mapping for general Kraus operators, and seeded
//! error sampling.

use crate::pauli::dense::DenseMatrix;
use crate::pauli::{PauliOp, SingleQubit};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

/// Exact rational used wherever presets are rational in the base rate.
pub type Rational = Ratio<i64>;

/// A single error-model symbol, the vocabulary shared with the strand
/// bookkeeping machinery.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// One-qubit gate error, `Γ ∈ {X, Y, Z}`.
    One(usize),
    /// Two-qubit gate error over the 15 nontrivial pairs.
    Two(TwoQubitPauli),
    /// Measurement flip.
    Meas,
    /// Preparation error, `Γ ∈ {X, Y, Z}`.
    Prep(usize),
    /// A-type ancilla qubit error.
    AncillaA(usize),
    /// B-type ancilla qubit error.
    AncillaB(usize),
    /// Separate two-qubit map for C-Z gates.
    TwoCz(TwoQubitPauli),
}

pub const GAMMA: [&str; 3] = ["X", "Y", "Z"];

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One(g) => write!(f, "p1.{}", GAMMA[*g]),
            Symbol::Two(t) => write!(f, "p2.{t}"),
            Symbol::Meas => write!(f, "pM"),
            Symbol::Prep(g) => write!(f, "pPrep.{}", GAMMA[*g]),
            Symbol::AncillaA(g) => write!(f, "ancillaA.{}", GAMMA[*g]),
            Symbol::AncillaB(g) => write!(f, "ancillaB.{}", GAMMA[*g]),
            Symbol::TwoCz(t) => write!(f, "qcz.{t}"),
        }
    }
}

/// One of the 15 nontrivial two-qubit Paulis, e.g. `XZ` = X on the first
/// (control) qubit and Z on the second (target).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoQubitPauli(u8);

impl TwoQubitPauli {
    pub const COUNT: usize = 15;

    pub fn from_parts(a: SingleQubit, b: SingleQubit) -> Option<Self> {
        let code = (pauli_code(a) << 2) | pauli_code(b);
        if code == 0 {
            None
        } else {
            Some(TwoQubitPauli(code))
        }
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 15);
        TwoQubitPauli(i as u8 + 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn first(self) -> SingleQubit {
        code_pauli(self.0 >> 2)
    }

    pub fn second(self) -> SingleQubit {
        code_pauli(self.0 & 3)
    }

    pub fn all() -> impl Iterator<Item = TwoQubitPauli> {
        (0..15).map(TwoQubitPauli::from_index)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut chars = s.chars();
        let a = parse_pauli_char(chars.next()?)?;
        let b = parse_pauli_char(chars.next()?)?;
        if chars.next().is_some() {
            return None;
        }
        TwoQubitPauli::from_parts(a, b)
    }
}

impl fmt::Display for TwoQubitPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.first(), self.second())
    }
}

fn pauli_code(p: SingleQubit) -> u8 {
    match p {
        SingleQubit::I => 0,
        SingleQubit::X => 1,
        SingleQubit::Y => 2,
        SingleQubit::Z => 3,
    }
}

fn code_pauli(c: u8) -> SingleQubit {
    match c {
        0 => SingleQubit::I,
        1 => SingleQubit::X,
        2 => SingleQubit::Y,
        _ => SingleQubit::Z,
    }
}

fn parse_pauli_char(c: char) -> Option<SingleQubit> {
    match c {
        'I' => Some(SingleQubit::I),
        'X' => Some(SingleQubit::X),
        'Y' => Some(SingleQubit::Y),
        'Z' => Some(SingleQubit::Z),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChannelError {
    UnknownPreset(String),
    /// The Kraus set is not trace preserving within tolerance.
    NotTracePreserving { deviation: f64 },
    ProbabilityOutOfRange(Symbol),
    ParseError(String),
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelError::UnknownPreset(name) => write!(f, "unknown error-model preset: {name}"),
            ChannelError::NotTracePreserving { deviation } => {
                write!(f, "Kraus operators not trace preserving (deviation {deviation:.2e})")
            }
            ChannelError::ProbabilityOutOfRange(sym) => {
                write!(f, "probability out of range for {sym}")
            }
            ChannelError::ParseError(what) => write!(f, "model parse error: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ChannelError {}

/// Probabilities of every kind of elementary failure, stored as exact
/// rationals and evaluated to floating point at sampling time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorModel {
    /// One-qubit gate errors, indexed X, Y, Z.
    pub p1: [Rational; 3],
    /// Two-qubit gate errors over the 15 nontrivial pairs.
    pub p2: [Rational; 15],
    /// Measurement flip probability.
    pub p_meas: Rational,
    /// Preparation errors, indexed X, Y, Z.
    pub p_prep: [Rational; 3],
    /// A-type ancilla per-qubit errors.
    pub ancilla_a: [Rational; 3],
    /// B-type ancilla per-qubit errors.
    pub ancilla_b: [Rational; 3],
    /// Optional separate two-qubit map for C-Z gates; `p2` is used when
    /// absent.
    pub p_cz: Option<[Rational; 15]>,
}

impl ErrorModel {
    pub fn zero() -> Self {
        let z = Rational::new(0, 1);
        ErrorModel {
            p1: [z; 3],
            p2: [z; 15],
            p_meas: z,
            p_prep: [z; 3],
            ancilla_a: [z; 3],
            ancilla_b: [z; 3],
            p_cz: None,
        }
    }

    /// Checks every probability lies in [0, 1] and category sums stay <= 1.
    pub fn validate(&self) -> Result<(), ChannelError> {
        let unit = |r: &Rational, sym: Symbol| {
            if r.is_negative() || *r > Rational::new(1, 1) {
                Err(ChannelError::ProbabilityOutOfRange(sym))
            } else {
                Ok(())
            }
        };
        let one = Rational::new(1, 1);
        for (g, r) in self.p1.iter().enumerate() {
            unit(r, Symbol::One(g))?;
        }
        for (i, r) in self.p2.iter().enumerate() {
            unit(r, Symbol::Two(TwoQubitPauli::from_index(i)))?;
        }
        unit(&self.p_meas, Symbol::Meas)?;
        for (g, r) in self.p_prep.iter().enumerate() {
            unit(r, Symbol::Prep(g))?;
        }
        for (g, r) in self.ancilla_a.iter().enumerate() {
            unit(r, Symbol::AncillaA(g))?;
        }
        for (g, r) in self.ancilla_b.iter().enumerate() {
            unit(r, Symbol::AncillaB(g))?;
        }
        let sums = [
            (self.p1.iter().sum::<Rational>(), Symbol::One(0)),
            (self.p2.iter().sum::<Rational>(), Symbol::Two(TwoQubitPauli::from_index(0))),
            (self.p_prep.iter().sum::<Rational>(), Symbol::Prep(0)),
            (self.ancilla_a.iter().sum::<Rational>(), Symbol::AncillaA(0)),
            (self.ancilla_b.iter().sum::<Rational>(), Symbol::AncillaB(0)),
        ];
        for (sum, sym) in sums {
            if sum > one {
                return Err(ChannelError::ProbabilityOutOfRange(sym));
            }
        }
        Ok(())
    }

    pub fn value(&self, sym: Symbol) -> Rational {
        match sym {
            Symbol::One(g) => self.p1[g],
            Symbol::Two(t) => self.p2[t.index()],
            Symbol::Meas => self.p_meas,
            Symbol::Prep(g) => self.p_prep[g],
            Symbol::AncillaA(g) => self.ancilla_a[g],
            Symbol::AncillaB(g) => self.ancilla_b[g],
            Symbol::TwoCz(t) => self.p_cz.unwrap_or(self.p2)[t.index()],
        }
    }

    pub fn set(&mut self, sym: Symbol, value: Rational) {
        match sym {
            Symbol::One(g) => self.p1[g] = value,
            Symbol::Two(t) => self.p2[t.index()] = value,
            Symbol::Meas => self.p_meas = value,
            Symbol::Prep(g) => self.p_prep[g] = value,
            Symbol::AncillaA(g) => self.ancilla_a[g] = value,
            Symbol::AncillaB(g) => self.ancilla_b[g] = value,
            Symbol::TwoCz(t) => {
                let mut map = self.p_cz.unwrap_or([Rational::new(0, 1); 15]);
                map[t.index()] = value;
                self.p_cz = Some(map);
            }
        }
    }

    /// Applies structured-text assignments of the form
    /// `p2.XZ = 1/15` or `pM = 0.004`, one per line; `#` starts a comment.
    pub fn apply_config(&mut self, text: &str) -> Result<(), ChannelError> {
        for (sym, value) in parse_model_config(text)? {
            self.set(sym, value);
        }
        self.validate()
    }
}

/// Parses `symbol = rational-or-decimal` lines.
pub fn parse_model_config(text: &str) -> Result<Vec<(Symbol, Rational)>, ChannelError> {
    let mut out = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ChannelError::ParseError(String::from(raw)))?;
        let sym = parse_symbol(key.trim())
            .ok_or_else(|| ChannelError::ParseError(String::from(key.trim())))?;
        let value = parse_rational(value.trim())
            .ok_or_else(|| ChannelError::ParseError(String::from(value.trim())))?;
        out.push((sym, value));
    }
    Ok(out)
}

pub fn parse_symbol(key: &str) -> Option<Symbol> {
    let gamma_index = |s: &str| GAMMA.iter().position(|g| *g == s);
    if let Some(rest) = key.strip_prefix("p1.") {
        return Some(Symbol::One(gamma_index(rest)?));
    }
    if let Some(rest) = key.strip_prefix("p2.") {
        return Some(Symbol::Two(TwoQubitPauli::parse(rest)?));
    }
    if key == "pM" {
        return Some(Symbol::Meas);
    }
    if let Some(rest) = key.strip_prefix("pPrep.") {
        return Some(Symbol::Prep(gamma_index(rest)?));
    }
    if let Some(rest) = key.strip_prefix("ancillaA.") {
        return Some(Symbol::AncillaA(gamma_index(rest)?));
    }
    if let Some(rest) = key.strip_prefix("ancillaB.") {
        return Some(Symbol::AncillaB(gamma_index(rest)?));
    }
    if let Some(rest) = key.strip_prefix("qcz.") {
        return Some(Symbol::TwoCz(TwoQubitPauli::parse(rest)?));
    }
    None
}

/// Accepts `a/b` rationals and plain decimals (interpreted exactly).
pub fn parse_rational(s: &str) -> Option<Rational> {
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        if frac.len() > 15 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return None;
        }
        let scale = 10i64.pow(frac.len() as u32);
        let frac_part: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        return Some(Rational::new(int_part * scale + frac_part, scale));
    }
    let int: i64 = s.parse().ok()?;
    Some(Rational::new(int, 1))
}

/// The named presets, each a single-parameter family.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Rescaled depolarizing: `p_Γ = p/4`, `p_ΛΞ = p/16`, `p_M = p/2`.
    Model1,
    /// Depolarizing with heavy measurement errors: `p_M = 4p`.
    Model2,
    /// Two-qubit-gate depolarizing only.
    Model3,
    /// Two-qubit gates fail as X or Z on one side only.
    Model4,
    /// Uniform convention: every operation fails with probability `p`,
    /// faults uniform over the nontrivial Paulis on the involved qubits.
    Depolarizing,
    /// Symmetric C-X failures only: XX, YY, ZZ each at `p/3`.
    SymmetricCx,
    /// `(1−Δ)`·symmetric + `Δ`·depolarizing on the two-qubit map, at
    /// constant total strength.
    DeltaMixture,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Preset, ChannelError> {
        Ok(match name {
            "model1" => Preset::Model1,
            "model2" => Preset::Model2,
            "model3" => Preset::Model3,
            "model4" => Preset::Model4,
            "depolarizing" => Preset::Depolarizing,
            "symmetric_cx" => Preset::SymmetricCx,
            "delta_mixture" => Preset::DeltaMixture,
            other => return Err(ChannelError::UnknownPreset(String::from(other))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Model1 => "model1",
            Preset::Model2 => "model2",
            Preset::Model3 => "model3",
            Preset::Model4 => "model4",
            Preset::Depolarizing => "depolarizing",
            Preset::SymmetricCx => "symmetric_cx",
            Preset::DeltaMixture => "delta_mixture",
        }
    }

    /// The model at unit base rate: entries are the exact per-`p`
    /// coefficients. `delta` only affects [`Preset::DeltaMixture`].
    pub fn coefficients(self, delta: Rational) -> ErrorModel {
        let mut m = ErrorModel::zero();
        let r = Rational::new;
        match self {
            Preset::Model1 => {
                m.p1 = [r(1, 4); 3];
                m.p2 = [r(1, 16); 15];
                m.p_meas = r(1, 2);
                m.ancilla_a = [r(1, 4), r(1, 8), r(1, 8)];
                m.ancilla_b = [r(1, 8), r(1, 8), r(1, 4)];
            }
            Preset::Model2 => {
                m.p1 = [r(4, 15); 3];
                m.p2 = [r(1, 15); 15];
                m.p_meas = r(4, 1);
                m.ancilla_a = [r(4, 15), r(2, 15), r(2, 15)];
                m.ancilla_b = [r(2, 15), r(2, 15), r(4, 15)];
            }
            Preset::Model3 => {
                m.p2 = [r(1, 15); 15];
                m.ancilla_a = [r(4, 15), r(2, 15), r(2, 15)];
                m.ancilla_b = [r(2, 15), r(2, 15), r(4, 15)];
            }
            Preset::Model4 => {
                for two in [("IX", 1), ("XI", 1), ("IZ", 1), ("ZI", 1)] {
                    m.p2[TwoQubitPauli::parse(two.0).unwrap().index()] = r(two.1, 4);
                }
                m.ancilla_a = [r(1, 2), r(0, 1), r(1, 4)];
                m.ancilla_b = [r(1, 4), r(0, 1), r(1, 2)];
            }
            Preset::Depolarizing => {
                m.p1 = [r(1, 3); 3];
                m.p2 = [r(1, 15); 15];
                m.p_meas = r(1, 1);
                m.p_prep = [r(1, 3); 3];
                let (a, b) = derive_ancilla_errors(&m.p2);
                m.ancilla_a = a;
                m.ancilla_b = b;
            }
            Preset::SymmetricCx => {
                for two in ["XX", "YY", "ZZ"] {
                    m.p2[TwoQubitPauli::parse(two).unwrap().index()] = r(1, 3);
                }
            }
            Preset::DeltaMixture => {
                let sym = Rational::new(1, 3) * (Rational::new(1, 1) - delta);
                let dep = delta * Rational::new(1, 15);
                for t in TwoQubitPauli::all() {
                    let symmetric = t.first() == t.second();
                    m.p2[t.index()] = if symmetric { sym + dep } else { dep };
                }
            }
        }
        m
    }

    /// The model evaluated at base rate `p` (and `delta` where applicable).
    pub fn model(self, p: Rational, delta: Rational) -> ErrorModel {
        let coeff = self.coefficients(delta);
        let scale = |a: &[Rational]| -> Vec<Rational> { a.iter().map(|c| c * p).collect() };
        let mut m = ErrorModel::zero();
        m.p1 = scale(&coeff.p1).try_into().unwrap();
        m.p2 = scale(&coeff.p2).try_into().unwrap();
        m.p_meas = coeff.p_meas * p;
        m.p_prep = scale(&coeff.p_prep).try_into().unwrap();
        m.ancilla_a = scale(&coeff.ancilla_a).try_into().unwrap();
        m.ancilla_b = scale(&coeff.ancilla_b).try_into().unwrap();
        m.p_cz = coeff.p_cz.map(|map| {
            map.iter()
                .map(|c| c * p)
                .collect::<Vec<_>>()
                .try_into()
                .unwrap()
        });
        m
    }
}

/// First-order residual error distributions for verified ancillae, in terms
/// of the undetectable errors of the coupling gates used to check them:
///
/// ```text
/// p_AX = p_XZ + p_XI + p_IX + p_XX     p_BX = p_XI + p_XZ
/// p_AY = p_IY + p_XY                   p_BY = p_YI + p_YZ
/// p_AZ = p_IZ + p_XZ                   p_BZ = p_IZ + p_XZ + p_ZI + p_ZZ
/// ```
pub fn derive_ancilla_errors(p2: &[Rational; 15]) -> ([Rational; 3], [Rational; 3]) {
    let v = |s: &str| p2[TwoQubitPauli::parse(s).unwrap().index()];
    let a = [
        v("XZ") + v("XI") + v("IX") + v("XX"),
        v("IY") + v("XY"),
        v("IZ") + v("XZ"),
    ];
    let b = [
        v("XI") + v("XZ"),
        v("YI") + v("YZ"),
        v("IZ") + v("XZ") + v("ZI") + v("ZZ"),
    ];
    (a, b)
}

/// Probabilities of the associated stochastic Pauli channel for a set of
/// single-qubit Kraus operators: `p_Γ = Σ_j |tr(E_j Γ)|² / 4`.
///
/// The traces are normalised by `|tr(ΓΓ)|² = 4` so that a bare Pauli Kraus
/// element maps to probability one.
pub fn associated_channel(kraus: &[DenseMatrix]) -> Result<[f64; 3], ChannelError> {
    use num_complex::Complex64;
    // Trace preservation: sum of E†E must be the identity.
    let mut sum = DenseMatrix::zeros(2);
    for e in kraus {
        assert_eq!(e.dim, 2, "associated channel takes single-qubit operators");
        let prod = e.dagger().mul(e);
        for i in 0..4 {
            sum.data[i] += prod.data[i];
        }
    }
    let mut deviation: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let want = if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            deviation = deviation.max((sum.get(r, c) - want).norm());
        }
    }
    if deviation > 1e-9 {
        return Err(ChannelError::NotTracePreserving { deviation });
    }
    let mut out = [0.0; 3];
    for (i, gamma) in [SingleQubit::X, SingleQubit::Y, SingleQubit::Z]
        .into_iter()
        .enumerate()
    {
        let g = crate::pauli::dense::pauli_matrix(&PauliOp::single(1, 0, gamma));
        for e in kraus {
            let prod = e.mul(&g);
            let tr = prod.get(0, 0) + prod.get(1, 1);
            out[i] += tr.norm_sqr() / 4.0;
        }
    }
    Ok(out)
}

/// The kind of operation an error is sampled for.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OpKind {
    OneQubit,
    TwoQubit,
    /// Two-qubit C-Z gate; falls back to the C-X map when no separate map
    /// is configured.
    TwoQubitCz,
    Measurement,
    Preparation,
    AncillaA,
    AncillaB,
}

/// Samples one error for an operation of the given kind.
///
/// Returns a 1- or 2-qubit operator (identity when the operation succeeds).
/// Measurement flips are reported as an X on the measured qubit.
pub fn sample_error<R: Rng + ?Sized>(model: &ErrorModel, kind: OpKind, rng: &mut R) -> PauliOp {
    let to_f = |r: &Rational| r.to_f64().unwrap_or(0.0);
    match kind {
        OpKind::TwoQubit | OpKind::TwoQubitCz => {
            let map = if kind == OpKind::TwoQubitCz {
                model.p_cz.as_ref().unwrap_or(&model.p2)
            } else {
                &model.p2
            };
            let mut u = rng.random::<f64>();
            for t in TwoQubitPauli::all() {
                let p = to_f(&map[t.index()]);
                if u < p {
                    let mut op = PauliOp::identity(2);
                    op.set(0, t.first());
                    op.set(1, t.second());
                    return op;
                }
                u -= p;
            }
            PauliOp::identity(2)
        }
        OpKind::OneQubit | OpKind::Preparation | OpKind::AncillaA | OpKind::AncillaB => {
            let map = match kind {
                OpKind::OneQubit => &model.p1,
                OpKind::Preparation => &model.p_prep,
                OpKind::AncillaA => &model.ancilla_a,
                _ => &model.ancilla_b,
            };
            let mut u = rng.random::<f64>();
            for (g, gamma) in SingleQubit::NONTRIVIAL.into_iter().enumerate() {
                let p = to_f(&map[g]);
                if u < p {
                    return PauliOp::single(1, 0, gamma);
                }
                u -= p;
            }
            PauliOp::identity(1)
        }
        OpKind::Measurement => {
            if rng.random::<f64>() < to_f(&model.p_meas) {
                PauliOp::single(1, 0, SingleQubit::X)
            } else {
                PauliOp::identity(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn model2_measurement_rate() {
        let m = Preset::Model2.model(r(1, 1000), r(0, 1));
        assert_eq!(m.p_meas, r(4, 1000));
    }

    #[test]
    fn model3_at_zero_is_all_zero() {
        let m = Preset::Model3.model(r(0, 1), r(0, 1));
        assert_eq!(m, ErrorModel::zero());
    }

    #[test]
    fn delta_endpoints() {
        let dep = Preset::DeltaMixture.model(r(3, 1000), r(1, 1));
        for t in TwoQubitPauli::all() {
            assert_eq!(dep.p2[t.index()], r(3, 1000) / r(15, 1));
        }
        let sym = Preset::DeltaMixture.model(r(3, 1000), r(0, 1));
        for t in TwoQubitPauli::all() {
            let want = if t.first() == t.second() {
                r(1, 1000)
            } else {
                r(0, 1)
            };
            assert_eq!(sym.p2[t.index()], want);
        }
    }

    #[test]
    fn delta_mixture_total_strength_constant() {
        let p = r(17, 10000);
        for delta in [r(0, 1), r(1, 100), r(1, 20), r(1, 2), r(1, 1)] {
            let m = Preset::DeltaMixture.model(p, delta);
            let total: Rational = m.p2.iter().sum();
            assert_eq!(total, p);
        }
    }

    #[test]
    fn derive_ancilla_uniform_depolarizing() {
        let p2 = [r(1, 15); 15];
        let (a, b) = derive_ancilla_errors(&p2);
        assert_eq!(a, [r(4, 15), r(2, 15), r(2, 15)]);
        assert_eq!(b, [r(2, 15), r(2, 15), r(4, 15)]);
    }

    #[test]
    fn derive_ancilla_zero_map() {
        let (a, b) = derive_ancilla_errors(&[r(0, 1); 15]);
        assert_eq!(a, [r(0, 1); 3]);
        assert_eq!(b, [r(0, 1); 3]);
    }

    #[test]
    fn derive_ancilla_model4_inputs() {
        let mut p2 = [r(0, 1); 15];
        for s in ["IX", "XI", "IZ", "ZI"] {
            p2[TwoQubitPauli::parse(s).unwrap().index()] = r(1, 4);
        }
        let (a, b) = derive_ancilla_errors(&p2);
        assert_eq!(a, [r(1, 2), r(0, 1), r(1, 4)]);
        assert_eq!(b, [r(1, 4), r(0, 1), r(1, 2)]);
    }

    #[test]
    fn derive_ancilla_is_linear() {
        let mut p2a = [r(0, 1); 15];
        let mut p2b = [r(0, 1); 15];
        for (i, item) in p2a.iter_mut().enumerate() {
            *item = r(i as i64 + 1, 100);
        }
        for (i, item) in p2b.iter_mut().enumerate() {
            *item = r(2 * i as i64 + 1, 300);
        }
        let mut sum = [r(0, 1); 15];
        for i in 0..15 {
            sum[i] = p2a[i] + p2b[i];
        }
        let (a1, b1) = derive_ancilla_errors(&p2a);
        let (a2, b2) = derive_ancilla_errors(&p2b);
        let (a3, b3) = derive_ancilla_errors(&sum);
        for g in 0..3 {
            assert_eq!(a3[g], a1[g] + a2[g]);
            assert_eq!(b3[g], b1[g] + b2[g]);
        }
    }

    #[test]
    fn associated_channel_pure_pauli() {
        let x = crate::pauli::dense::pauli_matrix(&PauliOp::parse("X").unwrap());
        let p = associated_channel(&[x]).unwrap();
        assert_eq!(p, [1.0, 0.0, 0.0]);
        let id = DenseMatrix::identity(2);
        let p = associated_channel(&[id]).unwrap();
        assert_eq!(p, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn associated_channel_x_rotation() {
        // exp(-i θ X / 2) = cos(θ/2) I - i sin(θ/2) X at θ = 0.2.
        let theta: f64 = 0.2;
        let mut e = DenseMatrix::identity(2);
        for v in &mut e.data {
            *v *= Complex64::new((theta / 2.0).cos(), 0.0);
        }
        let x = crate::pauli::dense::pauli_matrix(&PauliOp::parse("X").unwrap());
        for i in 0..4 {
            e.data[i] += Complex64::new(0.0, -(theta / 2.0).sin()) * x.data[i];
        }
        let p = associated_channel(&[e]).unwrap();
        assert!((p[0] - (0.1f64).sin().powi(2)).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12 && p[2].abs() < 1e-12);
    }

    #[test]
    fn associated_channel_rejects_non_trace_preserving() {
        let mut e = DenseMatrix::identity(2);
        e.data[0] *= 0.5;
        assert!(matches!(
            associated_channel(&[e]),
            Err(ChannelError::NotTracePreserving { .. })
        ));
    }

    #[test]
    fn sampling_zero_model_is_identity() {
        let m = ErrorModel::zero();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(sample_error(&m, OpKind::TwoQubit, &mut rng).is_identity());
            assert!(sample_error(&m, OpKind::OneQubit, &mut rng).is_identity());
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let m = Preset::Depolarizing.model(r(1, 10), r(0, 1));
        let draw = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..64)
                .map(|_| sample_error(&m, OpKind::TwoQubit, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn sampling_identity_rate_approaches_one_minus_p() {
        let m = Preset::Depolarizing.model(r(1, 10), r(0, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let trials = 200_000;
        let identity = (0..trials)
            .filter(|_| sample_error(&m, OpKind::TwoQubit, &mut rng).is_identity())
            .count();
        let freq = identity as f64 / trials as f64;
        assert!((freq - 0.9).abs() < 0.005, "identity freq {freq}");
    }

    /// Chi-square goodness of fit over 10^6 two-qubit draws; 15 degrees of
    /// freedom, critical value 37.70 at significance 0.001.
    #[test]
    fn sampling_chi_square_goodness_of_fit() {
        let m = Preset::Depolarizing.model(r(1, 10), r(0, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let trials = 1_000_000usize;
        let mut counts = [0u64; 16];
        for _ in 0..trials {
            let e = sample_error(&m, OpKind::TwoQubit, &mut rng);
            let idx = match (e.get(0), e.get(1)) {
                (SingleQubit::I, SingleQubit::I) => 15,
                (a, b) => TwoQubitPauli::from_parts(a, b).unwrap().index(),
            };
            counts[idx] += 1;
        }
        let p_each = 0.1 / 15.0;
        let mut chi2 = 0.0;
        for (i, &count) in counts.iter().enumerate() {
            let expected = trials as f64 * if i == 15 { 0.9 } else { p_each };
            chi2 += (count as f64 - expected).powi(2) / expected;
        }
        assert!(chi2 < 37.70, "chi-square statistic {chi2}");
    }

    #[test]
    fn config_text_roundtrip_keeps_rationals() {
        let mut m = ErrorModel::zero();
        m.apply_config("p2.XZ = 1/15\npM = 0.004\n# comment\np1.Y = 2/7")
            .unwrap();
        assert_eq!(m.value(Symbol::Two(TwoQubitPauli::parse("XZ").unwrap())), r(1, 15));
        assert_eq!(m.p_meas, r(4, 1000));
        assert_eq!(m.p1[1], r(2, 7));
    }

    #[test]
    fn config_rejects_garbage() {
        let mut m = ErrorModel::zero();
        assert!(m.apply_config("p9.QQ = 1/2").is_err());
        assert!(m.apply_config("p1.X + 1/2").is_err());
        assert!(m.apply_config("p1.X = 5/4").is_err()); // out of range
    }

    #[test]
    fn preset_parse_unknown() {
        assert!(Preset::parse("modelx").is_err());
        assert_eq!(Preset::parse("model2").unwrap(), Preset::Model2);
    }
}

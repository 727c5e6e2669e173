//! Classical linear codes, CSS constructors, syndrome decoding, and
//! stabilizer-to-graph-form reduction.

use crate::bits::{BitMatrix, BitVec};
use crate::pauli::{CliffordGate, GateKind, PauliOp, SingleQubit};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeError {
    /// Parameter out of range (e.g. Hamming order below 2).
    BadParameter(&'static str),
    /// Matrix dimensions do not line up.
    DimensionMismatch,
    /// Puncturing removed the last independent generator.
    DegenerateCode,
    /// A decode table would need more than 2^20 entries.
    TableTooLarge { syndromes: usize },
    /// Stabilizer input failed validation (dependent or non-commuting).
    InvalidStabilizer(&'static str),
    /// Text deserialization failed.
    ParseError(&'static str),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::BadParameter(what) => write!(f, "bad parameter: {what}"),
            CodeError::DimensionMismatch => write!(f, "matrix dimensions do not agree"),
            CodeError::DegenerateCode => write!(f, "puncturing produced a degenerate code"),
            CodeError::TableTooLarge { syndromes } => {
                write!(f, "decode table would need {syndromes} entries")
            }
            CodeError::InvalidStabilizer(what) => write!(f, "invalid stabilizer: {what}"),
            CodeError::ParseError(what) => write!(f, "parse error: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CodeError {}

/// An `[n, k, d]` binary linear code given by generator and parity-check
/// matrices with `H · G^T = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub generator: BitMatrix,
    pub parity_check: BitMatrix,
}

impl ClassicalCode {
    /// Builds a code from its generator and parity-check matrices, checking
    /// orthogonality and row independence, and measuring the distance by
    /// brute force (all `2^k − 1` nonzero codewords).
    pub fn new(generator: BitMatrix, parity_check: BitMatrix) -> Result<Self, CodeError> {
        let n = generator.n_cols();
        let k = generator.n_rows();
        if parity_check.n_cols() != n || parity_check.n_rows() != n - k {
            return Err(CodeError::DimensionMismatch);
        }
        if generator.rank() != k || parity_check.rank() != n - k {
            return Err(CodeError::InvalidStabilizer("dependent rows"));
        }
        if !parity_check.mul(&generator.transpose()).is_zero() {
            return Err(CodeError::InvalidStabilizer("H·G^T != 0"));
        }
        let d = min_distance(&generator);
        Ok(ClassicalCode {
            n,
            k,
            d,
            generator,
            parity_check,
        })
    }

    /// Builds a code from its parity check alone; the generator is a basis
    /// of the null space.
    pub fn from_parity_check(parity_check: BitMatrix) -> Result<Self, CodeError> {
        let generator = BitMatrix::from_rows(parity_check.null_space());
        ClassicalCode::new(generator, parity_check)
    }

    /// True when the generator and parity-check spans coincide.
    pub fn is_self_dual(&self) -> bool {
        self.k == self.n - self.k && span_eq(&self.generator, &self.parity_check)
    }

    /// Plain-text form: generator rows, a `|` separator line, then
    /// parity-check rows.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for row in &self.generator.rows {
            let _ = writeln!(s, "{row}");
        }
        let _ = writeln!(s, "|");
        for row in &self.parity_check.rows {
            let _ = writeln!(s, "{row}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, CodeError> {
        let mut g_rows = Vec::new();
        let mut h_rows = Vec::new();
        let mut in_h = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "|" {
                in_h = true;
                continue;
            }
            let row = BitVec::from_str01(line).ok_or(CodeError::ParseError("not a 0/1 row"))?;
            if in_h {
                h_rows.push(row);
            } else {
                g_rows.push(row);
            }
        }
        if g_rows.is_empty() || h_rows.is_empty() {
            return Err(CodeError::ParseError("missing generator or parity block"));
        }
        ClassicalCode::new(BitMatrix::from_rows(g_rows), BitMatrix::from_rows(h_rows))
    }
}

fn span_eq(a: &BitMatrix, b: &BitMatrix) -> bool {
    if a.n_cols() != b.n_cols() {
        return false;
    }
    let mut joint = a.clone();
    joint.rows.extend(b.rows.iter().cloned());
    a.rank() == b.rank() && joint.rank() == a.rank()
}

/// Minimum weight of a nonzero codeword, by enumeration of the row span.
fn min_distance(generator: &BitMatrix) -> usize {
    let k = generator.n_rows();
    assert!(k <= 24, "distance enumeration limited to k <= 24");
    let mut best = usize::MAX;
    for mask in 1u32..(1 << k) {
        let mut word = BitVec::zeros(generator.n_cols());
        for (i, row) in generator.rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                word.xor_assign(row);
            }
        }
        best = best.min(word.count_ones());
    }
    best
}

/// The Hamming code of order `l`: parity-check columns run through all
/// nonzero length-`l` binary strings in counting order, with row `i`
/// holding bit `i` (least significant first). Parameters
/// `[2^l − 1, 2^l − 1 − l, 3]`.
pub fn hamming(l: usize) -> Result<ClassicalCode, CodeError> {
    if l < 2 {
        return Err(CodeError::BadParameter("hamming order must be >= 2"));
    }
    let n = (1usize << l) - 1;
    let mut h = BitMatrix::zeros(l, n);
    for col in 1..=n {
        for row in 0..l {
            if col >> row & 1 == 1 {
                h.set(row, col - 1, true);
            }
        }
    }
    ClassicalCode::from_parity_check(h)
}

/// The `[3,1,3]` repetition code (the Hamming code of order 2).
pub fn repetition3() -> ClassicalCode {
    hamming(2).unwrap()
}

/// Extends a code by a parity bit: the parity-check matrix gains a zero
/// column and an all-ones row.
pub fn extend(code: &ClassicalCode) -> ClassicalCode {
    let mut h = BitMatrix::zeros(code.n - code.k + 1, code.n + 1);
    for (r, row) in code.parity_check.rows.iter().enumerate() {
        for c in row.ones() {
            h.set(r, c, true);
        }
    }
    for c in 0..=code.n {
        h.set(code.n - code.k, c, true);
    }
    ClassicalCode::from_parity_check(h).expect("extension preserves validity")
}

/// Punctures the code by deleting bit `j`.
pub fn puncture(code: &ClassicalCode, j: usize) -> Result<ClassicalCode, CodeError> {
    if j >= code.n {
        return Err(CodeError::BadParameter("puncture index out of range"));
    }
    // Row-reduce H so that column j contains at most one 1, then drop that
    // row along with the column.
    let mut h = code.parity_check.clone();
    if let Some(pivot) = (0..h.n_rows()).find(|&r| h.get(r, j)) {
        let pivot_row = h.rows[pivot].clone();
        for (r, row) in h.rows.iter_mut().enumerate() {
            if r != pivot && row.get(j) {
                row.xor_assign(&pivot_row);
            }
        }
        h.rows.remove(pivot);
    } else {
        // No checks involve bit j; puncturing drops an information bit.
        return Err(CodeError::DegenerateCode);
    }
    let rows: Vec<BitVec> = h
        .rows
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.remove(j);
            r
        })
        .collect();
    let h = BitMatrix::from_rows(rows);
    if h.rank() != h.n_rows() {
        return Err(CodeError::DegenerateCode);
    }
    ClassicalCode::from_parity_check(h)
}

/// Concatenates: every bit of the outer code is encoded with the inner code.
/// For an `[n_A, 1, d_A]` inner and `[n_B, k_B, d_B]` outer code the result
/// is `[n_A n_B, k_B, d_A d_B]`.
pub fn concatenate(
    inner: &ClassicalCode,
    outer: &ClassicalCode,
) -> Result<ClassicalCode, CodeError> {
    if inner.k != 1 {
        return Err(CodeError::BadParameter("inner code must have k = 1"));
    }
    let one = &inner.generator.rows[0];
    let n = inner.n * outer.n;
    let mut g = BitMatrix::zeros(outer.k, n);
    for (r, row) in outer.generator.rows.iter().enumerate() {
        for c in row.ones() {
            for b in one.ones() {
                g.set(r, c * inner.n + b, true);
            }
        }
    }
    let h = BitMatrix::from_rows(g.null_space());
    ClassicalCode::new(g, h)
}

/// The dual code: generator and parity-check swap roles.
pub fn dual(code: &ClassicalCode) -> ClassicalCode {
    ClassicalCode::new(code.parity_check.clone(), code.generator.clone())
        .expect("dual of a valid code is valid")
}

/// Syndrome `H · word` mod 2; codewords map to zero.
pub fn syndrome(parity_check: &BitMatrix, word: &BitVec) -> Result<BitVec, CodeError> {
    if parity_check.n_cols() != word.len() {
        return Err(CodeError::DimensionMismatch);
    }
    Ok(parity_check.mul_vec(word))
}

/// A `2^{n−k}`-entry minimum-weight decode table.
///
/// Ties among equal-weight errors go to the lexicographically smallest bit
/// string (reading positions left to right).
#[derive(Clone, Debug)]
pub struct DecodeTable {
    n: usize,
    entries: Vec<BitVec>,
}

impl DecodeTable {
    pub fn build(parity_check: &BitMatrix) -> Result<Self, CodeError> {
        let n = parity_check.n_cols();
        let m = parity_check.n_rows();
        if m > 20 {
            return Err(CodeError::TableTooLarge { syndromes: 1 << m });
        }
        let size = 1usize << m;
        let mut entries: Vec<Option<BitVec>> = vec![None; size];
        let mut filled = 0;
        // March through error vectors by weight; within a weight class,
        // candidates are visited in lexicographic order of the bit string.
        'outer: for weight in 0..=n {
            for err in combinations_in_string_order(n, weight) {
                let syn = parity_check.mul_vec(&err);
                let idx = syndrome_index(&syn);
                if entries[idx].is_none() {
                    entries[idx] = Some(err);
                    filled += 1;
                    if filled == size {
                        break 'outer;
                    }
                }
            }
        }
        let entries = entries
            .into_iter()
            .map(|e| e.expect("parity check rows independent; every syndrome reachable"))
            .collect();
        Ok(DecodeTable { n, entries })
    }

    /// Minimum-weight error consistent with the syndrome.
    pub fn decode(&self, syn: &BitVec) -> &BitVec {
        &self.entries[syndrome_index(syn)]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn syndrome_index(syn: &BitVec) -> usize {
    let mut idx = 0usize;
    for (i, b) in syn.iter().enumerate() {
        if b {
            idx |= 1 << i;
        }
    }
    idx
}

/// All weight-`w` vectors of length `n`, ordered lexicographically as
/// strings ("0011" before "0101" before "0110" ...).
fn combinations_in_string_order(n: usize, w: usize) -> Vec<BitVec> {
    let mut out = Vec::new();
    let mut current = BitVec::zeros(n);
    fn rec(current: &mut BitVec, pos: usize, remaining: usize, n: usize, out: &mut Vec<BitVec>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if n - pos < remaining {
            return;
        }
        // '0' first keeps string-lexicographic order.
        if n - (pos + 1) >= remaining {
            rec(current, pos + 1, remaining, n, out);
        }
        current.set(pos, true);
        rec(current, pos + 1, remaining - 1, n, out);
        current.set(pos, false);
    }
    rec(&mut current, 0, w, n, &mut out);
    out
}

/// Stabilizer generators: independent, mutually commuting Pauli operators.
#[derive(Clone, Debug)]
pub struct StabilizerGenerators {
    pub gens: Vec<PauliOp>,
}

impl StabilizerGenerators {
    pub fn new(gens: Vec<PauliOp>) -> Result<Self, CodeError> {
        if gens.is_empty() {
            return Err(CodeError::InvalidStabilizer("no generators"));
        }
        let n = gens[0].len();
        if gens.iter().any(|g| g.len() != n) {
            return Err(CodeError::DimensionMismatch);
        }
        if gens
            .iter()
            .any(|g| g.phase_exponent() == 1 || g.phase_exponent() == 3)
        {
            return Err(CodeError::InvalidStabilizer("imaginary phase"));
        }
        for (i, a) in gens.iter().enumerate() {
            for b in gens.iter().skip(i + 1) {
                if !a.commutes(b).unwrap_or(false) {
                    return Err(CodeError::InvalidStabilizer("generators do not commute"));
                }
            }
        }
        if Self::binary_rank(&gens) != gens.len() {
            return Err(CodeError::InvalidStabilizer("generators dependent"));
        }
        Ok(StabilizerGenerators { gens })
    }

    fn binary_rank(gens: &[PauliOp]) -> usize {
        let n = gens[0].len();
        let rows = gens
            .iter()
            .map(|g| {
                let mut row = BitVec::zeros(2 * n);
                for j in 0..n {
                    row.set(j, g.x_bits().get(j));
                    row.set(n + j, g.z_bits().get(j));
                }
                row
            })
            .collect();
        BitMatrix::from_rows(rows).rank()
    }

    pub fn n_qubits(&self) -> usize {
        self.gens[0].len()
    }

    /// Binary stabilizer generator matrix `[X | Z]`, one row per generator,
    /// the two blocks separated by `|`.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for g in &self.gens {
            let (x, z) = g.to_binary();
            let _ = writeln!(s, "{x}|{z}");
        }
        s
    }
}

/// One step of a graph-form reduction transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFormStep {
    /// A local Clifford gate applied to the state.
    Gate(CliffordGate),
    /// Generator `dst` was replaced by `dst · src` (no physical action).
    RowMult { dst: usize, src: usize },
    /// Generators reordered (no physical action).
    RowSwap { a: usize, b: usize },
}

/// Reduces `n` independent commuting generators on `n` qubits to graph form
/// `[I | B]` with `B` symmetric and zero on the diagonal.
///
/// Returns the adjacency matrix and the transcript of local Clifford gates
/// (only `H`, `P`, `Z`) and row operations that realise the reduction.
pub fn graph_form(
    stab: &StabilizerGenerators,
) -> Result<(BitMatrix, Vec<GraphFormStep>), CodeError> {
    let n = stab.n_qubits();
    if stab.gens.len() != n {
        return Err(CodeError::InvalidStabilizer(
            "graph form needs n generators on n qubits",
        ));
    }
    let mut gens = stab.gens.clone();
    let mut steps = Vec::new();

    fn apply_gate(gens: &mut [PauliOp], steps: &mut Vec<GraphFormStep>, kind: GateKind, q: usize) {
        let gate = CliffordGate::one(kind, q);
        for g in gens.iter_mut() {
            *g = g.conjugate_by_gate(&gate).unwrap();
        }
        steps.push(GraphFormStep::Gate(gate));
    }

    for k in 0..n {
        // Find a pivot: a row at or below k with a non-identity entry in
        // column k.
        let Some(i) = (k..n).find(|&i| gens[i].get(k) != SingleQubit::I) else {
            // A gap column contradicts independence of n generators.
            return Err(CodeError::InvalidStabilizer("rank deficient at pivot"));
        };
        if i != k {
            gens.swap(i, k);
            steps.push(GraphFormStep::RowSwap { a: i, b: k });
        }
        if gens[k].get(k) == SingleQubit::Z {
            apply_gate(&mut gens, &mut steps, GateKind::H, k);
        }
        // Clear X components from the other rows in this column.
        for r in 0..n {
            if r != k && matches!(gens[r].get(k), SingleQubit::X | SingleQubit::Y) {
                gens[r] = gens[r].multiply(&gens[k]).unwrap();
                steps.push(GraphFormStep::RowMult { dst: r, src: k });
            }
        }
    }
    // Remove Y's from the diagonal.
    for k in 0..n {
        if gens[k].get(k) == SingleQubit::Y {
            apply_gate(&mut gens, &mut steps, GateKind::P, k);
        }
    }
    // Remove signs.
    for k in 0..n {
        if gens[k].phase_exponent() == 2 {
            apply_gate(&mut gens, &mut steps, GateKind::Z, k);
        }
    }
    // Read off and verify the adjacency matrix.
    let mut b = BitMatrix::zeros(n, n);
    for (r, g) in gens.iter().enumerate() {
        if g.phase_exponent() != 0 {
            return Err(CodeError::InvalidStabilizer("residual sign"));
        }
        for c in 0..n {
            match (g.get(c), r == c) {
                (SingleQubit::X, true) => {}
                (SingleQubit::Z, false) => b.set(r, c, true),
                (SingleQubit::I, false) => {}
                _ => return Err(CodeError::InvalidStabilizer("not in graph form")),
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            if b.get(r, c) != b.get(c, r) {
                return Err(CodeError::InvalidStabilizer("asymmetric adjacency"));
            }
        }
    }
    Ok((b, steps))
}

/// A CSS code with segregated X- and Z-type stabilizer generators.
#[derive(Clone, Debug)]
pub struct CssCode {
    pub n: usize,
    pub k: usize,
    /// Number of errors correctable with certainty, `t = ⌊(d−1)/2⌋`.
    pub t: usize,
    /// X-type generator block (detects Z errors).
    pub hx: BitMatrix,
    /// Z-type generator block (detects X errors).
    pub hz: BitMatrix,
    pub logical_x: PauliOp,
    pub logical_z: PauliOp,
}

impl CssCode {
    pub fn new(
        hx: BitMatrix,
        hz: BitMatrix,
        t: usize,
        logical_x: PauliOp,
        logical_z: PauliOp,
    ) -> Result<Self, CodeError> {
        let n = hx.n_cols();
        if hz.n_cols() != n || logical_x.len() != n || logical_z.len() != n {
            return Err(CodeError::DimensionMismatch);
        }
        if !hx.mul(&hz.transpose()).is_zero() {
            return Err(CodeError::InvalidStabilizer("Hx·Hz^T != 0"));
        }
        let k = n - hx.rank() - hz.rank();
        let code = CssCode {
            n,
            k,
            t,
            hx,
            hz,
            logical_x,
            logical_z,
        };
        let gens = code.stabilizer_generators();
        for g in &gens.gens {
            if !code.logical_x.commutes(g).unwrap() || !code.logical_z.commutes(g).unwrap() {
                return Err(CodeError::InvalidStabilizer(
                    "logical operators must commute with the stabilizer",
                ));
            }
        }
        if code.logical_x.commutes(&code.logical_z).unwrap() {
            return Err(CodeError::InvalidStabilizer(
                "logical X and Z must anticommute",
            ));
        }
        Ok(code)
    }

    /// The stabilizer generators, X-type rows first.
    pub fn stabilizer_generators(&self) -> StabilizerGenerators {
        let mut gens = Vec::new();
        for row in &self.hx.rows {
            gens.push(PauliOp::from_binary(row.clone(), BitVec::zeros(self.n), 0));
        }
        for row in &self.hz.rows {
            gens.push(PauliOp::from_binary(BitVec::zeros(self.n), row.clone(), 0));
        }
        StabilizerGenerators::new(gens).expect("CSS construction yields a valid stabilizer")
    }

    /// Binary stabilizer generator matrix in `[X | Z]` split form.
    pub fn stabilizer_text(&self) -> String {
        self.stabilizer_generators().to_text()
    }
}

/// The `[[7,1,3]]` code: `Hx = Hz` is the order-3 Hamming parity check and
/// the logical operators are the transversal `X` and `Z` strings.
pub fn steane_code() -> CssCode {
    let h = hamming(3).unwrap().parity_check;
    let all_x = PauliOp::from_binary(ones(7), BitVec::zeros(7), 0);
    let all_z = PauliOp::from_binary(BitVec::zeros(7), ones(7), 0);
    CssCode::new(h.clone(), h, 1, all_x, all_z).expect("the Steane code is valid")
}

fn ones(n: usize) -> BitVec {
    let mut v = BitVec::zeros(n);
    for i in 0..n {
        v.set(i, true);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::SmallRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hamming_order_two_is_repetition() {
        let c = hamming(2).unwrap();
        assert_eq!((c.n, c.k, c.d), (3, 1, 3));
        assert_eq!(c.generator.rows[0].count_ones(), 3);
    }

    #[test]
    fn hamming_rejects_small_order() {
        assert!(matches!(hamming(1), Err(CodeError::BadParameter(_))));
    }

    #[test]
    fn hamming_seven_matches_reference_parity_check() {
        let c = hamming(3).unwrap();
        assert_eq!((c.n, c.k, c.d), (7, 4, 3));
        let want = BitMatrix::from_str_rows(&["1010101", "0110011", "0001111"]);
        assert_eq!(c.parity_check, want);
    }

    #[test]
    fn extend_hamming_is_self_dual_8_4_4() {
        let c = extend(&hamming(3).unwrap());
        assert_eq!((c.n, c.k, c.d), (8, 4, 4));
        assert!(c.is_self_dual());
    }

    #[test]
    fn dual_is_involutive() {
        for code in [hamming(3).unwrap(), repetition3()] {
            let dd = dual(&dual(&code));
            assert!(span_eq(&dd.generator, &code.generator));
            assert!(span_eq(&dd.parity_check, &code.parity_check));
        }
    }

    #[test]
    fn concatenated_repetition_is_9_1_9() {
        let r3 = repetition3();
        let c = concatenate(&r3, &r3).unwrap();
        assert_eq!((c.n, c.k, c.d), (9, 1, 9));
    }

    #[test]
    fn extend_never_decreases_distance_and_puncture_drops_at_most_one() {
        for code in [repetition3(), hamming(3).unwrap()] {
            let e = extend(&code);
            assert!(e.d >= code.d);
            for j in 0..code.n {
                match puncture(&code, j) {
                    Ok(p) => assert!(p.d + 1 >= code.d),
                    Err(CodeError::DegenerateCode) => {}
                    Err(other) => panic!("unexpected error {other}"),
                }
            }
        }
    }

    #[test]
    fn syndrome_of_codewords_is_zero() {
        let c = hamming(3).unwrap();
        for row in &c.generator.rows {
            assert!(syndrome(&c.parity_check, row).unwrap().is_zero());
        }
    }

    #[test]
    fn syndrome_of_single_error_is_its_column() {
        let c = hamming(3).unwrap();
        for j in 0..7 {
            let mut e = BitVec::zeros(7);
            e.set(j, true);
            let s = syndrome(&c.parity_check, &e).unwrap();
            for r in 0..3 {
                assert_eq!(s.get(r), c.parity_check.get(r, j));
            }
        }
    }

    #[test]
    fn syndrome_shifts_by_codewords() {
        let c = hamming(3).unwrap();
        let mut rng = SmallRng::seed_from_u64(7);
        for _ in 0..200 {
            let mut word = BitVec::zeros(7);
            let mut e = BitVec::zeros(7);
            for j in 0..7 {
                e.set(j, rng.random_bool(0.3));
            }
            for row in &c.generator.rows {
                if rng.random_bool(0.5) {
                    word.xor_assign(row);
                }
            }
            word.xor_assign(&e);
            assert_eq!(
                syndrome(&c.parity_check, &word).unwrap(),
                syndrome(&c.parity_check, &e).unwrap()
            );
        }
    }

    #[test]
    fn decode_zero_syndrome_is_zero() {
        let c = hamming(3).unwrap();
        let table = DecodeTable::build(&c.parity_check).unwrap();
        assert!(table.decode(&BitVec::zeros(3)).is_zero());
    }

    #[test]
    fn decode_recovers_every_single_error() {
        let c = hamming(3).unwrap();
        let table = DecodeTable::build(&c.parity_check).unwrap();
        for j in 0..7 {
            let mut e = BitVec::zeros(7);
            e.set(j, true);
            let s = syndrome(&c.parity_check, &e).unwrap();
            assert_eq!(table.decode(&s), &e);
        }
    }

    #[test]
    fn decode_table_entries_are_minimum_weight() {
        // Exhaustive over all 2^7 error vectors.
        let c = hamming(3).unwrap();
        let table = DecodeTable::build(&c.parity_check).unwrap();
        for mask in 0..128u32 {
            let e = BitVec::from_bools(&(0..7).map(|j| mask >> j & 1 == 1).collect::<Vec<_>>());
            let s = syndrome(&c.parity_check, &e).unwrap();
            assert!(table.decode(&s).count_ones() <= e.count_ones());
        }
    }

    #[test]
    fn decode_table_guard() {
        let h = BitMatrix::identity(21);
        assert!(matches!(
            DecodeTable::build(&h),
            Err(CodeError::TableTooLarge { .. })
        ));
    }

    #[test]
    fn steane_binary_form_is_byte_exact() {
        let code = steane_code();
        let want = "\
1010101|0000000
0110011|0000000
0001111|0000000
0000000|1010101
0000000|0110011
0000000|0001111
";
        assert_eq!(code.stabilizer_text(), want);
    }

    #[test]
    fn steane_generators_commute_pairwise() {
        let gens = steane_code().stabilizer_generators();
        for (i, a) in gens.gens.iter().enumerate() {
            for b in gens.gens.iter().skip(i + 1) {
                assert!(a.commutes(b).unwrap());
            }
        }
    }

    #[test]
    fn steane_corrects_all_21_single_errors() {
        let code = steane_code();
        let table = DecodeTable::build(&code.hz).unwrap();
        assert_eq!(code.t, 1);
        for j in 0..7 {
            for op in SingleQubit::NONTRIVIAL {
                let e = PauliOp::single(7, j, op);
                // X component located through the Z-type checks, Z component
                // through the X-type checks; both use the same Hamming table.
                let sx = syndrome(&code.hz, e.x_bits()).unwrap();
                let sz = syndrome(&code.hx, e.z_bits()).unwrap();
                assert_eq!(table.decode(&sx), e.x_bits());
                assert_eq!(table.decode(&sz), e.z_bits());
            }
        }
    }

    #[test]
    fn graph_form_of_graph_input_is_noop() {
        // K3 plus an isolated vertex, already in graph form.
        let gens = StabilizerGenerators::new(vec![
            PauliOp::parse("XIII").unwrap(),
            PauliOp::parse("IXZZ").unwrap(),
            PauliOp::parse("IZXZ").unwrap(),
            PauliOp::parse("IZZX").unwrap(),
        ])
        .unwrap();
        let (b, steps) = graph_form(&gens).unwrap();
        assert!(steps.is_empty());
        let want = BitMatrix::from_str_rows(&["0000", "0011", "0101", "0110"]);
        assert_eq!(b, want);
    }

    #[test]
    fn graph_form_reduces_reference_four_qubit_example() {
        let gens = StabilizerGenerators::new(vec![
            PauliOp::parse("ZIII").unwrap(),
            PauliOp::parse("ZZXZ").unwrap(),
            PauliOp::parse("ZXZZ").unwrap(),
            PauliOp::parse("ZYIX").unwrap(),
        ])
        .unwrap();
        let (b, _) = graph_form(&gens).unwrap();
        // Node 1 isolated, nodes {2,3,4} fully connected.
        let want = BitMatrix::from_str_rows(&["0000", "0011", "0101", "0110"]);
        assert_eq!(b, want);
    }

    #[test]
    fn graph_form_rejects_bad_input() {
        let non_commuting = StabilizerGenerators::new(vec![
            PauliOp::parse("XI").unwrap(),
            PauliOp::parse("ZI").unwrap(),
        ]);
        assert!(non_commuting.is_err());
        let dependent = StabilizerGenerators::new(vec![
            PauliOp::parse("XX").unwrap(),
            PauliOp::parse("-XX").unwrap(),
        ]);
        assert!(dependent.is_err());
    }

    /// The returned local Cliffords must map the input's stabilized state to
    /// the graph state: conjugating the joint +1 projector of the input
    /// generators by the gate list yields the projector of the output.
    #[test]
    fn graph_form_ghz_stabilizes_same_state_under_returned_cliffords() {
        use crate::pauli::dense;
        use num_complex::Complex64;
        let gens = StabilizerGenerators::new(vec![
            PauliOp::parse("XXY").unwrap(),
            PauliOp::parse("XYX").unwrap(),
            PauliOp::parse("YXX").unwrap(),
        ])
        .unwrap();
        let (b, steps) = graph_form(&gens).unwrap();

        let mut u = dense::DenseMatrix::identity(8);
        for step in &steps {
            if let GraphFormStep::Gate(g) = step {
                u = dense::gate_matrix(g, 3).mul(&u);
            }
        }
        let projector = |gens: &[PauliOp]| {
            let dim = 8;
            let mut p = dense::DenseMatrix::identity(dim);
            for g in gens {
                let m = dense::pauli_matrix(g);
                let mut half = dense::DenseMatrix::zeros(dim);
                for r in 0..dim {
                    for c in 0..dim {
                        let eye = if r == c {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        half.set(r, c, (eye + m.get(r, c)) * 0.5);
                    }
                }
                p = p.mul(&half);
            }
            p
        };
        let mut out_gens = Vec::new();
        for r in 0..3 {
            let mut x = BitVec::zeros(3);
            x.set(r, true);
            out_gens.push(PauliOp::from_binary(x, b.rows[r].clone(), 0));
        }
        let lhs = u.mul(&projector(&gens.gens)).mul(&u.dagger());
        let rhs = projector(&out_gens);
        assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    #[test]
    fn classical_code_text_roundtrip() {
        let c = hamming(3).unwrap();
        let c2 = ClassicalCode::from_text(&c.to_text()).unwrap();
        assert_eq!(c, c2);
    }
}

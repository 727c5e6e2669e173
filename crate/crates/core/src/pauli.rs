//! Phased Pauli operators, Clifford conjugation, and error propagation.
//!
//! An operator is stored as `i^k · W(x, z)` where `W` is the tensor product
//! of single-qubit operators selected by the bit pair `(x_j, z_j)`:
//! `(0,0) = I`, `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`. The extra `i` in
//! `Y = iXZ` is absorbed by this convention, so `Y` itself carries phase 0
//! and all phases produced by multiplication and conjugation are exact.

pub mod dense;

use crate::bits::BitVec;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors from Pauli-algebra operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PauliError {
    /// Operands act on different numbers of qubits.
    DimensionMismatch { left: usize, right: usize },
    /// Conjugation was requested by a non-unitary circuit element.
    UnsupportedGate(GateKind),
    /// A propagation step index lay outside the circuit.
    StepOutOfRange { step: usize, steps: usize },
}

impl fmt::Display for PauliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PauliError::DimensionMismatch { left, right } => {
                write!(f, "operator lengths differ: {left} vs {right}")
            }
            PauliError::UnsupportedGate(kind) => {
                write!(f, "gate {kind:?} is not unitary; cannot conjugate")
            }
            PauliError::StepOutOfRange { step, steps } => {
                write!(f, "time step {step} out of range (circuit has {steps})")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PauliError {}

/// A phased n-qubit Pauli operator in binary symplectic form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    /// Global factor `i^phase_exponent`, with the exponent kept mod 4.
    phase_exponent: u8,
    x_bits: BitVec,
    z_bits: BitVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "operators act on at least one qubit");
        PauliOp {
            phase_exponent: 0,
            x_bits: BitVec::zeros(n),
            z_bits: BitVec::zeros(n),
        }
    }

    /// Builds an operator from per-qubit `(x, z)` bits and a phase exponent.
    pub fn from_binary(x_bits: BitVec, z_bits: BitVec, phase_exponent: u8) -> Self {
        assert_eq!(x_bits.len(), z_bits.len());
        assert!(!x_bits.is_empty());
        PauliOp {
            phase_exponent: phase_exponent % 4,
            x_bits,
            z_bits,
        }
    }

    /// Parses strings like `"IXYZ"` or `"-iXZ"`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut rest = s;
        let mut phase = 0u8;
        if let Some(r) = rest.strip_prefix('-') {
            phase = 2;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            phase = (phase + 1) % 4;
            rest = r;
        }
        if rest.is_empty() {
            return None;
        }
        let mut x = BitVec::zeros(rest.chars().count());
        let mut z = BitVec::zeros(rest.chars().count());
        for (j, c) in rest.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(j, true),
                'Z' => z.set(j, true),
                'Y' => {
                    x.set(j, true);
                    z.set(j, true);
                }
                _ => return None,
            }
        }
        Some(PauliOp::from_binary(x, z, phase))
    }

    /// Single-qubit operator `op` at position `j` on `n` qubits.
    pub fn single(n: usize, j: usize, op: SingleQubit) -> Self {
        let mut p = PauliOp::identity(n);
        p.set(j, op);
        p
    }

    pub fn len(&self) -> usize {
        self.x_bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn phase_exponent(&self) -> u8 {
        self.phase_exponent
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x_bits
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z_bits
    }

    /// The `(x, z)` bit-vector pair; the phase is reported separately.
    pub fn to_binary(&self) -> (BitVec, BitVec) {
        (self.x_bits.clone(), self.z_bits.clone())
    }

    pub fn get(&self, j: usize) -> SingleQubit {
        match (self.x_bits.get(j), self.z_bits.get(j)) {
            (false, false) => SingleQubit::I,
            (true, false) => SingleQubit::X,
            (false, true) => SingleQubit::Z,
            (true, true) => SingleQubit::Y,
        }
    }

    pub fn set(&mut self, j: usize, op: SingleQubit) {
        let (x, z) = match op {
            SingleQubit::I => (false, false),
            SingleQubit::X => (true, false),
            SingleQubit::Z => (false, true),
            SingleQubit::Y => (true, true),
        };
        self.x_bits.set(j, x);
        self.z_bits.set(j, z);
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        (0..self.len())
            .filter(|&j| self.x_bits.get(j) || self.z_bits.get(j))
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.x_bits.is_zero() && self.z_bits.is_zero() && self.phase_exponent == 0
    }

    /// True when the operators agree up to a global phase.
    pub fn equals_up_to_phase(&self, other: &PauliOp) -> bool {
        self.x_bits == other.x_bits && self.z_bits == other.z_bits
    }

    /// Group product `self · other` with exact `i^k` phase.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp, PauliError> {
        if self.len() != other.len() {
            return Err(PauliError::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mut phase = u32::from(self.phase_exponent) + u32::from(other.phase_exponent);
        let mut x = self.x_bits.clone();
        let mut z = self.z_bits.clone();
        // Per qubit: W(a)·W(b) = i^g W(a+b) with
        // g = a_x a_z + b_x b_z + 2 a_z b_x - (a_x^b_x)(a_z^b_z)  (mod 4)
        for j in 0..self.len() {
            let (ax, az) = (self.x_bits.get(j) as u32, self.z_bits.get(j) as u32);
            let (bx, bz) = (other.x_bits.get(j) as u32, other.z_bits.get(j) as u32);
            phase += ax * az + bx * bz + 2 * az * bx + 4 - ((ax ^ bx) * (az ^ bz));
        }
        x.xor_assign(&other.x_bits);
        z.xor_assign(&other.z_bits);
        Ok(PauliOp::from_binary(x, z, (phase % 4) as u8))
    }

    /// True iff the symplectic inner product
    /// `x(a)·z(b) + z(a)·x(b)` vanishes mod 2.
    pub fn commutes(&self, other: &PauliOp) -> Result<bool, PauliError> {
        if self.len() != other.len() {
            return Err(PauliError::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(!(self.x_bits.dot(&other.z_bits) ^ self.z_bits.dot(&other.x_bits)))
    }

    /// Conjugates by a unitary Clifford gate, returning `g · self · g†`.
    pub fn conjugate_by_gate(&self, gate: &CliffordGate) -> Result<PauliOp, PauliError> {
        let mut out = self.clone();
        out.conjugate_in_place(gate)?;
        Ok(out)
    }

    fn conjugate_in_place(&mut self, gate: &CliffordGate) -> Result<(), PauliError> {
        if !gate.kind.is_unitary() {
            return Err(PauliError::UnsupportedGate(gate.kind));
        }
        let x = &mut self.x_bits;
        let z = &mut self.z_bits;
        let mut bump = 0u8;
        match gate.kind {
            GateKind::H => {
                let q = gate.qubits[0];
                let (xb, zb) = (x.get(q), z.get(q));
                if xb && zb {
                    bump = 2;
                }
                x.set(q, zb);
                z.set(q, xb);
            }
            GateKind::P => {
                let q = gate.qubits[0];
                if x.get(q) {
                    if z.get(q) {
                        bump = 2;
                    }
                    z.flip(q);
                }
            }
            GateKind::PDagger => {
                let q = gate.qubits[0];
                if x.get(q) {
                    if !z.get(q) {
                        bump = 2;
                    }
                    z.flip(q);
                }
            }
            GateKind::X => {
                let q = gate.qubits[0];
                if z.get(q) {
                    bump = 2;
                }
            }
            GateKind::Y => {
                let q = gate.qubits[0];
                if x.get(q) ^ z.get(q) {
                    bump = 2;
                }
            }
            GateKind::Z => {
                let q = gate.qubits[0];
                if x.get(q) {
                    bump = 2;
                }
            }
            GateKind::Cx => {
                let (c, t) = (gate.qubits[0], gate.qubits[1]);
                let before = (x.get(c) && z.get(c)) as u8 + (x.get(t) && z.get(t)) as u8;
                let zc = z.get(c) ^ z.get(t);
                let xt = x.get(t) ^ x.get(c);
                z.set(c, zc);
                x.set(t, xt);
                let after = (x.get(c) && z.get(c)) as u8 + (x.get(t) && z.get(t)) as u8;
                bump = (4 + before - after) % 4;
            }
            GateKind::Cz => {
                let (c, t) = (gate.qubits[0], gate.qubits[1]);
                let before = (x.get(c) && z.get(c)) as u8 + (x.get(t) && z.get(t)) as u8;
                if x.get(c) && x.get(t) {
                    bump = 2;
                }
                let zc = z.get(c) ^ x.get(t);
                let zt = z.get(t) ^ x.get(c);
                z.set(c, zc);
                z.set(t, zt);
                let after = (x.get(c) && z.get(c)) as u8 + (x.get(t) && z.get(t)) as u8;
                bump = (bump + 4 + before - after) % 4;
            }
            GateKind::Swap => {
                let (a, b) = (gate.qubits[0], gate.qubits[1]);
                let (xa, za) = (x.get(a), z.get(a));
                let (xb, zb) = (x.get(b), z.get(b));
                x.set(a, xb);
                z.set(a, zb);
                x.set(b, xa);
                z.set(b, za);
            }
            _ => unreachable!(),
        }
        self.phase_exponent = (self.phase_exponent + bump) % 4;
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase_exponent {
            0 => {}
            1 => write!(f, "i")?,
            2 => write!(f, "-")?,
            _ => write!(f, "-i")?,
        }
        for j in 0..self.len() {
            write!(f, "{:?}", self.get(j))?;
        }
        Ok(())
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One of the four single-qubit Pauli operators.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SingleQubit {
    I,
    X,
    Y,
    Z,
}

impl SingleQubit {
    pub const NONTRIVIAL: [SingleQubit; 3] = [SingleQubit::X, SingleQubit::Y, SingleQubit::Z];
}

/// The circuit-element vocabulary: Clifford unitaries plus measurement and
/// preparation markers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    P,
    PDagger,
    X,
    Y,
    Z,
    Cx,
    Cz,
    Swap,
    MeasureZ,
    MeasureX,
    PrepZ,
    PrepPlus,
}

impl GateKind {
    pub fn is_unitary(self) -> bool {
        !matches!(
            self,
            GateKind::MeasureZ | GateKind::MeasureX | GateKind::PrepZ | GateKind::PrepPlus
        )
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cx | GateKind::Cz | GateKind::Swap)
    }
}

/// A gate applied to one or two qubit indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordGate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl CliffordGate {
    pub fn one(kind: GateKind, q: usize) -> Self {
        assert!(!kind.is_two_qubit());
        CliffordGate {
            kind,
            qubits: alloc::vec![q],
        }
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Self {
        assert!(kind.is_two_qubit());
        assert_ne!(a, b, "two-qubit gates need distinct indices");
        CliffordGate {
            kind,
            qubits: alloc::vec![a, b],
        }
    }
}

/// A time-stepped circuit: each step is a set of gates on disjoint qubits.
#[derive(Clone, Debug, Default)]
pub struct Circuit {
    pub n_qubits: usize,
    pub steps: Vec<Vec<CliffordGate>>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            steps: Vec::new(),
        }
    }

    /// Appends a time step, checking disjointness and index bounds.
    pub fn push_step(&mut self, gates: Vec<CliffordGate>) {
        let mut used = BitVec::zeros(self.n_qubits);
        for g in &gates {
            for &q in &g.qubits {
                assert!(q < self.n_qubits, "qubit index out of range");
                assert!(!used.get(q), "qubit used twice in one time step");
                used.set(q, true);
            }
        }
        self.steps.push(gates);
    }

    /// Appends a single gate as its own time step.
    pub fn push_gate(&mut self, gate: CliffordGate) {
        self.push_step(alloc::vec![gate]);
    }

    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &CliffordGate> {
        self.steps.iter().flatten()
    }
}

/// Pushes the given Pauli errors through the circuit to its end.
///
/// Each error is inserted immediately after its time step (step `s` means
/// after the gates of step `s` have acted; step indices are 0-based and
/// `usize::MAX` is not allowed). The result is the terminal operator `A`
/// such that the faulty circuit equals `A · U` for the ideal unitary `U`,
/// with the accumulated global phase tracked exactly.
pub fn propagate(errors: &[(usize, PauliOp)], circuit: &Circuit) -> Result<PauliOp, PauliError> {
    for g in circuit.gates() {
        if !g.kind.is_unitary() {
            return Err(PauliError::UnsupportedGate(g.kind));
        }
    }
    for (step, _) in errors {
        if *step >= circuit.n_steps() {
            return Err(PauliError::StepOutOfRange {
                step: *step,
                steps: circuit.n_steps(),
            });
        }
    }
    let mut acc = PauliOp::identity(circuit.n_qubits);
    for (s, step) in circuit.steps.iter().enumerate() {
        for gate in step {
            acc.conjugate_in_place(gate)?;
        }
        for (at, err) in errors {
            if *at == s {
                if err.len() != circuit.n_qubits {
                    return Err(PauliError::DimensionMismatch {
                        left: err.len(),
                        right: circuit.n_qubits,
                    });
                }
                acc = err.multiply(&acc)?;
            }
        }
    }
    Ok(acc)
}

/// Number of elements of the n-qubit Clifford group:
/// `2^{3n} · Π_{k=1..n} (4^n − 4^{k−1})`.
pub fn clifford_group_order(n: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    assert!(n >= 1);
    let four_n = BigUint::from(4u32).pow(n as u32);
    let mut order = BigUint::from(2u32).pow(3 * n as u32);
    for k in 1..=n {
        order *= &four_n - BigUint::from(4u32).pow(k as u32 - 1);
    }
    order
}

/// Formats an operator list as aligned Pauli strings, one per line.
pub fn format_ops(ops: &[PauliOp]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for op in ops {
        let _ = writeln!(s, "{op}");
    }
    s
}

//! Pauli-frame simulation of gadget circuits.
//!
//! The engine tracks error deviations from the error-free reference run as
//! X/Z bit masks, applies the gadget's classical rules to measurement-flip
//! records, and reports residual deviations, discards, and logical-failure
//! events. Noise enters through a [`NoiseSource`], so the same machinery
//! drives exhaustive fault sweeps, malignant-pair counting, and Monte-Carlo
//! sampling.

use super::{
    AncillaFlavour, CorrectionBasis, DecodeRule, GadgetCircuit,
};
use crate::bits::BitVec;
use crate::channels::{ErrorModel, OpKind};
use crate::codes::DecodeTable;
use crate::pauli::{CliffordGate, GateKind};
use alloc::vec::Vec;
use num_traits::ToPrimitive;
use rand::Rng;

/// Supplies error injections during a run. Gate indices count gates in
/// emission order; measurement indices follow the gadget's numbering.
pub trait NoiseSource {
    /// (x, z) masks over the gate's qubit list, applied after the gate.
    fn gate_error(&mut self, gate_index: usize, gate: &CliffordGate) -> (u8, u8);
    /// Whether this measurement's outcome flips.
    fn measurement_flip(&mut self, meas_index: usize) -> bool;
    /// Error on one injected ancilla qubit; `injection` indexes the
    /// gadget's injection list.
    fn injection_error(
        &mut self,
        injection: usize,
        flavour: AncillaFlavour,
        qubit: usize,
    ) -> (bool, bool);
    /// Error after a preparation.
    fn prep_error(&mut self, qubit: usize) -> (bool, bool);
}

/// The error-free source.
pub struct NoNoise;

impl NoiseSource for NoNoise {
    fn gate_error(&mut self, _: usize, _: &CliffordGate) -> (u8, u8) {
        (0, 0)
    }
    fn measurement_flip(&mut self, _: usize) -> bool {
        false
    }
    fn injection_error(&mut self, _: usize, _: AncillaFlavour, _: usize) -> (bool, bool) {
        (false, false)
    }
    fn prep_error(&mut self, _: usize) -> (bool, bool) {
        (false, false)
    }
}

/// One fault at a fixed circuit site.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Pauli (x, z) masks over the gate's qubits, injected after it.
    Gate { gate_index: usize, x: u8, z: u8 },
    /// Outcome flip at a measurement.
    Measurement { meas_index: usize },
    /// Pauli on a prepared qubit.
    Prep { qubit: usize, x: bool, z: bool },
    /// Pauli on an injected ancilla qubit, applied at the given
    /// injection-list entry (slots may be reused across injections).
    Injection { injection: usize, qubit: usize, x: bool, z: bool },
}

/// Injects an explicit list of faults (for sweeps and pair counting).
pub struct FixedFaults<'a> {
    pub faults: &'a [Fault],
}

impl NoiseSource for FixedFaults<'_> {
    fn gate_error(&mut self, gate_index: usize, _: &CliffordGate) -> (u8, u8) {
        let mut masks = (0u8, 0u8);
        for f in self.faults {
            if let Fault::Gate { gate_index: g, x, z } = f {
                if *g == gate_index {
                    masks.0 ^= x;
                    masks.1 ^= z;
                }
            }
        }
        masks
    }
    fn measurement_flip(&mut self, meas_index: usize) -> bool {
        self.faults
            .iter()
            .filter(|f| matches!(f, Fault::Measurement { meas_index: m } if *m == meas_index))
            .count()
            % 2
            == 1
    }
    fn injection_error(&mut self, injection: usize, _: AncillaFlavour, qubit: usize) -> (bool, bool) {
        let mut out = (false, false);
        for f in self.faults {
            if let Fault::Injection { injection: i, qubit: q, x, z } = f {
                if *i == injection && *q == qubit {
                    out.0 ^= x;
                    out.1 ^= z;
                }
            }
        }
        out
    }
    fn prep_error(&mut self, qubit: usize) -> (bool, bool) {
        let mut out = (false, false);
        for f in self.faults {
            if let Fault::Prep { qubit: q, x, z } = f {
                if *q == qubit {
                    out.0 ^= x;
                    out.1 ^= z;
                }
            }
        }
        out
    }
}

/// Stochastic noise drawn from an error model.
pub struct ModelNoise<'a, R: Rng> {
    pub model: &'a ErrorModel,
    pub rng: &'a mut R,
}

impl<R: Rng> ModelNoise<'_, R> {
    fn one_qubit(&mut self, map: &[crate::channels::Rational; 3]) -> (bool, bool) {
        let mut u = self.rng.random::<f64>();
        for (i, r) in map.iter().enumerate() {
            let p = r.to_f64().unwrap_or(0.0);
            if u < p {
                return [(true, false), (true, true), (false, true)][i];
            }
            u -= p;
        }
        (false, false)
    }
}

impl<R: Rng> NoiseSource for ModelNoise<'_, R> {
    fn gate_error(&mut self, _: usize, gate: &CliffordGate) -> (u8, u8) {
        if gate.kind.is_two_qubit() {
            let kind = if gate.kind == GateKind::Cz {
                OpKind::TwoQubitCz
            } else {
                OpKind::TwoQubit
            };
            let e = crate::channels::sample_error(self.model, kind, self.rng);
            let bit = |b: bool, at: u8| if b { at } else { 0 };
            let (mut x, mut z) = (0u8, 0u8);
            x |= bit(e.x_bits().get(0), 1) | bit(e.x_bits().get(1), 2);
            z |= bit(e.z_bits().get(0), 1) | bit(e.z_bits().get(1), 2);
            (x, z)
        } else if gate.kind.is_unitary() {
            let (x, z) = self.one_qubit(&self.model.p1);
            (u8::from(x), u8::from(z))
        } else {
            (0, 0)
        }
    }
    fn measurement_flip(&mut self, _: usize) -> bool {
        self.rng.random::<f64>() < self.model.p_meas.to_f64().unwrap_or(0.0)
    }
    fn injection_error(&mut self, _: usize, flavour: AncillaFlavour, _: usize) -> (bool, bool) {
        match flavour {
            AncillaFlavour::A => {
                let map = self.model.ancilla_a;
                self.one_qubit(&map)
            }
            AncillaFlavour::B => {
                let map = self.model.ancilla_b;
                self.one_qubit(&map)
            }
            AncillaFlavour::Perfect => (false, false),
        }
    }
    fn prep_error(&mut self, _: usize) -> (bool, bool) {
        let map = self.model.p_prep;
        self.one_qubit(&map)
    }
}

/// Result of one frame-simulated run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    /// Residual X deviations per qubit.
    pub x: u64,
    /// Residual Z deviations per qubit.
    pub z: u64,
    /// Whether any discard rule fired.
    pub discarded: bool,
    /// Measurement flips relative to the reference run.
    pub flips: BitVec,
    /// Blocks whose teleport decode produced a wrong logical correction,
    /// as (block-start qubit, logical X wrong, logical Z wrong).
    pub teleport_failures: Vec<(usize, bool, bool)>,
}

impl RunOutcome {
    pub fn x_bit(&self, q: usize) -> bool {
        self.x >> q & 1 == 1
    }
    pub fn z_bit(&self, q: usize) -> bool {
        self.z >> q & 1 == 1
    }
    /// Number of qubits in `qubits` carrying any deviation.
    pub fn weight_on(&self, qubits: &[usize]) -> usize {
        qubits
            .iter()
            .filter(|&&q| self.x_bit(q) || self.z_bit(q))
            .count()
    }
}

/// Runs the gadget under a noise source, firing classical rules as their
/// measurements complete.
pub fn run_frame(
    gadget: &GadgetCircuit,
    table: &DecodeTable,
    noise: &mut dyn NoiseSource,
) -> RunOutcome {
    assert!(gadget.circuit.n_qubits <= 64, "frame engine uses u64 masks");
    let mut x = 0u64;
    let mut z = 0u64;
    let mut flips = BitVec::zeros(gadget.n_measurements);
    let mut discarded = false;
    let mut teleport_failures = Vec::new();
    let mut meas_index = 0usize;
    let mut gate_index = 0usize;

    for (step, gates) in gadget.circuit.steps.iter().enumerate() {
        for (inj_idx, inj) in gadget.injections.iter().enumerate() {
            if inj.at_step == step {
                for &q in &inj.qubits {
                    x &= !(1 << q);
                    z &= !(1 << q);
                    let (ex, ez) = noise.injection_error(inj_idx, inj.flavour, q);
                    if ex {
                        x |= 1 << q;
                    }
                    if ez {
                        z |= 1 << q;
                    }
                }
            }
        }
        for gate in gates {
            match gate.kind {
                GateKind::H => {
                    let q = gate.qubits[0];
                    let (xb, zb) = (x >> q & 1, z >> q & 1);
                    x = x & !(1 << q) | zb << q;
                    z = z & !(1 << q) | xb << q;
                }
                GateKind::P | GateKind::PDagger => {
                    let q = gate.qubits[0];
                    z ^= (x >> q & 1) << q;
                }
                GateKind::X | GateKind::Y | GateKind::Z => {}
                GateKind::Cx => {
                    let (c, t) = (gate.qubits[0], gate.qubits[1]);
                    x ^= (x >> c & 1) << t;
                    z ^= (z >> t & 1) << c;
                }
                GateKind::Cz => {
                    let (c, t) = (gate.qubits[0], gate.qubits[1]);
                    z ^= (x >> c & 1) << t;
                    z ^= (x >> t & 1) << c;
                }
                GateKind::Swap => {
                    let (a, b) = (gate.qubits[0], gate.qubits[1]);
                    let (xa, xb) = (x >> a & 1, x >> b & 1);
                    let (za, zb) = (z >> a & 1, z >> b & 1);
                    x = x & !(1 << a) & !(1 << b) | xb << a | xa << b;
                    z = z & !(1 << a) & !(1 << b) | zb << a | za << b;
                }
                GateKind::PrepZ | GateKind::PrepPlus => {
                    let q = gate.qubits[0];
                    x &= !(1 << q);
                    z &= !(1 << q);
                    let (ex, ez) = noise.prep_error(q);
                    if ex {
                        x |= 1 << q;
                    }
                    if ez {
                        z |= 1 << q;
                    }
                }
                GateKind::MeasureZ | GateKind::MeasureX => {
                    let q = gate.qubits[0];
                    let deviation = if gate.kind == GateKind::MeasureZ {
                        x >> q & 1 == 1
                    } else {
                        z >> q & 1 == 1
                    };
                    let flip = deviation ^ noise.measurement_flip(meas_index);
                    flips.set(meas_index, flip);
                    x &= !(1 << q);
                    z &= !(1 << q);
                    fire_rules(
                        gadget,
                        table,
                        meas_index,
                        &flips,
                        &mut x,
                        &mut z,
                        &mut discarded,
                        &mut teleport_failures,
                    );
                    meas_index += 1;
                    gate_index += 1;
                    continue;
                }
            }
            if gate.kind.is_unitary() {
                let (ex, ez) = noise.gate_error(gate_index, gate);
                for (i, &q) in gate.qubits.iter().enumerate() {
                    if ex >> i & 1 == 1 {
                        x ^= 1 << q;
                    }
                    if ez >> i & 1 == 1 {
                        z ^= 1 << q;
                    }
                }
            }
            gate_index += 1;
        }
    }
    RunOutcome {
        x,
        z,
        discarded,
        flips,
        teleport_failures,
    }
}

#[allow(clippy::too_many_arguments)]
fn fire_rules(
    gadget: &GadgetCircuit,
    table: &DecodeTable,
    completed: usize,
    flips: &BitVec,
    x: &mut u64,
    z: &mut u64,
    discarded: &mut bool,
    teleport_failures: &mut Vec<(usize, bool, bool)>,
) {
    for rule in &gadget.discard_rules {
        if rule.measurements.iter().max() == Some(&completed) {
            let parity = rule
                .measurements
                .iter()
                .fold(false, |acc, &m| acc ^ flips.get(m));
            if parity {
                *discarded = true;
            }
        }
    }
    for rule in &gadget.decode_rules {
        if rule.anchor() != completed {
            continue;
        }
        match rule {
            DecodeRule::SyndromeCorrect {
                word,
                targets,
                basis,
            } => {
                let correction = decode_word(table, word, flips);
                apply_correction(&correction, targets, *basis, x, z);
            }
            DecodeRule::DoubleSyndromeCorrect {
                word1,
                word2,
                targets,
                basis,
            } => {
                let e1 = decode_word(table, word1, flips);
                let e2 = decode_word(table, word2, flips);
                let mut both = BitVec::zeros(e1.len());
                for i in 0..e1.len() {
                    both.set(i, e1.get(i) && e2.get(i));
                }
                apply_correction(&both, targets, *basis, x, z);
            }
            DecodeRule::FrameFix {
                measurements,
                x_mask,
                z_mask,
            } => {
                let parity = measurements.iter().fold(false, |acc, &m| acc ^ flips.get(m));
                if parity {
                    for q in x_mask.ones() {
                        *x ^= 1 << q;
                    }
                    for q in z_mask.ones() {
                        *z ^= 1 << q;
                    }
                }
            }
            DecodeRule::Teleport {
                x_word,
                z_word,
                output,
            } => {
                // A wrong decoded logical from either record is a logical
                // frame error on the surviving half.
                let wrong_z = decode_is_logical(table, x_word, flips);
                let wrong_x = decode_is_logical(table, z_word, flips);
                if wrong_x {
                    for &q in output {
                        *x ^= 1 << q;
                    }
                }
                if wrong_z {
                    for &q in output {
                        *z ^= 1 << q;
                    }
                }
                if wrong_x || wrong_z {
                    teleport_failures.push((output[0], wrong_x, wrong_z));
                }
            }
        }
    }
}

fn decode_word(table: &DecodeTable, word: &[usize], flips: &BitVec) -> BitVec {
    let mut w = BitVec::zeros(word.len());
    for (i, &m) in word.iter().enumerate() {
        w.set(i, flips.get(m));
    }
    let syn = crate::codes::syndrome(&crate::codes::steane_code().hz, &w).expect("7-bit word");
    table.decode(&syn).clone()
}

/// True when the word's deviation decodes to the wrong logical value.
fn decode_is_logical(table: &DecodeTable, word: &[usize], flips: &BitVec) -> bool {
    let mut w = BitVec::zeros(word.len());
    for (i, &m) in word.iter().enumerate() {
        w.set(i, flips.get(m));
    }
    let syn = crate::codes::syndrome(&crate::codes::steane_code().hz, &w).expect("7-bit word");
    let mut residue = w.clone();
    residue.xor_assign(table.decode(&syn));
    residue.count_ones() % 2 == 1
}

fn apply_correction(
    correction: &BitVec,
    targets: &[usize],
    basis: CorrectionBasis,
    x: &mut u64,
    z: &mut u64,
) {
    for (i, &q) in targets.iter().enumerate() {
        if correction.get(i) {
            match basis {
                CorrectionBasis::X => *x ^= 1 << q,
                CorrectionBasis::Z => *z ^= 1 << q,
            }
        }
    }
}

/// Residual deviation on a `[[7,1,3]]` block, reduced modulo the stabilizer:
/// the minimum-weight X and Z representatives and whether either leaves a
/// logical operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockResidual {
    pub x_weight: usize,
    pub z_weight: usize,
    pub logical_x: bool,
    pub logical_z: bool,
}

impl BlockResidual {
    pub fn is_clean(&self) -> bool {
        self.x_weight == 0 && self.z_weight == 0 && !self.logical_x && !self.logical_z
    }

    pub fn any_logical(&self) -> bool {
        self.logical_x || self.logical_z
    }
}

/// Ideal-decoder assessment of the residual deviation on one code block.
pub fn block_residual(outcome: &RunOutcome, table: &DecodeTable, block: &[usize]) -> BlockResidual {
    let assess = |bits: &dyn Fn(usize) -> bool| {
        let mut w = BitVec::zeros(block.len());
        for (i, &q) in block.iter().enumerate() {
            w.set(i, bits(q));
        }
        let syn = crate::codes::syndrome(&crate::codes::steane_code().hz, &w).expect("block of 7");
        let e = table.decode(&syn).clone();
        let mut residue = w.clone();
        residue.xor_assign(&e);
        (e.count_ones(), residue.count_ones() % 2 == 1)
    };
    let (x_weight, logical_x) = assess(&|q| outcome.x_bit(q));
    let (z_weight, logical_z) = assess(&|q| outcome.z_bit(q));
    BlockResidual {
        x_weight,
        z_weight,
        logical_x,
        logical_z,
    }
}

/// All two-qubit-gate sites (global gate indices) in a gadget.
pub fn two_qubit_gate_sites(gadget: &GadgetCircuit) -> Vec<usize> {
    gadget
        .circuit
        .gates()
        .enumerate()
        .filter(|(_, g)| g.kind.is_two_qubit())
        .map(|(i, _)| i)
        .collect()
}

/// All fault sites of a gadget: gate errors on every unitary gate,
/// preparation errors, measurement flips, and injected-ancilla qubit
/// errors.
pub fn all_fault_sites(gadget: &GadgetCircuit) -> Vec<Fault> {
    let mut out = Vec::new();
    for (i, inj) in gadget.injections.iter().enumerate() {
        for &q in &inj.qubits {
            for (xb, zb) in [(true, false), (true, true), (false, true)] {
                out.push(Fault::Injection {
                    injection: i,
                    qubit: q,
                    x: xb,
                    z: zb,
                });
            }
        }
    }
    let mut meas = 0usize;
    for (i, g) in gadget.circuit.gates().enumerate() {
        match g.kind {
            GateKind::MeasureZ | GateKind::MeasureX => {
                out.push(Fault::Measurement { meas_index: meas });
                meas += 1;
            }
            GateKind::PrepZ | GateKind::PrepPlus => {
                for (xb, zb) in [(true, false), (true, true), (false, true)] {
                    out.push(Fault::Prep {
                        qubit: g.qubits[0],
                        x: xb,
                        z: zb,
                    });
                }
            }
            kind if kind.is_two_qubit() => {
                for code in 1..16u8 {
                    let (x, z) = split_two_qubit_code(code);
                    out.push(Fault::Gate {
                        gate_index: i,
                        x,
                        z,
                    });
                }
            }
            _ => {
                for (xb, zb) in [(1u8, 0u8), (1, 1), (0, 1)] {
                    out.push(Fault::Gate {
                        gate_index: i,
                        x: xb,
                        z: zb,
                    });
                }
            }
        }
    }
    out
}

/// Maps a 1..15 code to (x, z) masks over two qubits; qubit 0 in bit 0.
pub fn split_two_qubit_code(code: u8) -> (u8, u8) {
    // Per qubit: 0 = I, 1 = X, 2 = Y, 3 = Z.
    let part = |c: u8| -> (u8, u8) {
        match c {
            1 => (1, 0),
            2 => (1, 1),
            3 => (0, 1),
            _ => (0, 0),
        }
    };
    let (x0, z0) = part(code & 3);
    let (x1, z1) = part(code >> 2);
    (x0 | x1 << 1, z0 | z1 << 1)
}

/// The three symmetric faults XX, YY, ZZ as (x, z) gate masks.
pub const SYMMETRIC_FAULTS: [(u8, u8); 3] = [(0b11, 0b00), (0b11, 0b11), (0b00, 0b11)];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{cat_prep, steane_table};

    #[test]
    fn error_free_run_is_clean_and_kept() {
        let g = cat_prep(4).unwrap();
        let table = steane_table();
        let out = run_frame(&g, &table, &mut NoNoise);
        assert!(!out.discarded);
        assert_eq!(out.x, 0);
        assert_eq!(out.z, 0);
    }

    #[test]
    fn injected_x_on_cat_chain_is_caught_or_confined() {
        // An X on the first C-X of a 4-qubit cat chain spreads down the
        // chain; the Z1Zw check must catch the spreading cases.
        let g = cat_prep(4).unwrap();
        let table = steane_table();
        let sites = two_qubit_gate_sites(&g);
        // Fault on the chain gate 0->1, X on the target.
        let fault = Fault::Gate {
            gate_index: sites[0],
            x: 0b10,
            z: 0,
        };
        let out = run_frame(&g, &table, &mut FixedFaults { faults: &[fault] });
        // The X spreads to qubits 1..3, flipping the parity check.
        assert!(out.discarded);
    }

    #[test]
    fn measurement_flip_discards_good_state() {
        let g = cat_prep(3).unwrap();
        let table = steane_table();
        let out = run_frame(
            &g,
            &table,
            &mut FixedFaults {
                faults: &[Fault::Measurement { meas_index: 0 }],
            },
        );
        assert!(out.discarded);
        assert_eq!(out.x | out.z, 0, "state itself untouched");
    }
}

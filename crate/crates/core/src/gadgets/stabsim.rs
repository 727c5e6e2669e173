//! A small stabilizer-tableau simulator used as the error-free oracle for
//! gadget circuits: it tracks the full generator set, supports measurement
//! with deterministic-outcome detection, and can answer whether an
//! operator stabilizes the current state.

use super::{BlockInjection, EncodedState, GadgetCircuit};
use crate::bits::{BitMatrix, BitVec};
use crate::pauli::{CliffordGate, GateKind, PauliOp, SingleQubit};
use alloc::vec::Vec;

/// Outcome of a projective measurement.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MeasOutcome {
    /// The operator was a (possibly negated) stabilizer element; `true`
    /// means +1.
    Deterministic(bool),
    /// The outcome was random; the simulator post-selects +1.
    Random,
}

/// Stabilizer state on `n` qubits, kept as `n` independent commuting
/// generators.
#[derive(Clone, Debug)]
pub struct StabSim {
    gens: Vec<PauliOp>,
}

impl StabSim {
    /// The all-zeros computational state.
    pub fn all_zeros(n: usize) -> Self {
        StabSim {
            gens: (0..n).map(|q| PauliOp::single(n, q, SingleQubit::Z)).collect(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.gens[0].len()
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.gens
    }

    pub fn apply(&mut self, gate: &CliffordGate) {
        for g in &mut self.gens {
            *g = g.conjugate_by_gate(gate).expect("unitary gate");
        }
    }

    /// Expectation of a Pauli observable without collapse: `Some(sign)`
    /// when deterministic, `None` when the outcome would be random.
    pub fn expectation(&self, op: &PauliOp) -> Option<bool> {
        if self.gens.iter().any(|g| !g.commutes(op).unwrap()) {
            return None;
        }
        Some(self.membership_sign(op))
    }

    /// True when `op` (with its sign) stabilizes the state.
    pub fn stabilizes(&self, op: &PauliOp) -> bool {
        self.expectation(op) == Some(true)
    }

    /// Expresses `op` over the generators (it must commute with all of
    /// them, hence lie in ±S for a full-rank tableau) and reports whether
    /// the achieved sign matches.
    fn membership_sign(&self, op: &PauliOp) -> bool {
        let n = self.n_qubits();
        // Solve for the generator subset whose product matches op's bits:
        // augmented elimination with generators as columns and the target
        // as the last column.
        let mut aug = BitMatrix::zeros(2 * n, self.gens.len() + 1);
        for (r, g) in self.gens.iter().enumerate() {
            for j in 0..n {
                aug.set(j, r, g.x_bits().get(j));
                aug.set(n + j, r, g.z_bits().get(j));
            }
        }
        for j in 0..n {
            aug.set(j, self.gens.len(), op.x_bits().get(j));
            aug.set(n + j, self.gens.len(), op.z_bits().get(j));
        }
        let (_, pivots) = aug.row_reduce();
        // Read off the solution: pivot rows with target bit set select
        // generators.
        let mut selection = BitVec::zeros(self.gens.len());
        for (r, &c) in pivots.iter().enumerate() {
            if c < self.gens.len() && aug.get(r, self.gens.len()) {
                selection.set(c, true);
            }
        }
        let mut product = PauliOp::identity(n);
        for i in selection.ones() {
            product = product.multiply(&self.gens[i]).unwrap();
        }
        debug_assert!(product.equals_up_to_phase(op), "operator not in group");
        product.phase_exponent() == op.phase_exponent()
    }

    /// Projective measurement. Random outcomes are post-selected to +1.
    pub fn measure(&mut self, op: &PauliOp) -> MeasOutcome {
        let anticommuting: Vec<usize> = (0..self.gens.len())
            .filter(|&i| !self.gens[i].commutes(op).unwrap())
            .collect();
        match anticommuting.split_first() {
            None => MeasOutcome::Deterministic(self.membership_sign(op)),
            Some((&first, rest)) => {
                let pivot = self.gens[first].clone();
                for &i in rest {
                    self.gens[i] = self.gens[i].multiply(&pivot).unwrap();
                }
                self.gens[first] = op.clone();
                MeasOutcome::Random
            }
        }
    }

    /// Resets a qubit to |0⟩ (measure Z and flip on −1).
    pub fn reset_z(&mut self, q: usize) {
        let zq = PauliOp::single(self.n_qubits(), q, SingleQubit::Z);
        if self.measure(&zq) == MeasOutcome::Deterministic(false) {
            // Flip: conjugating by X negates the Z_q generator.
            let x = CliffordGate::one(GateKind::X, q);
            // Applying X as a gate flips generator signs appropriately.
            self.apply(&x);
        }
    }
}

/// Ideal encoding of an injected block inside the stabilizer oracle.
fn inject(sim: &mut StabSim, injections: &[BlockInjection], idx: usize) {
    let inj = &injections[idx];
    match inj.state {
        EncodedState::SteaneZero | EncodedState::SteanePlus => {
            encode_plus(sim, &inj.qubits);
            if inj.state == EncodedState::SteaneZero {
                for &q in &inj.qubits {
                    sim.apply(&CliffordGate::one(GateKind::H, q));
                }
            }
        }
        EncodedState::BellWith { partner_start } => {
            // Only the lower-indexed half drives the joint preparation.
            if inj.qubits[0] > partner_start {
                return;
            }
            let partner = injections
                .iter()
                .find(|other| other.qubits[0] == partner_start)
                .expect("bell partner injection present");
            encode_plus(sim, &inj.qubits);
            encode_plus(sim, &partner.qubits);
            for &q in &partner.qubits {
                sim.apply(&CliffordGate::one(GateKind::H, q));
            }
            for j in 0..inj.qubits.len() {
                sim.apply(&CliffordGate::two(
                    GateKind::Cx,
                    inj.qubits[j],
                    partner.qubits[j],
                ));
            }
        }
    }
}

/// Encodes logical |+⟩ of the `[[7,1,3]]` code on the given qubits.
fn encode_plus(sim: &mut StabSim, qubits: &[usize]) {
    assert_eq!(qubits.len(), 7);
    for &q in qubits {
        sim.reset_z(q);
    }
    let (fanout, _) = super::plus_network();
    for row in 0..4 {
        sim.apply(&CliffordGate::one(GateKind::H, qubits[row]));
        for &t in fanout[row] {
            sim.apply(&CliffordGate::two(GateKind::Cx, qubits[row], qubits[t]));
        }
    }
}

/// Result of running a gadget without errors through the oracle.
pub struct ErrorFreeRun {
    pub sim: StabSim,
    /// Per-measurement outcome, in measurement order.
    pub outcomes: Vec<MeasOutcome>,
}

/// Runs the gadget with no errors, processing injections as ideal encoded
/// states and measurements as projective single-qubit readouts.
pub fn run_error_free(gadget: &GadgetCircuit) -> ErrorFreeRun {
    let mut sim = StabSim::all_zeros(gadget.circuit.n_qubits);
    let mut outcomes = Vec::new();
    for (step, gates) in gadget.circuit.steps.iter().enumerate() {
        for (i, inj) in gadget.injections.iter().enumerate() {
            if inj.at_step == step {
                inject(&mut sim, &gadget.injections, i);
            }
        }
        for gate in gates {
            match gate.kind {
                GateKind::PrepZ => sim.reset_z(gate.qubits[0]),
                GateKind::PrepPlus => {
                    sim.reset_z(gate.qubits[0]);
                    sim.apply(&CliffordGate::one(GateKind::H, gate.qubits[0]));
                }
                GateKind::MeasureZ => {
                    let op = PauliOp::single(sim.n_qubits(), gate.qubits[0], SingleQubit::Z);
                    outcomes.push(sim.measure(&op));
                }
                GateKind::MeasureX => {
                    let op = PauliOp::single(sim.n_qubits(), gate.qubits[0], SingleQubit::X);
                    outcomes.push(sim.measure(&op));
                }
                _ => sim.apply(gate),
            }
        }
    }
    ErrorFreeRun { sim, outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_state_measures_z_plus_one() {
        let mut sim = StabSim::all_zeros(3);
        let z1 = PauliOp::single(3, 1, SingleQubit::Z);
        assert_eq!(sim.measure(&z1), MeasOutcome::Deterministic(true));
        let x1 = PauliOp::single(3, 1, SingleQubit::X);
        assert_eq!(sim.measure(&x1), MeasOutcome::Random);
        // After collapsing onto X, Z becomes random.
        assert_eq!(sim.measure(&z1), MeasOutcome::Random);
    }

    #[test]
    fn bell_state_stabilizers() {
        let mut sim = StabSim::all_zeros(2);
        sim.apply(&CliffordGate::one(GateKind::H, 0));
        sim.apply(&CliffordGate::two(GateKind::Cx, 0, 1));
        assert!(sim.stabilizes(&PauliOp::parse("XX").unwrap()));
        assert!(sim.stabilizes(&PauliOp::parse("ZZ").unwrap()));
        assert!(!sim.stabilizes(&PauliOp::parse("-XX").unwrap()));
        assert_eq!(sim.expectation(&PauliOp::parse("XI").unwrap()), None);
    }

    #[test]
    fn sign_tracking_through_gates() {
        let mut sim = StabSim::all_zeros(1);
        sim.apply(&CliffordGate::one(GateKind::X, 0));
        // X|0> = |1>, stabilized by -Z.
        assert!(sim.stabilizes(&PauliOp::parse("-Z").unwrap()));
        assert!(!sim.stabilizes(&PauliOp::parse("Z").unwrap()));
        sim.reset_z(0);
        assert!(sim.stabilizes(&PauliOp::parse("Z").unwrap()));
    }
}

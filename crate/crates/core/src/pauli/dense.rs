//! Dense complex-matrix oracle for small systems.
//!
//! Builds explicit `2^n x 2^n` unitaries so that the symplectic fast path can
//! be checked against literal matrix arithmetic. Hard-limited to `n <= 4`
//! qubits (at most 16x16 matrices) to keep tests fast.

use super::{CliffordGate, Circuit, GateKind, PauliOp, SingleQubit};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Zero;

/// Largest qubit count the oracle accepts.
pub const MAX_QUBITS: usize = 4;

/// A dense complex matrix in row-major order.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = DenseMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> DenseMatrix {
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (a, b) = (self.dim, other.dim);
        let mut out = DenseMatrix::zeros(a * b);
        for r1 in 0..a {
            for c1 in 0..a {
                let v = self.get(r1, c1);
                if v.is_zero() {
                    continue;
                }
                for r2 in 0..b {
                    for c2 in 0..b {
                        out.set(r1 * b + r2, c1 * b + c2, v * other.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &DenseMatrix, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm_sqr() <= tol * tol)
    }

    /// True when `self = e^{i phi} other` for some global phase `phi`.
    pub fn eq_up_to_global_phase(&self, other: &DenseMatrix, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        // Find the largest entry of `other` to anchor the phase.
        let mut best = 0usize;
        let mut best_norm = 0.0;
        for (i, v) in other.data.iter().enumerate() {
            if v.norm_sqr() > best_norm {
                best_norm = v.norm_sqr();
                best = i;
            }
        }
        if best_norm < tol * tol {
            return self.data.iter().all(|v| v.norm_sqr() <= tol * tol);
        }
        let phase = self.data[best] / other.data[best];
        if (phase.norm() - 1.0).abs() > tol {
            return false;
        }
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (a - phase * b).norm_sqr() <= tol * tol)
    }
}

fn single_matrix(op: SingleQubit) -> DenseMatrix {
    let (a, b, c, d) = match op {
        SingleQubit::I => ((1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)),
        SingleQubit::X => ((0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)),
        SingleQubit::Y => ((0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0)),
        SingleQubit::Z => ((1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)),
    };
    let mut m = DenseMatrix::zeros(2);
    m.set(0, 0, Complex64::new(a.0, a.1));
    m.set(0, 1, Complex64::new(b.0, b.1));
    m.set(1, 0, Complex64::new(c.0, c.1));
    m.set(1, 1, Complex64::new(d.0, d.1));
    m
}

/// The full matrix of a phased Pauli operator. Panics above [`MAX_QUBITS`].
pub fn pauli_matrix(op: &PauliOp) -> DenseMatrix {
    assert!(op.len() <= MAX_QUBITS, "dense oracle limited to 4 qubits");
    let mut m = single_matrix(op.get(0));
    for j in 1..op.len() {
        m = m.kron(&single_matrix(op.get(j)));
    }
    let phase = match op.phase_exponent() {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    for v in &mut m.data {
        *v *= phase;
    }
    m
}

fn embed_one(u: &DenseMatrix, q: usize, n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::identity(1);
    for j in 0..n {
        let factor = if j == q {
            u.clone()
        } else {
            DenseMatrix::identity(2)
        };
        m = m.kron(&factor);
    }
    m
}

fn embed_two(u4: &DenseMatrix, a: usize, b: usize, n: usize) -> DenseMatrix {
    // Build by explicit index arithmetic: qubit 0 is the most significant bit.
    let dim = 1 << n;
    let mut m = DenseMatrix::zeros(dim);
    for row in 0..dim {
        for col in 0..dim {
            let (ra, rb) = (row >> (n - 1 - a) & 1, row >> (n - 1 - b) & 1);
            let (ca, cb) = (col >> (n - 1 - a) & 1, col >> (n - 1 - b) & 1);
            let rest_row = row & !(1 << (n - 1 - a)) & !(1 << (n - 1 - b));
            let rest_col = col & !(1 << (n - 1 - a)) & !(1 << (n - 1 - b));
            if rest_row == rest_col {
                m.set(row, col, u4.get(ra << 1 | rb, ca << 1 | cb));
            }
        }
    }
    m
}

/// The full unitary for one gate embedded in an n-qubit system.
pub fn gate_matrix(gate: &CliffordGate, n: usize) -> DenseMatrix {
    assert!(n <= MAX_QUBITS, "dense oracle limited to 4 qubits");
    assert!(gate.kind.is_unitary());
    let s = core::f64::consts::FRAC_1_SQRT_2;
    match gate.kind {
        GateKind::H => {
            let mut h = DenseMatrix::zeros(2);
            h.set(0, 0, Complex64::new(s, 0.0));
            h.set(0, 1, Complex64::new(s, 0.0));
            h.set(1, 0, Complex64::new(s, 0.0));
            h.set(1, 1, Complex64::new(-s, 0.0));
            embed_one(&h, gate.qubits[0], n)
        }
        GateKind::P | GateKind::PDagger => {
            let mut p = DenseMatrix::identity(2);
            let i = if gate.kind == GateKind::P {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(0.0, -1.0)
            };
            p.set(1, 1, i);
            embed_one(&p, gate.qubits[0], n)
        }
        GateKind::X => embed_one(&single_matrix(SingleQubit::X), gate.qubits[0], n),
        GateKind::Y => embed_one(&single_matrix(SingleQubit::Y), gate.qubits[0], n),
        GateKind::Z => embed_one(&single_matrix(SingleQubit::Z), gate.qubits[0], n),
        GateKind::Cx => {
            let mut u = DenseMatrix::identity(4);
            u.set(2, 2, Complex64::zero());
            u.set(3, 3, Complex64::zero());
            u.set(2, 3, Complex64::new(1.0, 0.0));
            u.set(3, 2, Complex64::new(1.0, 0.0));
            embed_two(&u, gate.qubits[0], gate.qubits[1], n)
        }
        GateKind::Cz => {
            let mut u = DenseMatrix::identity(4);
            u.set(3, 3, Complex64::new(-1.0, 0.0));
            embed_two(&u, gate.qubits[0], gate.qubits[1], n)
        }
        GateKind::Swap => {
            let mut u = DenseMatrix::zeros(4);
            u.set(0, 0, Complex64::new(1.0, 0.0));
            u.set(1, 2, Complex64::new(1.0, 0.0));
            u.set(2, 1, Complex64::new(1.0, 0.0));
            u.set(3, 3, Complex64::new(1.0, 0.0));
            embed_two(&u, gate.qubits[0], gate.qubits[1], n)
        }
        _ => unreachable!(),
    }
}

/// The unitary of a whole circuit (later steps multiply on the left).
pub fn circuit_unitary(circuit: &Circuit) -> DenseMatrix {
    let mut u = DenseMatrix::identity(1 << circuit.n_qubits);
    for step in &circuit.steps {
        for gate in step {
            u = gate_matrix(gate, circuit.n_qubits).mul(&u);
        }
    }
    u
}

/// The unitary of a circuit with Pauli errors inserted after their steps.
pub fn faulty_circuit_unitary(errors: &[(usize, PauliOp)], circuit: &Circuit) -> DenseMatrix {
    let mut u = DenseMatrix::identity(1 << circuit.n_qubits);
    for (s, step) in circuit.steps.iter().enumerate() {
        for gate in step {
            u = gate_matrix(gate, circuit.n_qubits).mul(&u);
        }
        for (at, err) in errors {
            if *at == s {
                u = pauli_matrix(err).mul(&u);
            }
        }
    }
    u
}

//! Exhaustive fault sweeps and malignant-pair counting.

use super::engine::{
    block_residual, run_frame, two_qubit_gate_sites, Fault, FixedFaults, NoNoise, SYMMETRIC_FAULTS,
};
use super::{ExRec, GadgetCircuit, GadgetError};
use crate::codes::DecodeTable;
use alloc::vec::Vec;

/// Error kinds assigned per two-qubit fault location.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FaultSet {
    /// XX, YY, ZZ only.
    Symmetric,
    /// All 15 nontrivial two-qubit Paulis.
    Depolarizing,
}

impl FaultSet {
    pub fn kinds(self) -> Vec<(u8, u8)> {
        match self {
            FaultSet::Symmetric => SYMMETRIC_FAULTS.to_vec(),
            FaultSet::Depolarizing => (1..16u8)
                .map(super::engine::split_two_qubit_code)
                .collect(),
        }
    }
}

/// Result of an exhaustive pair count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalignantCount {
    /// Distinct (location pair, kind pair) combinations examined.
    pub total_pairs: u64,
    /// Combinations that produce an uncorrectable encoded error.
    pub malignant: u64,
}

/// Counts malignant fault pairs over the exRec's data-section two-qubit
/// gates by exhaustive propagation: a pair is malignant when the residual
/// deviation on any leg decodes to a logical operator.
///
/// Refuses to enumerate more than 10^6 pairs unless `override_guard`.
pub fn count_malignant_pairs(
    exrec: &ExRec,
    fault_set: FaultSet,
    table: &DecodeTable,
    override_guard: bool,
) -> Result<MalignantCount, GadgetError> {
    let sites = &exrec.data_section_gates;
    let kinds = fault_set.kinds();
    let l = sites.len() as u64;
    let k = kinds.len() as u64;
    let total_pairs = l * (l - 1) / 2 * k * k;
    if total_pairs > 1_000_000 && !override_guard {
        return Err(GadgetError::StateSpaceGuard { pairs: total_pairs });
    }
    let legs: Vec<Vec<usize>> = (0..exrec.legs)
        .map(|leg| (leg * 7..leg * 7 + 7).collect())
        .collect();
    let mut malignant = 0u64;
    for (i, &site_a) in sites.iter().enumerate() {
        for &site_b in sites.iter().skip(i + 1) {
            for &(xa, za) in &kinds {
                for &(xb, zb) in &kinds {
                    let faults = [
                        Fault::Gate {
                            gate_index: site_a,
                            x: xa,
                            z: za,
                        },
                        Fault::Gate {
                            gate_index: site_b,
                            x: xb,
                            z: zb,
                        },
                    ];
                    let out = run_frame(&exrec.circuit, table, &mut FixedFaults { faults: &faults });
                    let failed = legs
                        .iter()
                        .any(|block| block_residual(&out, table, block).any_logical());
                    if failed {
                        malignant += 1;
                    }
                }
            }
        }
    }
    Ok(MalignantCount {
        total_pairs,
        malignant,
    })
}

/// Counts fault pairs in a preparation gadget that damage the output
/// without being detected: the run is kept and the deviation on `kept`
/// does not lie in the expected stabilizer group.
///
/// `sites` restricts the fault locations (e.g. to exclude cat-construction
/// gates when their pessimistic count is added separately).
pub fn count_undetected_damaging_pairs(
    gadget: &GadgetCircuit,
    sites: &[usize],
    fault_set: FaultSet,
    table: &DecodeTable,
    harmless: &dyn Fn(&super::engine::RunOutcome) -> bool,
) -> MalignantCount {
    let kinds = fault_set.kinds();
    let l = sites.len() as u64;
    let k = kinds.len() as u64;
    let total_pairs = l * (l - 1) / 2 * k * k;
    let mut malignant = 0u64;
    for (i, &site_a) in sites.iter().enumerate() {
        for &site_b in sites.iter().skip(i + 1) {
            for &(xa, za) in &kinds {
                for &(xb, zb) in &kinds {
                    let faults = [
                        Fault::Gate {
                            gate_index: site_a,
                            x: xa,
                            z: za,
                        },
                        Fault::Gate {
                            gate_index: site_b,
                            x: xb,
                            z: zb,
                        },
                    ];
                    let out = run_frame(gadget, table, &mut FixedFaults { faults: &faults });
                    if !out.discarded && !harmless(&out) {
                        malignant += 1;
                    }
                }
            }
        }
    }
    MalignantCount {
        total_pairs,
        malignant,
    }
}

/// Summary of an exhaustive single-fault sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub faults_tried: usize,
    /// Largest per-block residual weight (qubits in error) over kept runs.
    pub max_block_weight: usize,
    /// Faults whose kept run left a logical error on some block.
    pub logical_failures: usize,
    /// Kept runs whose deviation failed the caller's harmless check.
    pub harmful: usize,
}

/// Runs every single fault through the gadget. `blocks` are the data
/// blocks assessed with the ideal decoder; `harmless` (if given) classifies
/// the raw deviation of kept runs.
pub fn single_fault_sweep(
    gadget: &GadgetCircuit,
    table: &DecodeTable,
    blocks: &[Vec<usize>],
    harmless: Option<&dyn Fn(&super::engine::RunOutcome) -> bool>,
) -> SweepReport {
    let faults = super::engine::all_fault_sites(gadget);
    let mut report = SweepReport::default();
    // Error-free reference must be clean and kept.
    let reference = run_frame(gadget, table, &mut NoNoise);
    assert!(!reference.discarded, "error-free run must not be discarded");
    for fault in &faults {
        let out = run_frame(gadget, table, &mut FixedFaults { faults: &[*fault] });
        report.faults_tried += 1;
        if out.discarded {
            continue;
        }
        for block in blocks {
            let residual = block_residual(&out, table, block);
            if residual.any_logical() {
                report.logical_failures += 1;
            }
            report.max_block_weight = report
                .max_block_weight
                .max(residual.x_weight.max(residual.z_weight));
        }
        if let Some(check) = harmless {
            if !check(&out) {
                report.harmful += 1;
            }
        }
    }
    report
}

/// Two-qubit gate sites of a gadget, re-exported for sweep call sites.
pub fn coupling_sites(gadget: &GadgetCircuit) -> Vec<usize> {
    two_qubit_gate_sites(gadget)
}

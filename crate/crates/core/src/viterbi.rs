//! Maximum-likelihood path decoding on staged trellises.
//!
//! A trellis walks a state machine through a fixed number of stages; each
//! stage carries a transition-probability matrix and an optional selector
//! that reweights (usually zeroes) destination states according to an
//! observation. [`most_probable_path`] finds the argmax path in log-space,
//! so 200-stage trellises pose no underflow problem.

use alloc::vec;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// One stage of a trellis.
#[derive(Clone, Debug)]
pub struct TrellisStage {
    /// `transitions[from][to]`, probabilities in `[0, 1]`.
    pub transitions: Vec<Vec<f64>>,
    /// Per-destination observation factor; entries of zero eliminate paths.
    pub selector: Option<Vec<f64>>,
}

/// A staged trellis with fixed state count.
#[derive(Clone, Debug)]
pub struct Trellis {
    /// Probability of each state before the first stage.
    pub start: Vec<f64>,
    pub stages: Vec<TrellisStage>,
}

impl Trellis {
    pub fn n_states(&self) -> usize {
        self.start.len()
    }
}

/// The winning path and its (linear and log) probability.
#[derive(Clone, Debug, PartialEq)]
pub struct PathResult {
    /// State indices, one per stage boundary (length `stages + 1`).
    pub states: Vec<usize>,
    pub log_probability: f64,
}

impl PathResult {
    pub fn probability(&self) -> f64 {
        self.log_probability.exp()
    }
}

fn ln_or_neg_inf(p: f64) -> f64 {
    if p > 0.0 {
        p.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Returns the path maximising `start × Π transitions × Π selectors`, or
/// `None` when every path has been eliminated.
///
/// Ties break toward the lowest state index (and, within a stage, toward
/// the earliest-achieved maximum), so outputs are reproducible.
pub fn most_probable_path(trellis: &Trellis) -> Option<PathResult> {
    let n = trellis.n_states();
    let mut score: Vec<f64> = trellis.start.iter().map(|&p| ln_or_neg_inf(p)).collect();
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(trellis.stages.len());
    for stage in &trellis.stages {
        let mut next = vec![f64::NEG_INFINITY; n];
        let mut from = vec![0usize; n];
        for (src, &s) in score.iter().enumerate() {
            if s == f64::NEG_INFINITY {
                continue;
            }
            for dst in 0..n {
                let t = stage.transitions[src][dst];
                if t <= 0.0 {
                    continue;
                }
                let cand = s + t.ln();
                if cand > next[dst] {
                    next[dst] = cand;
                    from[dst] = src;
                }
            }
        }
        if let Some(sel) = &stage.selector {
            for (dst, &factor) in sel.iter().enumerate() {
                next[dst] += ln_or_neg_inf(factor);
            }
        }
        back.push(from);
        score = next;
    }
    let (mut best_state, mut best_score) = (0usize, f64::NEG_INFINITY);
    for (s, &v) in score.iter().enumerate() {
        if v > best_score {
            best_score = v;
            best_state = s;
        }
    }
    if best_score == f64::NEG_INFINITY {
        return None;
    }
    let mut states = vec![0usize; trellis.stages.len() + 1];
    states[trellis.stages.len()] = best_state;
    for (i, from) in back.iter().enumerate().rev() {
        states[i] = from[states[i + 1]];
    }
    Some(PathResult {
        states,
        log_probability: best_score,
    })
}

/// A single step of the Viterbi recursion in linear probability space:
/// for each destination, the best `prob × transition` over sources, with
/// the winning path extended.
///
/// Entries of `prev` are `(probability, path)`; eliminated states carry
/// probability zero.
pub fn viterbi_step(
    prev: &[(f64, Vec<usize>)],
    transitions: &[Vec<f64>],
) -> Vec<(f64, Vec<usize>)> {
    let n_dst = transitions.first().map_or(0, Vec::len);
    let mut next = Vec::with_capacity(n_dst);
    for dst in 0..n_dst {
        let mut best = 0.0;
        let mut path: Vec<usize> = Vec::new();
        for (src, (p, src_path)) in prev.iter().enumerate() {
            let cand = p * transitions[src][dst];
            if cand > best {
                best = cand;
                path = src_path.clone();
                path.push(dst);
            }
        }
        next.push((best, path));
    }
    next
}

/// The classroom trellis: two states (S = 0, L = 1) over three 15-minute
/// steps, a question selector after the first step and a walks-out selector
/// at the end.
pub fn classroom_trellis() -> Trellis {
    let transitions = vec![vec![0.8, 0.2], vec![0.3, 0.7]];
    Trellis {
        start: vec![0.1, 0.9],
        stages: vec![
            TrellisStage {
                transitions: transitions.clone(),
                selector: Some(vec![1.0, 0.3]),
            },
            TrellisStage {
                transitions: transitions.clone(),
                selector: None,
            },
            TrellisStage {
                transitions,
                selector: Some(vec![0.0, 1.0]),
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::SmallRng;
    use rand::{Rng, SeedableRng};

    /// Exhaustive path enumeration; the independent oracle for the DP.
    fn brute_force(trellis: &Trellis) -> Option<(Vec<usize>, f64)> {
        let n = trellis.n_states();
        let stages = trellis.stages.len();
        let mut best: Option<(Vec<usize>, f64)> = None;
        let total = n.pow(stages as u32 + 1);
        for code in 0..total {
            let mut c = code;
            let path: Vec<usize> = (0..=stages)
                .map(|_| {
                    let s = c % n;
                    c /= n;
                    s
                })
                .collect();
            let mut p = trellis.start[path[0]];
            for (i, stage) in trellis.stages.iter().enumerate() {
                p *= stage.transitions[path[i]][path[i + 1]];
                if let Some(sel) = &stage.selector {
                    p *= sel[path[i + 1]];
                }
            }
            if p > 0.0 && best.as_ref().is_none_or(|(_, bp)| p > *bp + 1e-15) {
                best = Some((path, p));
            }
        }
        best
    }

    #[test]
    fn classroom_path_is_all_learning() {
        let result = most_probable_path(&classroom_trellis()).unwrap();
        assert_eq!(result.states, vec![1, 1, 1, 1]);
        assert!((result.probability() - 0.09261).abs() < 1e-12);
    }

    #[test]
    fn classroom_first_step_probabilities() {
        // After the 0 -> 15min step: S reached from L with 0.27, L from L
        // with 0.189 (question selector included).
        let t = classroom_trellis();
        let prev: Vec<(f64, Vec<usize>)> = t
            .start
            .iter()
            .enumerate()
            .map(|(s, &p)| (p, vec![s]))
            .collect();
        let mut step = viterbi_step(&prev, &t.stages[0].transitions);
        for (dst, sel) in t.stages[0].selector.as_ref().unwrap().iter().enumerate() {
            step[dst].0 *= sel;
        }
        assert!((step[0].0 - 0.27).abs() < 1e-12);
        assert_eq!(step[0].1, vec![1, 0]);
        assert!((step[1].0 - 0.189).abs() < 1e-12);
        assert_eq!(step[1].1, vec![1, 1]);
    }

    #[test]
    fn single_stage_is_argmax_of_start_times_selector() {
        let t = Trellis {
            start: vec![0.5, 0.2, 0.3],
            stages: vec![TrellisStage {
                transitions: vec![
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                ],
                selector: Some(vec![0.1, 1.0, 1.0]),
            }],
        };
        let r = most_probable_path(&t).unwrap();
        assert_eq!(r.states, vec![2, 2]);
        assert!((r.probability() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn identity_transitions_extend_by_self() {
        let prev = vec![(0.4, vec![0]), (0.6, vec![1])];
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let next = viterbi_step(&prev, &id);
        assert_eq!(next[0], (0.4, vec![0, 0]));
        assert_eq!(next[1], (0.6, vec![1, 1]));
    }

    #[test]
    fn all_paths_eliminated_yields_none() {
        let t = Trellis {
            start: vec![1.0, 0.0],
            stages: vec![TrellisStage {
                transitions: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                selector: Some(vec![0.0, 0.0]),
            }],
        };
        assert!(most_probable_path(&t).is_none());
    }

    fn random_trellis(rng: &mut SmallRng) -> Trellis {
        let n = rng.random_range(1..=3);
        let stages = rng.random_range(1..=4);
        // Small rational probabilities keep comparisons free of float fuzz.
        let rational = |rng: &mut SmallRng| rng.random_range(0..8) as f64 / 7.0;
        let start = (0..n).map(|_| rational(rng)).collect();
        let stages = (0..stages)
            .map(|_| TrellisStage {
                transitions: (0..n)
                    .map(|_| (0..n).map(|_| rational(rng)).collect())
                    .collect(),
                selector: if rng.random_bool(0.4) {
                    Some((0..n).map(|_| rational(rng)).collect())
                } else {
                    None
                },
            })
            .collect();
        Trellis { start, stages }
    }

    #[test]
    fn matches_brute_force_on_random_trellises() {
        let mut rng = SmallRng::seed_from_u64(11);
        for _ in 0..1000 {
            let t = random_trellis(&mut rng);
            let got = most_probable_path(&t);
            let want = brute_force(&t);
            match (got, want) {
                (None, None) => {}
                (Some(r), Some((_, bp))) => {
                    assert!(
                        (r.probability() - bp).abs() <= 1e-12 * bp.max(1.0),
                        "probability mismatch: {} vs {}",
                        r.probability(),
                        bp
                    );
                }
                (got, want) => panic!("admissibility mismatch: {got:?} vs {want:?}"),
            }
        }
    }

    #[test]
    fn step_composition_matches_full_path() {
        // Chaining viterbi_step over a selector-free trellis reproduces the
        // most probable path.
        let mut rng = SmallRng::seed_from_u64(3);
        for _ in 0..200 {
            let mut t = random_trellis(&mut rng);
            for stage in &mut t.stages {
                stage.selector = None;
            }
            let mut states: Vec<(f64, Vec<usize>)> = t
                .start
                .iter()
                .enumerate()
                .map(|(s, &p)| (p, vec![s]))
                .collect();
            for stage in &t.stages {
                states = viterbi_step(&states, &stage.transitions);
            }
            let by_steps = states
                .iter()
                .cloned()
                .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
                .unwrap();
            match most_probable_path(&t) {
                Some(r) => {
                    assert!((r.probability() - by_steps.0).abs() <= 1e-12 * by_steps.0.max(1.0))
                }
                None => assert_eq!(by_steps.0, 0.0),
            }
        }
    }

    #[test]
    fn prefix_of_optimal_path_is_optimal() {
        let full = classroom_trellis();
        let result = most_probable_path(&full).unwrap();
        for cut in 1..full.stages.len() {
            let truncated = Trellis {
                start: full.start.clone(),
                stages: full.stages[..cut].to_vec(),
            };
            // Recompute restricted to paths ending at the same state.
            let n = truncated.n_states();
            let mut t = truncated.clone();
            let target = result.states[cut];
            let forced: Vec<f64> = (0..n).map(|s| if s == target { 1.0 } else { 0.0 }).collect();
            t.stages.last_mut().unwrap().selector = Some(match &truncated.stages[cut - 1].selector
            {
                Some(sel) => sel.iter().zip(&forced).map(|(a, b)| a * b).collect(),
                None => forced,
            });
            let prefix = most_probable_path(&t).unwrap();
            assert_eq!(prefix.states[..=cut], result.states[..=cut]);
        }
    }

    fn path_probability(t: &Trellis, states: &[usize]) -> f64 {
        let mut p = t.start[states[0]];
        for (i, stage) in t.stages.iter().enumerate() {
            p *= stage.transitions[states[i]][states[i + 1]];
            if let Some(sel) = &stage.selector {
                p *= sel[states[i + 1]];
            }
        }
        p
    }

    #[test]
    fn scaling_transitions_preserves_argmax() {
        // Shift invariance in log-space; exactly tied paths may swap, so the
        // check is that both answers remain argmax paths of the scaled
        // trellis.
        let mut rng = SmallRng::seed_from_u64(23);
        for _ in 0..100 {
            let t = random_trellis(&mut rng);
            let mut scaled = t.clone();
            for stage in &mut scaled.stages {
                for row in &mut stage.transitions {
                    for v in row {
                        *v *= 0.125;
                    }
                }
            }
            let a = most_probable_path(&t);
            let b = most_probable_path(&scaled);
            match (a, b) {
                (None, None) => {}
                (Some(ra), Some(rb)) => {
                    let pa = path_probability(&scaled, &ra.states);
                    let pb = path_probability(&scaled, &rb.states);
                    assert!((pa - pb).abs() <= 1e-12 * pb.max(1e-300));
                }
                other => panic!("admissibility changed under scaling: {other:?}"),
            }
        }
    }
}

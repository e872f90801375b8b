//! The exhaustive rank-based verifier.
//!
//! For every Weyl element w and every difference δ = λ₀ − λ₀′ of the
//! minuscule-side representation, the linear system (Id − w)λ = δ either
//! has no solution, or some root α of n^std with an allowed target value c
//! has the equation (λ, α∨) = c implied by the system (appending the row
//! leaves the rank unchanged). Either outcome certifies the pair; a pair
//! with neither outcome refutes the characterization and is reported as a
//! failure.
//!
//! The hot loop works on scaled integer matrices (see `bareiss`); the
//! `Scalar`-exact route through `linalg` is kept as an independent oracle
//! and is cross-checked against the integer route on sampled pairs by the
//! test suite.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bareiss::{self, Mat, Row, MAX_DIM};
use crate::linalg::{echelon, rank_with_row, ExactMatrix};
use crate::roots::{FactorType, RootSystem};
use crate::scalar::Scalar;
use crate::tables::{self, TableId};
use crate::weight::Weight;
use crate::weyl::{self, word_string, WeylElement};

/// How one (w, δ) pair was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    /// The system (Id − w)λ = δ is inconsistent.
    NoSolution,
    /// The equation (λ, α∨) = value is implied by the system.
    Forced { root_index: usize, value: i64 },
    /// Neither outcome: the verification fails on this pair.
    Failure,
}

/// A pair that failed verification. Empty on success.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub w: String,
    pub diff_index: usize,
}

/// The Method report for one factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub factor: String,
    pub pairs_total: u64,
    pub pairs_no_solution: u64,
    pub pairs_forced: u64,
    /// Pairs certified at the shorter-root target value 2 (types B and C
    /// only).
    pub pairs_forced_value_two: u64,
    /// Method-equivalent elimination count: one per w, one per (w, δ),
    /// one per root-value attempt.
    pub eliminations_total: u64,
    /// Full eliminations actually performed (one per w; columns and root
    /// rows are processed incrementally against the cached echelon).
    pub eliminations_actual: u64,
    pub eliminations_bound: u64,
    pub elapsed_ms: u64,
    pub success: bool,
    pub failures: Vec<Failure>,
}

/// Transitivity and witness checks for the "if" direction, per root-length
/// class (W_m preserves root lengths, so it can only ever be transitive on
/// each class; types without shorter roots have a single class).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IfClassReport {
    pub shorter: bool,
    pub class_size: usize,
    pub transitive: bool,
    /// For each allowed value c, the index of an n^std root with
    /// c·α ∈ v0_differences, if any.
    pub witnesses: Vec<(i64, Option<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IfReport {
    pub classes: Vec<IfClassReport>,
    pub success: bool,
}

/// Converse membership: c·α ∈ v0_differences for every α ∈ n^std and every
/// allowed value c.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub checked: usize,
    pub missing: Vec<(usize, i64)>,
    pub success: bool,
}

/// Method + "if" direction + converse membership, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub factor: String,
    pub pairs_total: u64,
    pub pairs_no_solution: u64,
    pub pairs_forced: u64,
    pub pairs_forced_value_two: u64,
    pub eliminations_total: u64,
    pub eliminations_actual: u64,
    pub eliminations_bound: u64,
    pub elapsed_ms: u64,
    /// Method, "if"-direction and converse checks all passed.
    pub success: bool,
    pub failures: Vec<Failure>,
    pub if_direction: IfReport,
    pub converse_membership: ConverseReport,
}

impl FullReport {
    pub fn assemble(
        method: VerificationReport,
        if_direction: IfReport,
        converse: ConverseReport,
    ) -> FullReport {
        FullReport {
            success: method.success && if_direction.success && converse.success,
            factor: method.factor,
            pairs_total: method.pairs_total,
            pairs_no_solution: method.pairs_no_solution,
            pairs_forced: method.pairs_forced,
            pairs_forced_value_two: method.pairs_forced_value_two,
            eliminations_total: method.eliminations_total,
            eliminations_actual: method.eliminations_actual,
            eliminations_bound: method.eliminations_bound,
            elapsed_ms: method.elapsed_ms,
            failures: method.failures,
            if_direction,
            converse_membership: converse,
        }
    }

    /// Identical up to wall-clock time.
    pub fn same_outcome(&self, other: &FullReport) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        a == b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("instance too large: |W|·|differences| = {need} exceeds budget {budget}")]
    BudgetExceeded { need: u128, budget: u128 },
    #[error("ambient dimension {0} exceeds the verifier limit {MAX_DIM}")]
    DimTooLarge(usize),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

/// Execution options for the exhaustive runs.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub progress: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: 1,
            checkpoint: None,
            progress: false,
        }
    }
}

// ---------------------------------------------------------------------------
// Scaled integer data
// ---------------------------------------------------------------------------

/// The diagonal substitution that clears all surds from a factor's
/// coordinates: identity for the classical types, diag(2,...,2, 2√3) for
/// E6 and diag(2,...,2, √2) for E7.
fn scale_diag(ftype: FactorType) -> Vec<Scalar> {
    let dim = ftype.ambient_dim();
    match ftype {
        FactorType::E6 => {
            let mut d = vec![Scalar::from_int(2); dim];
            d[dim - 1] = Scalar::sqrt3(2, 1);
            d
        }
        FactorType::E7 => {
            let mut d = vec![Scalar::from_int(2); dim];
            d[dim - 1] = Scalar::sqrt2(1, 1);
            d
        }
        _ => vec![Scalar::one(); dim],
    }
}

/// Row scale applied on top of the diagonal substitution so that all system
/// entries are integers.
fn row_scale(ftype: FactorType) -> i64 {
    match ftype {
        FactorType::E6 | FactorType::E7 => 4,
        _ => 1,
    }
}

fn to_i64(s: &Scalar) -> i64 {
    let q = s
        .as_rational()
        .unwrap_or_else(|| panic!("entry {s} is not rational after scaling"));
    assert!(q.is_integer(), "entry {s} is not integral after scaling");
    i64::try_from(q.numer().clone()).expect("scaled entry overflows i64")
}

/// `scale · D (Id − w) D⁻¹` as an integer matrix.
pub fn scaled_system_matrix(rs: &RootSystem, w: &WeylElement) -> Mat {
    let dim = rs.ambient_dim();
    let diag = scale_diag(rs.ftype);
    let scale = Scalar::from_int(row_scale(rs.ftype));
    let mut m = bareiss::zero_mat();
    for i in 0..dim {
        let di = &diag[i];
        let row_factor = &scale * di;
        for j in 0..dim {
            let inv_dj = diag[j].invert().expect("nonzero diagonal");
            let mut v = -(&(&row_factor * w.at(i, j)) * &inv_dj);
            if i == j {
                v += &scale;
            }
            m[i][j] = to_i64(&v);
        }
    }
    m
}

/// One n^std root prepared for the integer route: the scaled coroot row and
/// the allowed (value, scaled rhs) pairs.
struct FastRoot {
    row: Row,
    values: Vec<(i64, i64)>,
}

/// Per-factor integer data shared by all workers.
struct FastData {
    dim: usize,
    diffs: Vec<Row>,
    roots: Vec<FastRoot>,
}

impl FastData {
    fn build(rs: &RootSystem) -> FastData {
        let dim = rs.ambient_dim();
        let diag = scale_diag(rs.ftype);
        let scale = row_scale(rs.ftype);
        let scale_s = Scalar::from_int(scale);
        let diffs = rs
            .v0_differences
            .iter()
            .map(|d| {
                let mut row = [0i64; MAX_DIM];
                for i in 0..dim {
                    row[i] = to_i64(&(&(&diag[i] * &d.0[i]) * &scale_s));
                }
                row
            })
            .collect();
        let roots = rs
            .nstd_roots
            .iter()
            .map(|root| {
                let coroot = root.coroot();
                let mut row = [0i64; MAX_DIM];
                for i in 0..dim {
                    let inv_di = diag[i].invert().expect("nonzero diagonal");
                    row[i] = to_i64(&(&(&coroot.0[i] * &inv_di) * &scale_s));
                }
                FastRoot {
                    row,
                    values: root
                        .allowed_values()
                        .iter()
                        .map(|&c| (c, c * scale))
                        .collect(),
                }
            })
            .collect();
        FastData { dim, diffs, roots }
    }

    /// Certifies one pair against an already-eliminated system matrix.
    fn pair_verdict(&self, elim: &bareiss::Elim, diff_index: usize, attempts: &mut u64) -> PairVerdict {
        let b = elim.transform_column(&self.diffs[diff_index]);
        if !elim.column_consistent(&b) {
            return PairVerdict::NoSolution;
        }
        for (root_index, root) in self.roots.iter().enumerate() {
            for &(value, rhs) in &root.values {
                *attempts += 1;
                if elim.row_is_implied(&b, &root.row, rhs) {
                    return PairVerdict::Forced { root_index, value };
                }
            }
        }
        PairVerdict::Failure
    }
}

// ---------------------------------------------------------------------------
// Enumeration backends
// ---------------------------------------------------------------------------

/// A signed permutation in flat form for the hot loop.
#[derive(Clone, Copy)]
struct CompactPerm {
    perm: [u8; MAX_DIM],
    /// Bit i set: row i carries a minus sign.
    signs: u8,
}

impl CompactPerm {
    fn identity(dim: usize) -> Self {
        let mut perm = [0u8; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate().take(dim) {
            *p = i as u8;
        }
        CompactPerm { perm, signs: 0 }
    }

    fn sign(&self, i: usize) -> i64 {
        if self.signs & (1 << i) != 0 {
            -1
        } else {
            1
        }
    }

    /// Matrix composition `self · rhs` (rhs acts first).
    fn compose(&self, rhs: &CompactPerm, dim: usize) -> CompactPerm {
        // Row i of the product has its entry in column rhs.perm[self.perm[i]]
        // with sign self.sign(i)·rhs.sign(self.perm[i]).
        let mut out = CompactPerm::identity(dim);
        out.signs = 0;
        for i in 0..dim {
            let k = self.perm[i] as usize;
            out.perm[i] = rhs.perm[k];
            if (self.signs >> i) & 1 != (rhs.signs >> k) & 1 {
                out.signs |= 1 << i;
            }
        }
        out
    }

    fn describe(&self, dim: usize) -> String {
        let perm: Vec<String> = (0..dim).map(|i| (self.perm[i] + 1).to_string()).collect();
        let signs: String = (0..dim)
            .map(|i| if self.signs & (1 << i) != 0 { '-' } else { '+' })
            .collect();
        format!("perm [{}] signs [{}]", perm.join(" "), signs)
    }
}

/// Swap of block positions `a` and `a+1` offset into the ambient space.
fn block_transposition(dim: usize, a: usize) -> CompactPerm {
    let mut p = CompactPerm::identity(dim);
    p.perm.swap(a, a + 1);
    p
}

/// The inner W(D5) layer: 16 evenly signed masks × 120 word-layer
/// permutation products, in the nesting order of the filtration.
fn inner_sigma_layer(ftype: FactorType) -> Vec<(CompactPerm, String)> {
    let dim = ftype.ambient_dim();
    let (offset, word_layers): (usize, [&[&[u8]]; 4]) = match ftype {
        FactorType::E6 => (
            0,
            [
                &[&[], &[4], &[3, 4, 3], &[2, 3, 4, 3, 2], &[1, 2, 3, 4, 3, 2, 1]],
                &[&[], &[3], &[2, 3, 2], &[1, 2, 3, 2, 1]],
                &[&[], &[2], &[1, 2, 1]],
                &[&[], &[1]],
            ],
        ),
        FactorType::E7 => (
            1,
            [
                &[
                    &[],
                    &[5],
                    &[4, 5, 4],
                    &[3, 4, 5, 4, 2],
                    &[2, 3, 4, 5, 4, 3, 2],
                ],
                &[&[], &[4], &[3, 4, 3], &[2, 3, 4, 3, 2]],
                &[&[], &[3], &[2, 3, 2]],
                &[&[], &[2]],
            ],
        ),
        _ => panic!("inner layer only exists for the exceptional types"),
    };
    // A word letter l names the simple reflection α_l = e_l − e_{l+1}
    // (1-based coordinates), i.e. the transposition of 0-based coordinates
    // (l − 1, l).
    let word_to_perm = |word: &[u8]| -> CompactPerm {
        let mut acc = CompactPerm::identity(dim);
        for &letter in word.iter().rev() {
            acc = block_transposition(dim, letter as usize - 1).compose(&acc, dim);
        }
        acc
    };
    let layers: Vec<Vec<CompactPerm>> = word_layers
        .iter()
        .map(|layer| layer.iter().map(|w| word_to_perm(w)).collect())
        .collect();

    let mut out = Vec::with_capacity(1920);
    for mask in 0u32..32 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut signed = CompactPerm::identity(dim);
        for k in 0..5 {
            if mask & (1 << k) != 0 {
                signed.signs |= 1 << (offset + k);
            }
        }
        for a4 in &layers[0] {
            let p4 = signed.compose(a4, dim);
            for a3 in &layers[1] {
                let p3 = p4.compose(a3, dim);
                for a2 in &layers[2] {
                    let p2 = p3.compose(a2, dim);
                    for a1 in &layers[3] {
                        let sigma = p2.compose(a1, dim);
                        out.push((sigma, sigma.describe(dim)));
                    }
                }
            }
        }
    }
    out
}

/// Exceptional enumeration data: outer coset representatives (jobs), middle
/// representatives, and the inner signed-permutation layer. A full Weyl
/// element is `outer · mid · σ`; the stored matrices carry the row scale 4.
struct ExceptionalEnum {
    dim: usize,
    outer: Vec<(Mat, String)>,
    mid: Vec<(Mat, String)>,
    sigmas: Vec<(CompactPerm, String)>,
}

impl ExceptionalEnum {
    fn build(rs: &RootSystem) -> ExceptionalEnum {
        let dim = rs.ambient_dim();
        let table_mats = |id: TableId| -> Vec<(Mat, String)> {
            let rows = tables::rows(id);
            (0..rows.len())
                .map(|k| {
                    let word = tables::row_word(rows, k);
                    let w = weyl::word_to_element(rs, &word).expect("table word");
                    (scaled_system_identity_free(rs, &w), word_string(&word))
                })
                .collect()
        };
        let (outer, mid) = match rs.ftype {
            FactorType::E6 => {
                let id4 = scaled_system_identity_free(rs, &WeylElement::identity(dim));
                (table_mats(TableId::E6Top), vec![(id4, "1".to_owned())])
            }
            FactorType::E7 => (table_mats(TableId::E7Top), table_mats(TableId::E7Mid)),
            _ => panic!("exceptional enumeration on a classical type"),
        };
        ExceptionalEnum {
            dim,
            outer,
            mid,
            sigmas: inner_sigma_layer(rs.ftype),
        }
    }

    /// `4·(outer·mid)` with the exact division by the shared scale.
    fn prefix(&self, outer: usize, mid: usize) -> Mat {
        let a = &self.outer[outer].0;
        let b = &self.mid[mid].0;
        let mut out = bareiss::zero_mat();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc: i128 = 0;
                for (k, bk) in b.iter().enumerate().take(self.dim) {
                    acc += (a[i][k] as i128) * (bk[j] as i128);
                }
                assert!(acc % 4 == 0, "prefix product does not clear the scale");
                out[i][j] = i64::try_from(acc / 4).expect("prefix overflow");
            }
        }
        out
    }
}

/// `4·D w D⁻¹` for an exceptional `w` (no identity subtraction).
fn scaled_system_identity_free(rs: &RootSystem, w: &WeylElement) -> Mat {
    let dim = rs.ambient_dim();
    let diag = scale_diag(rs.ftype);
    let four = Scalar::from_int(4);
    let mut m = bareiss::zero_mat();
    for i in 0..dim {
        let row_factor = &four * &diag[i];
        for j in 0..dim {
            let inv_dj = diag[j].invert().expect("nonzero diagonal");
            m[i][j] = to_i64(&(&(&row_factor * w.at(i, j)) * &inv_dj));
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Jobs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct JobResult {
    id: usize,
    pairs: u64,
    no_solution: u64,
    forced: u64,
    forced_value_two: u64,
    elim_method: u64,
    elim_actual: u64,
    failures: Vec<Failure>,
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    factor: String,
    jobs_total: usize,
    completed: Vec<JobResult>,
}

enum Backend {
    Exceptional(ExceptionalEnum),
    /// Classical signed permutations, jobs keyed by the image of the first
    /// coordinate (lexicographic blocks).
    Classical {
        dim: usize,
        perms: Vec<Vec<usize>>,
        sign_masks: Vec<u8>,
    },
}

struct Runner {
    data: FastData,
    backend: Backend,
}

impl Runner {
    fn new(rs: &RootSystem) -> Result<Runner, VerifyError> {
        let dim = rs.ambient_dim();
        if dim > MAX_DIM {
            return Err(VerifyError::DimTooLarge(dim));
        }
        let backend = match rs.ftype {
            FactorType::E6 | FactorType::E7 => Backend::Exceptional(ExceptionalEnum::build(rs)),
            ftype => {
                let sign_masks: Vec<u8> = match ftype {
                    FactorType::A { .. } => vec![0],
                    FactorType::B { .. } | FactorType::C { .. } => {
                        (0u16..(1 << dim)).map(|m| m as u8).collect()
                    }
                    FactorType::DR { .. } | FactorType::DH { .. } => (0u16..(1 << dim))
                        .filter(|m| m.count_ones() % 2 == 0)
                        .map(|m| m as u8)
                        .collect(),
                    _ => unreachable!(),
                };
                Backend::Classical {
                    dim,
                    perms: weyl::permutations(dim),
                    sign_masks,
                }
            }
        };
        Ok(Runner {
            data: FastData::build(rs),
            backend,
        })
    }

    fn job_count(&self) -> usize {
        match &self.backend {
            Backend::Exceptional(e) => e.outer.len(),
            Backend::Classical { dim, .. } => *dim,
        }
    }

    fn run_job(&self, id: usize, pair_counter: &AtomicU64) -> JobResult {
        let mut result = JobResult {
            id,
            pairs: 0,
            no_solution: 0,
            forced: 0,
            forced_value_two: 0,
            elim_method: 0,
            elim_actual: 0,
            failures: Vec::new(),
        };
        let data = &self.data;
        let diffs_n = data.diffs.len() as u64;
        let mut process = |m: &Mat, describe: &dyn Fn() -> String| {
            let elim = bareiss::eliminate(m, data.dim);
            result.elim_actual += 1;
            result.elim_method += 1;
            for diff_index in 0..data.diffs.len() {
                result.elim_method += 1;
                let mut attempts = 0u64;
                let verdict = data.pair_verdict(&elim, diff_index, &mut attempts);
                result.elim_method += attempts;
                match verdict {
                    PairVerdict::NoSolution => result.no_solution += 1,
                    PairVerdict::Forced { value, .. } => {
                        result.forced += 1;
                        if value == 2 {
                            result.forced_value_two += 1;
                        }
                    }
                    PairVerdict::Failure => result.failures.push(Failure {
                        w: describe(),
                        diff_index,
                    }),
                }
            }
            result.pairs += diffs_n;
            pair_counter.fetch_add(diffs_n, Ordering::Relaxed);
        };

        match &self.backend {
            Backend::Exceptional(en) => {
                for mid in 0..en.mid.len() {
                    let prefix = en.prefix(id, mid);
                    for (sigma, sigma_desc) in &en.sigmas {
                        // M = 4·Id − (prefix ∘ σ): column k of the prefix
                        // lands in column σ.perm[k] with σ's sign.
                        let mut m = bareiss::zero_mat();
                        for k in 0..en.dim {
                            let target = sigma.perm[k] as usize;
                            let s = sigma.sign(k);
                            for i in 0..en.dim {
                                m[i][target] = -s * prefix[i][k];
                            }
                        }
                        for i in 0..en.dim {
                            m[i][i] += 4;
                        }
                        process(&m, &|| {
                            format!(
                                "outer[{}] mid[{}] sigma[{}]",
                                en.outer[id].1, en.mid[mid].1, sigma_desc
                            )
                        });
                    }
                }
            }
            Backend::Classical {
                dim,
                perms,
                sign_masks,
            } => {
                for perm in perms.iter().filter(|p| p[0] == id) {
                    for &mask in sign_masks {
                        let mut m = bareiss::zero_mat();
                        for i in 0..*dim {
                            let sign = if mask & (1 << i) != 0 { -1 } else { 1 };
                            m[i][perm[i]] -= sign;
                            m[i][i] += 1;
                        }
                        process(&m, &|| {
                            let p: Vec<String> =
                                perm.iter().map(|x| (x + 1).to_string()).collect();
                            let signs: String = (0..*dim)
                                .map(|i| if mask & (1 << i) != 0 { '-' } else { '+' })
                                .collect();
                            format!("perm [{}] signs [{}]", p.join(" "), signs)
                        });
                    }
                }
            }
        }
        result
    }
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

fn load_checkpoint(
    path: &Path,
    factor: &str,
    jobs_total: usize,
) -> Result<Vec<JobResult>, VerifyError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| VerifyError::Checkpoint(format!("read {}: {e}", path.display())))?;
    let file: CheckpointFile = serde_json::from_str(&text)
        .map_err(|e| VerifyError::Checkpoint(format!("parse {}: {e}", path.display())))?;
    if file.factor != factor || file.jobs_total != jobs_total {
        return Err(VerifyError::Checkpoint(format!(
            "checkpoint {} belongs to a different run ({} with {} jobs)",
            path.display(),
            file.factor,
            file.jobs_total
        )));
    }
    Ok(file.completed)
}

fn save_checkpoint(path: &Path, factor: &str, jobs_total: usize, completed: &[JobResult]) {
    let file = CheckpointFile {
        factor: factor.to_owned(),
        jobs_total,
        completed: completed.to_vec(),
    };
    let tmp = path.with_extension("tmp");
    let payload = serde_json::to_string(&file).expect("serialize checkpoint");
    if std::fs::write(&tmp, payload).is_ok() {
        let _ = std::fs::rename(&tmp, path);
    }
}

/// Runs the Method over the whole Weyl group of the factor.
///
/// Work is partitioned by the outermost filtration layer (exceptional
/// types) or by lexicographic permutation blocks (classical types); job
/// results merge associatively in job order, so the report is identical
/// for any worker count.
pub fn verify_only_if(rs: &RootSystem, opts: &RunOptions) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let runner = Runner::new(rs)?;
    let jobs_total = runner.job_count();
    let factor = rs.ftype.code().to_owned();

    let mut completed: Vec<Option<JobResult>> = vec![None; jobs_total];
    if let Some(path) = &opts.checkpoint {
        for job in load_checkpoint(path, &factor, jobs_total)? {
            let id = job.id;
            if id < jobs_total {
                completed[id] = Some(job);
            }
        }
    }
    let pending: Vec<usize> = (0..jobs_total).filter(|&j| completed[j].is_none()).collect();

    let pair_counter = AtomicU64::new(0);
    let next = AtomicUsize::new(0);
    let done = Mutex::new(completed);
    let workers = opts.workers.max(1).min(pending.len().max(1));

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let slot = next.fetch_add(1, Ordering::Relaxed);
                let Some(&job_id) = pending.get(slot) else {
                    return;
                };
                let result = runner.run_job(job_id, &pair_counter);
                let mut guard = done.lock().expect("poisoned");
                guard[job_id] = Some(result);
                if let Some(path) = &opts.checkpoint {
                    let snapshot: Vec<JobResult> =
                        guard.iter().flatten().cloned().collect();
                    save_checkpoint(path, &factor, jobs_total, &snapshot);
                }
                if opts.progress {
                    let finished = guard.iter().filter(|r| r.is_some()).count();
                    let pairs = pair_counter.load(Ordering::Relaxed);
                    let _ = writeln!(
                        std::io::stderr(),
                        "progress: {finished}/{jobs_total} jobs, {pairs} pairs processed, {:.1}s elapsed",
                        start.elapsed().as_secs_f64()
                    );
                }
            });
        }
    });

    let completed = done.into_inner().expect("poisoned");
    let mut report = VerificationReport {
        factor,
        pairs_total: 0,
        pairs_no_solution: 0,
        pairs_forced: 0,
        pairs_forced_value_two: 0,
        eliminations_total: 0,
        eliminations_actual: 0,
        eliminations_bound: u64::try_from(rs.ftype.elimination_bound())
            .expect("bound overflows u64"),
        elapsed_ms: 0,
        success: false,
        failures: Vec::new(),
    };
    for job in completed.into_iter().map(|j| j.expect("job missing")) {
        report.pairs_total += job.pairs;
        report.pairs_no_solution += job.no_solution;
        report.pairs_forced += job.forced;
        report.pairs_forced_value_two += job.forced_value_two;
        report.eliminations_total += job.elim_method;
        report.eliminations_actual += job.elim_actual;
        report.failures.extend(job.failures);
    }
    report.success = report.failures.is_empty()
        && report.pairs_no_solution + report.pairs_forced == report.pairs_total;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Checks the two sufficient conditions for the "if" direction, per root-length
/// class: W_m acts transitively on the class, and for each allowed value c
/// some class member α has c·α among the v0 differences.
pub fn verify_if(rs: &RootSystem) -> IfReport {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for shorter in [false, true] {
        let class: Vec<usize> = rs
            .nstd_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.shorter == shorter)
            .map(|(i, _)| i)
            .collect();
        if !class.is_empty() {
            classes.push(class);
        }
    }
    let mut reports = Vec::new();
    for class in classes {
        let shorter = rs.nstd_roots[class[0]].shorter;
        let class_vecs: HashSet<&Weight> =
            class.iter().map(|&i| &rs.nstd_roots[i].vec).collect();
        let orbit = weyl::orbit(
            rs,
            &rs.nstd_roots[class[0]].vec,
            &rs.wm_generator_indices,
        );
        let transitive = orbit.len() == class.len()
            && orbit.iter().all(|w| class_vecs.contains(w));
        let values: &[i64] = if shorter { &[1, 2] } else { &[1] };
        let witnesses = values
            .iter()
            .map(|&c| {
                let witness = class.iter().copied().find(|&i| {
                    let scaled = rs.nstd_roots[i].vec.scale(&Scalar::from_int(c));
                    rs.v0_differences
                        .iter()
                        .any(|d| rs.weights_equal(d, &scaled))
                });
                (c, witness)
            })
            .collect::<Vec<_>>();
        reports.push(IfClassReport {
            shorter,
            class_size: class.len(),
            transitive,
            witnesses,
        });
    }
    let success = reports
        .iter()
        .all(|c| c.transitive && c.witnesses.iter().all(|(_, w)| w.is_some()));
    IfReport {
        classes: reports,
        success,
    }
}

/// Converse membership: for every α ∈ n^std and every allowed value c,
/// c·α is a difference λ₀ − λ₀′ (modulo the all-ones line in type A).
pub fn verify_converse_membership(rs: &RootSystem) -> ConverseReport {
    let mut missing = Vec::new();
    let mut checked = 0;
    for (i, root) in rs.nstd_roots.iter().enumerate() {
        for &c in root.allowed_values() {
            checked += 1;
            let scaled = root.vec.scale(&Scalar::from_int(c));
            if !rs
                .v0_differences
                .iter()
                .any(|d| rs.weights_equal(d, &scaled))
            {
                missing.push((i, c));
            }
        }
    }
    ConverseReport {
        checked,
        success: missing.is_empty(),
        missing,
    }
}

/// The full per-factor verification: Method, "if" direction and converse
/// membership. Classical instances are guarded by the work budget
/// |W|·|differences| ≤ budget.
pub fn verify_factor(
    rs: &RootSystem,
    opts: &RunOptions,
    budget: Option<u128>,
) -> Result<FullReport, VerifyError> {
    if let Some(budget) = budget {
        let need = rs.ftype.weyl_order() * (rs.ftype.dim_v0() - 1);
        if need > budget {
            return Err(VerifyError::BudgetExceeded { need, budget });
        }
    }
    let method = verify_only_if(rs, opts)?;
    let if_direction = verify_if(rs);
    let converse = verify_converse_membership(rs);
    Ok(FullReport::assemble(method, if_direction, converse))
}

// ---------------------------------------------------------------------------
// Exact-route oracle
// ---------------------------------------------------------------------------

/// The Method decision for a single pair along the `Scalar`-exact route,
/// used as the independent oracle for the integer route.
pub fn exact_pair_verdict(rs: &RootSystem, w: &WeylElement, diff: &Weight) -> PairVerdict {
    let dim = rs.ambient_dim();
    let mut a = ExactMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut v = -w.at(i, j).clone();
            if i == j {
                v += &Scalar::one();
            }
            a.data[i * dim + j] = v;
        }
    }
    let system = echelon(&a);
    let augmented = echelon(&a.augment(diff));
    if augmented.rank != system.rank {
        return PairVerdict::NoSolution;
    }
    for (root_index, root) in rs.nstd_roots.iter().enumerate() {
        for &value in root.allowed_values() {
            let mut row: Vec<Scalar> = root.coroot().0.clone();
            row.push(Scalar::from_int(value));
            if rank_with_row(&augmented, &row).expect("row length") == augmented.rank {
                return PairVerdict::Forced { root_index, value };
            }
        }
    }
    PairVerdict::Failure
}

/// The integer-route decision for a single pair, exposed for cross-checks.
pub fn fast_pair_verdict(rs: &RootSystem, w: &WeylElement, diff_index: usize) -> PairVerdict {
    let data = FastData::build(rs);
    let m = scaled_system_matrix(rs, w);
    let elim = bareiss::eliminate(&m, data.dim);
    let mut attempts = 0;
    data.pair_verdict(&elim, diff_index, &mut attempts)
}

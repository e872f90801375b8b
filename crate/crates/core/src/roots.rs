//! Explicit realizations of the simple factor types carrying a Hermitian
//! node: simple roots, the full root set, the roots of the abelian radical
//! n^std, the positive parallel weight λ₀, the weight-difference set of the
//! minuscule-side representation V₀, and the Levi Weyl generators.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::tables::{self, TableError, TableId};
use crate::weight::{Root, Weight};

/// A simple factor type with its Hermitian-node data. For type A the node
/// index `r` marks the semicolon position, `1 ≤ r ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FactorType {
    #[serde(rename = "a")]
    A { rank: usize, node: usize },
    #[serde(rename = "b")]
    B { rank: usize },
    #[serde(rename = "c")]
    C { rank: usize },
    #[serde(rename = "d-r")]
    DR { rank: usize },
    #[serde(rename = "d-h")]
    DH { rank: usize },
    #[serde(rename = "e6")]
    E6,
    #[serde(rename = "e7")]
    E7,
}

/// Rank outside the supported bounds for the type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unsupported rank for {0}")]
pub struct UnsupportedRank(pub String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSystemError {
    #[error(transparent)]
    UnsupportedRank(#[from] UnsupportedRank),
    #[error(transparent)]
    Table(#[from] TableError),
}

impl FactorType {
    /// Lie rank (number of simple roots).
    pub fn rank(&self) -> usize {
        match *self {
            FactorType::A { rank, .. }
            | FactorType::B { rank }
            | FactorType::C { rank }
            | FactorType::DR { rank }
            | FactorType::DH { rank } => rank,
            FactorType::E6 => 6,
            FactorType::E7 => 7,
        }
    }

    /// Dimension of the ambient coordinate space (`n + 1` for type A).
    pub fn ambient_dim(&self) -> usize {
        match *self {
            FactorType::A { rank, .. } => rank + 1,
            _ => self.rank(),
        }
    }

    pub fn validate(&self) -> Result<(), UnsupportedRank> {
        let ok = match *self {
            FactorType::A { rank, node } => rank >= 1 && node >= 1 && node <= rank,
            FactorType::B { rank } | FactorType::C { rank } => rank >= 2,
            FactorType::DR { rank } | FactorType::DH { rank } => rank >= 3,
            FactorType::E6 | FactorType::E7 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(UnsupportedRank(self.to_string()))
        }
    }

    /// The order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match *self {
            FactorType::A { rank, .. } => factorial(rank + 1),
            FactorType::B { rank } | FactorType::C { rank } => {
                (1u128 << rank) * factorial(rank)
            }
            FactorType::DR { rank } | FactorType::DH { rank } => {
                (1u128 << (rank - 1)) * factorial(rank)
            }
            FactorType::E6 => 51840,
            FactorType::E7 => 2903040,
        }
    }

    /// Dimension of the representation V₀ with extremal weight λ₀.
    pub fn dim_v0(&self) -> u128 {
        fn binom(n: u128, k: u128) -> u128 {
            (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
        }
        match *self {
            FactorType::A { rank, node } => binom(rank as u128 + 1, node as u128),
            FactorType::B { rank } => 2 * rank as u128 + 1,
            FactorType::C { rank } => (3u128.pow(rank as u32) + 1) / 2,
            FactorType::DR { rank } => 2 * rank as u128,
            FactorType::DH { rank } => 1u128 << (rank - 1),
            FactorType::E6 => 27,
            FactorType::E7 => 56,
        }
    }

    /// Number of roots of n^std.
    pub fn nstd_count(&self) -> u128 {
        match *self {
            FactorType::A { rank, node } => (node * (rank + 1 - node)) as u128,
            FactorType::B { rank } => 2 * rank as u128 - 1,
            FactorType::C { rank } => (rank * (rank + 1) / 2) as u128,
            FactorType::DR { rank } => 2 * (rank as u128 - 1),
            FactorType::DH { rank } => (rank * (rank - 1) / 2) as u128,
            FactorType::E6 => 16,
            FactorType::E7 => 27,
        }
    }

    /// Dual Coxeter number: the integer with Σ_{α ∈ n^std} α = h∨·λ₀.
    pub fn dual_coxeter(&self) -> u64 {
        match *self {
            FactorType::A { rank, .. } | FactorType::C { rank } => rank as u64 + 1,
            FactorType::B { rank } => 2 * rank as u64 - 1,
            FactorType::DR { rank } | FactorType::DH { rank } => 2 * rank as u64 - 2,
            FactorType::E6 => 12,
            FactorType::E7 => 18,
        }
    }

    /// Total number of roots.
    pub fn root_count(&self) -> usize {
        match *self {
            FactorType::A { rank, .. } => rank * (rank + 1),
            FactorType::B { rank } | FactorType::C { rank } => 2 * rank * rank,
            FactorType::DR { rank } | FactorType::DH { rank } => 2 * rank * (rank - 1),
            FactorType::E6 => 72,
            FactorType::E7 => 126,
        }
    }

    /// Upper bound on the number of Gaussian eliminations performed by the
    /// rank method: `|W| · [1 + (dim V₀ − 1)(d + 1)]`.
    pub fn elimination_bound(&self) -> u128 {
        self.weyl_order() * (1 + (self.dim_v0() - 1) * (self.nstd_count() + 1))
    }

    /// The short type code used by the CLI: a, b, c, d-r, d-h, e6, e7.
    pub fn code(&self) -> &'static str {
        match self {
            FactorType::A { .. } => "a",
            FactorType::B { .. } => "b",
            FactorType::C { .. } => "c",
            FactorType::DR { .. } => "d-r",
            FactorType::DH { .. } => "d-h",
            FactorType::E6 => "e6",
            FactorType::E7 => "e7",
        }
    }

    /// Builds a factor type from CLI pieces.
    pub fn from_parts(code: &str, rank: Option<usize>, node: Option<usize>) -> Result<Self, String> {
        let need_rank = || rank.ok_or_else(|| format!("--rank is required for type {code}"));
        let ft = match code {
            "a" => FactorType::A {
                rank: need_rank()?,
                node: node.ok_or("--node is required for type a")?,
            },
            "b" => FactorType::B { rank: need_rank()? },
            "c" => FactorType::C { rank: need_rank()? },
            "d-r" => FactorType::DR { rank: need_rank()? },
            "d-h" => FactorType::DH { rank: need_rank()? },
            "e6" => FactorType::E6,
            "e7" => FactorType::E7,
            other => return Err(format!("unknown factor type: {other}")),
        };
        ft.validate().map_err(|e| e.to_string())?;
        Ok(ft)
    }
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorType::A { rank, node } => write!(f, "A({rank}, node {node})"),
            FactorType::B { rank } => write!(f, "B({rank})"),
            FactorType::C { rank } => write!(f, "C({rank})"),
            FactorType::DR { rank } => write!(f, "D_R({rank})"),
            FactorType::DH { rank } => write!(f, "D_H({rank})"),
            FactorType::E6 => write!(f, "E6"),
            FactorType::E7 => write!(f, "E7"),
        }
    }
}

/// One per-factor realization, immutable after construction.
#[derive(Clone)]
pub struct RootSystem {
    pub ftype: FactorType,
    pub simple_roots: Vec<Root>,
    pub all_roots: Vec<Root>,
    pub nstd_roots: Vec<Root>,
    pub lambda0: Weight,
    pub v0_differences: Vec<Weight>,
    /// 1-based indices of the simple reflections generating the Levi Weyl
    /// group W_m (all nodes except the Hermitian one).
    pub wm_generator_indices: Vec<usize>,
}

impl RootSystem {
    pub fn build(ftype: FactorType) -> Result<RootSystem, RootSystemError> {
        ftype.validate()?;
        let dim = ftype.ambient_dim();
        let n = ftype.rank();

        let (simple_vecs, nstd_vecs, lambda0, v0_differences, wm): (
            Vec<Weight>,
            Vec<Weight>,
            Weight,
            Vec<Weight>,
            Vec<usize>,
        ) = match ftype {
            FactorType::A { rank, node } => {
                let simple = (0..rank).map(|i| type_a_root(dim, i, i + 1)).collect();
                let mut nstd = Vec::new();
                for i in 0..node {
                    for j in node..dim {
                        nstd.push(type_a_root(dim, i, j));
                    }
                }
                let mut l0 = Weight::zero(dim);
                for c in l0.0.iter_mut().take(node) {
                    *c = Scalar::one();
                }
                let diffs = type_a_differences(rank, node);
                let wm = (1..=rank).filter(|&i| i != node).collect();
                (simple, nstd, l0, diffs, wm)
            }
            FactorType::B { rank } => {
                let mut simple: Vec<Weight> =
                    (0..rank - 1).map(|i| type_a_root(dim, i, i + 1)).collect();
                simple.push(Weight::basis(dim, rank - 1));
                let mut nstd = vec![Weight::basis(dim, 0)];
                for i in 1..rank {
                    nstd.push(plus_minus(dim, 0, i, 1));
                    nstd.push(plus_minus(dim, 0, i, -1));
                }
                let l0 = Weight::basis(dim, 0);
                let mut diffs = vec![scaled_basis(dim, 0, 2), Weight::basis(dim, 0)];
                for i in 1..rank {
                    diffs.push(plus_minus(dim, 0, i, 1));
                    diffs.push(plus_minus(dim, 0, i, -1));
                }
                (simple, nstd, l0, diffs, (2..=rank).collect())
            }
            FactorType::C { rank } => {
                let mut simple: Vec<Weight> =
                    (0..rank - 1).map(|i| type_a_root(dim, i, i + 1)).collect();
                simple.push(scaled_basis(dim, rank - 1, 2));
                let mut nstd = Vec::new();
                for i in 0..rank {
                    for j in i..rank {
                        if i == j {
                            nstd.push(scaled_basis(dim, i, 2));
                        } else {
                            nstd.push(plus_minus(dim, i, j, 1));
                        }
                    }
                }
                let l0 = Weight(vec![Scalar::one(); dim]);
                let diffs = type_c_differences(rank);
                (simple, nstd, l0, diffs, (1..rank).collect())
            }
            FactorType::DR { rank } => {
                let simple = type_d_simple(dim);
                let mut nstd = Vec::new();
                for i in 1..rank {
                    nstd.push(plus_minus(dim, 0, i, 1));
                    nstd.push(plus_minus(dim, 0, i, -1));
                }
                let l0 = Weight::basis(dim, 0);
                let mut diffs = vec![scaled_basis(dim, 0, 2)];
                for i in 1..rank {
                    diffs.push(plus_minus(dim, 0, i, 1));
                    diffs.push(plus_minus(dim, 0, i, -1));
                }
                (simple, nstd, l0, diffs, (2..=rank).collect())
            }
            FactorType::DH { rank } => {
                let simple = type_d_simple(dim);
                let mut nstd = Vec::new();
                for i in 0..rank {
                    for j in i + 1..rank {
                        nstd.push(plus_minus(dim, i, j, 1));
                    }
                }
                let l0 = Weight(vec![Scalar::ratio(1, 2); dim]);
                let mut diffs = Vec::new();
                for mask in 1u32..(1 << rank) {
                    let ones = mask.count_ones();
                    if ones >= 2 && ones % 2 == 0 {
                        diffs.push(Weight(
                            (0..rank)
                                .map(|k| {
                                    if mask & (1 << k) != 0 {
                                        Scalar::one()
                                    } else {
                                        Scalar::zero()
                                    }
                                })
                                .collect(),
                        ));
                    }
                }
                (simple, nstd, l0, diffs, (1..rank).collect())
            }
            FactorType::E6 => {
                let simple =
                    tables::reconstruct_simple_roots(&[tables::rows(TableId::E6Top)], 6)?;
                // Roots (±1/2, ..., ±1/2, √3/2) with evenly many + signs
                // among the first five coordinates; the tabulated witness
                // λ₀ − λ₀'' = α₆ has none.
                let mut nstd = Vec::new();
                for mask in 0u32..32 {
                    if mask.count_ones() % 2 == 1 {
                        nstd.push(half_sign_vector(6, 0, mask, Scalar::sqrt3(1, 2)));
                    }
                }
                let l0 = Weight::parse(&["0", "0", "0", "0", "0", "2/3*sqrt3"]);
                let diffs = table_differences(TableId::E6Top, &l0);
                (simple, nstd, l0, diffs, (1..=5).collect())
            }
            FactorType::E7 => {
                let simple = tables::reconstruct_simple_roots(
                    &[tables::rows(TableId::E7Top), tables::rows(TableId::E7Mid)],
                    7,
                )?;
                let mut nstd = Vec::new();
                for j in 1..6 {
                    nstd.push(plus_minus(7, 0, j, 1));
                    nstd.push(plus_minus(7, 0, j, -1));
                }
                // (1/2, ±1/2 × 5, √2/2) with an even total number of +1/2
                // entries, i.e. oddly many + signs among the middle five.
                for mask in 0u32..32 {
                    if mask.count_ones() % 2 == 0 {
                        let mut v = half_sign_vector(7, 1, mask, Scalar::sqrt2(1, 2));
                        v.0[0] = Scalar::ratio(1, 2);
                        nstd.push(v);
                    }
                }
                let mut last = Weight::zero(7);
                last.0[6] = Scalar::sqrt2(1, 1);
                nstd.push(last);
                let l0 = Weight::parse(&["1", "0", "0", "0", "0", "0", "1/2*sqrt2"]);
                let diffs = table_differences(TableId::E7Top, &l0);
                (simple, nstd, l0, diffs, (2..=7).collect())
            }
        };

        debug_assert_eq!(simple_vecs.len(), n);
        let all_vecs = root_closure(&simple_vecs);
        let max_norm = all_vecs
            .iter()
            .map(Weight::norm_sq)
            .max_by(|x, y| {
                x.as_rational()
                    .expect("irrational root norm")
                    .cmp(y.as_rational().expect("irrational root norm"))
            })
            .expect("empty root system");
        let flag = |v: &Weight| Root {
            vec: v.clone(),
            shorter: v.norm_sq() != max_norm,
        };

        Ok(RootSystem {
            ftype,
            simple_roots: simple_vecs.iter().map(flag).collect(),
            all_roots: all_vecs.iter().map(flag).collect(),
            nstd_roots: nstd_vecs.iter().map(flag).collect(),
            lambda0,
            v0_differences,
            wm_generator_indices: wm,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ftype.ambient_dim()
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// `½ Σ_{α ∈ n^std} α`, the translation appearing in the regularity
    /// definitions (the definition's `−½ λ_det n` equals this, since
    /// λ_det n = −Σ_{α ∈ n^std} α).
    pub fn half_nstd_sum(&self) -> Weight {
        let mut acc = Weight::zero(self.ambient_dim());
        for root in &self.nstd_roots {
            acc = &acc + &root.vec;
        }
        acc.scale(&Scalar::ratio(1, 2))
    }

    /// Exact check of the dual Coxeter identity Σ_{α∈n^std} α = h∨·λ₀
    /// (modulo the all-ones line in type A).
    pub fn dual_coxeter_identity_holds(&self) -> bool {
        let lhs = self.half_nstd_sum().scale(&Scalar::from_int(2));
        let rhs = self
            .lambda0
            .scale(&Scalar::from_int(self.ftype.dual_coxeter() as i64));
        match self.ftype {
            FactorType::A { .. } => lhs.congruent_mod_ones(&rhs),
            _ => lhs == rhs,
        }
    }

    /// Compares two weights, modulo the all-ones line for type A.
    pub fn weights_equal(&self, x: &Weight, y: &Weight) -> bool {
        match self.ftype {
            FactorType::A { .. } => x.congruent_mod_ones(y),
            _ => x == y,
        }
    }
}

/// `e_i − e_j` (0-based).
fn type_a_root(dim: usize, i: usize, j: usize) -> Weight {
    let mut w = Weight::zero(dim);
    w.0[i] = Scalar::one();
    w.0[j] = Scalar::from_int(-1);
    w
}

/// `e_i + sign·e_j` (0-based, i < j).
fn plus_minus(dim: usize, i: usize, j: usize, sign: i64) -> Weight {
    let mut w = Weight::zero(dim);
    w.0[i] = Scalar::one();
    w.0[j] = Scalar::from_int(sign);
    w
}

fn scaled_basis(dim: usize, i: usize, value: i64) -> Weight {
    let mut w = Weight::zero(dim);
    w.0[i] = Scalar::from_int(value);
    w
}

fn type_d_simple(dim: usize) -> Vec<Weight> {
    let mut simple: Vec<Weight> = (0..dim - 1).map(|i| type_a_root(dim, i, i + 1)).collect();
    simple.push(plus_minus(dim, dim - 2, dim - 1, 1));
    simple
}

/// `(±1/2, ..., ±1/2, tail)` over a five-coordinate block starting at
/// `offset`; bit `k` of `mask` selects the minus sign at block position `k`.
fn half_sign_vector(dim: usize, offset: usize, mask: u32, tail: Scalar) -> Weight {
    let mut w = Weight::zero(dim);
    for k in 0..5 {
        w.0[offset + k] = if mask & (1 << k) != 0 {
            Scalar::ratio(-1, 2)
        } else {
            Scalar::ratio(1, 2)
        };
    }
    w.0[dim - 1] = tail;
    w
}

/// Type A difference set: entries in {0, ±1}, the +1s before the node, the
/// −1s after, in equal nonzero numbers.
fn type_a_differences(rank: usize, node: usize) -> Vec<Weight> {
    let dim = rank + 1;
    let left = node;
    let right = dim - node;
    let mut out = Vec::new();
    for k in 1..=left.min(right) {
        let plus_sets = k_subsets(left, k);
        let minus_sets = k_subsets(right, k);
        for ps in &plus_sets {
            for ms in &minus_sets {
                let mut w = Weight::zero(dim);
                for &p in ps {
                    w.0[p] = Scalar::one();
                }
                for &m in ms {
                    w.0[node + m] = Scalar::from_int(-1);
                }
                out.push(w);
            }
        }
    }
    out
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Type C difference set: nonzero vectors with entries in {0, 1, 2} and an
/// even number of 1s, in lexicographic order.
fn type_c_differences(rank: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut digits = vec![0u8; rank];
    loop {
        let ones = digits.iter().filter(|&&d| d == 1).count();
        let nonzero = digits.iter().any(|&d| d != 0);
        if nonzero && ones % 2 == 0 {
            out.push(Weight(
                digits.iter().map(|&d| Scalar::from_int(d as i64)).collect(),
            ));
        }
        // Increment the base-3 counter, most significant digit first.
        let mut pos = rank;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if digits[pos] < 2 {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// λ₀ − (tabulated weight) over all rows after the first.
fn table_differences(id: TableId, lambda0: &Weight) -> Vec<Weight> {
    tables::rows(id)
        .iter()
        .skip(1)
        .map(|row| lambda0 - &row.weight())
        .collect()
}

/// Closure of the simple roots under all simple reflections, in BFS order.
fn root_closure(simple: &[Weight]) -> Vec<Weight> {
    let reflections: Vec<Root> = simple
        .iter()
        .map(|v| Root {
            vec: v.clone(),
            shorter: false,
        })
        .collect();
    let mut seen: HashSet<Weight> = simple.iter().cloned().collect();
    let mut order: Vec<Weight> = simple.to_vec();
    let mut queue: Vec<Weight> = simple.to_vec();
    while let Some(v) = queue.pop() {
        for refl in &reflections {
            let image = refl.reflect(&v);
            if seen.insert(image.clone()) {
                order.push(image.clone());
                queue.push(image);
            }
        }
    }
    order
}

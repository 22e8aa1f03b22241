//! Root data for the finite-type simple Lie algebras that carry cominuscule
//! nodes (A, B, C, D, E6, E7).
//!
//! Node numbering follows Bourbaki. Internally nodes are 0-based; every
//! user-facing rendering adds one.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("unknown series '{0}' (expected one of A, B, C, D, E6, E7)")]
    UnknownSeries(String),
    #[error("series {0} has no cominuscule nodes and is not supported")]
    NoCominusculeNodes(String),
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: Series, rank: usize },
    #[error("node {node} is not a cominuscule node of {series}{rank}")]
    NotCominuscule { series: Series, rank: usize, node: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

impl Series {
    /// The rank forced by the series, for the exceptional types.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Series::E6 => Some(6),
            Series::E7 => Some(7),
            _ => None,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        !matches!(self, Series::B | Series::C)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E6 => "E6",
            Series::E7 => "E7",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E6" => Ok(Series::E6),
            "E7" => Ok(Series::E7),
            other @ ("E8" | "F4" | "G2") => Err(CartanError::NoCominusculeNodes(other.to_string())),
            other => Err(CartanError::UnknownSeries(other.to_string())),
        }
    }
}

/// An element of the root lattice, as integer coefficients over the simple
/// roots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn coeff(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn add_simple(&self, i: usize, times: i32) -> Self {
        let mut w = self.clone();
        w.0[i] += times;
        w
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub series: Series,
    pub rank: usize,
    /// `a_ij = (alpha_i^vee, alpha_j)`.
    pub cartan_matrix: Vec<Vec<i32>>,
    /// `d_i = (alpha_i, alpha_i) / 2`.
    pub symmetrizers: Vec<i32>,
    /// `(alpha_i, alpha_j)`, normalized so short roots have square length 2.
    pub bilinear: Vec<Vec<i32>>,
    pub highest_root: Weight,
    pub cominuscule_nodes: Vec<usize>,
    pub positive_roots: Vec<Weight>,
}

fn chain_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

/// Symmetrized form from squared lengths and (edge, product) data.
fn symmetric_form(n: usize, sq: &[i32], edges: &[(usize, usize, i32)]) -> Vec<Vec<i32>> {
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        b[i][i] = sq[i];
    }
    for &(i, j, v) in edges {
        b[i][j] = v;
        b[j][i] = v;
    }
    b
}

impl CartanData {
    pub fn build(series: Series, rank: usize) -> Result<Self, CartanError> {
        let invalid = || CartanError::InvalidRank { series, rank };
        let min_rank = match series {
            Series::A => 1,
            Series::B | Series::C => 2,
            Series::D => 4,
            Series::E6 => 6,
            Series::E7 => 7,
        };
        if rank < min_rank || series.fixed_rank().is_some_and(|r| r != rank) {
            return Err(invalid());
        }
        let n = rank;
        let bilinear = match series {
            Series::A => {
                let edges: Vec<_> = chain_edges(n).into_iter().map(|(i, j)| (i, j, -1)).collect();
                symmetric_form(n, &vec![2; n], &edges)
            }
            Series::B => {
                // alpha_n short.
                let mut sq = vec![4; n];
                sq[n - 1] = 2;
                let edges: Vec<_> = chain_edges(n).into_iter().map(|(i, j)| (i, j, -2)).collect();
                symmetric_form(n, &sq, &edges)
            }
            Series::C => {
                // alpha_n long.
                let mut sq = vec![2; n];
                sq[n - 1] = 4;
                let edges: Vec<_> = chain_edges(n)
                    .into_iter()
                    .map(|(i, j)| (i, j, if j == n - 1 { -2 } else { -1 }))
                    .collect();
                symmetric_form(n, &sq, &edges)
            }
            Series::D => {
                let mut edges: Vec<_> =
                    chain_edges(n - 1).into_iter().map(|(i, j)| (i, j, -1)).collect();
                edges.push((n - 3, n - 1, -1));
                symmetric_form(n, &vec![2; n], &edges)
            }
            Series::E6 | Series::E7 => {
                // 1-3-4-5-6(-7), with 2 attached to 4.
                let mut edges = vec![(0, 2, -1), (1, 3, -1)];
                edges.extend((2..n - 1).map(|i| (i, i + 1, -1)));
                symmetric_form(n, &vec![2; n], &edges)
            }
        };
        let symmetrizers: Vec<i32> = (0..n).map(|i| bilinear[i][i] / 2).collect();
        let cartan_matrix: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * bilinear[i][j] / bilinear[i][i]).collect())
            .collect();
        let positive_roots = generate_positive_roots(&cartan_matrix);
        let highest_root = positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .cloned()
            .expect("nonempty root system");
        let cominuscule_nodes = (0..n).filter(|&i| highest_root.coeff(i) == 1).collect();
        Ok(Self {
            series,
            rank,
            cartan_matrix,
            symmetrizers,
            bilinear,
            highest_root,
            cominuscule_nodes,
            positive_roots,
        })
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::simple(self.rank, i)
    }

    /// `(mu, nu)` through the symmetric bilinear form.
    pub fn pairing(&self, mu: &Weight, nu: &Weight) -> i32 {
        let mut acc = 0;
        for (i, a) in mu.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in nu.0.iter().enumerate() {
                acc += a * b * self.bilinear[i][j];
            }
        }
        acc
    }

    /// `(alpha_i, nu)`.
    pub fn pairing_simple(&self, i: usize, nu: &Weight) -> i32 {
        nu.0.iter().enumerate().map(|(j, b)| b * self.bilinear[i][j]).sum()
    }

    pub fn is_cominuscule(&self, x: usize) -> bool {
        self.cominuscule_nodes.contains(&x)
    }

    pub fn check_cominuscule(&self, x: usize) -> Result<(), CartanError> {
        if self.is_cominuscule(x) {
            Ok(())
        } else {
            Err(CartanError::NotCominuscule { series: self.series, rank: self.rank, node: x + 1 })
        }
    }

    /// Nodes adjacent to `x` in the Dynkin diagram.
    pub fn neighbors(&self, x: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| j != x && self.cartan_matrix[x][j] != 0).collect()
    }

    /// The Levi node set `S`: every node except `x`.
    pub fn levi_nodes(&self, x: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| j != x).collect()
    }

    pub fn positive_roots_with_unit_coefficient(&self, x: usize) -> Result<Vec<Weight>, CartanError> {
        self.check_cominuscule(x)?;
        Ok(self.positive_roots.iter().filter(|r| r.coeff(x) == 1).cloned().collect())
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive_roots.binary_search_by(|r| root_order(r, w)).is_ok()
    }

    /// Short label like `A3`.
    pub fn label(&self) -> String {
        match self.series {
            Series::E6 | Series::E7 => self.series.to_string(),
            s => format!("{s}{}", self.rank),
        }
    }
}

fn root_order(a: &Weight, b: &Weight) -> std::cmp::Ordering {
    a.height().cmp(&b.height()).then_with(|| a.cmp(b))
}

/// Breadth-first closure of the simple roots under root strings.
///
/// For a positive root `beta` and simple root `alpha_i`, the alpha_i-string
/// through beta is `beta - p alpha_i, ..., beta + r alpha_i` with
/// `p - r = <beta, alpha_i^vee>`; beta + alpha_i is a root iff `r > 0`.
fn generate_positive_roots(a: &[Vec<i32>]) -> Vec<Weight> {
    let n = a.len();
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut queue: VecDeque<Weight> = VecDeque::new();
    for i in 0..n {
        let w = Weight::simple(n, i);
        seen.insert(w.clone());
        queue.push_back(w);
    }
    while let Some(beta) = queue.pop_front() {
        for (i, row) in a.iter().enumerate() {
            let mut p = 0;
            let mut down = beta.add_simple(i, -1);
            while seen.contains(&down) {
                p += 1;
                down = down.add_simple(i, -1);
            }
            let coroot_pairing: i32 = beta.0.iter().zip(row).map(|(b, c)| b * c).sum();
            let r = p - coroot_pairing;
            if r > 0 {
                let up = beta.add_simple(i, 1);
                if seen.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
    }
    let mut roots: Vec<Weight> = seen.into_iter().collect();
    roots.sort_by(root_order);
    roots
}

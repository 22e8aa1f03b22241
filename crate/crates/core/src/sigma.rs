//! The dual braiding `sigma_check` on `T (x) T`.
//!
//! For a basis vector `rho(l E_x)` with Levi lift `l` and any `Y` in `T`,
//!
//! ```text
//! sigma_check(rho(l E_x) (x) Y) = sum l(1) K_x^-1 S(l(3)) Y (x) rho(l(2) E_x)
//! ```
//!
//! where `l(1) (x) l(2) (x) l(3)` is the iterated coproduct of `l`. Both
//! tensor factors are computed through the Levi action on `T`, which is
//! exactly left multiplication followed by restriction.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::Weight;
use crate::linalg::QqMatrix;
use crate::scalar::{q_power, LaurentFraction, ScalarError};
use crate::tangent::{LowestWeightVector, TangentError, TangentSpace, TangentTensor};
use crate::uqg::{AlgebraElement, Generator};

/// Largest `|k|` tried when looking for eigenvalues of the form `+-q^k`.
const MAX_Q_EXPONENT: i32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SigmaError {
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("element {0} is not in the Levi subalgebra")]
    NotLevi(String),
    #[error("sigma maps weight {from} into weight {to}")]
    NotWeightPreserving { from: Weight, to: Weight },
    #[error("vector is not an eigenvector")]
    NotEigenvector,
    #[error("zero vector has no eigenvalue")]
    ZeroVector,
    #[error("weight block {weight}: eigenspaces found span {found} of {size} dimensions")]
    NonDiagonalizable { weight: Weight, found: usize, size: usize },
    #[error("sigma is singular on weight block {0}")]
    Singular(Weight),
    #[error("sigma does not commute with {0}")]
    NotEquivariant(Generator),
}

/// `sigma_check(rho(l E_x) (x) y)` for a Levi element `l`.
pub fn sigma_apply(t: &TangentSpace, l: &AlgebraElement, y: &[LaurentFraction]) -> Result<TangentTensor, SigmaError> {
    let x = t.node();
    if l.terms().any(|(m, _)| m.nodes().any(|i| i == x)) {
        return Err(SigmaError::NotLevi(l.to_string()));
    }
    let n = t.dim();
    let uqg = t.uqg();
    let ex = t.unit_vector(0);
    let kx_inv = t.action_matrix(Generator::K(x, -1))?;
    let mut out = vec![LaurentFraction::zero(); n * n];
    let delta = uqg.coproduct(l, 3);
    for (ms, c) in delta.terms() {
        let m1 = t.element_matrix(&AlgebraElement::monomial(ms[0].clone(), LaurentFraction::one()))?;
        let s3 = uqg.antipode(&AlgebraElement::monomial(ms[2].clone(), LaurentFraction::one()));
        let first = m1.mul(&kx_inv).mul(&t.element_matrix(&s3)?).mul_vec(y);
        let m2 = t.element_matrix(&AlgebraElement::monomial(ms[1].clone(), LaurentFraction::one()))?;
        let second = m2.mul_vec(&ex);
        for (k, v) in t.tensor(&first, &second).into_iter().enumerate() {
            if !v.is_zero() {
                out[k] = out[k].clone() + v * c;
            }
        }
    }
    Ok(out)
}

/// `sigma_check` as an exact matrix on `T (x) T`.
#[derive(Debug, Clone)]
pub struct SigmaMatrix {
    tangent: Arc<TangentSpace>,
    matrix: QqMatrix,
}

/// Assembles the matrix, checking weight preservation.
///
/// Writing `Phi_l(Y)` for the right-hand side of the defining formula, the
/// coproduct of `E_j l` gives the recursion
///
/// ```text
/// Phi_1         = (K_x^-1 Y) (x) E_x
/// Phi_{E_j l}   = Delta(E_j) Phi_l K_j^-1 - Phi_l E_j K_j^-1
/// ```
///
/// as maps `T -> T (x) T`. Every basis lift is `E_j` times the lift of
/// another basis vector, so each `Phi` costs two matrix products.
pub fn sigma_matrix(t: Arc<TangentSpace>) -> Result<SigmaMatrix, SigmaError> {
    let n = t.dim();
    let x = t.node();
    let kx_inv = t.action_matrix(Generator::K(x, -1))?;
    let ex = t.unit_vector(0);
    let base_cols: Vec<Vec<LaurentFraction>> =
        (0..n).map(|j| t.tensor(&kx_inv.column(j), &ex)).collect();
    let mut phi: Vec<QqMatrix> = Vec::with_capacity(n);
    phi.push(QqMatrix::from_columns(n * n, &base_cols));
    for (i, b) in t.basis().iter().enumerate().skip(1) {
        let parent = t.index_of_word(&b.word[1..]).ok_or_else(|| {
            SigmaError::NotLevi(format!("basis word {} has no basis suffix", b.label()))
        })?;
        let j = b.word[0] as usize;
        let kj_inv = t.action_matrix(Generator::K(j, -1))?;
        let delta_e = t.tensor_action_matrix(Generator::E(j))?;
        let ej_kinv = t.action_matrix(Generator::E(j))?.mul(&kj_inv);
        let p = &phi[parent];
        let next = delta_e.mul(p).mul(&kj_inv).sub(&p.mul(&ej_kinv));
        debug_assert_eq!(phi.len(), i);
        phi.push(next);
    }
    let columns: Vec<Vec<LaurentFraction>> =
        (0..n).flat_map(|i| (0..n).map(|j| phi[i].column(j)).collect::<Vec<_>>()).collect();
    SigmaMatrix::new(t, QqMatrix::from_columns(n * n, &columns))
}

/// Column-by-column assembly through [`sigma_apply`] and the full iterated
/// coproduct of each lift. Slower than [`sigma_matrix`]; kept as a
/// cross-check.
pub fn sigma_matrix_sweedler(t: Arc<TangentSpace>) -> Result<SigmaMatrix, SigmaError> {
    let n = t.dim();
    let column_groups = (0..n)
        .into_par_iter()
        .map(|i| {
            let lift = t.uqg().e_word(t.basis()[i].lift());
            (0..n).map(|j| sigma_apply(&t, &lift, &t.unit_vector(j))).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let columns: Vec<Vec<LaurentFraction>> = column_groups.into_iter().flatten().collect();
    SigmaMatrix::new(t, QqMatrix::from_columns(n * n, &columns))
}

/// One eigenvalue with its multiplicity and the kernel dimensions of the
/// specialized matrix `M - lambda` at each cross-check point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenspace {
    pub eigenvalue: LaurentFraction,
    pub multiplicity: usize,
    pub specialized: Vec<SpecializedDim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializedDim {
    pub q: String,
    pub kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowestWeightSummary {
    pub weight: Weight,
    pub vector: String,
    /// `None` when the vector is not an eigenvector.
    pub eigenvalue: Option<LaurentFraction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<Eigenspace>,
    pub minus_one_dim: usize,
    pub classical_lambda2_dim: usize,
    pub strongly_torsion_free: bool,
    pub lowest_weight_summary: Vec<LowestWeightSummary>,
}

impl SpectralReport {
    /// Whether every kernel dimension matches its specialized counterparts.
    pub fn specializations_agree(&self) -> bool {
        self.eigenvalues
            .iter()
            .all(|e| e.specialized.iter().all(|s| s.kernel_dim == e.multiplicity))
    }
}

fn specialized_rank(m: &QqMatrix, q0: &BigRational) -> Result<usize, ScalarError> {
    Ok(m.specialize(q0)?.rank())
}

impl SigmaMatrix {
    pub fn new(tangent: Arc<TangentSpace>, matrix: QqMatrix) -> Result<Self, SigmaError> {
        let weights = tangent.tensor_weights();
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                if weights[r] != weights[c] && !matrix.get(r, c).is_zero() {
                    return Err(SigmaError::NotWeightPreserving {
                        from: weights[c].clone(),
                        to: weights[r].clone(),
                    });
                }
            }
        }
        Ok(Self { tangent, matrix })
    }

    pub fn tangent(&self) -> &Arc<TangentSpace> {
        &self.tangent
    }

    pub fn matrix(&self) -> &QqMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[LaurentFraction]) -> TangentTensor {
        self.matrix.mul_vec(v)
    }

    fn block(&self, indices: &[usize]) -> QqMatrix {
        self.matrix.submatrix(indices, indices)
    }

    /// `lambda` with `M t = lambda t`.
    pub fn eigenvalue_of(&self, t: &[LaurentFraction]) -> Result<LaurentFraction, SigmaError> {
        let p = t.iter().position(|c| !c.is_zero()).ok_or(SigmaError::ZeroVector)?;
        let image = self.apply(t);
        let lambda = &image[p] / &t[p];
        let ok = image.iter().zip(t).all(|(a, b)| *a == &lambda * b);
        if ok {
            Ok(lambda)
        } else {
            Err(SigmaError::NotEigenvector)
        }
    }

    /// Exact eigen-decomposition, block by block. Candidate eigenvalues come
    /// from the given vectors and from signed powers of q; a candidate is
    /// screened at the specialization points and confirmed by an exact
    /// kernel computation. Blocks whose eigenspaces do not fill the block
    /// are reported as errors.
    pub fn spectrum(
        &self,
        lowest: &[LowestWeightVector],
        points: &[BigRational],
    ) -> Result<SpectralReport, SigmaError> {
        let blocks = self.tangent.weight_blocks();
        let mut lw_values: Vec<Option<LaurentFraction>> = Vec::with_capacity(lowest.len());
        for v in lowest {
            lw_values.push(self.eigenvalue_of(&v.coords).ok());
        }
        let mut base: Vec<LaurentFraction> = Vec::new();
        for v in lw_values.iter().flatten() {
            if !base.contains(v) {
                base.push(v.clone());
            }
        }
        for k in -MAX_Q_EXPONENT..=MAX_Q_EXPONENT {
            for sign in [1, -1] {
                let c = q_power(k) * LaurentFraction::from_int(sign);
                if !base.contains(&c) {
                    base.push(c);
                }
            }
        }
        let per_block = blocks
            .par_iter()
            .map(|(weight, idx)| -> Result<Vec<(LaurentFraction, usize)>, SigmaError> {
                let b = self.block(idx);
                let mut found = Vec::new();
                let mut total = 0;
                for lambda in &base {
                    let shifted = b.shift_diagonal(lambda);
                    let mut screened_out = false;
                    for q0 in points {
                        // Singular over Q(q) implies singular at every point.
                        if let Ok(r) = specialized_rank(&shifted, q0) {
                            if r == idx.len() {
                                screened_out = true;
                                break;
                            }
                        }
                    }
                    if screened_out {
                        continue;
                    }
                    let dim = idx.len() - shifted.rank();
                    if dim > 0 {
                        found.push((lambda.clone(), dim));
                        total += dim;
                    }
                    if total == idx.len() {
                        break;
                    }
                }
                if total != idx.len() {
                    return Err(SigmaError::NonDiagonalizable { weight: weight.clone(), found: total, size: idx.len() });
                }
                Ok(found)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut mult: Vec<(LaurentFraction, usize)> = Vec::new();
        for (lambda, d) in per_block.into_iter().flatten() {
            match mult.iter_mut().find(|(l, _)| *l == lambda) {
                Some(e) => e.1 += d,
                None => mult.push((lambda, d)),
            }
        }
        let key = |l: &LaurentFraction| l.specialize(&BigRational::from_integer(2.into())).ok();
        mult.sort_by_key(|e| key(&e.0));
        let mut eigenvalues = Vec::new();
        for (lambda, multiplicity) in mult {
            let shifted = self.matrix.shift_diagonal(&lambda);
            let specialized = points
                .iter()
                .map(|q0| {
                    Ok(SpecializedDim {
                        q: q0.to_string(),
                        kernel_dim: self.dim() - specialized_rank(&shifted, q0)?,
                    })
                })
                .collect::<Result<Vec<_>, ScalarError>>()?;
            eigenvalues.push(Eigenspace { eigenvalue: lambda, multiplicity, specialized });
        }
        let minus_one = -LaurentFraction::one();
        let minus_one_dim = eigenvalues
            .iter()
            .find(|e| e.eigenvalue == minus_one)
            .map_or(0, |e| e.multiplicity);
        let n = self.tangent.dim();
        let classical_lambda2_dim = n * (n - 1) / 2;
        let lowest_weight_summary = lowest
            .iter()
            .zip(lw_values)
            .map(|(v, eigenvalue)| LowestWeightSummary {
                weight: v.weight.clone(),
                vector: self.tangent.render_tensor(&v.coords),
                eigenvalue,
            })
            .collect();
        Ok(SpectralReport {
            eigenvalues,
            minus_one_dim,
            classical_lambda2_dim,
            strongly_torsion_free: minus_one_dim == classical_lambda2_dim,
            lowest_weight_summary,
        })
    }

    /// Checks `M G = G M` for every Levi E and F and every K_i on `T (x) T`.
    pub fn check_equivariance(&self) -> Result<(), SigmaError> {
        let t = &self.tangent;
        let mut gens: Vec<Generator> = Vec::new();
        for &j in t.levi() {
            gens.push(Generator::E(j));
            gens.push(Generator::F(j));
        }
        gens.extend((0..t.cartan().rank).map(|i| Generator::K(i, 1)));
        let failures: Vec<Generator> = gens
            .par_iter()
            .filter_map(|&g| {
                let gm = match t.tensor_action_matrix(g) {
                    Ok(m) => m,
                    Err(_) => return Some(g),
                };
                (self.matrix.mul(&gm) != gm.mul(&self.matrix)).then_some(g)
            })
            .collect();
        match failures.first() {
            Some(&g) => Err(SigmaError::NotEquivariant(g)),
            None => Ok(()),
        }
    }

    /// Basis of `ker(M + id)`, computed block by block.
    pub fn relation_space_dual(&self) -> Vec<TangentTensor> {
        let minus_one = -LaurentFraction::one();
        let mut out = Vec::new();
        for (_, idx) in self.tangent.weight_blocks() {
            for kv in self.block(&idx).shift_diagonal(&minus_one).kernel() {
                let mut v = vec![LaurentFraction::zero(); self.dim()];
                for (&i, c) in idx.iter().zip(kv) {
                    v[i] = c;
                }
                out.push(v);
            }
        }
        out
    }

    /// Exact inverse, block by block.
    pub fn invert(&self) -> Result<SigmaMatrix, SigmaError> {
        let mut inv = QqMatrix::zeros(self.dim(), self.dim());
        for (w, idx) in self.tangent.weight_blocks() {
            let b = self.block(&idx).inverse().ok_or(SigmaError::Singular(w))?;
            for (r, &i) in idx.iter().enumerate() {
                for (c, &j) in idx.iter().enumerate() {
                    inv.set(i, j, b.get(r, c).clone());
                }
            }
        }
        Ok(SigmaMatrix { tangent: self.tangent.clone(), matrix: inv })
    }

    /// Size of each weight block.
    pub fn block_sizes(&self) -> BTreeMap<Weight, usize> {
        self.tangent.weight_blocks().into_iter().map(|(w, idx)| (w, idx.len())).collect()
    }
}

/// Kernel dimension of `m` specialized at `q0`.
pub fn specialized_kernel_dim(m: &QqMatrix, q0: &BigRational) -> Result<usize, ScalarError> {
    Ok(m.cols() - specialized_rank(m, q0)?)
}

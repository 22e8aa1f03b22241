//! The anti-holomorphic tangent space `T = U_q(l_S) E_x` as a based module.
//!
//! Elements of `T` are classes of pure-E words ending in `E_x` modulo the
//! q-Serre ideal and the left ideal generated by the Levi generators `E_j`,
//! `j != x`. The restriction map [`rho_restrict`] sends an arbitrary
//! normal-ordered element to this quotient by killing trailing F's and
//! replacing trailing K's by their counit. Together the kernel of `rho` and
//! the Levi ideal form a left ideal, so left multiplication descends to an
//! action of the Levi subalgebra `U_q(l_S)` on `T`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{CartanData, CartanError, Weight};
use crate::linalg::QqMatrix;
use crate::scalar::{q_power, LaurentFraction};
use crate::uqg::{
    graded_quotient, AlgebraElement, Generator, Monomial, QuotientMode, Uqg, Word,
};

pub type TangentVector = Vec<LaurentFraction>;
pub type TangentTensor = Vec<LaurentFraction>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangentError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("generator {0} is not in the Levi subalgebra")]
    NotInLevi(Generator),
    #[error("weight {weight} has a {dim}-dimensional weight space; expected at most 1")]
    Multiplicity { weight: Weight, dim: usize },
    #[error("element has a nonzero component of weight {0} outside the tangent space")]
    NotInTangent(Weight),
}

/// Renders an E-word with 1-based labels, e.g. `E1 E2`.
pub fn word_label(word: &[u8]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter().map(|i| format!("E{}", i + 1)).collect::<Vec<_>>().join(" ")
}

/// Restriction to the tangent quotient: terms with an F vanish, the trailing
/// K-part maps to 1. The result is a combination of pure E-words.
pub fn rho_restrict(a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m, c) in a.terms() {
        if m.f.is_empty() {
            out.add_term(Monomial::e_word(&m.e, m.rank()), c.clone());
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    /// Standard word; it always ends in `E_x`.
    pub word: Word,
    pub weight: Weight,
}

impl BasisVector {
    /// The Levi word `l` with `word = l E_x`.
    pub fn lift(&self) -> &[u8] {
        &self.word[..self.word.len() - 1]
    }

    pub fn label(&self) -> String {
        word_label(&self.word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowestWeightVector {
    pub weight: Weight,
    pub coords: TangentTensor,
}

#[derive(Debug)]
pub struct TangentSpace {
    uqg: Uqg,
    node: usize,
    levi: Vec<usize>,
    basis: Vec<BasisVector>,
    index: BTreeMap<Weight, usize>,
    e_action: BTreeMap<usize, QqMatrix>,
    f_action: BTreeMap<usize, QqMatrix>,
}

/// `[K_j; 0] = (K_j - K_j^-1) / (q_j - q_j^-1)` on a vector of weight `mu`.
fn bracket(cartan: &CartanData, j: usize, mu: &Weight) -> LaurentFraction {
    let p = cartan.pairing_simple(j, mu);
    let d = cartan.symmetrizers[j];
    (q_power(p) - q_power(-p)) / (q_power(d) - q_power(-d))
}

/// Builds the tangent space at the cominuscule node `x` (0-based).
///
/// `T` is generated by the lowest weight vector `E_x` and is finite
/// dimensional, hence irreducible, so a vector of weight above `alpha_x` is
/// zero exactly when every Levi `F_k` kills it. The module is grown one
/// height at a time: candidates `E_j v` are tested through
/// `F_k E_j v = E_j F_k v - delta_jk [K_j; 0] v`, using only actions already
/// known on lower weights. The basis vector of each weight is the lex-least
/// candidate word, so it is always a Levi word followed by `E_x`.
pub fn build_tangent(cartan: Arc<CartanData>, x: usize) -> Result<TangentSpace, TangentError> {
    cartan.check_cominuscule(x)?;
    let levi = cartan.levi_nodes(x);
    let mut basis = vec![BasisVector { word: vec![x as u8], weight: cartan.simple_root(x) }];
    let mut index: BTreeMap<Weight, usize> = BTreeMap::new();
    index.insert(basis[0].weight.clone(), 0);
    // (generator node, source index) -> (target index, coefficient)
    let mut e: HashMap<(usize, usize), (usize, LaurentFraction)> = HashMap::new();
    let mut f: HashMap<(usize, usize), (usize, LaurentFraction)> = HashMap::new();
    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut candidates: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &src in &level {
            for &j in &levi {
                candidates.entry(basis[src].weight.add_simple(j, 1)).or_default().push((j, src));
            }
        }
        let mut next = Vec::new();
        for (nu, list) in candidates {
            // Image of each candidate under (F_k)_k, as coefficients on the
            // basis vectors of weight nu - alpha_k.
            let images: Vec<Vec<LaurentFraction>> = list
                .iter()
                .map(|&(j, src)| {
                    levi.iter()
                        .map(|&k| {
                            let mut v = LaurentFraction::zero();
                            if let Some((mid, c1)) = f.get(&(k, src)) {
                                if let Some((_, c2)) = e.get(&(j, *mid)) {
                                    v = c1 * c2;
                                }
                            }
                            if j == k {
                                v = v - bracket(&cartan, j, &basis[src].weight);
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let word_of = |&(j, src): &(usize, usize)| {
                let mut w = vec![j as u8];
                w.extend_from_slice(&basis[src].word);
                w
            };
            let Some(best) = (0..list.len())
                .filter(|&i| images[i].iter().any(|c| !c.is_zero()))
                .min_by_key(|&i| word_of(&list[i]))
            else {
                continue;
            };
            let lead = &images[best];
            let p = lead.iter().position(|c| !c.is_zero()).expect("nonzero image");
            let new = basis.len();
            let mut coeffs = Vec::with_capacity(list.len());
            for img in &images {
                let c = &img[p] / &lead[p];
                if img.iter().zip(lead).any(|(a, b)| *a != &c * b) {
                    let dim = QqMatrix::from_rows(levi.len(), &images).rank();
                    return Err(TangentError::Multiplicity { weight: nu, dim });
                }
                coeffs.push(c);
            }
            for (&(j, src), c) in list.iter().zip(coeffs) {
                if !c.is_zero() {
                    e.insert((j, src), (new, c));
                }
            }
            for (kk, &k) in levi.iter().enumerate() {
                if !lead[kk].is_zero() {
                    let dst = index[&nu.add_simple(k, -1)];
                    f.insert((k, new), (dst, lead[kk].clone()));
                }
            }
            basis.push(BasisVector { word: word_of(&list[best]), weight: nu.clone() });
            index.insert(nu, new);
            next.push(new);
        }
        level = next;
    }
    // Reorder by (height, word).
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        let (wa, wb) = (&basis[a], &basis[b]);
        wa.weight.height().cmp(&wb.weight.height()).then(wa.word.cmp(&wb.word))
    });
    let mut position = vec![0; basis.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let n = basis.len();
    let assemble = |map: &HashMap<(usize, usize), (usize, LaurentFraction)>, j: usize| {
        let mut m = QqMatrix::zeros(n, n);
        for (&(g, src), (dst, c)) in map {
            if g == j {
                m.set(position[*dst], position[src], c.clone());
            }
        }
        m
    };
    let e_action = levi.iter().map(|&j| (j, assemble(&e, j))).collect();
    let f_action = levi.iter().map(|&j| (j, assemble(&f, j))).collect();
    let basis: Vec<BasisVector> = order.iter().map(|&old| basis[old].clone()).collect();
    let index = basis.iter().enumerate().map(|(k, b)| (b.weight.clone(), k)).collect();
    Ok(TangentSpace { uqg: Uqg::new(cartan), node: x, levi, basis, index, e_action, f_action })
}

impl TangentSpace {
    pub fn uqg(&self) -> &Uqg {
        &self.uqg
    }

    pub fn cartan(&self) -> &CartanData {
        self.uqg.cartan()
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn index_of_weight(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of the basis vector with the given standard word.
    pub fn index_of_word(&self, word: &[u8]) -> Option<usize> {
        self.basis.iter().position(|b| b.word == word)
    }

    pub fn unit_vector(&self, i: usize) -> TangentVector {
        let mut v = vec![LaurentFraction::zero(); self.dim()];
        v[i] = LaurentFraction::one();
        v
    }

    /// The basis vector as an algebra element (its standard word).
    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        self.uqg.e_word(&self.basis[i].word)
    }

    /// Coordinates of the image of `a` in `T`.
    pub fn express(&self, a: &AlgebraElement) -> Result<TangentVector, TangentError> {
        let r = rho_restrict(a);
        let mut by_weight: BTreeMap<Weight, Vec<(&Word, &LaurentFraction)>> = BTreeMap::new();
        for (m, c) in r.terms() {
            by_weight.entry(m.weight()).or_default().push((&m.e, c));
        }
        let mut out = vec![LaurentFraction::zero(); self.dim()];
        let mode = QuotientMode::Tangent { node: self.node };
        for (w, terms) in by_weight {
            // Words not ending in E_x lie in the Levi ideal.
            let x = self.node as u8;
            let terms: Vec<_> = terms.into_iter().filter(|(word, _)| word.last() == Some(&x)).collect();
            if terms.is_empty() {
                continue;
            }
            let q = graded_quotient(self.cartan(), mode, &w);
            let coords = q.coordinates(terms.into_iter());
            match self.index.get(&w) {
                Some(&k) => {
                    let word = &self.basis[k].word;
                    let unit = LaurentFraction::one();
                    let scale = q.coordinates(std::iter::once((word, &unit)));
                    out[k] = &coords[0] / &scale[0];
                }
                None => {
                    if coords.iter().any(|c| !c.is_zero()) {
                        return Err(TangentError::NotInTangent(w));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The algebra element `sum_i v_i b_i`.
    pub fn element_of(&self, v: &[LaurentFraction]) -> AlgebraElement {
        let mut a = AlgebraElement::zero();
        for (b, c) in self.basis.iter().zip(v) {
            a.add_term(Monomial::e_word(&b.word, self.uqg.rank()), c.clone());
        }
        a
    }

    /// Matrix of `v -> rho(a v)`, computed directly in the algebra through
    /// word-level Serre reduction. Independent of the recursion in
    /// [`build_tangent`]; practical up to moderate rank.
    pub fn left_multiplication_matrix(&self, a: &AlgebraElement) -> Result<QqMatrix, TangentError> {
        let columns = (0..self.dim())
            .map(|i| self.express(&self.uqg.multiply(a, &self.basis_element(i))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QqMatrix::from_columns(self.dim(), &columns))
    }

    fn check_levi(&self, g: Generator) -> Result<(), TangentError> {
        match g {
            Generator::E(j) | Generator::F(j) if !self.levi.contains(&j) => Err(TangentError::NotInLevi(g)),
            _ => Ok(()),
        }
    }

    /// Diagonal matrix of `K_i^s`.
    fn k_matrix(&self, i: usize, s: i32) -> QqMatrix {
        let mut m = QqMatrix::zeros(self.dim(), self.dim());
        for (k, b) in self.basis.iter().enumerate() {
            m.set(k, k, q_power(s * self.cartan().pairing_simple(i, &b.weight)));
        }
        m
    }

    pub fn action_matrix(&self, g: Generator) -> Result<QqMatrix, TangentError> {
        self.check_levi(g)?;
        Ok(match g {
            Generator::E(j) => self.e_action[&j].clone(),
            Generator::F(j) => self.f_action[&j].clone(),
            Generator::K(i, s) => self.k_matrix(i, s),
        })
    }

    pub fn act(&self, g: Generator, v: &[LaurentFraction]) -> Result<TangentVector, TangentError> {
        Ok(self.action_matrix(g)?.mul_vec(v))
    }

    /// Matrix of an element of the Levi subalgebra (E_j, F_j for j in S and
    /// any K's) acting on `T`.
    pub fn element_matrix(&self, a: &AlgebraElement) -> Result<QqMatrix, TangentError> {
        let n = self.dim();
        let mut out = QqMatrix::zeros(n, n);
        for (m, c) in a.terms() {
            let mut acc = QqMatrix::identity(n);
            for g in Uqg::letters(m) {
                acc = acc.mul(&self.action_matrix(g)?);
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// Total weights of the tensor basis `b_i (x) b_j`, indexed `i * n + j`.
    pub fn tensor_weights(&self) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.dim() * self.dim());
        for a in &self.basis {
            for b in &self.basis {
                out.push(&a.weight + &b.weight);
            }
        }
        out
    }

    /// Matrix of `g` on `T (x) T` through the coproduct.
    pub fn tensor_action_matrix(&self, g: Generator) -> Result<QqMatrix, TangentError> {
        self.check_levi(g)?;
        let n = self.dim();
        let id = QqMatrix::identity(n);
        Ok(match g {
            Generator::E(j) => {
                let e = self.action_matrix(g)?;
                e.kron(&self.k_matrix(j, 1)).add(&id.kron(&e))
            }
            Generator::F(j) => {
                let f = self.action_matrix(g)?;
                f.kron(&id).add(&self.k_matrix(j, -1).kron(&f))
            }
            Generator::K(i, s) => {
                let k = self.k_matrix(i, s);
                k.kron(&k)
            }
        })
    }

    pub fn act_tensor(&self, g: Generator, t: &[LaurentFraction]) -> Result<TangentTensor, TangentError> {
        Ok(self.tensor_action_matrix(g)?.mul_vec(t))
    }

    /// `u (x) v` in tensor coordinates.
    pub fn tensor(&self, u: &[LaurentFraction], v: &[LaurentFraction]) -> TangentTensor {
        let mut out = Vec::with_capacity(u.len() * v.len());
        for a in u {
            for b in v {
                out.push(a * b);
            }
        }
        out
    }

    /// Tensor index of `b_i (x) b_j`.
    pub fn tensor_index(&self, i: usize, j: usize) -> usize {
        i * self.dim() + j
    }

    pub fn tensor_label(&self, idx: usize) -> String {
        let n = self.dim();
        format!("{} ⊗ {}", self.basis[idx / n].label(), self.basis[idx % n].label())
    }

    /// Human-readable rendering of a tensor.
    pub fn render_tensor(&self, t: &[LaurentFraction]) -> String {
        let parts = t
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| crate::uqg::render_term(c, &self.tensor_label(k)))
            .collect();
        crate::uqg::join_terms(parts)
    }

    /// Tensor indices grouped by total weight, blocks in ascending weight
    /// order.
    pub fn weight_blocks(&self) -> Vec<(Weight, Vec<usize>)> {
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, w) in self.tensor_weights().into_iter().enumerate() {
            blocks.entry(w).or_default().push(k);
        }
        let mut out: Vec<_> = blocks.into_iter().collect();
        out.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then(a.0.cmp(&b.0)));
        out
    }

    /// A basis of the joint kernel of the Levi F's on `T (x) T`, block by
    /// block. Each vector is weight-homogeneous and scaled so its first
    /// nonzero coordinate is 1. With an empty Levi set every vector is
    /// lowest weight and the whole standard basis is returned.
    pub fn lowest_weight_vectors(&self) -> Result<Vec<LowestWeightVector>, TangentError> {
        let n2 = self.dim() * self.dim();
        let fs = self
            .levi
            .iter()
            .map(|&j| self.tensor_action_matrix(Generator::F(j)))
            .collect::<Result<Vec<_>, _>>()?;
        let all_rows: Vec<usize> = (0..n2).collect();
        let mut out = Vec::new();
        for (weight, block) in self.weight_blocks() {
            let kernel = if fs.is_empty() {
                (0..block.len())
                    .map(|k| {
                        let mut v = vec![LaurentFraction::zero(); block.len()];
                        v[k] = LaurentFraction::one();
                        v
                    })
                    .collect()
            } else {
                let stacked: Vec<QqMatrix> = fs.iter().map(|f| f.submatrix(&all_rows, &block)).collect();
                QqMatrix::vstack(&stacked).kernel()
            };
            for kv in kernel {
                let mut coords = vec![LaurentFraction::zero(); n2];
                for (&idx, c) in block.iter().zip(kv) {
                    coords[idx] = c;
                }
                normalize_leading(&mut coords);
                out.push(LowestWeightVector { weight: weight.clone(), coords });
            }
        }
        Ok(out)
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_leading(v: &mut [LaurentFraction]) {
    if let Some(p) = v.iter().position(|c| !c.is_zero()) {
        let inv = v[p].inv().expect("nonzero entry");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
    }
}

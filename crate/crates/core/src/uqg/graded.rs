//! Graded quotients of the free algebra on the E's.
//!
//! For a weight `mu`, the span of E-words of weight `mu` is cut down by the
//! degree-`mu` part of a two-sided ideal. Two ideals are supported:
//!
//! * [`QuotientMode::Serre`]: the q-Serre ideal, giving `U_q(n+)` itself.
//! * [`QuotientMode::Tangent`]: the q-Serre ideal plus the left ideal
//!   generated by the Levi generators `E_j` (`j != x`), i.e. the quotient
//!   `U_q(n+) / U_q(n+) E_S`. Words ending in a Levi letter vanish outright,
//!   so only words ending in `E_x` are kept as columns.
//!
//! Columns are ordered lexicographically descending and relations are kept in
//! reduced echelon form, so pivots sit on the lex-largest words and the
//! surviving standard words are the lex-least representatives.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, OnceLock};

use crate::cartan::{CartanData, Series, Weight};
use crate::linalg::EchelonBasis;
use crate::scalar::{q_binomial, LaurentFraction};

use super::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientMode {
    Serre,
    Tangent { node: usize },
}

#[derive(Debug)]
pub struct GradedQuotient {
    weight: Weight,
    columns: Vec<Word>,
    index: HashMap<Word, usize>,
    relations: EchelonBasis<LaurentFraction>,
    standard_cols: Vec<usize>,
    standard: Vec<Word>,
}

/// All distinct words with the given letter multiplicities, ascending lex.
pub fn words_of_weight(weight: &Weight) -> Vec<Word> {
    fn rec(counts: &mut [i32], remaining: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8);
                rec(counts, remaining - 1, cur, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    assert!(weight.is_nonnegative(), "E-words only have nonnegative weights");
    let mut counts = weight.0.clone();
    let mut out = Vec::new();
    rec(&mut counts, weight.height() as usize, &mut Vec::new(), &mut out);
    out
}

/// The q-Serre element for the ordered pair `(i, j)`, as (word, coefficient).
pub fn serre_element(cartan: &CartanData, i: usize, j: usize) -> Vec<(Word, LaurentFraction)> {
    let m = (1 - cartan.cartan_matrix[i][j]) as u32;
    let d = cartan.symmetrizers[i] as u32;
    (0..=m)
        .map(|r| {
            let mut w = vec![i as u8; (m - r) as usize];
            w.push(j as u8);
            w.extend(std::iter::repeat_n(i as u8, r as usize));
            let sign = if r % 2 == 0 { 1 } else { -1 };
            (w, q_binomial(m, r, d) * LaurentFraction::from_int(sign))
        })
        .collect()
}

impl GradedQuotient {
    fn compute(cartan: &CartanData, mode: QuotientMode, weight: &Weight) -> Self {
        let keep = |w: &[u8]| match mode {
            QuotientMode::Serre => true,
            QuotientMode::Tangent { node } => w.last() == Some(&(node as u8)),
        };
        let mut columns: Vec<Word> = words_of_weight(weight).into_iter().filter(|w| keep(w)).collect();
        columns.reverse();
        let index: HashMap<Word, usize> =
            columns.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut relations = EchelonBasis::new(columns.len());
        let n = cartan.rank;
        for i in 0..n {
            for j in 0..n {
                if i == j || relations.rank() == columns.len() {
                    continue;
                }
                let s = serre_element(cartan, i, j);
                let ws = Weight(super::Monomial::e_word(&s[0].0, n).weight().0);
                let rest = weight - &ws;
                if !rest.is_nonnegative() {
                    continue;
                }
                for w in words_of_weight(&rest) {
                    for cut in 0..=w.len() {
                        let (u, v) = w.split_at(cut);
                        if let QuotientMode::Tangent { node } = mode {
                            // u s v with v ending in a Levi letter lies in the Levi ideal.
                            if v.last().is_some_and(|&l| l as usize != node) {
                                continue;
                            }
                        }
                        let mut vec = vec![LaurentFraction::zero(); columns.len()];
                        let mut any = false;
                        for (sw, c) in &s {
                            let mut word = u.to_vec();
                            word.extend_from_slice(sw);
                            word.extend_from_slice(v);
                            if let Some(&k) = index.get(&word) {
                                vec[k] = vec[k].clone() + c;
                                any = true;
                            }
                        }
                        if any {
                            relations.insert(vec);
                        }
                    }
                }
            }
        }
        let pivots = relations.pivots();
        let mut standard_cols: Vec<usize> =
            (0..columns.len()).filter(|k| pivots.binary_search(k).is_err()).collect();
        standard_cols.reverse();
        let standard = standard_cols.iter().map(|&k| columns[k].clone()).collect();
        Self { weight: weight.clone(), columns, index, relations, standard_cols, standard }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn num_words(&self) -> usize {
        self.columns.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Standard words, ascending lex.
    pub fn standard_words(&self) -> &[Word] {
        &self.standard
    }

    /// Coordinates over [`Self::standard_words`] of a combination of words of
    /// this weight. Words outside the column set (Levi-ending words in
    /// tangent mode) are zero in the quotient and are skipped.
    pub fn coordinates<'a>(
        &self,
        terms: impl Iterator<Item = (&'a Word, &'a LaurentFraction)>,
    ) -> Vec<LaurentFraction> {
        let mut v = vec![LaurentFraction::zero(); self.columns.len()];
        for (w, c) in terms {
            if let Some(&k) = self.index.get(w) {
                v[k] = v[k].clone() + c;
            }
        }
        self.relations.reduce(&mut v);
        self.standard_cols.iter().map(|&k| v[k].clone()).collect()
    }
}

type CacheKey = (Series, usize, QuotientMode, Weight);
type Slot = Arc<OnceLock<Arc<GradedQuotient>>>;

static CACHE: LazyLock<Mutex<HashMap<CacheKey, Slot>>> = LazyLock::new(Default::default);

/// Memoized graded quotient; safe to call from several threads.
pub fn graded_quotient(cartan: &CartanData, mode: QuotientMode, weight: &Weight) -> Arc<GradedQuotient> {
    let key = (cartan.series, cartan.rank, mode, weight.clone());
    let slot = {
        let mut map = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(key).or_default().clone()
    };
    slot.get_or_init(|| Arc::new(GradedQuotient::compute(cartan, mode, weight))).clone()
}

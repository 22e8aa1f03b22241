//! Symbolic computation in the Drinfeld-Jimbo algebra U_q(g).
//!
//! Elements are finite Q(q)-combinations of normal-ordered monomials
//! `(E-word)(K-part)(F-word)`. Multiplication rewrites with
//!
//! ```text
//! K_i E_j = q^{(a_i,a_j)} E_j K_i        K_i F_j = q^{-(a_i,a_j)} F_j K_i
//! E_i F_j - F_j E_i = delta_ij (K_i - K_i^-1) / (q_i - q_i^-1)
//! ```
//!
//! The q-Serre relations are not used as rewrite rules: words in the E's (and
//! F's) are kept free, and equality modulo the Serre ideal is decided by
//! graded linear algebra in [`graded`]. Every identity that holds before the
//! Serre quotient (the Hopf axioms, the commutation relations) therefore
//! holds exactly on the stored representation.

pub mod graded;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::cartan::{CartanData, Weight};
use crate::scalar::{q_power, LaurentFraction};

pub use graded::{graded_quotient, GradedQuotient, QuotientMode};

/// A word in the E's (or F's): node indices, left to right.
pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UqgError {
    #[error("element has terms outside the positive part: {0}")]
    NotPurePositive(String),
    #[error("element is not weight-homogeneous")]
    NotHomogeneous,
}

/// A generator of U_q(g). `K(i, s)` is `K_i^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize, i32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "E{}", i + 1),
            Generator::F(i) => write!(f, "F{}", i + 1),
            Generator::K(i, 1) => write!(f, "K{}", i + 1),
            Generator::K(i, s) => write!(f, "K{}^{}", i + 1, s),
        }
    }
}

/// Normal-ordered monomial `E_{e_1}...E_{e_n} K^k F_{f_1}...F_{f_m}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e: Word,
    pub k: Vec<i32>,
    pub f: Word,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Self { e: Vec::new(), k: vec![0; rank], f: Vec::new() }
    }

    pub fn e_word(word: &[u8], rank: usize) -> Self {
        Self { e: word.to_vec(), k: vec![0; rank], f: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.k.len()
    }

    pub fn is_unit(&self) -> bool {
        self.e.is_empty() && self.f.is_empty() && self.k.iter().all(|&x| x == 0)
    }

    /// No F's and no K's.
    pub fn is_pure_e(&self) -> bool {
        self.f.is_empty() && self.k.iter().all(|&x| x == 0)
    }

    pub fn weight(&self) -> Weight {
        let mut w = vec![0; self.rank()];
        for &i in &self.e {
            w[i as usize] += 1;
        }
        for &i in &self.f {
            w[i as usize] -= 1;
        }
        Weight(w)
    }

    /// Nodes touched by an E or F letter.
    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.e.iter().chain(&self.f).map(|&i| i as usize)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.e.iter().map(|i| format!("E{}", i + 1)).collect();
        for (i, &s) in self.k.iter().enumerate() {
            match s {
                0 => {}
                1 => parts.push(format!("K{}", i + 1)),
                s => parts.push(format!("K{}^{}", i + 1, s)),
            }
        }
        parts.extend(self.f.iter().map(|i| format!("F{}", i + 1)));
        write!(f, "{}", parts.join(" "))
    }
}

/// Renders a coefficient in front of a basis symbol.
pub(crate) fn render_term(c: &LaurentFraction, symbol: &str) -> String {
    if c.is_one() {
        return symbol.to_string();
    }
    if (-c).is_one() {
        return format!("-{symbol}");
    }
    let s = c.to_string();
    let simple = c.is_polynomial() && c.numerator().num_terms() == 1;
    if simple {
        format!("{s}·{symbol}")
    } else {
        format!("({s})·{symbol}")
    }
}

pub(crate) fn join_terms(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

/// A finite Q(q)-linear combination of normal-ordered monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, LaurentFraction>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: LaurentFraction) -> Self {
        let mut a = Self::zero();
        a.add_term(m, c);
        a
    }

    pub fn scalar(c: LaurentFraction, rank: usize) -> Self {
        Self::monomial(Monomial::one(rank), c)
    }

    pub fn e_word(word: &[u8], rank: usize) -> Self {
        Self::monomial(Monomial::e_word(word, rank), LaurentFraction::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: LaurentFraction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentFraction)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, LaurentFraction)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentFraction {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-LaurentFraction::one()))
    }

    pub fn scale(&self, s: &LaurentFraction) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn weights(&self) -> BTreeSet<Weight> {
        self.terms.keys().map(Monomial::weight).collect()
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_weight(&self) -> Option<Weight> {
        let ws = self.weights();
        (ws.len() == 1).then(|| ws.into_iter().next().unwrap())
    }

    pub fn is_pure_e(&self) -> bool {
        self.terms.keys().all(Monomial::is_pure_e)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(&Monomial, &LaurentFraction)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let (wa, wb) = (a.0.weight(), b.0.weight());
            wa.height().cmp(&wb.height()).then(wa.cmp(&wb)).then(a.0.cmp(b.0))
        });
        let parts = items.iter().map(|(m, c)| render_term(c, &m.to_string())).collect();
        write!(f, "{}", join_terms(parts))
    }
}

/// Element of a tensor power of U_q(g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    legs: usize,
    terms: BTreeMap<Vec<Monomial>, LaurentFraction>,
}

impl TensorElement {
    pub fn zero(legs: usize) -> Self {
        Self { legs, terms: BTreeMap::new() }
    }

    pub fn unit(legs: usize, rank: usize) -> Self {
        let mut t = Self::zero(legs);
        t.add_term(vec![Monomial::one(rank); legs], LaurentFraction::one());
        t
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn add_term(&mut self, ms: Vec<Monomial>, c: LaurentFraction) {
        assert_eq!(ms.len(), self.legs, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ms) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &LaurentFraction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds `a_1 (x) ... (x) a_n` from algebra elements.
    pub fn from_factors(factors: &[AlgebraElement]) -> Self {
        let mut t = Self::zero(factors.len());
        let mut acc: Vec<(Vec<Monomial>, LaurentFraction)> = vec![(Vec::new(), LaurentFraction::one())];
        for fac in factors {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, d) in fac.terms() {
                    let mut ms2 = ms.clone();
                    ms2.push(m.clone());
                    next.push((ms2, c * d));
                }
            }
            acc = next;
        }
        for (ms, c) in acc {
            t.add_term(ms, c);
        }
        t
    }

    /// Collapses a one-leg tensor to an algebra element.
    pub fn into_single(self) -> AlgebraElement {
        assert_eq!(self.legs, 1);
        let mut a = AlgebraElement::zero();
        for (mut ms, c) in self.terms {
            a.add_term(ms.pop().unwrap(), c);
        }
        a
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .terms
            .iter()
            .map(|(ms, c)| {
                let sym: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                render_term(c, &sym.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", join_terms(parts))
    }
}

/// The algebra U_q(g) for a fixed root datum.
#[derive(Debug, Clone)]
pub struct Uqg {
    cartan: Arc<CartanData>,
    /// `1 / (q_i - q_i^-1)` per node.
    commutator_scale: Vec<LaurentFraction>,
}

impl Uqg {
    pub fn new(cartan: Arc<CartanData>) -> Self {
        let commutator_scale = cartan
            .symmetrizers
            .iter()
            .map(|&d| (q_power(d) - q_power(-d)).inv().expect("q_i - q_i^-1 is nonzero"))
            .collect();
        Self { cartan, commutator_scale }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn cartan_arc(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::scalar(LaurentFraction::one(), self.rank())
    }

    pub fn generator(&self, g: Generator) -> AlgebraElement {
        self.mul_generator(&self.one(), g)
    }

    pub fn e(&self, i: usize) -> AlgebraElement {
        self.generator(Generator::E(i))
    }

    pub fn f(&self, i: usize) -> AlgebraElement {
        self.generator(Generator::F(i))
    }

    pub fn k(&self, i: usize, s: i32) -> AlgebraElement {
        self.generator(Generator::K(i, s))
    }

    pub fn e_word(&self, word: &[u8]) -> AlgebraElement {
        AlgebraElement::e_word(word, self.rank())
    }

    /// Product of a sequence of generators, left to right.
    pub fn word(&self, gens: &[Generator]) -> AlgebraElement {
        gens.iter().fold(self.one(), |acc, &g| self.mul_generator(&acc, g))
    }

    /// `m * g`, rewritten to normal order.
    fn rmul_monomial(&self, m: &Monomial, g: Generator) -> Vec<(Monomial, LaurentFraction)> {
        let bil = &self.cartan.bilinear;
        match g {
            Generator::F(j) => {
                let mut m2 = m.clone();
                m2.f.push(j as u8);
                vec![(m2, LaurentFraction::one())]
            }
            Generator::K(i, s) => {
                let mut m2 = m.clone();
                let t: i32 = m.f.iter().map(|&f| bil[i][f as usize]).sum();
                m2.k[i] += s;
                vec![(m2, q_power(s * t))]
            }
            Generator::E(j) => {
                let mut out = Vec::new();
                // E_j passes the F-word, then the K-part.
                let kq: i32 = m.k.iter().enumerate().map(|(i, &ki)| ki * bil[i][j]).sum();
                let mut main = m.clone();
                main.e.push(j as u8);
                out.push((main, q_power(kq)));
                let scale = &self.commutator_scale[j];
                let mut prefix_pairing = 0;
                for (p, &fp) in m.f.iter().enumerate() {
                    if fp as usize == j {
                        // F_{<p} (-(K_j - K_j^-1)/(q_j - q_j^-1)) F_{>p}, with K_j^{+-1}
                        // moved left through F_{<p}.
                        let mut f2 = m.f.clone();
                        f2.remove(p);
                        let mut kplus = m.k.clone();
                        kplus[j] += 1;
                        let mut kminus = m.k.clone();
                        kminus[j] -= 1;
                        out.push((
                            Monomial { e: m.e.clone(), k: kplus, f: f2.clone() },
                            -(scale * q_power(prefix_pairing)),
                        ));
                        out.push((
                            Monomial { e: m.e.clone(), k: kminus, f: f2 },
                            scale * q_power(-prefix_pairing),
                        ));
                    }
                    prefix_pairing += bil[j][fp as usize];
                }
                out
            }
        }
    }

    /// `a * g` for a single generator.
    pub fn mul_generator(&self, a: &AlgebraElement, g: Generator) -> AlgebraElement {
        if let Generator::K(_, 0) = g {
            return a.clone();
        }
        let mut out = AlgebraElement::zero();
        for (m, c) in a.terms() {
            for (m2, d) in self.rmul_monomial(m, g) {
                out.add_term(m2, c * &d);
            }
        }
        out
    }

    /// Letters of a normal-ordered monomial as a generator sequence.
    pub fn letters(m: &Monomial) -> Vec<Generator> {
        let mut gens: Vec<Generator> = m.e.iter().map(|&i| Generator::E(i as usize)).collect();
        gens.extend(
            m.k.iter()
                .enumerate()
                .filter(|(_, &s)| s != 0)
                .map(|(i, &s)| Generator::K(i, s)),
        );
        gens.extend(m.f.iter().map(|&i| Generator::F(i as usize)));
        gens
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in b.terms() {
            let mut acc = a.clone();
            for g in Self::letters(m) {
                acc = self.mul_generator(&acc, g);
            }
            for (m2, d) in acc.into_terms() {
                out.add_term(m2, d * c);
            }
        }
        out
    }

    pub fn multiply_all(&self, factors: &[&AlgebraElement]) -> AlgebraElement {
        factors.iter().fold(self.one(), |acc, f| self.multiply(&acc, f))
    }

    /// Summands of the iterated coproduct of a generator over `legs` legs;
    /// `None` marks the unit in that leg.
    fn generator_coproduct(g: Generator, legs: usize) -> Vec<Vec<Option<Generator>>> {
        match g {
            Generator::K(..) => vec![vec![Some(g); legs]],
            Generator::E(i) => (0..legs)
                .map(|p| {
                    (0..legs)
                        .map(|l| match l.cmp(&p) {
                            std::cmp::Ordering::Less => None,
                            std::cmp::Ordering::Equal => Some(g),
                            std::cmp::Ordering::Greater => Some(Generator::K(i, 1)),
                        })
                        .collect()
                })
                .collect(),
            Generator::F(i) => (0..legs)
                .map(|p| {
                    (0..legs)
                        .map(|l| match l.cmp(&p) {
                            std::cmp::Ordering::Less => Some(Generator::K(i, -1)),
                            std::cmp::Ordering::Equal => Some(g),
                            std::cmp::Ordering::Greater => None,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn tensor_mul_generators(&self, t: &TensorElement, gens: &[Option<Generator>]) -> TensorElement {
        let mut out = TensorElement::zero(t.legs);
        for (ms, c) in t.terms() {
            let mut acc: Vec<(Vec<Monomial>, LaurentFraction)> = vec![(Vec::new(), c.clone())];
            for (m, g) in ms.iter().zip(gens) {
                let leg = match g {
                    None => vec![(m.clone(), LaurentFraction::one())],
                    Some(g) => self.rmul_monomial(m, *g),
                };
                let mut next = Vec::with_capacity(acc.len() * leg.len());
                for (prefix, d) in &acc {
                    for (m2, e) in &leg {
                        let mut p = prefix.clone();
                        p.push(m2.clone());
                        next.push((p, d * e));
                    }
                }
                acc = next;
            }
            for (ms2, d) in acc {
                out.add_term(ms2, d);
            }
        }
        out
    }

    fn coproduct_monomial(&self, m: &Monomial, legs: usize) -> TensorElement {
        let mut t = TensorElement::unit(legs, self.rank());
        for g in Self::letters(m) {
            let mut next = TensorElement::zero(legs);
            for summand in Self::generator_coproduct(g, legs) {
                let part = self.tensor_mul_generators(&t, &summand);
                for (ms, c) in part.terms {
                    next.add_term(ms, c);
                }
            }
            t = next;
        }
        t
    }

    /// Iterated coproduct into `legs` tensor factors.
    pub fn coproduct(&self, a: &AlgebraElement, legs: usize) -> TensorElement {
        assert!(legs >= 1, "coproduct needs at least one leg");
        let mut out = TensorElement::zero(legs);
        for (m, c) in a.terms() {
            for (ms, d) in self.coproduct_monomial(m, legs).terms {
                out.add_term(ms, d * c);
            }
        }
        out
    }

    /// Applies the coproduct to one leg of a tensor, splitting it in two.
    pub fn coproduct_at(&self, t: &TensorElement, leg: usize) -> TensorElement {
        let mut out = TensorElement::zero(t.legs + 1);
        for (ms, c) in t.terms() {
            for (pair, d) in self.coproduct_monomial(&ms[leg], 2).terms {
                let mut v = ms[..leg].to_vec();
                v.extend(pair);
                v.extend_from_slice(&ms[leg + 1..]);
                out.add_term(v, c * &d);
            }
        }
        out
    }

    /// Applies a linear map to one leg of a tensor.
    pub fn map_leg(
        &self,
        t: &TensorElement,
        leg: usize,
        f: impl Fn(&AlgebraElement) -> AlgebraElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero(t.legs);
        for (ms, c) in t.terms() {
            let image = f(&AlgebraElement::monomial(ms[leg].clone(), LaurentFraction::one()));
            for (m, d) in image.into_terms() {
                let mut v = ms.clone();
                v[leg] = m;
                out.add_term(v, c * &d);
            }
        }
        out
    }

    /// Applies the counit to one leg, dropping it.
    pub fn counit_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        let mut out = TensorElement::zero(t.legs - 1);
        for (ms, c) in t.terms() {
            if ms[leg].e.is_empty() && ms[leg].f.is_empty() {
                let mut v = ms.clone();
                v.remove(leg);
                out.add_term(v, c.clone());
            }
        }
        out
    }

    /// Multiplies all legs together (iterated multiplication map).
    pub fn multiply_legs(&self, t: &TensorElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (ms, c) in t.terms() {
            let mut acc = self.one();
            for m in ms {
                for g in Self::letters(m) {
                    acc = self.mul_generator(&acc, g);
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// The antipode, an algebra anti-homomorphism.
    pub fn antipode(&self, a: &AlgebraElement) -> AlgebraElement {
        let minus_one = -LaurentFraction::one();
        let mut out = AlgebraElement::zero();
        for (m, c) in a.terms() {
            let mut acc = self.one().scale(c);
            for &f in m.f.iter().rev() {
                // S(F_i) = -K_i F_i
                acc = self.mul_generator(&acc, Generator::K(f as usize, 1));
                acc = self.mul_generator(&acc, Generator::F(f as usize)).scale(&minus_one);
            }
            for (i, &s) in m.k.iter().enumerate() {
                acc = self.mul_generator(&acc, Generator::K(i, -s));
            }
            for &e in m.e.iter().rev() {
                // S(E_i) = -E_i K_i^-1
                acc = self.mul_generator(&acc, Generator::E(e as usize));
                acc = self.mul_generator(&acc, Generator::K(e as usize, -1)).scale(&minus_one);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn counit(&self, a: &AlgebraElement) -> LaurentFraction {
        a.terms()
            .filter(|(m, _)| m.e.is_empty() && m.f.is_empty())
            .fold(LaurentFraction::zero(), |acc, (_, c)| acc + c)
    }

    /// Normal form of a pure-E element modulo the q-Serre ideal, as a
    /// combination of standard words.
    pub fn serre_normal_form(&self, a: &AlgebraElement) -> Result<AlgebraElement, UqgError> {
        let mut out = AlgebraElement::zero();
        for (w, coords) in self.serre_coordinates(a)? {
            let q = graded_quotient(&self.cartan, QuotientMode::Serre, &w);
            for (word, c) in q.standard_words().iter().zip(coords) {
                out.add_term(Monomial::e_word(word, self.rank()), c);
            }
        }
        Ok(out)
    }

    /// Coordinates of each graded component of a pure-E element over the
    /// standard words of the Serre quotient.
    pub fn serre_coordinates(
        &self,
        a: &AlgebraElement,
    ) -> Result<BTreeMap<Weight, Vec<LaurentFraction>>, UqgError> {
        if !a.is_pure_e() {
            return Err(UqgError::NotPurePositive(a.to_string()));
        }
        let mut by_weight: BTreeMap<Weight, Vec<(&Word, &LaurentFraction)>> = BTreeMap::new();
        for (m, c) in a.terms() {
            by_weight.entry(m.weight()).or_default().push((&m.e, c));
        }
        let mut out = BTreeMap::new();
        for (w, terms) in by_weight {
            let q = graded_quotient(&self.cartan, QuotientMode::Serre, &w);
            out.insert(w, q.coordinates(terms.into_iter()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;
    use Generator::*;

    fn uqg(s: Series, r: usize) -> Uqg {
        Uqg::new(Arc::new(CartanData::build(s, r).unwrap()))
    }

    fn lf(s: &str) -> LaurentFraction {
        s.parse().unwrap()
    }

    #[test]
    fn k_commutes_past_e_with_q_power() {
        let u = uqg(Series::A, 2);
        let got = u.word(&[K(0, 1), E(1)]);
        let want = AlgebraElement::monomial(
            Monomial { e: vec![1], k: vec![1, 0], f: vec![] },
            q_power(-1),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn distinct_e_f_commute() {
        let u = uqg(Series::A, 2);
        assert_eq!(u.word(&[E(0), F(1)]), u.word(&[F(1), E(0)]));
        assert_eq!(u.word(&[E(0), F(1)]).num_terms(), 1);
    }

    #[test]
    fn e_f_commutator() {
        let u = uqg(Series::B, 2);
        for i in 0..2 {
            let comm = u.word(&[E(i), F(i)]).sub(&u.word(&[F(i), E(i)]));
            let d = u.cartan().symmetrizers[i];
            let kk = u.k(i, 1).sub(&u.k(i, -1));
            let want = kk.scale(&(q_power(d) - q_power(-d)).inv().unwrap());
            assert_eq!(comm, want);
        }
    }

    #[test]
    fn f_past_e_word_matches_hand_expansion() {
        // F2 E2 E1 = E2 E1 F2 - (K2 - K2^-1)/(q - q^-1) E1, and
        // K2^{+-1} E1 = q^{-+1} E1 K2^{+-1} in A2.
        let u = uqg(Series::A, 2);
        let got = u.multiply(&u.f(1), &u.e_word(&[1, 0]));
        let c = lf("1/(q - q^-1)");
        let mut want = AlgebraElement::monomial(
            Monomial { e: vec![1, 0], k: vec![0, 0], f: vec![1] },
            LaurentFraction::one(),
        );
        want.add_term(Monomial { e: vec![0], k: vec![0, 1], f: vec![] }, -(&c * q_power(-1)));
        want.add_term(Monomial { e: vec![0], k: vec![0, -1], f: vec![] }, &c * q_power(1));
        assert_eq!(got, want);
    }

    #[test]
    fn coproduct_examples() {
        let u = uqg(Series::A, 2);
        let d = u.coproduct(&u.e(0), 2);
        let want = TensorElement::from_factors(&[u.e(0), u.k(0, 1)]);
        let want = {
            let mut w = want;
            for (ms, c) in TensorElement::from_factors(&[u.one(), u.e(0)]).terms() {
                w.add_term(ms.clone(), c.clone());
            }
            w
        };
        assert_eq!(d, want);
        let k3 = u.coproduct(&u.k(0, 1), 3);
        assert_eq!(k3, TensorElement::from_factors(&[u.k(0, 1), u.k(0, 1), u.k(0, 1)]));
        let e3 = u.coproduct(&u.e(1), 3);
        assert_eq!(e3.num_terms(), 3);
        let expected = [
            [u.e(1), u.k(1, 1), u.k(1, 1)],
            [u.one(), u.e(1), u.k(1, 1)],
            [u.one(), u.one(), u.e(1)],
        ];
        for fs in expected {
            let t = TensorElement::from_factors(&fs);
            let (ms, c) = t.terms().next().unwrap();
            assert!(c.is_one());
            assert!(e3.terms().any(|(m2, c2)| m2 == ms && c2.is_one()));
        }
    }

    #[test]
    fn antipode_examples() {
        let u = uqg(Series::A, 2);
        let s = u.antipode(&u.e(0));
        assert_eq!(s, u.word(&[E(0), K(0, -1)]).scale(&lf("-1")));
        let s = u.antipode(&u.word(&[K(0, 1), K(1, -1)]));
        assert_eq!(s, u.word(&[K(0, -1), K(1, 1)]));
        // S(E1 E2) = E2 K2^-1 E1 K1^-1 = q^{-(a2,a1)} E2 E1 K1^-1 K2^-1.
        let s = u.antipode(&u.e_word(&[0, 1]));
        let want = AlgebraElement::monomial(
            Monomial { e: vec![1, 0], k: vec![-1, -1], f: vec![] },
            q_power(1),
        );
        assert_eq!(s, want);
    }

    #[test]
    fn counit_examples() {
        let u = uqg(Series::A, 3);
        assert!(u.counit(&u.word(&[K(0, 2), K(2, -1)])).is_one());
        assert!(u.counit(&u.word(&[E(0), K(1, 1)])).is_zero());
        let a = u.one().scale(&lf("3")).add(&u.word(&[E(0), F(0)]));
        assert_eq!(u.counit(&a), lf("3"));
    }

    #[test]
    fn serre_relations_vanish() {
        let u = uqg(Series::A, 3);
        let comm = u.e_word(&[0, 2]).sub(&u.e_word(&[2, 0]));
        assert!(u.serre_normal_form(&comm).unwrap().is_zero());
        let u2 = uqg(Series::A, 2);
        let s = u2
            .e_word(&[0, 0, 1])
            .sub(&u2.e_word(&[0, 1, 0]).scale(&lf("q + q^-1")))
            .add(&u2.e_word(&[1, 0, 0]));
        assert!(u2.serre_normal_form(&s).unwrap().is_zero());
        let e1 = u2.e(0);
        assert_eq!(u2.serre_normal_form(&e1).unwrap(), e1);
        let e12 = u2.e_word(&[0, 1]);
        assert_eq!(u2.serre_normal_form(&e12).unwrap(), e12);
        assert!(u2.serre_normal_form(&u2.f(0)).is_err());
    }

    #[test]
    fn rendering() {
        let u = uqg(Series::A, 3);
        let a = u.word(&[E(1), E(0), K(2, -1), F(1)]).scale(&lf("q - q^-1"));
        assert_eq!(a.to_string(), "(q - q^-1)·E2 E1 K3^-1 F2");
        assert_eq!(u.one().scale(&lf("-1")).to_string(), "-1");
        let b = u.e(0).sub(&u.e(1).scale(&lf("q")));
        assert_eq!(b.to_string(), "-q·E2 + E1");
    }
}

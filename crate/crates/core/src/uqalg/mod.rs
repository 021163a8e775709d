//! The quantized enveloping algebra U_q(g) as a rewriting system.
//!
//! Elements are Q(q)-combinations of normal monomials F-word · K-monomial ·
//! E-word. Products are straightened with
//!
//! ```text
//! K_i E_j = q^{(α_i,α_j)} E_j K_i,   K_i F_j = q^{-(α_i,α_j)} F_j K_i,
//! E_i F_j - F_j E_i = δ_ij (K_i - K_i^{-1}) / (q^{d_i} - q^{-d_i}).
//! ```
//!
//! Serre relations are not rewriting rules; they are handled per weight space
//! in [`serre`].

pub mod hopf;
pub mod serre;
pub mod tangent;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cartan::{RootCoords, RootSystem};
use crate::qfield::RatFunc;

pub use serre::WeightSpace;

/// Normal-ordered monomial F_{f0} F_{f1} ... K^k E_{e0} E_{e1} ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalMono {
    pub f: Vec<u8>,
    pub k: Vec<i32>,
    pub e: Vec<u8>,
}

impl NormalMono {
    pub fn one(rank: usize) -> Self {
        NormalMono {
            f: Vec::new(),
            k: vec![0; rank],
            e: Vec::new(),
        }
    }

    /// Q-weight in root coordinates: E letters count +1, F letters −1.
    pub fn weight(&self, rank: usize) -> RootCoords {
        let mut w = vec![0i64; rank];
        for &i in &self.e {
            w[i as usize] += 1;
        }
        for &i in &self.f {
            w[i as usize] -= 1;
        }
        w
    }
}

/// A free generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    E(u8),
    F(u8),
    /// K_i^{±1}
    K(u8, i32),
}

/// Finite Q(q)-combination of normal monomials; zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgElement {
    pub terms: BTreeMap<NormalMono, RatFunc>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement::default()
    }

    pub fn from_mono(m: NormalMono, c: RatFunc) -> Self {
        let mut x = AlgElement::zero();
        x.add_term(m, &c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: NormalMono, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgElement, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(c * x));
        }
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> AlgElement {
        let mut out = AlgElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Common weight of all terms, if homogeneous.
    pub fn weight(&self, rank: usize) -> Option<RootCoords> {
        let mut it = self.terms.keys().map(|m| m.weight(rank));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }
}

fn fmt_word(out: &mut Vec<String>, letter: char, w: &[u8]) {
    for &i in w {
        out.push(format!("{}{}", letter, i + 1));
    }
}

impl fmt::Display for NormalMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        fmt_word(&mut parts, 'F', &self.f);
        for (i, &k) in self.k.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("K{}", i + 1)),
                _ => parts.push(format!("K{}^{{{}}}", i + 1, k)),
            }
        }
        fmt_word(&mut parts, 'E', &self.e);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, c) = match c.numer().leading_coeff() {
                Some(l) if l < &0.into() && c.numer().is_monomial() && c.is_laurent() => (true, -c),
                _ => (false, c.clone()),
            };
            if !first {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let mono = m.to_string();
            if c.is_one() {
                write!(f, "{}", mono)?;
            } else if mono == "1" {
                write!(f, "({})", c)?;
            } else if c.numer().is_monomial() && c.is_laurent() {
                let e = c.numer().low();
                let k = c.numer().leading_coeff().unwrap().clone();
                let kstr = if k == 1.into() { String::new() } else { k.to_string() };
                let qstr = if e == 0 { String::new() } else { format!("q^{{{}}}", e) };
                let sep = if kstr.is_empty() && qstr.is_empty() { "" } else { " " };
                write!(f, "{}{}{}{}", kstr, qstr, sep, mono)?;
            } else {
                write!(f, "({}) {}", c, mono)?;
            }
        }
        Ok(())
    }
}

type WordPair = (Vec<u8>, Vec<u8>);

/// Structure constants and caches for one root system.
#[derive(Debug)]
pub struct Uq {
    rank: usize,
    /// `(α_i, α_j)`.
    form: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    /// `1/(q^{d_i} − q^{−d_i})`.
    cartan_den: Vec<RatFunc>,
    positive_roots: Vec<RootCoords>,
    ef_cache: Mutex<HashMap<WordPair, Arc<AlgElement>>>,
    spaces: Mutex<HashMap<RootCoords, Arc<WeightSpace>>>,
}

impl Uq {
    pub fn new(rs: &RootSystem) -> Self {
        let cartan_den = rs
            .symmetrizers
            .iter()
            .map(|&d| {
                let d = d as i32;
                (&RatFunc::q_pow(d) - &RatFunc::q_pow(-d)).inv()
            })
            .collect();
        Uq {
            rank: rs.rank(),
            form: rs.form.clone(),
            cartan: rs.cartan_matrix.clone(),
            sym: rs.symmetrizers.clone(),
            cartan_den,
            positive_roots: rs.positive_roots.clone(),
            ef_cache: Mutex::new(HashMap::new()),
            spaces: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.sym[i]
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// `(α_i, β)` for β in root coordinates.
    pub fn pair_simple(&self, i: usize, beta: &[i64]) -> i64 {
        self.form[i].iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    /// `Σ_i k_i (α_i, β)`.
    pub fn pair_k(&self, k: &[i32], beta: &[i64]) -> i64 {
        k.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| x as i64 * self.pair_simple(i, beta))
            .sum()
    }

    /// Positive-root coordinates of the letters of a word.
    pub fn word_weight(&self, w: &[u8]) -> RootCoords {
        let mut out = vec![0i64; self.rank];
        for &i in w {
            out[i as usize] += 1;
        }
        out
    }

    pub fn one(&self) -> AlgElement {
        AlgElement::from_mono(NormalMono::one(self.rank), RatFunc::one())
    }

    pub fn mono(&self, f: &[u8], k: &[i32], e: &[u8]) -> NormalMono {
        NormalMono {
            f: f.to_vec(),
            k: if k.is_empty() { vec![0; self.rank] } else { k.to_vec() },
            e: e.to_vec(),
        }
    }

    pub fn e(&self, i: usize) -> AlgElement {
        AlgElement::from_mono(self.mono(&[], &[], &[i as u8]), RatFunc::one())
    }

    pub fn f(&self, i: usize) -> AlgElement {
        AlgElement::from_mono(self.mono(&[i as u8], &[], &[]), RatFunc::one())
    }

    pub fn k(&self, i: usize, exp: i32) -> AlgElement {
        let mut k = vec![0; self.rank];
        k[i] = exp;
        AlgElement::from_mono(self.mono(&[], &k, &[]), RatFunc::one())
    }

    pub fn f_word(&self, w: &[u8]) -> AlgElement {
        AlgElement::from_mono(self.mono(w, &[], &[]), RatFunc::one())
    }

    pub fn e_word(&self, w: &[u8]) -> AlgElement {
        AlgElement::from_mono(self.mono(&[], &[], w), RatFunc::one())
    }

    pub fn letter(&self, l: Letter) -> AlgElement {
        match l {
            Letter::E(i) => self.e(i as usize),
            Letter::F(i) => self.f(i as usize),
            Letter::K(i, x) => self.k(i as usize, x),
        }
    }

    /// Product of free letters, straightened.
    pub fn from_letters(&self, letters: &[Letter]) -> AlgElement {
        letters
            .iter()
            .fold(self.one(), |acc, &l| self.mul(&acc, &self.letter(l)))
    }

    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let c = ca * cb;
                out.add_scaled(&self.mul_mono(a, b), &c);
            }
        }
        out
    }

    /// `(f1 k1 e1)(f2 k2 e2)` in normal form.
    pub fn mul_mono(&self, x: &NormalMono, y: &NormalMono) -> AlgElement {
        let ef = self.e_times_f(&x.e, &y.f);
        let mut out = AlgElement::zero();
        for (m, c) in &ef.terms {
            let fw = self.word_weight(&m.f);
            let ew = self.word_weight(&m.e);
            // K^{k1} F-word and E-word K^{k2}
            let exp = -self.pair_k(&x.k, &fw) - self.pair_k(&y.k, &ew);
            let mut f = x.f.clone();
            f.extend(&m.f);
            let k: Vec<i32> = (0..self.rank).map(|i| x.k[i] + m.k[i] + y.k[i]).collect();
            let mut e = m.e.clone();
            e.extend(&y.e);
            out.add_term(NormalMono { f, k, e }, &c.shift(exp as i32));
        }
        out
    }

    /// E-word times F-word in normal form (cached).
    pub fn e_times_f(&self, e: &[u8], f: &[u8]) -> Arc<AlgElement> {
        if e.is_empty() || f.is_empty() {
            return Arc::new(AlgElement::from_mono(self.mono(f, &[], e), RatFunc::one()));
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(v) = self.ef_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let i = *e.last().unwrap() as usize;
        let prefix = &e[..e.len() - 1];
        // E_i F-word = F-word E_i + Σ_p F-word without p · (K_i − K_i^{-1})/(q^{d_i} − q^{-d_i})
        let mut step: Vec<(NormalMono, RatFunc)> = vec![(self.mono(f, &[], &[i as u8]), RatFunc::one())];
        for p in 0..f.len() {
            if f[p] as usize != i {
                continue;
            }
            let suffix = self.word_weight(&f[p + 1..]);
            let s = self.pair_simple(i, &suffix) as i32;
            let mut fw = f[..p].to_vec();
            fw.extend(&f[p + 1..]);
            let mut kp = vec![0; self.rank];
            kp[i] = 1;
            let mut km = vec![0; self.rank];
            km[i] = -1;
            step.push((self.mono(&fw, &kp, &[]), self.cartan_den[i].shift(-s)));
            step.push((self.mono(&fw, &km, &[]), -self.cartan_den[i].shift(s)));
        }
        let mut out = AlgElement::zero();
        for (m, c) in step {
            let inner = self.e_times_f(prefix, &m.f);
            for (n, d) in &inner.terms {
                let ew = self.word_weight(&n.e);
                let exp = -self.pair_k(&m.k, &ew);
                let k: Vec<i32> = (0..self.rank).map(|j| n.k[j] + m.k[j]).collect();
                let mut ee = n.e.clone();
                ee.extend(&m.e);
                out.add_term(NormalMono { f: n.f.clone(), k, e: ee }, &(&c * d).shift(exp as i32));
            }
        }
        let out = Arc::new(out);
        self.ef_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Rewrites F- and E-parts in the Serre-reduced bases, so that two
    /// elements are equal in U_q(g) iff their canonical forms coincide.
    pub fn canonical(&self, x: &AlgElement) -> crate::error::Result<AlgElement> {
        let mut out = AlgElement::zero();
        for (m, c) in &x.terms {
            let fs = self.weight_space(&self.word_weight(&m.f))?;
            let es = self.weight_space(&self.word_weight(&m.e))?;
            for (fi, fc) in fs.reduce_word(&m.f).iter() {
                for (ei, ec) in es.reduce_word(&m.e).iter() {
                    let mono = NormalMono {
                        f: fs.basis_word(*fi).to_vec(),
                        k: m.k.clone(),
                        e: es.basis_word(*ei).to_vec(),
                    };
                    out.add_term(mono, &(&(c * fc) * ec));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::qint;

    fn a2() -> Uq {
        Uq::new(&RootSystem::from_str_type("A2").unwrap())
    }

    #[test]
    fn commutation_rules() {
        let u = a2();
        // E1 K1 = q^{-2} K1 E1
        let ke = u.mul(&u.e(0), &u.k(0, 1));
        let mut expect = AlgElement::zero();
        expect.add_term(u.mono(&[], &[1, 0], &[0]), &RatFunc::q_pow(-2));
        assert_eq!(ke, expect);
        // E1 F1 = F1 E1 + (K1 − K1^{-1})/(q − q^{-1})
        let ef = u.mul(&u.e(0), &u.f(0));
        let cartan = u.k(0, 1).sub(&u.k(0, -1)).scale(&(&RatFunc::q_pow(1) - &RatFunc::q_pow(-1)).inv());
        assert_eq!(ef, u.mul(&u.f(0), &u.e(0)).add(&cartan));
        // E1 F2 = F2 E1
        assert_eq!(u.mul(&u.e(0), &u.f(1)), u.mul(&u.f(1), &u.e(0)));
    }

    #[test]
    fn associativity_on_words() {
        let u = a2();
        let x = u.from_letters(&[Letter::E(0), Letter::F(0), Letter::E(1)]);
        let y = u.from_letters(&[Letter::F(1), Letter::K(0, -1), Letter::F(0)]);
        let z = u.from_letters(&[Letter::E(0), Letter::E(1), Letter::F(1)]);
        assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
    }

    #[test]
    fn quantum_sl2_identity() {
        // E F^2 = F^2 E + [2] F (q^{-1}K − qK^{-1})/(q − q^{-1}) in sl2
        let u = Uq::new(&RootSystem::from_str_type("A1").unwrap());
        let lhs = u.mul(&u.e(0), &u.f_word(&[0, 0]));
        let k = u.k(0, 1).scale(&RatFunc::q_pow(-1)).sub(&u.k(0, -1).scale(&RatFunc::q_pow(1)));
        let mut rhs = u.mul(&u.f_word(&[0, 0]), &u.e(0));
        let den = (&RatFunc::q_pow(1) - &RatFunc::q_pow(-1)).inv();
        rhs = rhs.add(&u.mul(&u.f(0), &k).scale(&(&qint(2, 1) * &den)));
        assert_eq!(lhs, rhs);
    }
}

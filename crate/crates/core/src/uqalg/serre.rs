//! Weight spaces of U_q(n^±): words of a fixed weight modulo the quantum Serre ideal.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cartan::RootCoords;
use crate::error::{Error, Result};
use crate::qfield::matrix::{add_entry, SparseVec};
use crate::qfield::{qbinomial, RatFunc, Subspace};
use crate::reps::partition_counts;

use super::Uq;

/// U_q(n^-)_{-β} (F-letters) or equivalently U_q(n^+)_β (E-letters): both are
/// spanned by words of weight β modulo the same Serre relations.
///
/// The space is built from the spaces of weight β − α_i. Modulo the ideal, every
/// word x_i·w reduces to x_i times a normal word of weight β − α_i, and the
/// ideal in weight β is Σ_i x_i·I_{β−α_i} plus the Serre elements placed at the
/// left end. Only those left-end relations have to be eliminated here. Normal
/// words (the lexicographically smallest basis) are closed under subwords, so
/// the candidates x_i·b always contain them.
#[derive(Debug)]
pub struct WeightSpace {
    pub beta: RootCoords,
    /// Normal words, lexicographically ascending.
    basis: Vec<Vec<u8>>,
    /// Spaces of weight β − α_i, for each i with β_i > 0.
    lower: Vec<Option<Arc<WeightSpace>>>,
    /// Candidate x_i·(basis word k of lower[i]) has index offset[i] + k; indices
    /// are lexicographic in the candidate word.
    offset: Vec<usize>,
    /// Columns are candidate indices in reverse, so large words become pivots.
    relations: Subspace,
    /// Basis coordinates of every candidate.
    cand_reduced: Vec<SparseVec>,
    memo: Mutex<HashMap<Vec<u8>, Arc<SparseVec>>>,
    /// Kostant partition count, computed on first checked access.
    expected: OnceLock<usize>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_word(&self, k: usize) -> &[u8] {
        &self.basis[k]
    }

    pub fn basis_words(&self) -> Vec<Vec<u8>> {
        self.basis.clone()
    }

    /// Basis coordinates of a single word of weight β.
    pub fn reduce_word(&self, w: &[u8]) -> Arc<SparseVec> {
        if let Some(v) = self.memo.lock().unwrap().get(w) {
            return v.clone();
        }
        let v = Arc::new(self.reduce_uncached(w));
        self.memo.lock().unwrap().insert(w.to_vec(), v.clone());
        v
    }

    fn reduce_uncached(&self, w: &[u8]) -> SparseVec {
        let Some((&first, rest)) = w.split_first() else {
            assert!(self.beta.iter().all(|&c| c == 0), "empty word in weight {:?}", self.beta);
            return SparseVec::from([(0, RatFunc::one())]);
        };
        let lower = self.lower[first as usize]
            .as_ref()
            .unwrap_or_else(|| panic!("word {w:?} does not have weight {:?}", self.beta));
        let mut out = SparseVec::new();
        for (k, c) in lower.reduce_word(rest).iter() {
            for (j, d) in &self.cand_reduced[self.offset[first as usize] + k] {
                add_entry(&mut out, *j, &(c * d));
            }
        }
        out
    }

    /// Basis coordinates of a combination of words of weight β.
    pub fn reduce_words<'a>(&self, terms: impl IntoIterator<Item = (&'a RatFunc, &'a [u8])>) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, w) in terms {
            for (j, d) in self.reduce_word(w).iter() {
                add_entry(&mut out, *j, &(c * d));
            }
        }
        out
    }

    /// Rank of the left-end Serre relations among the candidates.
    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }
}

/// Words with the given letter multiplicities, lexicographically ascending.
pub fn words_of_weight(beta: &[i64]) -> Vec<Vec<u8>> {
    fn rec(counts: &mut [i64], cur: &mut Vec<u8>, left: i64, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8);
                rec(counts, cur, left - 1, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    if beta.iter().any(|&c| c < 0) {
        return out;
    }
    let mut counts = beta.to_vec();
    rec(&mut counts, &mut Vec::new(), beta.iter().sum(), &mut out);
    out
}

impl Uq {
    /// Serre element for i ≠ j as (coefficient, word) pairs:
    /// Σ_k (−1)^k [1−a_ij choose k]_{q^{d_i}} X_i^{1−a_ij−k} X_j X_i^k.
    pub fn serre_element(&self, i: usize, j: usize) -> Vec<(RatFunc, Vec<u8>)> {
        let n = (1 - self.cartan_entry(i, j)) as u32;
        let d = self.symmetrizer(i) as u32;
        (0..=n)
            .map(|k| {
                let mut c = qbinomial(n, k, d).unwrap();
                if k % 2 == 1 {
                    c = -c;
                }
                let mut w = vec![i as u8; (n - k) as usize];
                w.push(j as u8);
                w.extend(std::iter::repeat_n(i as u8, k as usize));
                (c, w)
            })
            .collect()
    }

    /// The weight space of weight β (cached). The dimension is checked
    /// against the Kostant partition function.
    pub fn weight_space(&self, beta: &[i64]) -> Result<Arc<WeightSpace>> {
        let ws = self.space(beta);
        let expected = *ws.expected.get_or_init(|| {
            if beta.iter().all(|&c| c == 0) {
                1
            } else {
                let h: i64 = beta.iter().sum();
                partition_counts(&self.positive_roots, self.rank(), h)
                    .get(beta)
                    .copied()
                    .unwrap_or(0) as usize
            }
        });
        if ws.dim() != expected {
            return Err(Error::Internal(format!(
                "weight space {beta:?} has dimension {} but the partition count is {expected}",
                ws.dim()
            )));
        }
        Ok(ws)
    }

    /// Dimension of the Serre quotient in weight β, without any cross-check.
    pub fn serre_quotient_dim(&self, beta: &[i64]) -> usize {
        self.space(beta).dim()
    }

    fn space(&self, beta: &[i64]) -> Arc<WeightSpace> {
        if let Some(ws) = self.spaces.lock().unwrap().get(beta) {
            return ws.clone();
        }
        let ws = Arc::new(self.build_weight_space(beta));
        self.spaces.lock().unwrap().entry(beta.to_vec()).or_insert(ws).clone()
    }

    fn build_weight_space(&self, beta: &[i64]) -> WeightSpace {
        let r = self.rank();
        let empty = |lower, offset| WeightSpace {
            beta: beta.to_vec(),
            basis: Vec::new(),
            lower,
            offset,
            relations: Subspace::new(0),
            cand_reduced: Vec::new(),
            memo: Mutex::new(HashMap::new()),
            expected: OnceLock::new(),
        };
        if beta.iter().any(|&c| c < 0) {
            return empty(vec![None; r], vec![0; r]);
        }
        if beta.iter().all(|&c| c == 0) {
            let mut ws = empty(vec![None; r], vec![0; r]);
            ws.basis.push(Vec::new());
            ws.cand_reduced.push(SparseVec::from([(0, RatFunc::one())]));
            return ws;
        }
        let mut lower = Vec::with_capacity(r);
        let mut offset = Vec::with_capacity(r);
        let mut n = 0;
        for i in 0..r {
            offset.push(n);
            if beta[i] > 0 {
                let mut g = beta.to_vec();
                g[i] -= 1;
                let ws = self.space(&g);
                n += ws.dim();
                lower.push(Some(ws));
            } else {
                lower.push(None);
            }
        }
        // candidate coordinates of a word of weight β
        let coords = |w: &[u8]| -> SparseVec {
            let (&f, rest) = w.split_first().expect("nonempty word");
            let l = lower[f as usize].as_ref().expect("letter present in β");
            l.reduce_word(rest).iter().map(|(k, c)| (n - 1 - (offset[f as usize] + k), c.clone())).collect()
        };
        let mut relations = Subspace::new(n);
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let serre = self.serre_element(i, j);
                let mut sw = vec![0i64; r];
                sw[i] += 1 - self.cartan_entry(i, j);
                sw[j] += 1;
                let gamma: Vec<i64> = beta.iter().zip(&sw).map(|(a, b)| a - b).collect();
                if gamma.iter().any(|&c| c < 0) {
                    continue;
                }
                let g = self.space(&gamma);
                for b in &g.basis {
                    let mut v = SparseVec::new();
                    for (c, s) in &serre {
                        let mut full = s.clone();
                        full.extend(b);
                        for (col, x) in coords(&full) {
                            add_entry(&mut v, col, &(c * &x));
                        }
                    }
                    relations.insert(v);
                }
            }
        }
        let candidate = |c: usize| -> Vec<u8> {
            let i = (0..r).rev().find(|&i| lower[i].is_some() && offset[i] <= c).unwrap();
            let mut w = vec![i as u8];
            w.extend(lower[i].as_ref().unwrap().basis_word(c - offset[i]));
            w
        };
        let mut free: Vec<usize> = relations.free_columns().into_iter().map(|c| n - 1 - c).collect();
        free.sort_unstable();
        let basis_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let basis = free.iter().map(|&c| candidate(c)).collect();
        let cand_reduced = (0..n)
            .map(|c| {
                let mut v = SparseVec::new();
                v.insert(n - 1 - c, RatFunc::one());
                relations
                    .reduce(v)
                    .into_iter()
                    .map(|(col, x)| (basis_pos[&(n - 1 - col)], x))
                    .collect()
            })
            .collect();
        WeightSpace {
            beta: beta.to_vec(),
            basis,
            lower,
            offset,
            relations,
            cand_reduced,
            memo: Mutex::new(HashMap::new()),
            expected: OnceLock::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;

    #[test]
    fn a2_spaces() {
        let u = Uq::new(&RootSystem::from_str_type("A2").unwrap());
        let s = u.weight_space(&[1, 1]).unwrap();
        assert_eq!(s.basis_words(), vec![vec![0, 1], vec![1, 0]]);
        let s = u.weight_space(&[2, 1]).unwrap();
        assert_eq!(words_of_weight(&[2, 1]).len(), 3);
        assert_eq!(s.dim(), 2);
        let s = u.weight_space(&[3, 0]).unwrap();
        assert_eq!(s.basis_words(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn serre_reduction_is_consistent() {
        let u = Uq::new(&RootSystem::from_str_type("A2").unwrap());
        let s = u.weight_space(&[2, 1]).unwrap();
        // F1F1F2 − [2] F1F2F1 + F2F1F1 ≡ 0
        let serre = u.serre_element(0, 1);
        assert!(s.reduce_words(serre.iter().map(|(c, w)| (c, w.as_slice()))).is_empty());
        // the same relation with a letter in front of it, and behind it
        let s = u.weight_space(&[2, 2]).unwrap();
        for outer in [true, false] {
            let words: Vec<(RatFunc, Vec<u8>)> = serre
                .iter()
                .map(|(c, w)| {
                    let mut w = w.clone();
                    if outer {
                        w.insert(0, 1);
                    } else {
                        w.push(1);
                    }
                    (c.clone(), w)
                })
                .collect();
            assert!(s.reduce_words(words.iter().map(|(c, w)| (c, w.as_slice()))).is_empty());
        }
    }

    #[test]
    fn recursive_spaces_match_full_elimination() {
        // eliminate the two-sided ideal over all words, the slow way
        fn full_dim(u: &Uq, beta: &[i64]) -> usize {
            let words = words_of_weight(beta);
            let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let mut rel = Subspace::new(words.len());
            let r = u.rank();
            for i in 0..r {
                for j in (0..r).filter(|&j| j != i) {
                    let serre = u.serre_element(i, j);
                    let mut gamma = beta.to_vec();
                    gamma[i] -= 1 - u.cartan_entry(i, j);
                    gamma[j] -= 1;
                    for w in words_of_weight(&gamma) {
                        for p in 0..=w.len() {
                            let mut v = SparseVec::new();
                            for (c, s) in &serre {
                                let mut full = w[..p].to_vec();
                                full.extend(s);
                                full.extend(&w[p..]);
                                add_entry(&mut v, index[&full], c);
                            }
                            rel.insert(v);
                        }
                    }
                }
            }
            words.len() - rel.rank()
        }
        for (t, betas) in [("B2", vec![[2, 2], [2, 3], [3, 2]]), ("G2", vec![[2, 2], [3, 2], [1, 4]])] {
            let u = Uq::new(&RootSystem::from_str_type(t).unwrap());
            for b in betas {
                assert_eq!(u.serre_quotient_dim(&b), full_dim(&u, &b), "{t} {b:?}");
            }
        }
    }
}

//! Slices of the induced modules W(μ,ν) = U_q(g) ⊗_{U_q(l_S)} (M(μ) ⊗ M(ν)^*).
//!
//! W(μ,ν) is cyclic on g = 1 ⊗ (v_μ ⊗ ξ_{−ν}) with annihilator generated by
//! K_j − q^{(α_j, μ−ν)}, F_i^{(μ,α_i^∨)+1} and E_i^{(ν,α_i^∨)+1} for i ∈ S.
//! Elements are combinations of f·e·g with f, e Serre-reduced F- and E-words;
//! the K-part is always evaluated on the weight of e·g.
//!
//! A slice is fixed by τ = wt(e) − wt(f) and the α_s-degree a of the E-part
//! (the F-part then has α_s-degree b = a − τ_s). The relations preserve both,
//! but a slice is spanned by infinitely many pairs, so it is computed on a
//! window of pairs with at most `bound` letters from S, enlarged until the
//! dimension matches the product character of V_− ⊗ V_+ ⊗ M(μ) ⊗ M(ν)^*.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cartan::{format_root, ParabolicData, RootCoords, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::qfield::matrix::{add_entry, SparseVec};
use crate::qfield::{RatFunc, Subspace};
use crate::reps::{levi_irrep, partition_counts};
use crate::uqalg::{AlgElement, Uq};

/// An element of W: (F-word, E-word) ↦ coefficient, words in the reduced bases.
pub type WElem = BTreeMap<(Vec<u8>, Vec<u8>), RatFunc>;

/// How many extra S-letters to try beyond the minimum before giving up.
const MAX_MARGIN: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WKey {
    pub tau: RootCoords,
    pub a: i64,
}

/// Data shared by every W-module of one flag.
pub struct WContext<'a> {
    pub rs: &'a RootSystem,
    pub uq: &'a Uq,
    pub p: &'a ParabolicData,
    pub s: usize,
    s_nodes: Vec<usize>,
    /// Nilradical partition counts grouped by α_s-degree.
    nil_by_degree: Vec<Vec<(RootCoords, u64)>>,
}

impl<'a> WContext<'a> {
    /// `max_degree` bounds the α_s-degrees that oracles can be asked about.
    pub fn new(rs: &'a RootSystem, uq: &'a Uq, p: &'a ParabolicData, max_degree: i64) -> Result<Self> {
        let s = p
            .excluded
            .filter(|_| p.irreducible)
            .ok_or_else(|| Error::NotIrreducible(format!("S = {{{}}}", p.s_label())))?;
        let nil: Vec<RootCoords> = p.nilradical_roots.iter().map(|&k| rs.positive_roots[k].clone()).collect();
        let maxh = nil.iter().map(|b| b.iter().sum::<i64>()).max().unwrap_or(1);
        let parts = partition_counts(&nil, rs.rank(), max_degree * maxh);
        let mut nil_by_degree = vec![Vec::new(); max_degree as usize + 1];
        let mut zero_seen = false;
        for (g, c) in parts {
            if g.iter().all(|&x| x == 0) {
                zero_seen = true;
            }
            let d = g[s];
            if d <= max_degree {
                nil_by_degree[d as usize].push((g, c));
            }
        }
        if !zero_seen {
            nil_by_degree[0].push((vec![0; rs.rank()], 1));
        }
        for v in &mut nil_by_degree {
            v.sort();
        }
        Ok(WContext {
            rs,
            uq,
            p,
            s,
            s_nodes: p.s_set.iter().copied().collect(),
            nil_by_degree,
        })
    }

    pub fn max_degree(&self) -> i64 {
        self.nil_by_degree.len() as i64 - 1
    }

    fn nil(&self, d: i64) -> Result<&[(RootCoords, u64)]> {
        if d < 0 {
            return Ok(&[]);
        }
        self.nil_by_degree
            .get(d as usize)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::OutOfRange(format!("α_s-degree {d} exceeds the prepared range")))
    }

    /// α_s-degree and S-letter count of a pair.
    pub fn pair_key(&self, f: &[u8], e: &[u8]) -> (WKey, i64) {
        let wf = self.uq.word_weight(f);
        let we = self.uq.word_weight(e);
        let tau: RootCoords = we.iter().zip(&wf).map(|(x, y)| x - y).collect();
        let count = self.s_nodes.iter().map(|&i| wf[i] + we[i]).sum();
        (WKey { tau, a: we[self.s] }, count)
    }

    /// Rewrites a combination of arbitrary (F-word, E-word) pairs in the reduced bases.
    pub fn canonicalize(&self, terms: impl IntoIterator<Item = ((Vec<u8>, Vec<u8>), RatFunc)>) -> Result<WElem> {
        let mut out = WElem::new();
        for ((f, e), c) in terms {
            let sf = self.uq.weight_space(&self.uq.word_weight(&f))?;
            let se = self.uq.weight_space(&self.uq.word_weight(&e))?;
            for (i, x) in sf.reduce_word(&f).iter() {
                for (j, y) in se.reduce_word(&e).iter() {
                    let key = (sf.basis_word(*i).to_vec(), se.basis_word(*j).to_vec());
                    let v = &(&c * x) * y;
                    let slot = out.entry(key.clone()).or_insert_with(RatFunc::zero);
                    *slot += &v;
                    if slot.is_zero() {
                        out.remove(&key);
                    }
                }
            }
        }
        Ok(out)
    }

    /// u·x for x in W with generator weight `gen`: straighten e·u and evaluate
    /// the K-part on the weight of the new E-part.
    pub fn act_right(&self, x: &WElem, u: &AlgElement, gen: &Weight) -> Result<WElem> {
        let mut raw = Vec::new();
        for ((f, e), c) in x {
            let z = self.uq.mul(&self.uq.e_word(e), u);
            for (m, d) in &z.terms {
                let lam = gen + &self.rs.root_to_weight(&self.uq.word_weight(&m.e));
                let exp: i64 = m
                    .k
                    .iter()
                    .enumerate()
                    .map(|(j, &k)| k as i64 * self.uq.symmetrizer(j) * lam.0[j])
                    .sum();
                let mut ff = f.clone();
                ff.extend(&m.f);
                raw.push(((ff, m.e.clone()), (c * d).shift(exp as i32)));
            }
        }
        self.canonicalize(raw)
    }

    /// f·x for an F-word f: prepend f to every F-part and re-reduce.
    pub fn prepend_f(&self, f: &[u8], x: &WElem, c: &RatFunc) -> Result<WElem> {
        if f.is_empty() {
            return Ok(x.iter().map(|(p, d)| (p.clone(), c * d)).collect());
        }
        self.canonicalize(x.iter().map(|((f2, e2), d)| {
            let mut ff = f.to_vec();
            ff.extend(f2);
            ((ff, e2.clone()), c * d)
        }))
    }

    /// u·g: the cyclic generator acted on by u.
    pub fn on_generator(&self, u: &AlgElement, gen: &Weight) -> Result<WElem> {
        let mut g = WElem::new();
        g.insert((Vec::new(), Vec::new()), RatFunc::one());
        self.act_right(&g, u, gen)
    }

    /// Module W(μ,ν) with its slice cache.
    pub fn module(&self, mu: &Weight, nu: &Weight) -> Result<WModule> {
        let m_mu = levi_irrep(self.rs, self.p, mu)?.offsets(self.rs);
        let m_nu = levi_irrep(self.rs, self.p, nu)?.offsets(self.rs);
        let mut ann = Vec::new();
        for &i in &self.s_nodes {
            ann.push(self.uq.f_word(&vec![i as u8; (mu.0[i] + 1) as usize]));
            ann.push(self.uq.e_word(&vec![i as u8; (nu.0[i] + 1) as usize]));
        }
        Ok(WModule {
            mu: mu.clone(),
            nu: nu.clone(),
            gen: mu - nu,
            m_mu: m_mu.into_iter().collect(),
            m_nu: m_nu.into_iter().collect(),
            ann,
            cache: Mutex::new(HashMap::new()),
            ann_images: Mutex::new(HashMap::new()),
        })
    }

    /// All pairs in slice `key` with at most `bound` S-letters, longest first.
    fn pairs(&self, key: &WKey, bound: i64) -> Result<Vec<((Vec<u8>, Vec<u8>), i64)>> {
        let n = self.rs.rank();
        let b = key.a - key.tau[self.s];
        let mut out = Vec::new();
        if key.a < 0 || b < 0 {
            return Ok(out);
        }
        let mins: Vec<i64> = self.s_nodes.iter().map(|&i| key.tau[i].max(0)).collect();
        let base: i64 = self.s_nodes.iter().zip(&mins).map(|(&i, &m)| 2 * m - key.tau[i]).sum();
        if base > bound {
            return Ok(out);
        }
        let mut stack = vec![(0usize, mins.clone(), base)];
        while let Some((k, cur, used)) = stack.pop() {
            if k == self.s_nodes.len() {
                let mut be = vec![0i64; n];
                be[self.s] = key.a;
                for (t, &i) in self.s_nodes.iter().enumerate() {
                    be[i] = cur[t];
                }
                let bf: RootCoords = be.iter().zip(&key.tau).map(|(x, y)| x - y).collect();
                let se = self.uq.weight_space(&be)?;
                let sf = self.uq.weight_space(&bf)?;
                for fi in 0..sf.dim() {
                    for ei in 0..se.dim() {
                        out.push(((sf.basis_word(fi).to_vec(), se.basis_word(ei).to_vec()), used));
                    }
                }
                continue;
            }
            let mut extra = 0;
            while used + 2 * extra <= bound {
                let mut next = cur.clone();
                next[k] += extra;
                stack.push((k + 1, next, used + 2 * extra));
                extra += 1;
            }
        }
        out.sort_by(|x, y| y.1.cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
        Ok(out)
    }
}

/// One W(μ,ν) with cached slices.
pub struct WModule {
    pub mu: Weight,
    pub nu: Weight,
    /// Weight of the generator, μ − ν.
    pub gen: Weight,
    m_mu: Vec<(RootCoords, u64)>,
    m_nu: Vec<(RootCoords, u64)>,
    /// F_i^{m_i} and E_i^{n_i} for i ∈ S.
    pub ann: Vec<AlgElement>,
    cache: Mutex<HashMap<WKey, Arc<WSlice>>>,
    /// e·r·g for an E-word e and annihilator index r.
    ann_images: Mutex<HashMap<(usize, Vec<u8>), Arc<WElem>>>,
}

/// A computed slice: window pairs, relations, and the quotient basis.
#[derive(Debug)]
pub struct WSlice {
    pub key: WKey,
    pub bound: i64,
    pub pairs: Vec<(Vec<u8>, Vec<u8>)>,
    index: HashMap<(Vec<u8>, Vec<u8>), usize>,
    relations: Subspace,
    pub quotient: Vec<usize>,
    qpos: HashMap<usize, usize>,
    pub oracle: usize,
}

impl WSlice {
    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    /// Representative pair of quotient basis vector k.
    pub fn basis_pair(&self, k: usize) -> &(Vec<u8>, Vec<u8>) {
        &self.pairs[self.quotient[k]]
    }

    /// Quotient coordinates; every term must lie in the window.
    pub fn reduce(&self, x: &WElem) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (pair, c) in x {
            let col = self.index.get(pair).ok_or_else(|| {
                Error::Internal(format!("pair outside the window of slice {}", format_root(&self.key.tau)))
            })?;
            add_entry(&mut v, *col, c);
        }
        Ok(self
            .relations
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (self.qpos[&c], x))
            .collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WSliceInfo {
    pub tau: String,
    pub bidegree: (i64, i64),
    pub dim: usize,
    pub oracle: usize,
    pub bound: i64,
}

impl WModule {
    /// dim of the slice from characters: Σ P(γ₊) P(γ₋) m_μ(x) m_ν(x')
    /// over γ₊ − γ₋ − x + x' = τ with the prescribed α_s-degrees.
    pub fn oracle_dim(&self, ctx: &WContext, key: &WKey) -> Result<usize> {
        let b = key.a - key.tau[ctx.s];
        if key.a < 0 || b < 0 {
            return Ok(0);
        }
        let minus: HashMap<&RootCoords, u64> = ctx.nil(b)?.iter().map(|(g, c)| (g, *c)).collect();
        let mut total = 0u64;
        for (gp, cp) in ctx.nil(key.a)? {
            for (x, mx) in &self.m_mu {
                for (x2, mx2) in &self.m_nu {
                    let gm: RootCoords = (0..gp.len()).map(|i| gp[i] - x[i] + x2[i] - key.tau[i]).collect();
                    if let Some(cm) = minus.get(&gm) {
                        total += cp * cm * mx * mx2;
                    }
                }
            }
        }
        Ok(total as usize)
    }

    /// Every slice with a ≤ max_a and b ≤ max_b that the characters say is nonzero.
    pub fn box_keys(&self, ctx: &WContext, max_a: i64, max_b: i64) -> Result<BTreeMap<WKey, usize>> {
        let mut out: BTreeMap<WKey, usize> = BTreeMap::new();
        for a in 0..=max_a {
            for b in 0..=max_b {
                for (gp, cp) in ctx.nil(a)? {
                    for (gm, cm) in ctx.nil(b)? {
                        for (x, mx) in &self.m_mu {
                            for (x2, mx2) in &self.m_nu {
                                let tau: RootCoords = (0..gp.len()).map(|i| gp[i] - gm[i] - x[i] + x2[i]).collect();
                                *out.entry(WKey { tau, a }).or_insert(0) += (cp * cm * mx * mx2) as usize;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn dim_mu(&self) -> u64 {
        self.m_mu.iter().map(|(_, m)| m).sum()
    }

    pub fn dim_nu(&self) -> u64 {
        self.m_nu.iter().map(|(_, m)| m).sum()
    }

    /// The slice with a window of at least `min_bound` S-letters.
    pub fn slice(&self, ctx: &WContext, key: &WKey, min_bound: i64) -> Result<Arc<WSlice>> {
        if let Some(s) = self.cache.lock().unwrap().get(key) {
            if s.bound >= min_bound {
                return Ok(s.clone());
            }
        }
        let oracle = self.oracle_dim(ctx, key)?;
        let base: i64 = ctx.s_nodes.iter().map(|&i| key.tau[i].abs()).sum();
        let mut bound = base.max(min_bound);
        let mut last = None;
        while bound <= base.max(min_bound) + 2 * MAX_MARGIN {
            let s = self.build_slice(ctx, key, bound, oracle)?;
            if s.dim() == oracle {
                let s = Arc::new(s);
                self.cache.lock().unwrap().insert(key.clone(), s.clone());
                return Ok(s);
            }
            last = Some(s.dim());
            // extra S-letters come in pairs, so odd steps give the same window
            bound += 2;
        }
        Err(Error::Internal(format!(
            "slice τ = {}, a = {} of W({}, {}) has dimension {:?} in the largest window, characters give {oracle}",
            format_root(&key.tau),
            key.a,
            self.mu,
            self.nu,
            last
        )))
    }

    fn build_slice(&self, ctx: &WContext, key: &WKey, bound: i64, oracle: usize) -> Result<WSlice> {
        let listed = ctx.pairs(key, bound)?;
        let pairs: Vec<(Vec<u8>, Vec<u8>)> = listed.iter().map(|(p, _)| p.clone()).collect();
        let index: HashMap<(Vec<u8>, Vec<u8>), usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut relations = Subspace::new(pairs.len());
        for (ri, r) in self.ann.iter().enumerate() {
            let wr = r.weight(ctx.rs.rank()).expect("homogeneous");
            let len: i64 = wr.iter().map(|x| x.abs()).sum();
            if len > bound {
                continue;
            }
            // (f', e') with f'·e'·r landing in this slice
            let src = WKey {
                tau: key.tau.iter().zip(&wr).map(|(t, w)| t - w).collect(),
                a: key.a,
            };
            for ((f, e), _) in ctx.pairs(&src, bound - len)? {
                let img = ctx.prepend_f(&f, &*self.ann_image(ctx, ri, &e)?, &RatFunc::one())?;
                let mut v = SparseVec::new();
                for (pair, c) in &img {
                    let col = index.get(pair).ok_or_else(|| Error::Internal("relation left the window".into()))?;
                    add_entry(&mut v, *col, c);
                }
                relations.insert(v);
            }
        }
        let quotient = relations.free_columns();
        let qpos = quotient.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Ok(WSlice {
            key: key.clone(),
            bound,
            pairs,
            index,
            relations,
            quotient,
            qpos,
            oracle,
        })
    }

    fn ann_image(&self, ctx: &WContext, r: usize, e: &[u8]) -> Result<Arc<WElem>> {
        let key = (r, e.to_vec());
        if let Some(x) = self.ann_images.lock().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let mut x = WElem::new();
        x.insert((Vec::new(), e.to_vec()), RatFunc::one());
        let img = Arc::new(ctx.act_right(&x, &self.ann[r], &self.gen)?);
        self.ann_images.lock().unwrap().insert(key, img.clone());
        Ok(img)
    }

    /// Splits x by slice and reduces each part; returns the nonzero parts.
    pub fn reduce(&self, ctx: &WContext, x: &WElem) -> Result<BTreeMap<WKey, SparseVec>> {
        let mut parts: BTreeMap<WKey, (WElem, i64)> = BTreeMap::new();
        for (pair, c) in x {
            let (key, count) = ctx.pair_key(&pair.0, &pair.1);
            let slot = parts.entry(key).or_insert_with(|| (WElem::new(), 0));
            slot.0.insert(pair.clone(), c.clone());
            slot.1 = slot.1.max(count);
        }
        let mut out = BTreeMap::new();
        for (key, (elem, count)) in parts {
            let s = self.slice(ctx, &key, count)?;
            let v = s.reduce(&elem)?;
            if !v.is_empty() {
                out.insert(key, v);
            }
        }
        Ok(out)
    }

    pub fn info(&self, ctx: &WContext, key: &WKey) -> Result<WSliceInfo> {
        let s = self.slice(ctx, key, 0)?;
        Ok(WSliceInfo {
            tau: format_root(&key.tau),
            bidegree: (key.a, key.a - key.tau[ctx.s]),
            dim: s.dim(),
            oracle: s.oracle,
            bound: s.bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_w00() {
        let rs = RootSystem::from_str_type("A1").unwrap();
        let p = ParabolicData::from_one_based(&rs, "").unwrap();
        let uq = Uq::new(&rs);
        let ctx = WContext::new(&rs, &uq, &p, 4).unwrap();
        let w = ctx.module(&Weight(vec![0]), &Weight(vec![0])).unwrap();
        let k = WKey { tau: vec![0], a: 0 };
        assert_eq!(w.slice(&ctx, &k, 0).unwrap().dim(), 1);
        // (FE − EF)·g = 0
        let u = uq.mul(&uq.f(0), &uq.e(0)).sub(&uq.mul(&uq.e(0), &uq.f(0)));
        let x = ctx.on_generator(&u, &w.gen).unwrap();
        assert!(w.reduce(&ctx, &x).unwrap().is_empty());
        // but FE·g itself is not zero
        let x = ctx.on_generator(&uq.mul(&uq.f(0), &uq.e(0)), &w.gen).unwrap();
        assert!(!w.reduce(&ctx, &x).unwrap().is_empty());
    }

    #[test]
    fn cp2_slices_match_characters() {
        let rs = RootSystem::from_str_type("A2").unwrap();
        let p = ParabolicData::from_one_based(&rs, "1").unwrap();
        let uq = Uq::new(&rs);
        let ctx = WContext::new(&rs, &uq, &p, 4).unwrap();
        // s2.0 = −α2 = (1, −2): M(−α2) is the 2-dimensional l_S-module
        let m = Weight(vec![1, -2]);
        let w = ctx.module(&m, &Weight(vec![0, 0])).unwrap();
        assert_eq!(w.dim_mu(), 2);
        for (key, d) in w.box_keys(&ctx, 1, 1).unwrap() {
            assert_eq!(w.slice(&ctx, &key, 0).unwrap().dim(), d, "{key:?}");
        }
    }
}

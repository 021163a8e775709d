//! Quantum tangent spaces (ad U_q(l_S)) F_s and (ad U_q(l_S)) E_s.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cartan::{ParabolicData, RootCoords};
use crate::error::{Error, Result};
use crate::qfield::matrix::{add_entry, SparseVec};
use crate::qfield::Subspace;

use super::{AlgElement, NormalMono, Uq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Orbit of F_s.
    Lower,
    /// Orbit of E_s K_s^{-1}. The bare E_s is not ad-finite under
    /// Δ(F_i) = F_i⊗1 + K_i^{-1}⊗F_i, since (ad F_i)E_s ∝ E_s F_i.
    Upper,
}

/// A saturated adjoint orbit with its weight decomposition.
#[derive(Clone, Debug)]
pub struct TangentSpace {
    pub side: Side,
    /// Basis elements in canonical form.
    pub basis: Vec<AlgElement>,
    /// Weight (root coordinates) of each basis element.
    pub weights: Vec<RootCoords>,
}

impl TangentSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl Uq {
    /// Saturates span{F_s} (or span{E_s K_s^{-1}}) under ad E_i, ad F_i for
    /// i ∈ S; the K_j act by scalars. Weights ignore the K-part.
    pub fn tangent_space(&self, p: &ParabolicData, side: Side) -> Result<TangentSpace> {
        let s = p
            .excluded
            .filter(|_| p.irreducible)
            .ok_or_else(|| Error::NotIrreducible(format!("S = {{{}}}", p.s_label())))?;
        let allowed: Vec<RootCoords> = p
            .nilradical_roots
            .iter()
            .map(|&k| {
                let b = &self.positive_roots[k];
                match side {
                    Side::Lower => b.iter().map(|x| -x).collect(),
                    Side::Upper => b.clone(),
                }
            })
            .collect();
        let start = match side {
            Side::Lower => self.f(s),
            Side::Upper => self.mul(&self.e(s), &self.k(s, -1)),
        };
        let mut gens = Vec::new();
        for &i in &p.s_set {
            gens.push(self.e(i));
            gens.push(self.f(i));
        }

        let mut keys: HashMap<NormalMono, usize> = HashMap::new();
        let mut key_list: Vec<NormalMono> = Vec::new();
        let mut intern = |x: &AlgElement, keys: &mut HashMap<NormalMono, usize>| -> SparseVec {
            let mut v = SparseVec::new();
            for (m, c) in &x.terms {
                let id = *keys.entry(m.clone()).or_insert_with(|| {
                    key_list.push(m.clone());
                    key_list.len() - 1
                });
                add_entry(&mut v, id, c);
            }
            v
        };
        // the ambient grows as keys are interned; a generous bound suffices
        let mut span = Subspace::new(usize::MAX);
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        let mut queue = vec![self.canonical(&start)?];
        while let Some(x) = queue.pop() {
            if x.is_zero() {
                continue;
            }
            let w = x
                .weight(self.rank())
                .ok_or_else(|| Error::Internal("inhomogeneous orbit element".into()))?;
            if !allowed.contains(&w) {
                return Err(Error::Internal(format!("orbit left the allowed weights at {w:?}")));
            }
            let v = intern(&x, &mut keys);
            if !span.insert(v) {
                continue;
            }
            basis.push(x.clone());
            weights.push(w);
            for g in &gens {
                queue.push(self.canonical(&self.adjoint(g, &x))?);
            }
        }
        Ok(TangentSpace { side, basis, weights })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;

    #[test]
    fn dims_match_nilradical() {
        for (t, s) in [("A1", ""), ("A2", "1"), ("A3", "1,3"), ("B2", "2"), ("C3", "1,2")] {
            let rs = RootSystem::from_str_type(t).unwrap();
            let p = ParabolicData::from_one_based(&rs, s).unwrap();
            let u = Uq::new(&rs);
            for side in [Side::Lower, Side::Upper] {
                let ts = u.tangent_space(&p, side).unwrap();
                assert_eq!(ts.dim(), p.nilradical_roots.len(), "{t} {s} {side:?}");
            }
        }
    }
}

//! Characters: Levi irreducibles, exterior powers of g/p_S, partition counts
//! and truncated generalized Verma characters.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cartan::{root_height, ParabolicData, RootCoords, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::weyl::{BruhatGraph, WeylGroup};

/// Weight multiplicities, keyed by fundamental coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMap {
    pub entries: BTreeMap<Weight, u64>,
}

impl CharMap {
    pub fn singleton(w: Weight) -> Self {
        let mut c = CharMap::default();
        c.add(w, 1);
        c
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }

    pub fn merge(&mut self, other: &CharMap) {
        for (w, m) in &other.entries {
            self.add(w.clone(), *m);
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Character of the dual module.
    pub fn dual(&self) -> CharMap {
        CharMap {
            entries: self.entries.iter().map(|(w, m)| (-w, *m)).collect(),
        }
    }
}

/// Finite-dimensional irreducible module M(λ) of the Levi factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeviIrrep {
    pub highest_weight: Weight,
    pub character: CharMap,
    /// Value of the Weyl dimension formula over R_S^+.
    pub weyl_dimension: u64,
}

impl LeviIrrep {
    pub fn dim(&self) -> u64 {
        self.character.total_dim()
    }

    /// Weights as offsets λ − μ in root coordinates (supported on S).
    pub fn offsets(&self, rs: &RootSystem) -> BTreeMap<RootCoords, u64> {
        self.character
            .entries
            .iter()
            .map(|(w, m)| {
                let d = rs.weight_to_root(&(&self.highest_weight - w)).unwrap();
                (d, *m)
            })
            .collect()
    }
}

/// Freudenthal's recursion over the roots of S:
/// m(μ)·(λ−μ, λ+μ+2ρ_S) = 2 Σ_{α∈R_S^+} Σ_{k≥1} m(μ+kα)(μ+kα, α).
pub fn levi_irrep(rs: &RootSystem, p: &ParabolicData, lambda: &Weight) -> Result<LeviIrrep> {
    if !p.is_levi_dominant(lambda) {
        return Err(Error::NotLeviDominant(lambda.to_string()));
    }
    let roots: Vec<&RootCoords> = p.levi_roots.iter().map(|&k| &rs.positive_roots[k]).collect();
    let root_w: Vec<Weight> = roots.iter().map(|b| rs.root_to_weight(b)).collect();
    let lam_plus = &(lambda + lambda) + &p.two_rho_s;

    // offsets β = λ − μ in root coordinates, explored by depth
    let n = rs.rank();
    let mut mult: HashMap<RootCoords, u64> = HashMap::new();
    mult.insert(vec![0; n], 1);
    let mut layer = vec![vec![0i64; n]];
    while !layer.is_empty() {
        let mut next: Vec<RootCoords> = Vec::new();
        for beta in &layer {
            for &i in &p.s_set {
                let mut cand = beta.clone();
                cand[i] += 1;
                if mult.contains_key(&cand) || next.contains(&cand) {
                    continue;
                }
                next.push(cand);
            }
        }
        let mut kept = Vec::new();
        for beta in next {
            let mu = lambda - &rs.root_to_weight(&beta);
            // (λ−μ, λ+μ+2ρ_S) with λ−μ = β
            let lhs = rs.pair_weight_root(&(&lam_plus - &rs.root_to_weight(&beta)), &beta);
            let mut rhs: i64 = 0;
            for (alpha, aw) in roots.iter().zip(&root_w) {
                let mut k = 1;
                loop {
                    let off: RootCoords = beta.iter().zip(alpha.iter()).map(|(b, a)| b - k * a).collect();
                    if off.iter().any(|&c| c < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&off) {
                        let up = &mu + &aw.scale(k);
                        rhs += m as i64 * rs.pair_weight_root(&up, alpha);
                    }
                    k += 1;
                }
            }
            rhs *= 2;
            if rhs == 0 {
                continue;
            }
            if lhs <= 0 || rhs % lhs != 0 || rhs / lhs < 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion failed at offset {beta:?} of {lambda}"
                )));
            }
            mult.insert(beta.clone(), (rhs / lhs) as u64);
            kept.push(beta);
        }
        layer = kept;
    }
    let mut character = CharMap::default();
    for (beta, m) in &mult {
        character.add(lambda - &rs.root_to_weight(beta), *m);
    }
    let weyl_dimension = weyl_dimension(rs, p, lambda);
    Ok(LeviIrrep {
        highest_weight: lambda.clone(),
        character,
        weyl_dimension,
    })
}

/// Π_{α∈R_S^+} (λ+ρ_S, α)/(ρ_S, α), computed with doubled weights.
pub fn weyl_dimension(rs: &RootSystem, p: &ParabolicData, lambda: &Weight) -> u64 {
    let lam_plus = &lambda.scale(2) + &p.two_rho_s;
    let mut acc = Ratio::<i128>::from_integer(1);
    for &k in &p.levi_roots {
        let alpha = &rs.positive_roots[k];
        let num = rs.pair_weight_root(&lam_plus, alpha) as i128;
        let den = rs.pair_weight_root(&p.two_rho_s, alpha) as i128;
        acc *= Ratio::new(num, den);
    }
    assert!(acc.is_integer(), "Weyl dimension must be integral");
    *acc.numer() as u64
}

/// True when the character is invariant under the simple reflections of S.
pub fn is_levi_invariant(rs: &RootSystem, p: &ParabolicData, c: &CharMap) -> bool {
    c.entries
        .iter()
        .all(|(w, m)| p.s_set.iter().all(|&i| c.mult(&rs.reflect_weight(i, w)) == *m))
}

/// Weights of g/p_S, i.e. the negatives of the nilradical roots.
pub fn quotient_weights(rs: &RootSystem, p: &ParabolicData) -> CharMap {
    let mut c = CharMap::default();
    for &k in &p.nilradical_roots {
        c.add(-&rs.root_to_weight(&rs.positive_roots[k]), 1);
    }
    c
}

/// Character of Λ^k(g/p_S): sums over k-element subsets of the quotient weights.
pub fn exterior_power_char(rs: &RootSystem, p: &ParabolicData, k: usize) -> Result<CharMap> {
    let ws: Vec<Weight> = p
        .nilradical_roots
        .iter()
        .map(|&r| -&rs.root_to_weight(&rs.positive_roots[r]))
        .collect();
    if k > ws.len() {
        return Err(Error::OutOfRange(format!("exterior power {k} > {}", ws.len())));
    }
    fn walk(ws: &[Weight], start: usize, left: usize, acc: Weight, out: &mut CharMap) {
        if left == 0 {
            out.add(acc, 1);
            return;
        }
        for i in start..=ws.len() - left {
            walk(ws, i + 1, left - 1, &acc + &ws[i], out);
        }
    }
    let mut c = CharMap::default();
    walk(&ws, 0, k, Weight::zero(rs.rank()), &mut c);
    Ok(c)
}

/// One row of the dimension identity.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DimRow {
    pub level: usize,
    pub exterior_dim: u64,
    pub levi_dim_sum: u64,
    pub multisets_agree: bool,
}

/// dim Λ^j(g/p_S) against Σ_{l(w)=j} dim M(w.0), and the same as weight multisets.
pub fn dim_identity(
    rs: &RootSystem,
    g: &WeylGroup,
    p: &ParabolicData,
    graph: &BruhatGraph,
) -> Result<Vec<DimRow>> {
    let mut rows = Vec::new();
    for (j, level) in graph.levels.iter().enumerate() {
        let ext = exterior_power_char(rs, p, j)?;
        let mut union = CharMap::default();
        for &pos in level {
            let w0 = g.shifted_act(graph.elements[pos], &Weight::zero(rs.rank()));
            union.merge(&levi_irrep(rs, p, &w0)?.character);
        }
        rows.push(DimRow {
            level: j,
            exterior_dim: ext.total_dim(),
            levi_dim_sum: union.total_dim(),
            multisets_agree: union == ext,
        });
    }
    let n = p.nilradical_roots.len();
    if graph.levels.len() != n + 1 {
        // a missing top level shows up as a mismatch against the binomials
        for j in graph.levels.len()..=n {
            rows.push(DimRow {
                level: j,
                exterior_dim: exterior_power_char(rs, p, j)?.total_dim(),
                levi_dim_sum: 0,
                multisets_agree: false,
            });
        }
    }
    Ok(rows)
}

/// Number of ways to write each β with ht(β) ≤ `max_height` as a multiset of
/// the given roots (all of positive height).
pub fn partition_counts(roots: &[RootCoords], rank: usize, max_height: i64) -> HashMap<RootCoords, u64> {
    let mut counts: HashMap<RootCoords, u64> = HashMap::new();
    counts.insert(vec![0; rank], 1);
    for r in roots {
        let h = root_height(r);
        let mut next: HashMap<RootCoords, u64> = HashMap::new();
        for (key, c) in &counts {
            let mut cur = key.clone();
            let mut ht = root_height(key);
            while ht <= max_height {
                *next.entry(cur.clone()).or_insert(0) += c;
                for (x, y) in cur.iter_mut().zip(r) {
                    *x += y;
                }
                ht += h;
            }
        }
        counts = next;
    }
    counts
}

/// Kostant partition function over all positive roots.
pub fn kostant_partition(rs: &RootSystem, beta: &[i64]) -> u64 {
    let h = root_height(beta);
    partition_counts(&rs.positive_roots, rs.rank(), h)
        .get(beta)
        .copied()
        .unwrap_or(0)
}

/// Truncated character of the generalized Verma module with highest weight λ:
/// offsets β = λ − weight (root coordinates) with ht(β) ≤ `max_height`.
pub fn gvm_offsets(
    rs: &RootSystem,
    p: &ParabolicData,
    lambda: &Weight,
    max_height: i64,
) -> Result<BTreeMap<RootCoords, u64>> {
    let m = levi_irrep(rs, p, lambda)?;
    let nil: Vec<RootCoords> = p.nilradical_roots.iter().map(|&k| rs.positive_roots[k].clone()).collect();
    let parts = partition_counts(&nil, rs.rank(), max_height);
    let mut out: BTreeMap<RootCoords, u64> = BTreeMap::new();
    for (g, a) in m.offsets(rs) {
        for (b, c) in &parts {
            if root_height(&g) + root_height(b) > max_height {
                continue;
            }
            let off: RootCoords = g.iter().zip(b).map(|(x, y)| x + y).collect();
            *out.entry(off).or_insert(0) += a * c;
        }
    }
    Ok(out)
}

/// Same as `gvm_offsets`, keyed by weights.
pub fn gvm_char(rs: &RootSystem, p: &ParabolicData, lambda: &Weight, max_height: i64) -> Result<CharMap> {
    let mut c = CharMap::default();
    for (off, m) in gvm_offsets(rs, p, lambda, max_height)? {
        c.add(lambda - &rs.root_to_weight(&off), m);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::ParabolicData;

    #[test]
    fn a2_levi_string() {
        let rs = RootSystem::from_str_type("A2").unwrap();
        let p = ParabolicData::from_one_based(&rs, "1").unwrap();
        let lam = -&rs.root_to_weight(&[0, 1]);
        let m = levi_irrep(&rs, &p, &lam).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.weyl_dimension, 2);
        assert!(is_levi_invariant(&rs, &p, &m.character));
        assert!(levi_irrep(&rs, &p, &Weight(vec![-1, 0])).is_err());
    }

    #[test]
    fn exterior_powers_cp2() {
        let rs = RootSystem::from_str_type("A2").unwrap();
        let p = ParabolicData::from_one_based(&rs, "1").unwrap();
        let e2 = exterior_power_char(&rs, &p, 2).unwrap();
        assert_eq!(e2, CharMap::singleton(-&rs.root_to_weight(&[1, 2])));
        assert_eq!(exterior_power_char(&rs, &p, 0).unwrap().total_dim(), 1);
        assert_eq!(exterior_power_char(&rs, &p, 1).unwrap().total_dim(), 2);
        assert!(exterior_power_char(&rs, &p, 3).is_err());
    }

    #[test]
    fn partitions_a2() {
        let rs = RootSystem::from_str_type("A2").unwrap();
        assert_eq!(kostant_partition(&rs, &[1, 1]), 2);
        assert_eq!(kostant_partition(&rs, &[2, 1]), 2);
        assert_eq!(kostant_partition(&rs, &[2, 2]), 3);
        assert_eq!(kostant_partition(&rs, &[3, 0]), 1);
    }
}

//! The parabolic BGG complex
//! 0 → C_top → ... → C_1 → C_0 = V^{M(μ)} → V(μ) → 0
//! with C_j = ⊕_{w∈W^S, l(w)=j} V^{M(w.μ)}, assembled from normalized
//! standard maps and checked slice by slice.

pub mod double;
pub mod wslice;

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{format_root, ParabolicData, RootCoords, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::qfield::matrix::{add_entry, SparseVec};
use crate::qfield::{QMatrix, RankMode, RatFunc};
use crate::reps::{gvm_offsets, levi_irrep};
use crate::uqalg::Uq;
use crate::verma::{add_roots, gvm_slice_checked, multiply_coords, normalize_standard_maps, GvmSlice, StandardMaps};
use crate::weyl::{BruhatGraph, WeylGroup};

/// All Q^+ vectors of height ≤ h, by increasing height.
pub fn q_plus_up_to(rank: usize, h: i64) -> Vec<RootCoords> {
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<RootCoords>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, h, &mut vec![0; rank], &mut out);
    out.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    out
}

#[derive(Debug)]
pub struct BggComplex {
    pub parabolic: ParabolicData,
    pub mu: Weight,
    pub graph: BruhatGraph,
    pub maps: StandardMaps,
}

impl BggComplex {
    pub fn build(rs: &RootSystem, uq: &Uq, g: &WeylGroup, p: &ParabolicData, mu: &Weight) -> Result<Self> {
        if !p.irreducible {
            return Err(Error::NotIrreducible(format!(
                "S = {{{}}}: the flag manifold is not irreducible, so the dimension identity \
                 behind the complex fails; only irreducible flags are supported",
                p.s_label()
            )));
        }
        if !rs.is_dominant(mu) {
            return Err(Error::OutOfRange(format!("μ = {mu} is not dominant")));
        }
        let graph = BruhatGraph::build(rs, g, p)?;
        let maps = normalize_standard_maps(rs, uq, g, &graph, mu)?;
        Ok(BggComplex {
            parabolic: p.clone(),
            mu: mu.clone(),
            graph,
            maps,
        })
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.graph.level_sizes()
    }

    pub fn top(&self) -> usize {
        self.graph.levels.len().saturating_sub(1)
    }

    /// Arrows leaving graph position `w`.
    pub fn arrows_from(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.arrows.iter().enumerate().filter(move |(_, a)| a.from == w).map(|(k, _)| k)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiPair {
    pub from: String,
    pub to: String,
    pub paths: usize,
    pub zero: bool,
    /// Nonzero quotient coordinates of the residue, if any.
    pub residue: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiSquaredReport {
    pub pairs: Vec<PhiPair>,
    pub ok: bool,
}

/// φ_j∘φ_{j+1} = 0, tested on the generators of each C_{j+1} summand.
pub fn verify_phi_squared(rs: &RootSystem, uq: &Uq, c: &BggComplex) -> Result<PhiSquaredReport> {
    let graph = &c.graph;
    let mut pairs = Vec::new();
    for j in 2..graph.levels.len() {
        for &w in &graph.levels[j] {
            for &w2 in &graph.levels[j - 2] {
                let mut acc: Option<(RootCoords, Vec<RatFunc>)> = None;
                let mut paths = 0;
                for a in c.arrows_from(w) {
                    let mid = graph.arrows[a].to;
                    let Some(b) = graph.arrow_between(mid, w2) else { continue };
                    paths += 1;
                    let (ma, mb) = (&c.maps.maps[a], &c.maps.maps[b]);
                    let (beta, v) = multiply_coords(uq, (&ma.beta, &ma.signed_y()), (&mb.beta, &mb.signed_y()))?;
                    acc = Some(match acc {
                        None => (beta, v),
                        Some((b0, v0)) => (b0, v0.iter().zip(&v).map(|(x, y)| x + y).collect()),
                    });
                }
                let Some((beta, v)) = acc else { continue };
                let target = gvm_slice_checked(rs, uq, &c.parabolic, &c.maps.shifted[w2], &beta)?;
                let mut sv = SparseVec::new();
                for (k, x) in v.iter().enumerate() {
                    add_entry(&mut sv, k, x);
                }
                let res = target.project(sv);
                pairs.push(PhiPair {
                    from: graph.labels[w].clone(),
                    to: graph.labels[w2].clone(),
                    paths,
                    zero: res.is_empty(),
                    residue: res.iter().map(|(k, x)| format!("{}: {}", k, x)).collect(),
                });
            }
        }
    }
    let ok = pairs.iter().all(|p| p.zero);
    Ok(PhiSquaredReport { pairs, ok })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SliceReport {
    /// The slice has weight μ − β.
    pub beta: String,
    /// dim C_j in this weight, j = 0..top.
    pub dims: Vec<usize>,
    /// dim V(μ)_{μ−β}.
    pub augmentation: usize,
    /// rank φ_j for j = 1..top.
    pub ranks: Vec<usize>,
    /// Σ (−1)^j dim C_j − dim V(μ) from the characters alone.
    pub euler_characteristic: i64,
    /// Levels where ker ≠ im.
    pub defects: Vec<usize>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExactnessReport {
    pub height: i64,
    pub mode: RankMode,
    pub slices: Vec<SliceReport>,
    pub ok: bool,
}

/// Weight multiplicities of the finite-dimensional V(μ), keyed by μ − weight.
fn irrep_offsets(rs: &RootSystem, mu: &Weight) -> Result<HashMap<RootCoords, u64>> {
    if mu.is_zero() {
        return Ok(HashMap::from([(vec![0; rs.rank()], 1)]));
    }
    let full = ParabolicData::new(rs, (0..rs.rank()).collect::<BTreeSet<_>>())?;
    Ok(levi_irrep(rs, &full, mu)?.offsets(rs).into_iter().collect())
}

/// Matrix of φ_j in one weight, between GVM quotient bases. Summands with
/// no slice in this weight are absent from `slices` and contribute nothing.
fn differential(uq: &Uq, c: &BggComplex, j: usize, slices: &HashMap<usize, GvmSlice>) -> Result<QMatrix> {
    let graph = &c.graph;
    let mut row_off = HashMap::new();
    let mut rows = 0;
    for &w in &graph.levels[j - 1] {
        if let Some(s) = slices.get(&w) {
            row_off.insert(w, rows);
            rows += s.dim();
        }
    }
    let mut cols = Vec::new();
    for &w in &graph.levels[j] {
        let Some(s) = slices.get(&w) else { continue };
        for k in 0..s.dim() {
            let word = s.quotient_word(k);
            let mut col = SparseVec::new();
            for a in c.arrows_from(w) {
                let m = &c.maps.maps[a];
                let Some(t) = slices.get(&m.to) else { continue };
                let sy = uq.weight_space(&m.beta)?;
                let mut v = SparseVec::new();
                for (yi, yc) in m.signed_y().iter().enumerate() {
                    if yc.is_zero() {
                        continue;
                    }
                    let mut full = word.to_vec();
                    full.extend(sy.basis_word(yi));
                    for (tk, tc) in t.space.reduce_word(&full).iter() {
                        add_entry(&mut v, *tk, &(yc * tc));
                    }
                }
                for (r, x) in t.project(v) {
                    add_entry(&mut col, row_off[&m.to] + r, &x);
                }
            }
            cols.push(col);
        }
    }
    Ok(QMatrix::from_sparse_cols(&cols, rows))
}

/// Exactness of every weight slice μ − β with ht(β) ≤ h.
pub fn verify_exactness(rs: &RootSystem, uq: &Uq, c: &BggComplex, h: i64, mode: RankMode) -> Result<ExactnessReport> {
    let graph = &c.graph;
    let top = c.top();
    let aug = irrep_offsets(rs, &c.mu)?;
    let oracle: Vec<_> = graph
        .elements
        .iter()
        .enumerate()
        .map(|(pos, _)| {
            let off = &c.maps.offsets[pos];
            let shift: i64 = -off.iter().sum::<i64>();
            gvm_offsets(rs, &c.parabolic, &c.maps.shifted[pos], (h - shift).max(0))
        })
        .collect::<Result<_>>()?;

    let betas = q_plus_up_to(rs.rank(), h);
    let slices: Vec<SliceReport> = betas
        .par_iter()
        .map(|beta| -> Result<Option<SliceReport>> {
            // offset of the slice inside V^{M(w.μ)}: β + (w.μ − μ)
            let offset = |pos: usize| add_roots(beta, &c.maps.offsets[pos]);
            let expected = |pos: usize| -> usize {
                let o = offset(pos);
                if o.iter().any(|&x| x < 0) {
                    0
                } else {
                    oracle[pos].get(&o).copied().unwrap_or(0) as usize
                }
            };
            let augmentation = aug.get(beta).copied().unwrap_or(0) as usize;
            let odims: Vec<usize> = graph.levels.iter().map(|l| l.iter().map(|&w| expected(w)).sum()).collect();
            if odims.iter().all(|&d| d == 0) && augmentation == 0 {
                return Ok(None);
            }
            let euler = odims
                .iter()
                .enumerate()
                .map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum::<i64>()
                - augmentation as i64;

            let mut gvm = HashMap::new();
            for pos in 0..graph.elements.len() {
                let o = offset(pos);
                let s = if o.iter().any(|&x| x < 0) {
                    None
                } else {
                    Some(gvm_slice_checked(rs, uq, &c.parabolic, &c.maps.shifted[pos], &o)?)
                };
                if let Some(s) = s {
                    gvm.insert(pos, s);
                }
            }
            let dims: Vec<usize> = graph
                .levels
                .iter()
                .map(|l| l.iter().map(|w| gvm.get(w).map_or(0, |s| s.dim())).sum())
                .collect();
            let mut ranks = Vec::new();
            for j in 1..=top {
                let r = if dims[j] == 0 || dims[j - 1] == 0 {
                    0
                } else {
                    differential(uq, c, j, &gvm)?.rank_with(mode)
                };
                ranks.push(r);
            }
            let mut defects = Vec::new();
            for j in 0..=top {
                let r_j = if j == 0 { augmentation } else { ranks[j - 1] };
                let r_next = if j < top { ranks[j] } else { 0 };
                if dims[j] < r_j || dims[j] - r_j != r_next {
                    defects.push(j);
                }
            }
            Ok(Some(SliceReport {
                beta: format_root(beta),
                dims,
                augmentation,
                ranks,
                euler_characteristic: euler,
                exact: defects.is_empty() && euler == 0,
                defects,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let ok = slices.iter().all(|s| s.exact);
    Ok(ExactnessReport {
        height: h,
        mode,
        slices,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(t: &str, s: &str, h: i64) -> (BggComplex, PhiSquaredReport, ExactnessReport) {
        let rs = RootSystem::from_str_type(t).unwrap();
        let p = ParabolicData::from_one_based(&rs, s).unwrap();
        let g = WeylGroup::generate(&rs, 100_000).unwrap();
        let uq = Uq::new(&rs);
        let c = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank())).unwrap();
        let phi = verify_phi_squared(&rs, &uq, &c).unwrap();
        let ex = verify_exactness(&rs, &uq, &c, h, RankMode::Symbolic).unwrap();
        (c, phi, ex)
    }

    #[test]
    fn small_flags() {
        let (c, phi, ex) = run("A1", "", 8);
        assert_eq!(c.level_sizes(), vec![1, 1]);
        assert!(phi.ok && phi.pairs.is_empty());
        assert!(ex.ok, "{ex:?}");
        let (c, phi, ex) = run("A2", "1", 5);
        assert_eq!(c.level_sizes(), vec![1, 1, 1]);
        assert!(phi.ok && phi.pairs.len() == 1);
        assert!(ex.ok, "{ex:?}");
    }

    #[test]
    fn grassmannian() {
        let (c, phi, ex) = run("A3", "1,3", 3);
        assert_eq!(c.level_sizes(), vec![1, 1, 2, 1, 1]);
        assert!(phi.ok, "{phi:?}");
        assert!(ex.ok, "{ex:?}");
    }
}

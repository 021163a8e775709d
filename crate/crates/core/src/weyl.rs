//! Weyl group elements, minimal coset representatives, Bruhat arrows on W^S,
//! squares and the ±1 edge signs of the BGG differential.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cartan::{format_root, ParabolicData, RootCoords, RootSystem, Weight};
use crate::error::{Error, Result};

/// A Weyl group element stored by its action on fundamental coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylElement {
    /// Reduced word, leftmost factor first: `[2, 1]` is s_2 s_1 (0-based).
    pub word: Vec<usize>,
    pub length: usize,
    /// Images of the positive roots as signed 1-based indices into the
    /// positive-root list (negative sign = negative root).
    pub perm: Vec<i32>,
    matrix: Vec<i64>,
    inverse: Vec<i64>,
    key: Vec<i64>,
}

impl WeylElement {
    /// e.g. "s2s1", or "e" for the identity; indices 1-based.
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }
}

fn mat_vec(m: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// The full Weyl group with a left-multiplication table.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    pub elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    /// `left[k][i]` is the index of s_i w_k.
    left: Vec<Vec<usize>>,
    simple: Vec<Vec<i64>>,
    rho: Vec<i64>,
}

impl WeylGroup {
    /// Breadth-first generation by left multiplication with simple reflections.
    pub fn generate(rs: &RootSystem, cap: usize) -> Result<Self> {
        let n = rs.rank();
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for k in 0..n {
                    m[k * n + i] -= rs.cartan_matrix[k][i];
                }
                m
            })
            .collect();
        let rho = rs.rho().0;
        let mut g = WeylGroup {
            rank: n,
            elements: Vec::new(),
            index: HashMap::new(),
            left: Vec::new(),
            simple,
            rho,
        };
        let e = WeylElement {
            word: Vec::new(),
            length: 0,
            perm: Vec::new(),
            matrix: identity(n),
            inverse: identity(n),
            key: g.rho.clone(),
        };
        g.index.insert(e.key.clone(), 0);
        g.elements.push(e);
        let mut head = 0;
        while head < g.elements.len() {
            let mut row = Vec::with_capacity(n);
            for i in 0..n {
                let w = &g.elements[head];
                let matrix = mat_mul(&g.simple[i], &w.matrix, n);
                let key = mat_vec(&matrix, &g.rho);
                let idx = match g.index.get(&key) {
                    Some(&k) => k,
                    None => {
                        if g.elements.len() >= cap {
                            return Err(Error::GroupTooLarge {
                                reached: g.elements.len() + 1,
                                cap,
                            });
                        }
                        let mut word = vec![i];
                        word.extend(&w.word);
                        let el = WeylElement {
                            word,
                            length: w.length + 1,
                            perm: Vec::new(),
                            inverse: mat_mul(&w.inverse, &g.simple[i], n),
                            matrix,
                            key: key.clone(),
                        };
                        g.index.insert(key, g.elements.len());
                        g.elements.push(el);
                        g.elements.len() - 1
                    }
                };
                row.push(idx);
            }
            g.left.push(row);
            head += 1;
        }
        let pos: HashMap<&RootCoords, usize> =
            rs.positive_roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
        for el in g.elements.iter_mut() {
            el.perm = rs
                .positive_roots
                .iter()
                .map(|beta| {
                    let img = rs
                        .weight_to_root(&Weight(mat_vec(&el.matrix, &rs.root_to_weight(beta).0)))
                        .expect("roots map to roots");
                    if let Some(&k) = pos.get(&img) {
                        k as i32 + 1
                    } else {
                        let neg: RootCoords = img.iter().map(|x| -x).collect();
                        -(pos[&neg] as i32 + 1)
                    }
                })
                .collect();
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn left_mul(&self, i: usize, k: usize) -> usize {
        self.left[k][i]
    }

    /// Index of the product s_{word[0]} s_{word[1]} ...
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().rev().fold(0, |k, &i| self.left[k][i])
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(&self.elements[a].matrix, &self.elements[b].matrix, self.rank);
        self.index[&mat_vec(&m, &self.rho)]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&mat_vec(&self.elements[a].inverse, &self.rho)]
    }

    pub fn act(&self, k: usize, w: &Weight) -> Weight {
        Weight(mat_vec(&self.elements[k].matrix, &w.0))
    }

    pub fn act_inverse(&self, k: usize, w: &Weight) -> Weight {
        Weight(mat_vec(&self.elements[k].inverse, &w.0))
    }

    /// w.λ = w(λ + ρ) − ρ.
    pub fn shifted_act(&self, k: usize, w: &Weight) -> Weight {
        let rho = Weight(self.rho.clone());
        &self.act(k, &(w + &rho)) - &rho
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, k: usize) -> usize {
        self.elements[k].perm.iter().filter(|&&x| x < 0).count()
    }

    /// Elements of the parabolic subgroup W_S.
    pub fn parabolic_subgroup(&self, p: &ParabolicData) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.elements[k].word.iter().all(|i| p.contains(*i)))
            .collect()
    }

    /// W^S: all w with R_S^+ ⊂ wR^+, i.e. w^{-1}β > 0 for β ∈ R_S^+.
    /// Sorted by length, then generation order.
    pub fn minimal_coset_reps(&self, rs: &RootSystem, p: &ParabolicData) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len())
            .filter(|&k| {
                p.levi_roots.iter().all(|&r| {
                    let beta = rs.root_to_weight(&rs.positive_roots[r]);
                    let img = rs.weight_to_root(&self.act_inverse(k, &beta)).unwrap();
                    img.iter().all(|&c| c >= 0)
                })
            })
            .collect();
        out.sort_by_key(|&k| (self.elements[k].length, k));
        out
    }

    /// w = w_S w^S with w_S ∈ W_S and w^S ∈ W^S.
    pub fn kostant_decompose(&self, k: usize, p: &ParabolicData) -> (usize, usize) {
        let mut cur = k;
        let mut ws_word = Vec::new();
        'outer: loop {
            for &i in &p.s_set {
                let next = self.left[cur][i];
                if self.elements[next].length < self.elements[cur].length {
                    ws_word.push(i);
                    cur = next;
                    continue 'outer;
                }
            }
            break;
        }
        (self.from_word(&ws_word), cur)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Arrow {
    /// Positions in `BruhatGraph::elements`; `from` is the longer element.
    pub from: usize,
    pub to: usize,
    /// Index of α in the positive-root list, with from = s_α · to.
    pub root: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Square {
    /// Element positions w1 → w2 → w4 and w1 → w3 → w4.
    pub corners: [usize; 4],
    /// Arrow indices (w1,w2), (w2,w4), (w1,w3), (w3,w4).
    pub arrows: [usize; 4],
}

/// Covering relations on W^S with squares and signs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BruhatGraph {
    /// Group indices of W^S, sorted by length.
    pub elements: Vec<usize>,
    pub lengths: Vec<usize>,
    pub labels: Vec<String>,
    /// Positions into `elements` grouped by length.
    pub levels: Vec<Vec<usize>>,
    pub arrows: Vec<Arrow>,
    pub squares: Vec<Square>,
    pub signs: Vec<i8>,
}

impl BruhatGraph {
    pub fn build(rs: &RootSystem, g: &WeylGroup, p: &ParabolicData) -> Result<Self> {
        let elements = g.minimal_coset_reps(rs, p);
        let lengths: Vec<usize> = elements.iter().map(|&k| g.elements[k].length).collect();
        let labels = elements.iter().map(|&k| g.elements[k].label()).collect();
        let top = lengths.last().copied().unwrap_or(0);
        let mut levels = vec![Vec::new(); top + 1];
        for (pos, &l) in lengths.iter().enumerate() {
            levels[l].push(pos);
        }

        // reflections keyed by their action on ρ
        let mut reflections: HashMap<Vec<i64>, usize> = HashMap::new();
        for (k, beta) in rs.positive_roots.iter().enumerate() {
            let two_rho_beta: i64 = 2 * beta
                .iter()
                .zip(&rs.symmetrizers)
                .map(|(b, d)| b * d)
                .sum::<i64>();
            let c = two_rho_beta / rs.pair_roots(beta, beta);
            let bw = rs.root_to_weight(beta);
            reflections.insert((&rs.rho() - &bw.scale(c)).0, k);
        }

        let mut arrows = Vec::new();
        for l in 1..=top {
            for &a in &levels[l] {
                for &b in &levels[l - 1] {
                    let inv_b = g.inverse(elements[b]);
                    let h = g.mul(elements[a], inv_b);
                    let key = g.act(h, &rs.rho()).0;
                    if let Some(&root) = reflections.get(&key) {
                        arrows.push(Arrow { from: a, to: b, root });
                    }
                }
            }
        }

        let mut out_arrows: Vec<Vec<usize>> = vec![Vec::new(); elements.len()];
        for (k, ar) in arrows.iter().enumerate() {
            out_arrows[ar.from].push(k);
        }
        let mut squares = Vec::new();
        for w1 in 0..elements.len() {
            let outs = &out_arrows[w1];
            for x in 0..outs.len() {
                for y in x + 1..outs.len() {
                    let (a12, a13) = (outs[x], outs[y]);
                    let (w2, w3) = (arrows[a12].to, arrows[a13].to);
                    for &a24 in &out_arrows[w2] {
                        let w4 = arrows[a24].to;
                        if let Some(&a34) = out_arrows[w3].iter().find(|&&a| arrows[a].to == w4) {
                            squares.push(Square {
                                corners: [w1, w2, w3, w4],
                                arrows: [a12, a24, a13, a34],
                            });
                        }
                    }
                }
            }
        }

        let signs = solve_signs(arrows.len(), &squares).ok_or_else(|| {
            Error::Internal("sign parity system is infeasible".to_string())
        })?;
        Ok(BruhatGraph {
            elements,
            lengths,
            labels,
            levels,
            arrows,
            squares,
            signs,
        })
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn arrow_between(&self, from: usize, to: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.from == from && a.to == to)
    }

    /// Every square has sign product −1.
    pub fn signs_valid(&self) -> bool {
        self.squares.iter().all(|s| {
            s.arrows.iter().map(|&a| self.signs[a] as i32).product::<i32>() == -1
        })
    }

    pub fn arrow_label(&self, rs: &RootSystem, a: &Arrow) -> String {
        format!(
            "{} -> {} via {}",
            self.labels[a.from],
            self.labels[a.to],
            format_root(&rs.positive_roots[a.root])
        )
    }
}

/// Solves x_a + x_b + x_c + x_d = 1 over GF(2) for each square; free
/// variables are set to 0. Returns signs (−1)^x.
fn solve_signs(n: usize, squares: &[Square]) -> Option<Vec<i8>> {
    let words = n / 64 + 1;
    let mut rows: Vec<(Vec<u64>, bool)> = squares
        .iter()
        .map(|s| {
            let mut bits = vec![0u64; words];
            for &a in &s.arrows {
                bits[a / 64] ^= 1 << (a % 64);
            }
            (bits, true)
        })
        .collect();
    let get = |b: &[u64], i: usize| (b[i / 64] >> (i % 64)) & 1 == 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| get(&rows[i].0, c)) else {
            continue;
        };
        rows.swap(r, p);
        let (pb, pr) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && get(&row.0, c) {
                for (x, y) in row.0.iter_mut().zip(&pb) {
                    *x ^= y;
                }
                row.1 ^= pr;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut x = vec![false; n];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = rows[k].1;
    }
    let signs: Vec<i8> = x.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let ok = squares
        .iter()
        .all(|s| s.arrows.iter().map(|&a| signs[a] as i32).product::<i32>() == -1);
    ok.then_some(signs)
}

/// A failed incomparability assertion.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Violation {
    pub kind: String,
    pub pair: (String, String),
    pub difference: String,
}

/// Checks, for the shifted weights w.μ of W^S:
/// equal-length pairs differ by an element of Q_S that is not in Q_S^+, and
/// for adjacent lengths the shorter minus the longer has α_s-coefficient 1.
pub fn incomparability_violations(
    rs: &RootSystem,
    g: &WeylGroup,
    p: &ParabolicData,
    graph: &BruhatGraph,
    mu: &Weight,
) -> Vec<Violation> {
    let shifted: Vec<RootCoords> = graph
        .elements
        .iter()
        .map(|&k| {
            let w = g.shifted_act(k, mu);
            rs.weight_to_root(&(&w - mu)).expect("w.μ − μ lies in Q")
        })
        .collect();
    let mut out = Vec::new();
    let n = graph.elements.len();
    for a in 0..n {
        for b in 0..n {
            let diff: RootCoords = shifted[a].iter().zip(&shifted[b]).map(|(x, y)| x - y).collect();
            let pair = (graph.labels[a].clone(), graph.labels[b].clone());
            if a != b && graph.lengths[a] == graph.lengths[b] {
                if !p.in_q_s(&diff) {
                    out.push(Violation {
                        kind: "difference not in Q_S".into(),
                        pair: pair.clone(),
                        difference: format_root(&diff),
                    });
                }
                if p.in_q_s_plus(&diff) {
                    out.push(Violation {
                        kind: "difference in Q_S^+".into(),
                        pair,
                        difference: format_root(&diff),
                    });
                }
            } else if graph.lengths[b] == graph.lengths[a] + 1 {
                // a shorter, b longer
                if p.alpha_s_coefficient(&diff) != Some(1) {
                    out.push(Violation {
                        kind: "alpha_s-coefficient of shorter minus longer is not 1".into(),
                        pair,
                        difference: format_root(&diff),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(t: &str, s: &str) -> (RootSystem, WeylGroup, ParabolicData) {
        let rs = RootSystem::from_str_type(t).unwrap();
        let g = WeylGroup::generate(&rs, 100_000).unwrap();
        let p = ParabolicData::from_one_based(&rs, s).unwrap();
        (rs, g, p)
    }

    #[test]
    fn group_orders() {
        for (t, n, top) in [("A1", 2, 1), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6)] {
            let (_, g, _) = setup(t, "");
            assert_eq!(g.len(), n);
            assert_eq!(g.elements.iter().map(|e| e.length).max(), Some(top));
        }
        let rs = RootSystem::from_str_type("A3").unwrap();
        assert!(matches!(
            WeylGroup::generate(&rs, 10),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn shifted_action() {
        let (rs, g, _) = setup("A2", "");
        let s1 = g.from_word(&[0]);
        let w = g.shifted_act(s1, &Weight::zero(2));
        assert_eq!(rs.weight_to_root(&w).unwrap(), vec![-1, 0]);
    }

    #[test]
    fn coset_reps_and_graphs() {
        let (rs, g, p) = setup("A2", "1");
        let gr = BruhatGraph::build(&rs, &g, &p).unwrap();
        assert_eq!(gr.level_sizes(), vec![1, 1, 1]);
        assert!(gr.squares.is_empty());
        assert!(gr.signs.iter().all(|&s| s == 1));

        let (rs, g, p) = setup("A3", "1,3");
        let gr = BruhatGraph::build(&rs, &g, &p).unwrap();
        assert_eq!(gr.level_sizes(), vec![1, 1, 2, 1, 1]);
        assert_eq!(gr.squares.len(), 1);
        assert!(gr.signs_valid());
    }

    #[test]
    fn kostant_longest_a2() {
        let (_, g, p) = setup("A2", "1");
        let w0 = (0..g.len()).max_by_key(|&k| g.elements[k].length).unwrap();
        let (w_s, w_rest) = g.kostant_decompose(w0, &p);
        assert_eq!(g.mul(w_s, w_rest), w0);
        assert_eq!(g.elements[w_s].length, 1);
        assert_eq!(g.elements[w_rest].length, 2);
    }
}

//! Cartan data, positive roots, the invariant form and parabolic bookkeeping.
//!
//! Weights live in the fundamental-weight basis; elements of the root lattice
//! are also handled directly in root coordinates (`RootCoords`). Indices are
//! 0-based internally and 1-based in user-facing strings.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinates in the basis of simple roots.
pub type RootCoords = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{:?}{}", family, rank)))
        }
    }

    /// Number of positive roots by the classical formulas.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    pub fn weyl_order(&self) -> usize {
        let n = self.rank;
        let fact = |k: usize| (1..=k).product::<usize>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1usize << n) * fact(n),
            Family::D => (1usize << (n - 1)) * fact(n),
            Family::E => [51_840, 2_903_040, 696_729_600][n - 6],
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Every valid type of rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Nodes (0-based) whose flag manifold is irreducible, from the standard tables.
    pub fn cominuscule_nodes(&self) -> Vec<usize> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n).collect(),
            Family::B => vec![0],
            Family::C => vec![n - 1],
            Family::D => vec![0, n - 2, n - 1],
            Family::E => match n {
                6 => vec![0, 5],
                7 => vec![6],
                _ => vec![],
            },
            Family::F | Family::G => vec![],
        }
    }

    /// Symmetric matrix of the invariant form on simple roots (Bourbaki numbering).
    fn form_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut b = vec![vec![0i64; n]; n];
        let chain = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            b[i][j] = v;
            b[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    b[i][i] = 2;
                    if i + 1 < n {
                        chain(&mut b, i, i + 1, -1);
                    }
                }
            }
            Family::B => {
                for i in 0..n {
                    b[i][i] = if i + 1 < n { 4 } else { 2 };
                    if i + 1 < n {
                        chain(&mut b, i, i + 1, -2);
                    }
                }
            }
            Family::C => {
                for i in 0..n {
                    b[i][i] = if i + 1 < n { 2 } else { 4 };
                    if i + 2 < n {
                        chain(&mut b, i, i + 1, -1);
                    }
                }
                chain(&mut b, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 0..n - 2 {
                    chain(&mut b, i, i + 1, -1);
                }
                chain(&mut b, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                chain(&mut b, 0, 2, -1);
                chain(&mut b, 1, 3, -1);
                for i in 2..n - 1 {
                    chain(&mut b, i, i + 1, -1);
                }
            }
            Family::F => {
                b[0][0] = 4;
                b[1][1] = 4;
                b[2][2] = 2;
                b[3][3] = 2;
                chain(&mut b, 0, 1, -2);
                chain(&mut b, 1, 2, -2);
                chain(&mut b, 2, 3, -1);
            }
            Family::G => {
                b[0][0] = 2;
                b[1][1] = 6;
                chain(&mut b, 0, 1, -3);
            }
        }
        b
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// Parses a comma-separated list of 1-based node indices ("" is the empty set).
pub fn parse_subset(s: &str, rank: usize) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = tok
            .parse()
            .map_err(|_| Error::InvalidSubset(format!("bad index {tok:?}")))?;
        if i == 0 || i > rank {
            return Err(Error::InvalidSubset(format!("index {i} outside 1..={rank}")));
        }
        out.insert(i - 1);
    }
    Ok(out)
}

/// Integral weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn root_height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

/// Human-readable root-lattice element such as `a1+2a2-a3`.
pub fn format_root(beta: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in beta.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("a{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    /// `a_ij = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    /// `(α_i, α_j) = d_i a_ij`.
    pub form: Vec<Vec<i64>>,
    /// Graded by height, then lexicographically descending.
    pub positive_roots: Vec<RootCoords>,
    /// Exact inverse of the Cartan matrix.
    #[serde(skip)]
    inverse_cartan: Vec<Vec<Rational64>>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Self {
        let form = t.form_matrix();
        let n = t.rank;
        let symmetrizers: Vec<i64> = (0..n).map(|i| form[i][i] / 2).collect();
        let cartan_matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * form[i][j] / form[i][i]).collect())
            .collect();
        let inverse_cartan = invert(&cartan_matrix);
        let mut rs = RootSystem {
            cartan_type: t,
            cartan_matrix,
            symmetrizers,
            form,
            positive_roots: Vec::new(),
            inverse_cartan,
        };
        rs.positive_roots = rs.close_roots();
        rs
    }

    pub fn from_str_type(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn simple_root(&self, i: usize) -> RootCoords {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `(β, α_i^∨)` for β in root coordinates.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan_matrix[i]).map(|(b, a)| a * b).sum()
    }

    /// String algorithm: β + α_i is a root iff p − (β, α_i^∨) > 0 where p is
    /// the length of the α_i-string below β.
    fn close_roots(&self) -> Vec<RootCoords> {
        let n = self.rank();
        let mut all: Vec<RootCoords> = (0..n).map(|i| self.simple_root(i)).collect();
        let mut known: HashSet<RootCoords> = all.iter().cloned().collect();
        let mut layer = all.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - self.coroot_pairing(beta, i) > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| root_height(a).cmp(&root_height(b)).then_with(|| b.cmp(a)));
        all
    }

    pub fn is_positive_root(&self, beta: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r.as_slice() == beta)
    }

    pub fn highest_root(&self) -> &RootCoords {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// `α_j` in fundamental coordinates is column j of the Cartan matrix.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.cartan_matrix[i][j] * beta[j]).sum())
                .collect(),
        )
    }

    pub fn weight_to_root_rational(&self, w: &Weight) -> Vec<Rational64> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n).fold(Rational64::zero(), |acc, j| {
                    acc + self.inverse_cartan[i][j] * Rational64::from_integer(w.0[j])
                })
            })
            .collect()
    }

    /// Root coordinates of a weight in Q.
    pub fn weight_to_root(&self, w: &Weight) -> Result<RootCoords> {
        self.weight_to_root_rational(w)
            .into_iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(Error::NotInRootLattice(w.to_string()))
                }
            })
            .collect()
    }

    /// `(λ, β)` for a weight and a root-lattice element: Σ λ_j d_j β_j.
    pub fn pair_weight_root(&self, w: &Weight, beta: &[i64]) -> i64 {
        (0..self.rank()).map(|j| w.0[j] * self.symmetrizers[j] * beta[j]).sum()
    }

    /// `(β, γ)` on the root lattice.
    pub fn pair_roots(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += beta[i] * self.form[i][j] * gamma[j];
            }
        }
        s
    }

    /// The invariant form on P × P. It is integral on P × Q; on P × P values
    /// have denominators dividing the index of Q in P.
    pub fn inner(&self, l: &Weight, m: &Weight) -> Rational64 {
        let mr = self.weight_to_root_rational(m);
        (0..self.rank()).fold(Rational64::zero(), |acc, j| {
            acc + Rational64::from_integer(l.0[j] * self.symmetrizers[j]) * mr[j]
        })
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Simple reflection on a weight: λ − (λ, α_i^∨) α_i.
    pub fn reflect_weight(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        Weight(
            (0..self.rank())
                .map(|k| w.0[k] - c * self.cartan_matrix[k][i])
                .collect(),
        )
    }

    /// Simple reflection on root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> RootCoords {
        let c = self.coroot_pairing(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|&x| x >= 0)
    }
}

fn invert(a: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("Cartan matrix is invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Parabolic data for a subset S of the simple roots.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParabolicData {
    pub rank: usize,
    /// 0-based indices in S.
    pub s_set: BTreeSet<usize>,
    /// The excluded node when |π∖S| = 1.
    pub excluded: Option<usize>,
    /// Indices into `RootSystem::positive_roots` of the roots in Q_S.
    pub levi_roots: Vec<usize>,
    /// Indices of the remaining positive roots (the weights of u^+).
    pub nilradical_roots: Vec<usize>,
    pub rho: Weight,
    /// 2ρ_S, which is integral.
    pub two_rho_s: Weight,
    /// Computed by the coefficient scan.
    pub irreducible: bool,
    /// Whether the standard table of cominuscule nodes agrees.
    pub table_agrees: bool,
}

impl ParabolicData {
    pub fn new(rs: &RootSystem, s_set: BTreeSet<usize>) -> Result<Self> {
        let n = rs.rank();
        if let Some(&bad) = s_set.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidSubset(format!("node {} outside rank {n}", bad + 1)));
        }
        let in_s = |beta: &RootCoords| beta.iter().enumerate().all(|(i, &c)| c == 0 || s_set.contains(&i));
        let (levi_roots, nilradical_roots): (Vec<usize>, Vec<usize>) =
            (0..rs.positive_roots.len()).partition(|&k| in_s(&rs.positive_roots[k]));
        let complement: Vec<usize> = (0..n).filter(|i| !s_set.contains(i)).collect();
        let excluded = (complement.len() == 1).then(|| complement[0]);
        let irreducible = match excluded {
            Some(s) => rs.positive_roots.iter().all(|b| b[s] <= 1),
            None => false,
        };
        let table = excluded.is_some_and(|s| rs.cartan_type.cominuscule_nodes().contains(&s));
        let mut two_rho = vec![0i64; n];
        for &k in &levi_roots {
            for (x, y) in two_rho.iter_mut().zip(&rs.positive_roots[k]) {
                *x += y;
            }
        }
        Ok(ParabolicData {
            rank: n,
            s_set,
            excluded,
            levi_roots,
            nilradical_roots,
            rho: rs.rho(),
            two_rho_s: rs.root_to_weight(&two_rho),
            irreducible,
            table_agrees: irreducible == table,
        })
    }

    pub fn from_one_based(rs: &RootSystem, s: &str) -> Result<Self> {
        Self::new(rs, parse_subset(s, rs.rank())?)
    }

    /// The parabolic with S = π∖{α_s}.
    pub fn maximal(rs: &RootSystem, s: usize) -> Result<Self> {
        Self::new(rs, (0..rs.rank()).filter(|&i| i != s).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.s_set.contains(&i)
    }

    pub fn in_q_s(&self, beta: &[i64]) -> bool {
        beta.iter().enumerate().all(|(i, &c)| c == 0 || self.s_set.contains(&i))
    }

    pub fn in_q_s_plus(&self, beta: &[i64]) -> bool {
        self.in_q_s(beta) && beta.iter().all(|&c| c >= 0)
    }

    /// Coefficient of the excluded simple root.
    pub fn alpha_s_coefficient(&self, beta: &[i64]) -> Option<i64> {
        self.excluded.map(|s| beta[s])
    }

    /// λ ∈ P_S^+: nonnegative on the coroots of S.
    pub fn is_levi_dominant(&self, w: &Weight) -> bool {
        self.s_set.iter().all(|&i| w.0[i] >= 0)
    }

    /// S as 1-based indices, e.g. "1,3".
    pub fn s_label(&self) -> String {
        self.s_set
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types() {
        let a1 = RootSystem::from_str_type("A1").unwrap();
        assert_eq!(a1.positive_roots, vec![vec![1]]);
        assert_eq!(a1.pair_roots(&[1], &[1]), 2);

        let a2 = RootSystem::from_str_type("A2").unwrap();
        assert_eq!(a2.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);

        let g2 = RootSystem::from_str_type("G2").unwrap();
        assert_eq!(g2.positive_roots.len(), 6);
        assert_eq!(root_height(g2.highest_root()), 5);

        let b2 = RootSystem::from_str_type("B2").unwrap();
        assert_eq!(b2.symmetrizers, vec![2, 1]);
        assert_eq!(b2.pair_roots(&[0, 1], &[0, 1]), 2);
        assert_eq!(b2.pair_roots(&[1, 0], &[1, 0]), 4);
    }

    #[test]
    fn pairings() {
        let a1 = RootSystem::from_str_type("A1").unwrap();
        assert_eq!(a1.pair_weight_root(&Weight(vec![1]), &[1]), 1);
        let a2 = RootSystem::from_str_type("A2").unwrap();
        assert_eq!(a2.pair_weight_root(&a2.rho(), &[1, 0]), 1);
        // (ω1, ω1) = 2/3 in A2
        assert_eq!(
            a2.inner(&Weight(vec![1, 0]), &Weight(vec![1, 0])),
            Rational64::new(2, 3)
        );
    }

    #[test]
    fn parabolics() {
        let a1 = RootSystem::from_str_type("A1").unwrap();
        let p = ParabolicData::new(&a1, BTreeSet::new()).unwrap();
        assert!(p.levi_roots.is_empty() && p.two_rho_s.is_zero() && p.irreducible);

        let a2 = RootSystem::from_str_type("A2").unwrap();
        let p = ParabolicData::from_one_based(&a2, "1").unwrap();
        assert_eq!(p.levi_roots, vec![0]);
        assert!(p.irreducible);
        assert!(p.in_q_s_plus(&[1, 0]));
        assert!(!p.in_q_s(&[1, -1]));

        let g2 = RootSystem::from_str_type("G2").unwrap();
        let p = ParabolicData::from_one_based(&g2, "1").unwrap();
        assert!(!p.irreducible && p.table_agrees);
    }

    #[test]
    fn parse_errors() {
        assert!("D3".parse::<CartanType>().is_err());
        assert!("X2".parse::<CartanType>().is_err());
        assert!(parse_subset("0", 2).is_err());
        assert!(parse_subset("3", 2).is_err());
        assert_eq!(parse_subset("", 2).unwrap().len(), 0);
    }
}

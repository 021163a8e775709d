//! ℂ_q[SL₂], the standard quantum sphere B and its de Rham complex.
//!
//! a, b, c, d are the matrix coefficients c_ij(u) = v_i^*(u v_j) of V(ω₁)
//! with v₂ = F v₁. A word x₁⋯x_k pairs with u through the action of u on
//! V^{⊗k}, and the product relations are read off from the kernel of that
//! pairing in degree ≤ 2 rather than fixed by hand.
//!
//! Ω^{n,m} is realized inside ℂ_q[SL₂] as the functionals f(u) = f(u ⊗ v)
//! on W(n,m); its generator has K-eigenvalue q^{−2(n−m)}, so Ω^{n,m} is
//! the span of words of right K-weight −2(n−m). Then ∂f = F ▷ f,
//! ∂̄f = E ▷ f with (u ▷ f)(v) = f(vu), and d = ∂ + (−1)^n ∂̄.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::qfield::matrix::{add_entry, SparseVec};
use crate::qfield::{QMatrix, RankMode, RatFunc, Solution, Subspace};
use crate::uqalg::{AlgElement, NormalMono, Uq};

/// Letters 0..4 are a, b, c, d; letter l is c_{ij} with i = l / 2, j = l % 2.
pub type Word = Vec<u8>;

pub const LETTERS: [&str; 4] = ["a", "b", "c", "d"];

fn row(l: u8) -> u8 {
    l / 2
}

fn col(l: u8) -> u8 {
    l % 2
}

fn letter(i: u8, j: u8) -> u8 {
    2 * i + j
}

/// K-exponent of basis vector v_{i+1} of V(ω₁).
fn vweight(i: u8) -> i32 {
    if i == 0 {
        1
    } else {
        -1
    }
}

/// Exponent of q in u ▷ x = q^{…} x for u = K.
pub fn right_weight(w: &[u8]) -> i32 {
    w.iter().map(|&l| vweight(col(l))).sum()
}

pub fn left_weight(w: &[u8]) -> i32 {
    w.iter().map(|&l| vweight(row(l))).sum()
}

pub fn format_word(w: &[u8]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let mut e = 1;
        while k + e < w.len() && w[k + e] == w[k] {
            e += 1;
        }
        parts.push(if e == 1 {
            LETTERS[w[k] as usize].to_string()
        } else {
            format!("{}^{e}", LETTERS[w[k] as usize])
        });
        k += e;
    }
    parts.join(" ")
}

/// Sorted, and never both a and d.
pub fn is_normal(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1]) && !(w.contains(&0) && w.contains(&3))
}

/// Normal words of degree ≤ max_degree, by degree.
pub fn normal_words(max_degree: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        for i in 0..=deg {
            for j in 0..=deg - i {
                for k in 0..=deg - i - j {
                    let l = deg - i - j - k;
                    if i > 0 && l > 0 {
                        continue;
                    }
                    let mut w = vec![0; i];
                    w.extend(std::iter::repeat(1).take(j));
                    w.extend(std::iter::repeat(2).take(k));
                    w.extend(std::iter::repeat(3).take(l));
                    out.push(w);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CqElement {
    pub terms: BTreeMap<Word, RatFunc>,
}

impl CqElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(&[])
    }

    pub fn word(w: &[u8]) -> Self {
        let mut x = Self::zero();
        x.add_term(w.to_vec(), &RatFunc::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(RatFunc::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &CqElement, c: &RatFunc) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn sub(&self, other: &CqElement) -> CqElement {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> CqElement {
        let mut out = CqElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// ε(c_ij) = δ_ij.
    pub fn counit(&self) -> RatFunc {
        let mut out = RatFunc::zero();
        for (w, c) in &self.terms {
            if w.iter().all(|&l| row(l) == col(l)) {
                out += c;
            }
        }
        out
    }
}

impl fmt::Display for CqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    format_word(w)
                } else if w.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", format_word(w))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generators of U_q(sl₂) acting on ℂ_q[SL₂].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E,
    F,
    K(i32),
}

/// Which slot of the functional u acts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// (u ▷ f)(v) = f(vu), a left action.
    Right,
    /// (f ◁ u)(v) = f(uv), a right action.
    Left,
}

/// ⟨c_kj, g⟩ = v_k^*(g v_j).
fn gen_matrix(g: Gen, k: u8, j: u8) -> RatFunc {
    match g {
        Gen::E if k == 0 && j == 1 => RatFunc::one(),
        Gen::F if k == 1 && j == 0 => RatFunc::one(),
        Gen::K(n) if k == j => RatFunc::q_pow(n * vweight(j)),
        _ => RatFunc::zero(),
    }
}

pub struct CqSL2 {
    pub uq: Uq,
    /// Rewriting rules for ba, ca, cb, db, dc, da and ad.
    rules: HashMap<(u8, u8), CqElement>,
    memo: Mutex<HashMap<Word, CqElement>>,
}

/// Sample elements F^x K^y E^z with x, z ≤ deg and |y| ≤ deg; they separate
/// matrix coefficients of V^{⊗k} for k ≤ deg.
pub fn test_monomials(deg: usize) -> Vec<NormalMono> {
    let d = deg as i32;
    let mut out = Vec::new();
    for x in 0..=deg {
        for y in -d..=d {
            for z in 0..=deg {
                out.push(NormalMono {
                    f: vec![0; x],
                    k: vec![y],
                    e: vec![0; z],
                });
            }
        }
    }
    out
}

/// ⟨x₁⋯x_k, u⟩ computed on V(ω₁)^{⊗k} with Δ(E) = E⊗K + 1⊗E, Δ(F) = F⊗1 + K^{-1}⊗F.
pub fn eval_word(w: &[u8], u: &NormalMono) -> RatFunc {
    let mut v: BTreeMap<Vec<u8>, RatFunc> = BTreeMap::new();
    v.insert(w.iter().map(|&l| col(l)).collect(), RatFunc::one());
    let apply_e = |v: &BTreeMap<Vec<u8>, RatFunc>| {
        let mut out: BTreeMap<Vec<u8>, RatFunc> = BTreeMap::new();
        for (idx, c) in v {
            for i in 0..idx.len() {
                if idx[i] == 1 {
                    let tail: i32 = idx[i + 1..].iter().map(|&t| vweight(t)).sum();
                    let mut n = idx.clone();
                    n[i] = 0;
                    *out.entry(n).or_insert_with(RatFunc::zero) += &c.shift(tail);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let apply_f = |v: &BTreeMap<Vec<u8>, RatFunc>| {
        let mut out: BTreeMap<Vec<u8>, RatFunc> = BTreeMap::new();
        for (idx, c) in v {
            for i in 0..idx.len() {
                if idx[i] == 0 {
                    let head: i32 = idx[..i].iter().map(|&t| vweight(t)).sum();
                    let mut n = idx.clone();
                    n[i] = 1;
                    *out.entry(n).or_insert_with(RatFunc::zero) += &c.shift(-head);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    for _ in &u.e {
        v = apply_e(&v);
    }
    let kexp = u.k.first().copied().unwrap_or(0);
    let v: BTreeMap<Vec<u8>, RatFunc> = v
        .into_iter()
        .map(|(idx, c)| {
            let wt: i32 = idx.iter().map(|&t| vweight(t)).sum();
            (idx, c.shift(kexp * wt))
        })
        .collect();
    let mut v = v;
    for _ in &u.f {
        v = apply_f(&v);
    }
    let rows: Vec<u8> = w.iter().map(|&l| row(l)).collect();
    v.remove(&rows).unwrap_or_else(RatFunc::zero)
}

pub fn eval_words(words: &[Word], tests: &[NormalMono]) -> QMatrix {
    QMatrix::from_rows(tests.iter().map(|u| words.iter().map(|w| eval_word(w, u)).collect()).collect())
}

impl CqSL2 {
    pub fn new() -> Result<Self> {
        let rs = RootSystem::from_str_type("A1")?;
        let uq = Uq::new(&rs);
        let basis = normal_words(2);
        let tests = test_monomials(2);
        let m = eval_words(&basis, &tests);
        if m.rank_with(Default::default()) != basis.len() {
            return Err(Error::Internal("normal words of degree ≤ 2 are dependent".into()));
        }
        let mut rules = HashMap::new();
        for pair in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (0, 3)] {
            let w = vec![pair.0, pair.1];
            let rhs: Vec<RatFunc> = tests.iter().map(|u| eval_word(&w, u)).collect();
            let coords = match m.solve(&rhs) {
                Solution::Unique(c) => c,
                _ => return Err(Error::Internal(format!("no unique normal form for {}", format_word(&w)))),
            };
            let mut x = CqElement::zero();
            for (k, c) in coords.iter().enumerate() {
                x.add_term(basis[k].clone(), c);
            }
            rules.insert(pair, x);
        }
        // moving a to the right past b and c needs single-term q-commutations
        for l in [1, 2] {
            let r = &rules[&(l, 0)];
            if r.terms.len() != 1 || !r.terms.contains_key(&vec![0, l]) {
                return Err(Error::Internal(format!("{}a is not a multiple of a{}", LETTERS[l as usize], LETTERS[l as usize])));
            }
        }
        Ok(CqSL2 {
            uq,
            rules,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// The derived relations, as "lhs = rhs" strings.
    pub fn relations(&self) -> Vec<String> {
        let mut out: Vec<_> = self
            .rules
            .iter()
            .map(|(&(x, y), r)| ((x, y), format!("{} = {}", format_word(&[x, y]), r)))
            .collect();
        out.sort_by_key(|((x, y), _)| (*x == 0, *x, *y));
        out.into_iter().map(|(_, s)| s).collect()
    }

    pub fn rule(&self, x: u8, y: u8) -> Option<&CqElement> {
        self.rules.get(&(x, y))
    }

    /// Normal form of the product of the letters of w.
    pub fn normalize(&self, w: &[u8]) -> CqElement {
        if let Some(x) = self.memo.lock().unwrap().get(w) {
            return x.clone();
        }
        let out = self.normalize_uncached(w);
        self.memo.lock().unwrap().insert(w.to_vec(), out.clone());
        out
    }

    fn substitute(&self, w: &[u8], at: usize, coeff: &RatFunc, rule: &CqElement) -> CqElement {
        let mut out = CqElement::zero();
        for (r, c) in &rule.terms {
            let mut n = w[..at].to_vec();
            n.extend_from_slice(r);
            n.extend_from_slice(&w[at + 2..]);
            out.add_scaled(&self.normalize(&n), &(c * coeff));
        }
        out
    }

    fn normalize_uncached(&self, w: &[u8]) -> CqElement {
        if let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            return self.substitute(w, i, &RatFunc::one(), &self.rules[&(w[i], w[i + 1])]);
        }
        if is_normal(w) {
            return CqElement::word(w);
        }
        // sorted with both a and d: carry the last a up to the first d
        let p = w.iter().rposition(|&l| l == 0).unwrap();
        let d = w.iter().position(|&l| l == 3).unwrap();
        let mut coeff = RatFunc::one();
        for &l in &w[p + 1..d] {
            coeff = &coeff / &self.rules[&(l, 0)].terms[&vec![0, l]];
        }
        let mut n = w[..p].to_vec();
        n.extend_from_slice(&w[p + 1..d]);
        n.push(0);
        n.extend_from_slice(&w[d..]);
        self.substitute(&n, d - 1, &coeff, &self.rules[&(0, 3)])
    }

    pub fn mul(&self, x: &CqElement, y: &CqElement) -> CqElement {
        let mut out = CqElement::zero();
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                let mut w = wx.clone();
                w.extend_from_slice(wy);
                out.add_scaled(&self.normalize(&w), &(cx * cy));
            }
        }
        out
    }

    pub fn pair(&self, x: &CqElement, u: &AlgElement) -> RatFunc {
        let mut out = RatFunc::zero();
        for (w, c) in &x.terms {
            for (m, cu) in &u.terms {
                out += &(&(c * cu) * &eval_word(w, m));
            }
        }
        out
    }

    /// g acting in the given slot; both slots follow the coproduct letter by letter.
    pub fn act(&self, g: Gen, slot: Slot, x: &CqElement) -> CqElement {
        let mut out = CqElement::zero();
        for (w, c) in &x.terms {
            for (n, cn) in act_word(g, slot, w) {
                out.add_scaled(&self.normalize(&n), &(c * &cn));
            }
        }
        out
    }

    /// ∂ on Ω^{n,m}; zero into the absent component Ω^{2,m}.
    pub fn del(&self, n: u8, x: &CqElement) -> CqElement {
        if n >= 1 {
            return CqElement::zero();
        }
        self.act(Gen::F, Slot::Right, x)
    }

    /// ∂̄ on Ω^{n,m} including the (−1)^n twist.
    pub fn delb(&self, n: u8, m: u8, x: &CqElement) -> CqElement {
        if m >= 1 {
            return CqElement::zero();
        }
        let y = self.act(Gen::E, Slot::Right, x);
        if n % 2 == 1 {
            y.scale(&RatFunc::from_int(-1))
        } else {
            y
        }
    }
}

/// Single letter c_ij under g in the given slot.
fn act_letter(g: Gen, slot: Slot, l: u8) -> Vec<(u8, RatFunc)> {
    let (i, j) = (row(l), col(l));
    let mut out = Vec::new();
    for k in 0..2 {
        let (c, nl) = match slot {
            Slot::Right => (gen_matrix(g, k, j), letter(i, k)),
            Slot::Left => (gen_matrix(g, i, k), letter(k, j)),
        };
        if !c.is_zero() {
            out.push((nl, c));
        }
    }
    out
}

fn act_word(g: Gen, slot: Slot, w: &[u8]) -> Vec<(Word, RatFunc)> {
    let diag = |g: Gen, l: u8| -> RatFunc { act_letter(g, slot, l).pop().map(|(_, c)| c).unwrap_or_else(RatFunc::zero) };
    match g {
        Gen::K(_) => {
            let mut c = RatFunc::one();
            for &l in w {
                c = &c * &diag(g, l);
            }
            vec![(w.to_vec(), c)]
        }
        Gen::E | Gen::F => {
            let mut out = Vec::new();
            for i in 0..w.len() {
                // E: 1 ⊗ … ⊗ E ⊗ K ⊗ … ⊗ K, F: K^{-1} ⊗ … ⊗ K^{-1} ⊗ F ⊗ 1 ⊗ …
                let mut c = RatFunc::one();
                for (k, &l) in w.iter().enumerate() {
                    if g == Gen::E && k > i {
                        c = &c * &diag(Gen::K(1), l);
                    }
                    if g == Gen::F && k < i {
                        c = &c * &diag(Gen::K(-1), l);
                    }
                }
                for (nl, cl) in act_letter(g, slot, w[i]) {
                    let mut n = w.to_vec();
                    n[i] = nl;
                    out.push((n, &c * &cl));
                }
            }
            out
        }
    }
}

/// Ω^{n,m} in degrees ≤ max_degree: normal words of right weight −2(n−m).
pub fn omega_basis(n: u8, m: u8, max_degree: usize) -> Vec<Word> {
    let target = -2 * (n as i32 - m as i32);
    normal_words(max_degree).into_iter().filter(|w| right_weight(w) == target).collect()
}

/// Coordinates relative to a word index; None if a word falls outside.
fn coords(x: &CqElement, index: &HashMap<Word, usize>) -> Option<SparseVec> {
    let mut v = SparseVec::new();
    for (w, c) in &x.terms {
        add_entry(&mut v, *index.get(w)?, c);
    }
    Some(v)
}

fn index_of(words: &[Word]) -> HashMap<Word, usize> {
    words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect()
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PodlesConfig {
    /// Degree window for B.
    pub b_degree: usize,
    /// Degree window for the one- and two-forms.
    pub form_degree: usize,
}

impl PodlesConfig {
    /// Smallest form window in which the degree-4 relations among one-forms are visible.
    pub const MIN_FORM_DEGREE: usize = 4;
    pub const MIN_B_DEGREE: usize = 2;

    pub fn validate(&self) -> Result<()> {
        if self.form_degree < Self::MIN_FORM_DEGREE || self.b_degree < Self::MIN_B_DEGREE {
            return Err(Error::OutOfRange(format!(
                "windows must satisfy form_degree >= {} and b_degree >= {}",
                Self::MIN_FORM_DEGREE,
                Self::MIN_B_DEGREE
            )));
        }
        Ok(())
    }
}

impl Default for PodlesConfig {
    fn default() -> Self {
        PodlesConfig {
            b_degree: 6,
            form_degree: 5,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingReport {
    pub relations: Vec<String>,
    /// Normal words are independent functionals up to this degree.
    pub independent_up_to: usize,
    pub product_law_checks: usize,
    pub product_law_failures: usize,
    pub coproduct_law_checks: usize,
    pub coproduct_law_failures: usize,
    pub action_checks: usize,
    pub action_failures: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub component: String,
    pub right_weight: i32,
    /// Number of basis words in each exact degree.
    pub by_degree: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalculusRow {
    pub differential: String,
    pub k: usize,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalculusReport {
    pub window: usize,
    pub rows: Vec<CalculusRow>,
    /// B⁺Γ = ΓB⁺ inside the window, for Γ = Ω^{1,0}, Ω^{0,1}.
    pub bimodule_symmetric: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeibnizReport {
    pub pairs: usize,
    pub failures: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DSquaredReport {
    pub checked: usize,
    pub failures: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VolumeReport {
    pub window: usize,
    pub coinvariants: usize,
    pub form: String,
    pub central_checked: usize,
    pub central_failures: usize,
    /// B·ω_vol fills Ω^{1,1} in the window.
    pub generates: bool,
    /// ε(∂̄∂x) for the quadratic generators of B.
    pub differential_classes: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SphereRelation {
    pub generators: Vec<String>,
    pub kernel_dim: usize,
    pub relation: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PodlesReport {
    pub config: PodlesConfig,
    pub pairing: PairingReport,
    pub components: Vec<ComponentInfo>,
    pub b_closed: bool,
    pub calculus: CalculusReport,
    pub leibniz: LeibnizReport,
    pub d_squared: DSquaredReport,
    pub volume: VolumeReport,
    pub sphere: SphereRelation,
    pub ok: bool,
}

/// Quadratic generators of B.
pub fn sphere_generators() -> Vec<Word> {
    vec![vec![0, 1], vec![1, 2], vec![2, 3]]
}

impl CqSL2 {
    /// Both pairing laws, the slot actions against ⟨x, uF⟩ and ⟨x, Eu⟩,
    /// and independence of normal words up to degree 4.
    pub fn verify_pairing(&self) -> PairingReport {
        let uq = &self.uq;
        let samples: Vec<AlgElement> = test_monomials(1)
            .into_iter()
            .map(|m| AlgElement::from_mono(m, RatFunc::one()))
            .chain([uq.mul(&uq.e(0), &uq.f(0)), uq.mul(&uq.f_word(&[0, 0]), &uq.e(0))])
            .collect();
        let words3: Vec<Word> = normal_words(3).into_iter().filter(|w| !w.is_empty()).collect();

        let (mut pc, mut pf) = (0, 0);
        for x in &words3 {
            for y in &words3 {
                if x.len() + y.len() > 3 {
                    continue;
                }
                let prod = self.mul(&CqElement::word(x), &CqElement::word(y));
                for u in &samples {
                    let lhs = self.pair(&prod, u);
                    let mut rhs = RatFunc::zero();
                    for ((m1, m2), c) in &uq.coproduct(u).terms {
                        rhs += &(&(c * &eval_word(x, m1)) * &eval_word(y, m2));
                    }
                    pc += 1;
                    pf += usize::from(lhs != rhs);
                }
            }
        }

        let (mut cc, mut cf) = (0, 0);
        let small = &samples[..samples.len().min(12)];
        for x in &words3 {
            for u in small {
                for v in small {
                    let lhs = self.pair(&CqElement::word(x), &uq.mul(u, v));
                    // Δ(c_ij) = Σ_k c_ik ⊗ c_kj
                    let mut rhs = RatFunc::zero();
                    for mid in 0..(1u32 << x.len()) {
                        let ks: Vec<u8> = (0..x.len()).map(|t| ((mid >> t) & 1) as u8).collect();
                        let w1: Word = x.iter().zip(&ks).map(|(&l, &k)| letter(row(l), k)).collect();
                        let w2: Word = x.iter().zip(&ks).map(|(&l, &k)| letter(k, col(l))).collect();
                        rhs += &(&self.pair(&CqElement::word(&w1), u) * &self.pair(&CqElement::word(&w2), v));
                    }
                    cc += 1;
                    cf += usize::from(lhs != rhs);
                }
            }
        }

        let (mut ac, mut af) = (0, 0);
        for x in &words3 {
            let xe = CqElement::word(x);
            for u in &samples {
                for (g, alg) in [(Gen::F, uq.f(0)), (Gen::E, uq.e(0)), (Gen::K(-1), uq.k(0, -1))] {
                    let right = self.pair(&self.act(g, Slot::Right, &xe), u) == self.pair(&xe, &uq.mul(u, &alg));
                    let left = self.pair(&self.act(g, Slot::Left, &xe), u) == self.pair(&xe, &uq.mul(&alg, u));
                    ac += 2;
                    af += usize::from(!right) + usize::from(!left);
                }
            }
        }

        let words4 = normal_words(4);
        // full rank at one specialization already forces full rank over Q(q)
        let independent = eval_words(&words4, &test_monomials(4)).rank_with(RankMode::Evaluation) == words4.len();
        PairingReport {
            relations: self.relations(),
            independent_up_to: if independent { 4 } else { 0 },
            product_law_checks: pc,
            product_law_failures: pf,
            coproduct_law_checks: cc,
            coproduct_law_failures: cf,
            action_checks: ac,
            action_failures: af,
            ok: pf == 0 && cf == 0 && af == 0 && independent,
        }
    }

    pub fn component_info(&self, n: u8, m: u8, max_degree: usize) -> ComponentInfo {
        let mut by_degree = vec![0; max_degree + 1];
        for w in omega_basis(n, m, max_degree) {
            by_degree[w.len()] += 1;
        }
        ComponentInfo {
            component: format!("Ω^{{{n},{m}}}"),
            right_weight: -2 * (n as i32 - m as i32),
            by_degree,
        }
    }

    /// Products of B basis words stay in B.
    pub fn b_closed(&self, max_degree: usize) -> bool {
        let b = omega_basis(0, 0, max_degree);
        b.iter().all(|x| {
            b.iter()
                .filter(|y| x.len() + y.len() <= max_degree)
                .all(|y| self.normalize(&[x.clone(), y.clone()].concat()).terms.keys().all(|w| right_weight(w) == 0))
        })
    }

    /// (dim Γ/B⁺Γ, dim Γ/ΓB⁺, both equal as subspaces) for Γ = Ω^{n,m} in the window.
    pub fn quotient_dims(&self, n: u8, m: u8, window: usize) -> Result<(usize, usize, bool)> {
        let target = omega_basis(n, m, window);
        let index = index_of(&target);
        let bplus: Vec<Word> = omega_basis(0, 0, window).into_iter().filter(|w| !w.is_empty()).collect();
        let mut left = Subspace::new(target.len());
        let mut right = Subspace::new(target.len());
        let mut both = Subspace::new(target.len());
        for x in &bplus {
            if !CqElement::word(x).counit().is_zero() {
                return Err(Error::Internal(format!("{} is not in B⁺", format_word(x))));
            }
            for w in target.iter().filter(|w| x.len() + w.len() <= window) {
                for (prod, space) in [
                    (self.normalize(&[x.clone(), w.clone()].concat()), &mut left),
                    (self.normalize(&[w.clone(), x.clone()].concat()), &mut right),
                ] {
                    let v = coords(&prod, &index).ok_or_else(|| Error::Internal("product left the component".into()))?;
                    space.insert(v.clone());
                    both.insert(v);
                }
            }
        }
        let symmetric = left.rank() == right.rank() && both.rank() == left.rank();
        Ok((target.len() - left.rank(), target.len() - right.rank(), symmetric))
    }

    pub fn verify_calculus(&self, window: usize) -> Result<CalculusReport> {
        let q = |n, m| -> Result<(usize, bool)> {
            let (l, r, s) = self.quotient_dims(n, m, window)?;
            Ok((l, s && l == r))
        };
        let (b, sb) = q(0, 0)?;
        let (o10, s10) = q(1, 0)?;
        let (o01, s01) = q(0, 1)?;
        let (o11, s11) = q(1, 1)?;
        let row = |d: &str, k, e, f| CalculusRow {
            differential: d.into(),
            k,
            expected: e,
            found: f,
        };
        let rows = vec![
            row("∂", 0, 1, b),
            row("∂", 1, 1, o10),
            row("∂̄", 0, 1, b),
            row("∂̄", 1, 1, o01),
            row("d", 0, 1, b),
            row("d", 1, 2, o10 + o01),
            row("d", 2, 1, o11),
        ];
        let symmetric = sb && s10 && s01 && s11;
        let ok = symmetric && rows.iter().all(|r| r.expected == r.found);
        Ok(CalculusReport {
            window,
            rows,
            bimodule_symmetric: symmetric,
            ok,
        })
    }

    /// ∂(xy) = ∂x·y + (K^{-1}▷x)·∂y and ∂̄(xy) = ∂̄x·(K▷y) + x·∂̄y on all
    /// word pairs of degree ≤ max_degree, and the untwisted rule on pairs from B.
    pub fn verify_leibniz(&self, max_degree: usize) -> LeibnizReport {
        let words: Vec<Word> = normal_words(max_degree).into_iter().filter(|w| !w.is_empty()).collect();
        let (mut pairs, mut failures) = (0, 0);
        for x in &words {
            for y in &words {
                let (xe, ye) = (CqElement::word(x), CqElement::word(y));
                let xy = self.mul(&xe, &ye);
                let f = |z: &CqElement| self.act(Gen::F, Slot::Right, z);
                let e = |z: &CqElement| self.act(Gen::E, Slot::Right, z);
                let k = |n, z: &CqElement| self.act(Gen::K(n), Slot::Right, z);
                let mut del = self.mul(&f(&xe), &ye);
                del.add_scaled(&self.mul(&k(-1, &xe), &f(&ye)), &RatFunc::one());
                let mut delb = self.mul(&e(&xe), &k(1, &ye));
                delb.add_scaled(&self.mul(&xe, &e(&ye)), &RatFunc::one());
                pairs += 1;
                failures += usize::from(f(&xy) != del || e(&xy) != delb);
                if right_weight(x) == 0 && right_weight(y) == 0 {
                    let mut plain = self.mul(&f(&xe), &ye);
                    plain.add_scaled(&self.mul(&xe, &f(&ye)), &RatFunc::one());
                    pairs += 1;
                    failures += usize::from(self.del(0, &xy) != plain);
                }
            }
        }
        LeibnizReport {
            pairs,
            failures,
            ok: failures == 0,
        }
    }

    /// d² = 0 on B up to the given degree; ∂² and ∂̄² land in absent components.
    pub fn verify_d_squared(&self, max_degree: usize) -> DSquaredReport {
        let mut failures = 0;
        let basis = omega_basis(0, 0, max_degree);
        for w in &basis {
            let x = CqElement::word(w);
            let (dx10, dx01) = (self.del(0, &x), self.delb(0, 0, &x));
            // d on Ω^{1,0} is ∂̄ with twist −1, on Ω^{0,1} it is ∂
            let mut dd = self.delb(1, 0, &dx10);
            dd.add_scaled(&self.del(0, &dx01), &RatFunc::one());
            dd.add_scaled(&self.del(1, &dx10), &RatFunc::one());
            dd.add_scaled(&self.delb(0, 1, &dx01), &RatFunc::one());
            failures += usize::from(!dd.is_zero());
        }
        DSquaredReport {
            checked: basis.len(),
            failures,
            ok: failures == 0,
        }
    }

    /// Left coinvariants of Ω^{1,1} in the window: f with f ◁ u = ε(u) f.
    pub fn verify_volume(&self, window: usize) -> Result<VolumeReport> {
        let basis = omega_basis(1, 1, window);
        let index = index_of(&basis);
        let mut cols = Vec::new();
        for w in &basis {
            let x = CqElement::word(w);
            let mut col = SparseVec::new();
            for (tag, g) in [Gen::E, Gen::F, Gen::K(1)].into_iter().enumerate() {
                let mut y = self.act(g, Slot::Left, &x);
                if let Gen::K(_) = g {
                    y = y.sub(&x);
                }
                let v = coords(&y, &index).ok_or_else(|| Error::Internal("left action left the component".into()))?;
                for (j, c) in v {
                    add_entry(&mut col, tag * basis.len() + j, &c);
                }
            }
            cols.push(col);
        }
        let kernel = QMatrix::from_sparse_cols(&cols, 3 * basis.len()).kernel_basis();
        let mut form = CqElement::zero();
        if let Some(v) = kernel.first() {
            let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(RatFunc::one);
            for (k, c) in v.iter().enumerate() {
                form.add_term(basis[k].clone(), &(c / &lead));
            }
        }

        let bwords = omega_basis(0, 0, window.saturating_sub(2));
        let mut central_failures = 0;
        for w in &bwords {
            let b = CqElement::word(w);
            central_failures += usize::from(self.mul(&form, &b) != self.mul(&b, &form));
        }
        let mut span = Subspace::new(basis.len());
        for w in omega_basis(0, 0, window) {
            if let Some(v) = coords(&self.mul(&CqElement::word(&w), &form), &index) {
                span.insert(v);
            }
        }
        let generates = !form.is_zero() && span.rank() == basis.len();

        let mut classes = Vec::new();
        let mut realized = false;
        for g in sphere_generators() {
            let x = CqElement::word(&g);
            let vol = self.delb(1, 0, &self.del(0, &x));
            let e = vol.counit();
            realized |= !e.is_zero();
            classes.push(format!("ε(∂̄∂({})) = {e}", format_word(&g)));
        }
        let ok = kernel.len() == 1 && central_failures == 0 && generates && realized;
        Ok(VolumeReport {
            window,
            coinvariants: kernel.len(),
            form: form.to_string(),
            central_checked: bwords.len(),
            central_failures,
            generates,
            differential_classes: classes,
            ok,
        })
    }

    /// Linear relations among 1, x_i, x_i x_j (i ≤ j) for the quadratic generators of B.
    pub fn sphere_relation(&self) -> SphereRelation {
        let gens = sphere_generators();
        let names = ["x₁", "x₂", "x₃"];
        let mut cands: Vec<(String, CqElement)> = vec![("1".into(), CqElement::one())];
        for (i, g) in gens.iter().enumerate() {
            cands.push((names[i].into(), CqElement::word(g)));
        }
        for i in 0..3 {
            for j in i..3 {
                let p = self.mul(&CqElement::word(&gens[i]), &CqElement::word(&gens[j]));
                cands.push((format!("{}{}", names[i], names[j]), p));
            }
        }
        let words = normal_words(4);
        let index = index_of(&words);
        let cols: Vec<SparseVec> = cands.iter().map(|(_, x)| coords(x, &index).expect("degree ≤ 4")).collect();
        let kernel = QMatrix::from_sparse_cols(&cols, words.len()).kernel_basis();
        let relation = kernel
            .first()
            .map(|v| {
                let terms: Vec<String> = v
                    .iter()
                    .zip(&cands)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, (n, _))| if c.is_one() { n.clone() } else { format!("({c}) {n}") })
                    .collect();
                format!("{} = 0", terms.join(" + "))
            })
            .unwrap_or_default();
        SphereRelation {
            generators: gens
                .iter()
                .enumerate()
                .map(|(i, g)| format!("{} = {}", names[i], format_word(g)))
                .collect(),
            kernel_dim: kernel.len(),
            relation,
            ok: kernel.len() == 1,
        }
    }
}

pub fn podles_report(config: PodlesConfig) -> Result<PodlesReport> {
    config.validate()?;
    let a = CqSL2::new()?;
    let pairing = a.verify_pairing();
    let components = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(n, m)| a.component_info(n, m, config.form_degree.max(config.b_degree)))
        .collect();
    let b_closed = a.b_closed(config.b_degree);
    let calculus = a.verify_calculus(config.form_degree)?;
    let leibniz = a.verify_leibniz(3);
    let d_squared = a.verify_d_squared(4.min(config.b_degree));
    let volume = a.verify_volume(config.b_degree)?;
    let sphere = a.sphere_relation();
    let ok = pairing.ok && b_closed && calculus.ok && leibniz.ok && d_squared.ok && volume.ok && sphere.ok;
    Ok(PodlesReport {
        config,
        pairing,
        components,
        b_closed,
        calculus,
        leibniz,
        d_squared,
        volume,
        sphere,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_values() {
        let a = CqSL2::new().unwrap();
        let uq = &a.uq;
        let (ga, gb) = (CqElement::word(&[0]), CqElement::word(&[1]));
        assert_eq!(a.pair(&ga, &uq.k(0, 1)), RatFunc::q_pow(1));
        assert_eq!(a.pair(&gb, &uq.k(0, 1)), RatFunc::zero());
        assert!(!a.pair(&gb, &uq.e(0)).is_zero());
        for w in normal_words(2) {
            assert_eq!(a.pair(&CqElement::word(&w), &uq.one()), CqElement::word(&w).counit());
        }
    }

    #[test]
    fn relations_and_products() {
        let a = CqSL2::new().unwrap();
        let x = CqElement::word(&[1, 3, 0]);
        assert_eq!(a.mul(&CqElement::one(), &x), a.normalize(&[1, 3, 0]));
        // b and c commute, so (bc)(bc) = b²c²
        assert_eq!(a.normalize(&[1, 2, 1, 2]), CqElement::word(&[1, 1, 2, 2]));
        // ad = 1 + q^{-1} bc
        let mut ad = CqElement::one();
        ad.add_term(vec![1, 2], &RatFunc::q_pow(-1));
        assert_eq!(a.rule(0, 3).unwrap(), &ad);
        // associativity on a few triples
        let ws = normal_words(2);
        for x in &ws {
            for y in &ws {
                for z in &ws {
                    let (x, y, z) = (CqElement::word(x), CqElement::word(y), CqElement::word(z));
                    assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
                }
            }
        }
    }

    #[test]
    fn components() {
        assert_eq!(omega_basis(0, 0, 0), vec![Vec::<u8>::new()]);
        assert_eq!(omega_basis(0, 0, 2).iter().filter(|w| w.len() == 2).count(), 3);
        assert_eq!(omega_basis(1, 0, 1).len(), 0);
        assert_eq!(omega_basis(1, 0, 2).len(), 3);
    }

    #[test]
    fn full_report() {
        let r = podles_report(PodlesConfig::default()).unwrap();
        assert!(r.pairing.ok, "{:?}", r.pairing);
        assert!(r.b_closed);
        assert!(r.calculus.ok, "{:?}", r.calculus);
        assert!(r.leibniz.ok, "{:?}", r.leibniz);
        assert!(r.d_squared.ok);
        assert!(r.volume.ok, "{:?}", r.volume);
        assert!(r.sphere.ok, "{:?}", r.sphere);
    }
}

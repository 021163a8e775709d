//! Coproduct, counit, antipode, the involution η and the adjoint action.

use std::collections::BTreeMap;

use crate::qfield::RatFunc;

use super::{AlgElement, Letter, NormalMono, Uq};

/// Element of U ⊗ U.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    pub terms: BTreeMap<(NormalMono, NormalMono), RatFunc>,
}

impl Tensor {
    pub fn add_term(&mut self, a: NormalMono, b: NormalMono, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Uq {
    fn letters_of(&self, m: &NormalMono) -> Vec<Letter> {
        let mut out: Vec<Letter> = m.f.iter().map(|&i| Letter::F(i)).collect();
        for (i, &k) in m.k.iter().enumerate() {
            if k != 0 {
                out.push(Letter::K(i as u8, k));
            }
        }
        out.extend(m.e.iter().map(|&i| Letter::E(i)));
        out
    }

    pub fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::default();
        for ((a, b), c) in &x.terms {
            for ((a2, b2), c2) in &y.terms {
                let left = self.mul_mono(a, a2);
                let right = self.mul_mono(b, b2);
                let cc = c * c2;
                for (l, lc) in &left.terms {
                    for (r, rc) in &right.terms {
                        out.add_term(l.clone(), r.clone(), &(&cc * &(lc * rc)));
                    }
                }
            }
        }
        out
    }

    fn letter_coproduct(&self, l: Letter) -> Tensor {
        let one = NormalMono::one(self.rank());
        let mut t = Tensor::default();
        let unit = RatFunc::one();
        match l {
            Letter::K(i, x) => {
                let mut k = vec![0; self.rank()];
                k[i as usize] = x;
                let m = self.mono(&[], &k, &[]);
                t.add_term(m.clone(), m, &unit);
            }
            Letter::E(i) => {
                let mut k = vec![0; self.rank()];
                k[i as usize] = 1;
                t.add_term(self.mono(&[], &[], &[i]), self.mono(&[], &k, &[]), &unit);
                t.add_term(one, self.mono(&[], &[], &[i]), &unit);
            }
            Letter::F(i) => {
                let mut k = vec![0; self.rank()];
                k[i as usize] = -1;
                t.add_term(self.mono(&[i], &[], &[]), one, &unit);
                t.add_term(self.mono(&[], &k, &[]), self.mono(&[i], &[], &[]), &unit);
            }
        }
        t
    }

    /// Δ(E_i) = E_i⊗K_i + 1⊗E_i, Δ(F_i) = F_i⊗1 + K_i^{-1}⊗F_i, Δ(K) = K⊗K.
    pub fn coproduct(&self, x: &AlgElement) -> Tensor {
        let mut out = Tensor::default();
        for (m, c) in &x.terms {
            let one = NormalMono::one(self.rank());
            let mut t = Tensor::default();
            t.add_term(one.clone(), one, &RatFunc::one());
            for l in self.letters_of(m) {
                t = self.tensor_mul(&t, &self.letter_coproduct(l));
            }
            for ((a, b), d) in t.terms {
                out.add_term(a, b, &(c * &d));
            }
        }
        out
    }

    pub fn counit(&self, x: &AlgElement) -> RatFunc {
        x.terms
            .iter()
            .filter(|(m, _)| m.f.is_empty() && m.e.is_empty())
            .fold(RatFunc::zero(), |acc, (_, c)| &acc + c)
    }

    /// κ(E_i) = −E_i K_i^{-1}, κ(F_i) = −K_i F_i, κ(K) = K^{-1}; anti-multiplicative.
    pub fn antipode(&self, x: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m, c) in &x.terms {
            let mut acc = self.one();
            for l in self.letters_of(m).into_iter().rev() {
                let img = match l {
                    Letter::K(i, k) => self.k(i as usize, -k),
                    Letter::E(i) => self
                        .mul(&self.e(i as usize), &self.k(i as usize, -1))
                        .scale(&RatFunc::from_int(-1)),
                    Letter::F(i) => self
                        .mul(&self.k(i as usize, 1), &self.f(i as usize))
                        .scale(&RatFunc::from_int(-1)),
                };
                acc = self.mul(&acc, &img);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Algebra automorphism η(E_i) = F_i, η(F_i) = E_i, η(K_i) = K_i^{-1}.
    pub fn eta(&self, x: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m, c) in &x.terms {
            let mut k = m.k.clone();
            for v in k.iter_mut() {
                *v = -*v;
            }
            let img = self.mul(
                &self.mul(&self.e_word(&m.f), &AlgElement::from_mono(self.mono(&[], &k, &[]), RatFunc::one())),
                &self.f_word(&m.e),
            );
            out.add_scaled(&img, c);
        }
        out
    }

    /// (ad u)x = u_(1) x κ(u_(2)).
    pub fn adjoint(&self, u: &AlgElement, x: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for ((a, b), c) in &self.coproduct(u).terms {
            let left = self.mul(&AlgElement::from_mono(a.clone(), RatFunc::one()), x);
            let right = self.antipode(&AlgElement::from_mono(b.clone(), RatFunc::one()));
            out.add_scaled(&self.mul(&left, &right), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;

    #[test]
    fn hopf_basics() {
        let u = Uq::new(&RootSystem::from_str_type("A2").unwrap());
        let dk = u.coproduct(&u.k(0, 1));
        assert_eq!(dk.terms.len(), 1);
        let anti = u.antipode(&u.e(0));
        assert_eq!(anti, u.mul(&u.e(0), &u.k(0, -1)).scale(&RatFunc::from_int(-1)));
        assert!(u.counit(&u.e(0)).is_zero());
        assert!(u.counit(&u.k(1, 3)).is_one());
        // (ad K1) F2 = q^{-(α1,α2)} F2 = q F2
        assert_eq!(u.adjoint(&u.k(0, 1), &u.f(1)), u.f(1).scale(&RatFunc::q_pow(1)));
        // η(E1 F2 K1) = F1 E2 K1^{-1}
        let x = u.from_letters(&[Letter::E(0), Letter::F(1), Letter::K(0, 1)]);
        let y = u.from_letters(&[Letter::F(0), Letter::E(1), Letter::K(0, -1)]);
        assert_eq!(u.eta(&x), y);
        assert_eq!(u.eta(&u.eta(&x)), x);
    }

    #[test]
    fn antipode_axiom() {
        // m(κ⊗id)Δ = ε on generators and a mixed word
        let u = Uq::new(&RootSystem::from_str_type("B2").unwrap());
        let x = u.from_letters(&[Letter::E(0), Letter::F(1), Letter::E(1)]);
        for v in [u.e(0), u.f(1), u.k(0, 2), x] {
            let mut acc = AlgElement::zero();
            for ((a, b), c) in &u.coproduct(&v).terms {
                let l = u.antipode(&AlgElement::from_mono(a.clone(), RatFunc::one()));
                acc.add_scaled(&u.mul(&l, &AlgElement::from_mono(b.clone(), RatFunc::one())), c);
            }
            assert_eq!(acc, u.one().scale(&u.counit(&v)));
        }
    }
}

//! Products `R_{d_1} * … * R_{d_s}` of full representation spaces and the
//! rewriting that brings them to partial normal form.
//!
//! Two rewrites are used, both identities in the composition monoid:
//! - if `ext(d_{k+1}, d_k) = 0` then `R_{d_k} * R_{d_{k+1}} = R_{d_k + d_{k+1}}`,
//!   and the latter is the commuting product of its canonical decomposition;
//! - adjacent factors with vanishing ext in both directions commute.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::schofield::Schofield;
use crate::word::Word;

/// Default cap on rewriting steps.
pub const DEFAULT_STEP_CAP: u64 = 10_000;
/// Default cap on the size of an explored commutation class.
pub const DEFAULT_CLASS_CAP: usize = 5_000;

/// The symbolic product `R_{d_1} * … * R_{d_s}`; empty is the unit `R_0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProductForm {
    pub factors: Vec<DimVector>,
}

impl ProductForm {
    pub fn new(factors: Vec<DimVector>) -> Self {
        ProductForm { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of all factors.
    pub fn degree(&self, quiver: &Quiver) -> DimVector {
        self.factors.iter().fold(quiver.zero(), |acc, d| acc.add(d))
    }

    /// Factors as display-order coordinate lists.
    pub fn to_display(&self, quiver: &Quiver) -> Vec<Vec<u32>> {
        self.factors
            .iter()
            .map(|d| quiver.dim_to_display(d))
            .collect()
    }

    /// `{"factors": [{"vertex": n, …}, …]}`
    pub fn to_json(&self, quiver: &Quiver) -> serde_json::Value {
        let factors: Vec<_> = self.factors.iter().map(|d| quiver.dim_to_json(d)).collect();
        serde_json::json!({ "factors": factors })
    }
}

/// `π(i_1 … i_s) = R_{σ_{i_1}} * … * R_{σ_{i_s}}`.
pub fn word_to_product(quiver: &Quiver, word: &Word) -> ProductForm {
    ProductForm::new(word.letters().iter().map(|&v| quiver.unit(v)).collect())
}

/// `R_d = R_{σ_1}^{*d_1} * … * R_{σ_n}^{*d_n}` in admissible order.
pub fn full_space_factorization(quiver: &Quiver, d: &DimVector) -> ProductForm {
    word_to_product(quiver, &Word::sorted_of_degree(quiver, d))
}

/// Outcome of [`NormalForms::decide_equal`]. `Unknown` is not a disproof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unknown,
}

/// A partial normal form together with the measure
/// `N = Σ_{k<l} ext(d_k, d_l)` before each step and after the last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub result: ProductForm,
    pub measures: Vec<u64>,
}

/// Rewriting engine over a shared [`Schofield`] calculus.
pub struct NormalForms<'a, 'q> {
    calc: &'a Schofield<'q>,
    step_cap: u64,
    class_cap: usize,
}

impl<'a, 'q> NormalForms<'a, 'q> {
    pub fn new(calc: &'a Schofield<'q>) -> Self {
        NormalForms {
            calc,
            step_cap: DEFAULT_STEP_CAP,
            class_cap: DEFAULT_CLASS_CAP,
        }
    }

    pub fn with_caps(calc: &'a Schofield<'q>, step_cap: u64, class_cap: usize) -> Self {
        NormalForms {
            calc,
            step_cap,
            class_cap,
        }
    }

    fn quiver(&self) -> &'q Quiver {
        self.calc.quiver()
    }

    fn check_schur(&self, p: &ProductForm) -> Result<()> {
        for d in &p.factors {
            if d.is_zero() || !self.calc.is_schur_root(d)? {
                return Err(Error::NotSchur(self.quiver().display_dim(d)));
            }
        }
        Ok(())
    }

    /// `N(d_*) = Σ_{k<l} ext(d_k, d_l)`.
    pub fn measure(&self, p: &ProductForm) -> Result<u64> {
        let f = &p.factors;
        let mut total = 0u64;
        for k in 0..f.len() {
            for l in k + 1..f.len() {
                total = total
                    .checked_add(self.calc.ext_value(&f[k], &f[l])?)
                    .ok_or(Error::ArithmeticOverflow("the rewriting measure"))?;
            }
        }
        Ok(total)
    }

    /// A position `k` with `ext(d_k, d_{k+1}) ≠ 0` and `ext(d_{k+1}, d_k) = 0`.
    fn eligible(&self, f: &[DimVector], k: usize) -> Result<bool> {
        Ok(!self.calc.ext_vanishes(&f[k], &f[k + 1])?
            && self.calc.ext_vanishes(&f[k + 1], &f[k])?)
    }

    fn merge_at(&self, f: &[DimVector], k: usize) -> Result<Vec<DimVector>> {
        let sum = f[k].add(&f[k + 1]);
        let parts = self.calc.canonical_decomposition(&sum)?.parts;
        let mut out = f[..k].to_vec();
        out.extend(parts);
        out.extend_from_slice(&f[k + 2..]);
        Ok(out)
    }

    pub fn partial_normal_form(&self, p: &ProductForm) -> Result<ProductForm> {
        Ok(self.partial_normal_form_traced(p)?.result)
    }

    /// Leftmost-first merging until no adjacent pair is eligible. The measure
    /// is checked to strictly decrease at every step.
    pub fn partial_normal_form_traced(&self, p: &ProductForm) -> Result<Trace> {
        self.check_schur(p)?;
        let mut f = p.factors.clone();
        let mut measures = vec![self.measure(p)?];
        let mut steps = 0u64;
        loop {
            let mut position = None;
            for k in 0..f.len().saturating_sub(1) {
                if self.eligible(&f, k)? {
                    position = Some(k);
                    break;
                }
            }
            let Some(k) = position else { break };
            steps += 1;
            if steps > self.step_cap {
                return Err(Error::cap("rewriting steps", self.step_cap));
            }
            f = self.merge_at(&f, k)?;
            let n = self.measure(&ProductForm::new(f.clone()))?;
            let last = *measures.last().expect("nonempty");
            if n >= last {
                return Err(Error::PreconditionViolated(format!(
                    "rewriting measure went from {last} to {n}"
                )));
            }
            measures.push(n);
        }
        Ok(Trace {
            result: ProductForm::new(f),
            measures,
        })
    }

    fn commute(&self, a: &DimVector, b: &DimVector) -> Result<bool> {
        Ok(self.calc.ext_vanishes(a, b)? && self.calc.ext_vanishes(b, a)?)
    }

    /// The lexicographically least product obtainable by swapping adjacent
    /// commuting factors, factors compared in grlex order. No adjacent pair
    /// `(a, b)` of the result commutes with `b < a`.
    pub fn canonicalize_commuting(&self, p: &ProductForm) -> Result<ProductForm> {
        let q = self.quiver();
        let mut rest = p.factors.clone();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // Candidates: factors that commute with everything before them.
            let mut best: Option<usize> = None;
            for idx in 0..rest.len() {
                let mut free = true;
                for prev in &rest[..idx] {
                    if prev == &rest[idx] || !self.commute(prev, &rest[idx])? {
                        free = false;
                        break;
                    }
                }
                if free && best.is_none_or(|b| q.cmp_grlex(&rest[idx], &rest[b]) == Ordering::Less)
                {
                    best = Some(idx);
                }
            }
            let idx = best.expect("the first factor is always a candidate");
            out.push(rest.remove(idx));
        }
        Ok(ProductForm::new(out))
    }

    /// Some product in the commutation class of `p` with an eligible
    /// adjacent pair, merged at that pair. Explores at most `class_cap`
    /// members.
    fn merge_in_class(&self, p: &ProductForm) -> Result<Option<ProductForm>> {
        let mut seen = HashSet::from([p.factors.clone()]);
        let mut queue = VecDeque::from([p.factors.clone()]);
        while let Some(f) = queue.pop_front() {
            for k in 0..f.len().saturating_sub(1) {
                if self.eligible(&f, k)? {
                    return Ok(Some(ProductForm::new(self.merge_at(&f, k)?)));
                }
            }
            for k in 0..f.len().saturating_sub(1) {
                if f[k] != f[k + 1] && self.commute(&f[k], &f[k + 1])? {
                    let mut g = f.clone();
                    g.swap(k, k + 1);
                    if seen.len() < self.class_cap && seen.insert(g.clone()) {
                        queue.push_back(g);
                    }
                }
            }
        }
        Ok(None)
    }

    /// Alternates partial normal form, merges found anywhere in the
    /// commutation class, and commuting canonicalization until stable.
    pub fn normal_form(&self, p: &ProductForm) -> Result<ProductForm> {
        let mut current = self.partial_normal_form(p)?;
        let mut rounds = 0u64;
        loop {
            rounds += 1;
            if rounds > self.step_cap {
                return Err(Error::cap("rewriting steps", self.step_cap));
            }
            match self.merge_in_class(&current)? {
                Some(merged) => current = self.partial_normal_form(&merged)?,
                None => return self.canonicalize_commuting(&current),
            }
        }
    }

    /// `Equal` when both products reach the same normal form. Sound: every
    /// rewrite is an identity in the monoid.
    pub fn decide_equal(&self, a: &ProductForm, b: &ProductForm) -> Result<Verdict> {
        if a.degree(self.quiver()) != b.degree(self.quiver()) {
            return Ok(Verdict::Unknown);
        }
        if self.normal_form(a)? == self.normal_form(b)? {
            Ok(Verdict::Equal)
        } else {
            Ok(Verdict::Unknown)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new(&["i", "j"], &[("i", "j")]).unwrap()
    }

    fn dims(q: &Quiver, rows: &[&[u32]]) -> ProductForm {
        ProductForm::new(
            rows.iter()
                .map(|r| q.dim_from_display(r).unwrap())
                .collect(),
        )
    }

    #[test]
    fn products_from_words() {
        let q = a2();
        let w = Word::parse(&q, "iij").unwrap();
        assert_eq!(
            word_to_product(&q, &w),
            dims(&q, &[&[1, 0], &[1, 0], &[0, 1]])
        );
        assert!(word_to_product(&q, &Word::default()).is_empty());
        let k = Quiver::kronecker(2);
        let d = k.dim_from_display(&[2, 2]).unwrap();
        assert_eq!(
            full_space_factorization(&k, &d),
            dims(&k, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]])
        );
        assert!(full_space_factorization(&k, &k.zero()).is_empty());
    }

    #[test]
    fn kronecker_partial_normal_forms() {
        let k = Quiver::kronecker(2);
        let calc = Schofield::new(&k);
        let nf = NormalForms::new(&calc);
        let p = dims(&k, &[&[1, 0], &[0, 1]]);
        assert_eq!(nf.partial_normal_form(&p).unwrap(), dims(&k, &[&[1, 1]]));
        let p = dims(&k, &[&[0, 1], &[1, 0]]);
        assert_eq!(nf.partial_normal_form(&p).unwrap(), p);
        let t = nf
            .partial_normal_form_traced(&dims(&k, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]))
            .unwrap();
        assert_eq!(t.result, dims(&k, &[&[1, 1], &[1, 1]]));
        assert!(t.measures.windows(2).all(|w| w[1] < w[0]));
        assert!(matches!(
            nf.partial_normal_form(&dims(&k, &[&[2, 2]])),
            Err(Error::NotSchur(_))
        ));
    }

    #[test]
    fn a2_normal_forms() {
        let q = a2();
        let calc = Schofield::new(&q);
        let nf = NormalForms::new(&calc);
        let iji = word_to_product(&q, &Word::parse(&q, "iji").unwrap());
        let p = nf.partial_normal_form(&iji).unwrap();
        assert_eq!(
            nf.canonicalize_commuting(&p).unwrap(),
            dims(&q, &[&[1, 0], &[1, 1]])
        );
        let iij = word_to_product(&q, &Word::parse(&q, "iij").unwrap());
        assert_eq!(nf.decide_equal(&iij, &iji).unwrap(), Verdict::Equal);
    }

    #[test]
    fn commuting_canonicalization() {
        let q = a2();
        let calc = Schofield::new(&q);
        let nf = NormalForms::new(&calc);
        let p = dims(&q, &[&[1, 1], &[1, 0]]);
        assert_eq!(
            nf.canonicalize_commuting(&p).unwrap(),
            dims(&q, &[&[1, 0], &[1, 1]])
        );

        let k = Quiver::kronecker(2);
        let calc = Schofield::new(&k);
        let nf = NormalForms::new(&calc);
        let p = dims(&k, &[&[1, 1], &[1, 1]]);
        assert_eq!(nf.canonicalize_commuting(&p).unwrap(), p);
        let p = dims(&k, &[&[0, 1], &[1, 0]]);
        assert_eq!(nf.canonicalize_commuting(&p).unwrap(), p);
    }

    #[test]
    fn kronecker_equality() {
        let k = Quiver::kronecker(2);
        let calc = Schofield::new(&k);
        let nf = NormalForms::new(&calc);
        let w = |s| word_to_product(&k, &Word::parse(&k, s).unwrap());
        assert_eq!(
            nf.decide_equal(&w("1212"), &w("1122")).unwrap(),
            Verdict::Equal
        );
        assert_eq!(
            nf.decide_equal(&w("12"), &w("21")).unwrap(),
            Verdict::Unknown
        );
    }
}

//! Generic hom/ext values on dimension vectors.
//!
//! `ext(e, d)` is the generic dimension of `Ext¹(B, A)` for `B ∈ R_e`,
//! `A ∈ R_d`. It vanishes iff `⟨e', d⟩ ≥ 0` for every generic subdimension
//! vector `e' ↪ e`, and `e' ↪ e` holds iff `ext(e', e − e') = 0`, which makes
//! the test recursive. The value is the maximum of `−⟨e', d⟩` over the same
//! subvectors (floored at zero, the `e' = 0` term).
//!
//! Results are memoized per engine. The caches follow an idempotent-fill
//! contract: concurrent callers may compute the same key twice, but always
//! write the same value.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

/// Default cap on `|e| + |d|` for the ext recursion.
pub const DEFAULT_EXT_CAP: u64 = 40;

/// Which of the two equivalent recursions decides vanishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtRoute {
    /// Quantify over generic subvectors of the first argument.
    Sub,
    /// Quantify over generic quotient vectors of the second argument.
    Quotient,
}

/// The canonical decomposition of a dimension vector: a multiset of Schur
/// roots with pairwise vanishing ext, sorted by [`Quiver::cmp_grlex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<DimVector>,
}

type Key = (DimVector, DimVector);

struct Memo<V> {
    map: RwLock<HashMap<Key, V>>,
}

impl<V: Copy + PartialEq + std::fmt::Debug> Memo<V> {
    fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    fn get(&self, key: &Key) -> Option<V> {
        self.map.read().expect("memo lock").get(key).copied()
    }

    fn fill(&self, key: Key, value: V) {
        let mut map = self.map.write().expect("memo lock");
        let prev = map.entry(key).or_insert(value);
        debug_assert_eq!(*prev, value, "memo fill must be idempotent");
    }

    fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }
}

/// The ext/hom calculus for one quiver, with its memo tables.
pub struct Schofield<'q> {
    quiver: &'q Quiver,
    cap: u64,
    vanish_sub: Memo<bool>,
    vanish_quot: Memo<bool>,
    values: Memo<u64>,
}

impl<'q> Schofield<'q> {
    pub fn new(quiver: &'q Quiver) -> Self {
        Self::with_cap(quiver, DEFAULT_EXT_CAP)
    }

    pub fn with_cap(quiver: &'q Quiver, cap: u64) -> Self {
        Schofield {
            quiver,
            cap,
            vanish_sub: Memo::new(),
            vanish_quot: Memo::new(),
            values: Memo::new(),
        }
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Number of memoized vanishing verdicts (both routes).
    pub fn memo_size(&self) -> usize {
        self.vanish_sub.len() + self.vanish_quot.len()
    }

    fn check_cap(&self, e: &DimVector, d: &DimVector) -> Result<()> {
        if e.total() + d.total() > self.cap {
            return Err(Error::cap("|e|+|d| in the ext recursion", self.cap));
        }
        Ok(())
    }

    fn check_shape(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.quiver.vertex_count() {
            return Err(Error::DegreeMismatch(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                v.len(),
                self.quiver.vertex_count()
            )));
        }
        Ok(())
    }

    /// True iff `ext(e, d) = 0`, i.e. `R_d * R_e = R_{d+e}`.
    pub fn ext_vanishes(&self, e: &DimVector, d: &DimVector) -> Result<bool> {
        self.ext_vanishes_via(ExtRoute::Sub, e, d)
    }

    /// [`Schofield::ext_vanishes`] through an explicitly chosen recursion.
    /// The two routes share no memo entries and serve as cross-checks.
    pub fn ext_vanishes_via(&self, route: ExtRoute, e: &DimVector, d: &DimVector) -> Result<bool> {
        self.check_shape(e)?;
        self.check_shape(d)?;
        self.check_cap(e, d)?;
        match route {
            ExtRoute::Sub => self.vanish_sub_rec(e, d),
            ExtRoute::Quotient => self.vanish_quot_rec(e, d),
        }
    }

    fn vanish_sub_rec(&self, e: &DimVector, d: &DimVector) -> Result<bool> {
        if e.is_zero() || d.is_zero() {
            return Ok(true);
        }
        let key = (e.clone(), d.clone());
        if let Some(v) = self.vanish_sub.get(&key) {
            return Ok(v);
        }
        let mut result = true;
        for sub in self.quiver.subvectors_grlex(e) {
            if self.quiver.euler_form(&sub, d)? >= 0 {
                continue;
            }
            let rest = e.checked_sub(&sub).expect("subvector");
            // The sub-call has total |e| < |e| + |d|.
            if self.vanish_sub_rec(&sub, &rest)? {
                result = false;
                break;
            }
        }
        self.vanish_sub.fill(key, result);
        Ok(result)
    }

    fn vanish_quot_rec(&self, e: &DimVector, d: &DimVector) -> Result<bool> {
        if e.is_zero() || d.is_zero() {
            return Ok(true);
        }
        let key = (e.clone(), d.clone());
        if let Some(v) = self.vanish_quot.get(&key) {
            return Ok(v);
        }
        let mut result = true;
        for sub in self.quiver.subvectors_grlex(d) {
            if self.quiver.euler_form(e, &sub)? >= 0 {
                continue;
            }
            let rest = d.checked_sub(&sub).expect("subvector");
            // R_{d'} * R_{d−d'} = R_d iff ext(d − d', d') = 0.
            if self.vanish_quot_rec(&rest, &sub)? {
                result = false;
                break;
            }
        }
        self.vanish_quot.fill(key, result);
        Ok(result)
    }

    /// The generic value `ext(e, d)`.
    pub fn ext_value(&self, e: &DimVector, d: &DimVector) -> Result<u64> {
        self.check_shape(e)?;
        self.check_shape(d)?;
        self.check_cap(e, d)?;
        if e.is_zero() || d.is_zero() {
            return Ok(0);
        }
        let key = (e.clone(), d.clone());
        if let Some(v) = self.values.get(&key) {
            return Ok(v);
        }
        let mut candidates = Vec::new();
        for sub in self.quiver.subvectors_grlex(e) {
            let pairing = self.quiver.euler_form(&sub, d)?;
            if pairing < 0 {
                candidates.push((-pairing, sub));
            }
        }
        // Largest candidate first; the first generic subvector wins.
        candidates.sort_by_key(|c| std::cmp::Reverse(c.0));
        let mut best = 0u64;
        for (value, sub) in candidates {
            let rest = e.checked_sub(&sub).expect("subvector");
            if self.vanish_sub_rec(&sub, &rest)? {
                best = value as u64;
                break;
            }
        }
        self.values.fill(key, best);
        Ok(best)
    }

    /// The generic value `hom(e, d) = ext(e, d) + ⟨e, d⟩`.
    pub fn generic_hom(&self, e: &DimVector, d: &DimVector) -> Result<u64> {
        let ext = self.ext_value(e, d)? as i64;
        let hom = ext + self.quiver.euler_form(e, d)?;
        u64::try_from(hom).map_err(|_| {
            Error::Mismatch(format!(
                "negative generic hom {hom} for {} -> {}",
                self.quiver.display_dim(e),
                self.quiver.display_dim(d)
            ))
        })
    }

    /// Splits `d = e + (d − e)` with both exts vanishing, scanning `e` in
    /// grlex order (or its reverse).
    fn find_split(&self, d: &DimVector, reversed: bool) -> Result<Option<DimVector>> {
        let mut subs = self.quiver.subvectors_grlex(d);
        if reversed {
            subs.reverse();
        }
        for e in subs {
            if e.is_zero() || &e == d {
                continue;
            }
            let f = d.checked_sub(&e).expect("subvector");
            if self.ext_vanishes(&e, &f)? && self.ext_vanishes(&f, &e)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// True iff the generic representation of dimension `d` has trivial
    /// endomorphism ring.
    pub fn is_schur_root(&self, d: &DimVector) -> Result<bool> {
        self.check_shape(d)?;
        if d.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.find_split(d, false)?.is_none())
    }

    pub fn canonical_decomposition(&self, d: &DimVector) -> Result<Decomposition> {
        self.canonical_decomposition_ordered(d, false)
    }

    /// Canonical decomposition with the split search run in reverse order.
    /// The result must coincide with [`Schofield::canonical_decomposition`].
    pub fn canonical_decomposition_ordered(
        &self,
        d: &DimVector,
        reversed: bool,
    ) -> Result<Decomposition> {
        self.check_shape(d)?;
        if d.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut parts = Vec::new();
        let mut pending = vec![d.clone()];
        while let Some(v) = pending.pop() {
            match self.find_split(&v, reversed)? {
                None => parts.push(v),
                Some(e) => {
                    let f = v.checked_sub(&e).expect("subvector");
                    pending.push(e);
                    pending.push(f);
                }
            }
        }
        parts.sort_by(|a, b| self.quiver.cmp_grlex(a, b));
        Ok(Decomposition { parts })
    }

    /// True iff `d` is a positive imaginary root with `⟨d, d⟩ = 0`.
    ///
    /// Reflection descent: while some simple reflection lowers `d`, apply it;
    /// a vector reaching the fundamental set with connected support is an
    /// imaginary root, one acquiring a negative coordinate is not a root.
    pub fn is_isotropic_root(&self, d: &DimVector) -> Result<bool> {
        self.check_shape(d)?;
        if d.is_zero() {
            return Err(Error::ZeroVector);
        }
        let q = self.quiver;
        if q.euler_form(d, d)? != 0 {
            return Ok(false);
        }
        let n = q.vertex_count() as u64;
        let limit = 10 * d.total() * n;
        let mut current: Vec<i64> = d.coords().iter().map(|&x| i64::from(x)).collect();
        for _ in 0..=limit {
            let as_dim = DimVector::from_vec(current.iter().map(|&x| x as u32).collect())?;
            let mut fired = false;
            for &v in q.admissible_order().sequence() {
                let pairing = q.symmetrized_form(&as_dim, &q.unit(v))?;
                if pairing > 0 {
                    current[v] -= pairing;
                    if current[v] < 0 {
                        return Ok(false);
                    }
                    fired = true;
                    break;
                }
            }
            if !fired {
                return Ok(q.support_connected(&as_dim));
            }
        }
        Err(Error::NonTermination(limit))
    }

    /// All pairs `(d, e)` of nonzero vectors with `|d| + |e| ≤ bound` and
    /// `ext(e, d) = 0`, so that `R_d * R_e = R_{d+e}`. Ordered by total, then
    /// `d`, then `e`, each in grlex order.
    pub fn enumerate_obs_relations(&self, bound: u32) -> Result<Vec<(DimVector, DimVector)>> {
        if u64::from(bound) > self.cap {
            return Err(Error::cap("relation bound", self.cap));
        }
        let q = self.quiver;
        let by_total: Vec<Vec<DimVector>> = (0..=bound).map(|t| q.vectors_with_total(t)).collect();
        let mut out = Vec::new();
        for total in 2..=bound {
            for dt in 1..total {
                for d in &by_total[dt as usize] {
                    for e in &by_total[(total - dt) as usize] {
                        if self.ext_vanishes(e, d)? {
                            out.push((d.clone(), e.clone()));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `⌈(n − 1/k)·x⌉`, the smallest `y` for which
/// `R_{σ_i + kσ_j} * R_{xσ_i + yσ_j} = R_{(x+1)σ_i + (y+k)σ_j}` on the
/// `n`-Kronecker quiver.
pub fn drel3_threshold(n: u64, k: u64, x: u64) -> Result<u64> {
    if k == 0 || k > n || x < k {
        return Err(Error::PreconditionViolated(format!(
            "need 1 <= k <= n and x >= k, got n={n}, k={k}, x={x}"
        )));
    }
    let numerator = n
        .checked_mul(k)
        .and_then(|nk| (nk - 1).checked_mul(x))
        .ok_or(Error::ArithmeticOverflow("the drel3 threshold"))?;
    Ok(numerator.div_ceil(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new(&["i", "j"], &[("i", "j")]).unwrap()
    }

    fn dv(q: &Quiver, c: &[u32]) -> DimVector {
        q.dim_from_display(c).unwrap()
    }

    #[test]
    fn kronecker_simple_pairs() {
        let k = Quiver::kronecker(2);
        let s = Schofield::new(&k);
        let (s1, s2) = (k.unit(0), k.unit(1));
        assert!(s.ext_vanishes(&s2, &s1).unwrap());
        assert!(!s.ext_vanishes(&s1, &s2).unwrap());
        assert_eq!(s.ext_value(&s1, &s2).unwrap(), 2);
        assert_eq!(s.ext_value(&k.zero(), &s2).unwrap(), 0);
        assert_eq!(s.generic_hom(&s1, &s2).unwrap(), 0);
        assert_eq!(s.generic_hom(&s1, &s1).unwrap(), 1);
    }

    #[test]
    fn three_kronecker_example() {
        let k3 = Quiver::kronecker(3);
        let s = Schofield::new(&k3);
        assert!(s
            .ext_vanishes(&dv(&k3, &[2, 3]), &dv(&k3, &[3, 1]))
            .unwrap());
    }

    #[test]
    fn isotropic_self_ext_vanishes() {
        let k = Quiver::kronecker(2);
        let s = Schofield::new(&k);
        let delta = dv(&k, &[1, 1]);
        assert_eq!(s.ext_value(&delta, &delta).unwrap(), 0);
    }

    #[test]
    fn a2_generic_hom() {
        let q = a2();
        let s = Schofield::new(&q);
        assert_eq!(
            s.generic_hom(&dv(&q, &[1, 1]), &dv(&q, &[1, 0])).unwrap(),
            1
        );
    }

    #[test]
    fn schur_roots() {
        let k = Quiver::kronecker(2);
        let s = Schofield::new(&k);
        assert!(s.is_schur_root(&dv(&k, &[1, 1])).unwrap());
        assert!(!s.is_schur_root(&dv(&k, &[2, 2])).unwrap());
        assert!(s.is_schur_root(&k.unit(1)).unwrap());
        assert_eq!(s.is_schur_root(&k.zero()), Err(Error::ZeroVector));
    }

    #[test]
    fn canonical_decompositions() {
        let k = Quiver::kronecker(2);
        let s = Schofield::new(&k);
        let delta = dv(&k, &[1, 1]);
        assert_eq!(
            s.canonical_decomposition(&dv(&k, &[2, 2])).unwrap().parts,
            vec![delta.clone(), delta]
        );
        let q = a2();
        let s = Schofield::new(&q);
        assert_eq!(
            s.canonical_decomposition(&dv(&q, &[2, 1])).unwrap().parts,
            vec![dv(&q, &[1, 0]), dv(&q, &[1, 1])]
        );
        assert_eq!(
            s.canonical_decomposition(&q.unit(0)).unwrap().parts,
            vec![q.unit(0)]
        );
    }

    #[test]
    fn isotropic_roots() {
        let k = Quiver::kronecker(2);
        let s = Schofield::new(&k);
        assert!(s.is_isotropic_root(&dv(&k, &[1, 1])).unwrap());
        assert!(s.is_isotropic_root(&dv(&k, &[2, 2])).unwrap());
        assert!(!s.is_isotropic_root(&dv(&k, &[1, 2])).unwrap());
        let q = a2();
        let s = Schofield::new(&q);
        assert!(!s.is_isotropic_root(&dv(&q, &[1, 1])).unwrap());
        assert!(Schofield::new(&k)
            .is_isotropic_root(&dv(&k, &[3, 3]))
            .unwrap());
        // ⟨d,d⟩ = 0 but disconnected support: not a root.
        let two = Quiver::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "b"), ("c", "d"), ("c", "d")],
        )
        .unwrap();
        let s2 = Schofield::new(&two);
        assert!(!s2.is_isotropic_root(&dv(&two, &[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn obs_relations() {
        let k = Quiver::kronecker(2);
        let s = Schofield::new(&k);
        let rels = s.enumerate_obs_relations(2).unwrap();
        assert!(rels.contains(&(k.unit(0), k.unit(1))));
        assert!(!rels.contains(&(k.unit(1), k.unit(0))));

        let one = Quiver::new::<&str>(&["a"], &[]).unwrap();
        let s = Schofield::new(&one);
        assert_eq!(
            s.enumerate_obs_relations(2).unwrap(),
            vec![(one.unit(0), one.unit(0))]
        );

        let k3 = Quiver::kronecker(3);
        let s = Schofield::new(&k3);
        let rels = s.enumerate_obs_relations(9).unwrap();
        assert!(rels.contains(&(dv(&k3, &[3, 1]), dv(&k3, &[2, 3]))));
    }

    #[test]
    fn drel3_threshold_values() {
        assert_eq!(drel3_threshold(3, 2, 2).unwrap(), 5);
        assert_eq!(drel3_threshold(1, 1, 1).unwrap(), 0);
        assert_eq!(drel3_threshold(3, 3, 4).unwrap(), 11);
        assert!(drel3_threshold(2, 3, 4).is_err());
        assert!(drel3_threshold(2, 0, 4).is_err());
        assert!(drel3_threshold(3, 2, 1).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let k = Quiver::kronecker(2);
        let s = Schofield::with_cap(&k, 4);
        let big = dv(&k, &[2, 2]);
        assert!(matches!(
            s.ext_vanishes(&big, &k.unit(0)),
            Err(Error::CapExceeded { .. })
        ));
    }
}

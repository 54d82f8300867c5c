//! Brute-force semantics over a prime field `F_q`.
//!
//! Enumerates `R_d(F_q)`, decides membership in `E_ω` by searching for a
//! composition series, compares point sets, and computes hom/ext/orbit
//! dimensions by exact linear algebra. Every other module can be checked
//! against these results at small sizes.
//!
//! `E_ω` is a variety over the algebraic closure, so an `F_q`-point may lie
//! in it through a series that is only defined over an extension. The
//! search therefore runs over `F_{q^m}` (default `m = 2`). A `2×2` pencil
//! over `F_2` with characteristic polynomial `x² + x + 1` is the typical
//! point missed by `m = 1`. Membership only grows with `m`, and never
//! exceeds the true `E_ω(F_q)`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fp::{projective_points, Elem, Field, Mat};
use crate::quiver::{DimVector, Quiver, Vertex};
use crate::word::{words_of_degree, Word, DEFAULT_WORD_CAP};

/// Default cap on `q^{dim R_d}`.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;
/// Default degree of the field over which composition series are sought.
pub const DEFAULT_FLAG_DEGREE: u32 = 2;
/// Default cap on `|G_d(F_q)|`.
pub const DEFAULT_GROUP_CAP: u64 = 1 << 22;

/// A point of `R_d(F_q)`: one `d_head × d_tail` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqRep {
    pub q: u8,
    pub dim: DimVector,
    pub mats: Vec<Mat>,
}

impl FqRep {
    pub fn zero(quiver: &Quiver, q: u8, dim: &DimVector) -> Self {
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(t, h)| Mat::zeros(dim.get(h) as usize, dim.get(t) as usize))
            .collect();
        FqRep {
            q,
            dim: dim.clone(),
            mats,
        }
    }

    /// The simple representation at `v`.
    pub fn simple(quiver: &Quiver, q: u8, v: Vertex) -> Self {
        Self::zero(quiver, q, &quiver.unit(v))
    }

    /// Checks matrix shapes and entry range.
    pub fn validate(&self, quiver: &Quiver) -> Result<()> {
        if self.dim.len() != quiver.vertex_count() || self.mats.len() != quiver.arrows().len() {
            return Err(Error::Mismatch(
                "representation does not fit the quiver".into(),
            ));
        }
        for (m, &(t, h)) in self.mats.iter().zip(quiver.arrows()) {
            if m.rows != self.dim.get(h) as usize || m.cols != self.dim.get(t) as usize {
                return Err(Error::Mismatch(format!(
                    "matrix for arrow {} -> {} has shape {}x{}",
                    quiver.name(t),
                    quiver.name(h),
                    m.rows,
                    m.cols
                )));
            }
            if m.data.iter().any(|&x| x >= Elem::from(self.q)) {
                return Err(Error::Mismatch(format!("entry outside F_{}", self.q)));
            }
        }
        Ok(())
    }

    /// `q`, then each `d_v` as four big-endian bytes, then all entries row
    /// by row, arrow by arrow.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.q];
        for &c in self.dim.coords() {
            out.extend_from_slice(&c.to_be_bytes());
        }
        for m in &self.mats {
            out.extend(m.data.iter().map(|&x| x as u8));
        }
        out
    }

    pub fn decode(quiver: &Quiver, bytes: &[u8]) -> Result<Self> {
        let n = quiver.vertex_count();
        let bad = || Error::Mismatch("truncated representation encoding".into());
        let q = *bytes.first().ok_or_else(bad)?;
        let mut coords = Vec::with_capacity(n);
        for v in 0..n {
            let chunk = bytes.get(1 + 4 * v..5 + 4 * v).ok_or_else(bad)?;
            coords.push(u32::from_be_bytes(chunk.try_into().expect("four bytes")));
        }
        let dim = DimVector::from_vec(coords)?;
        let mut rep = FqRep::zero(quiver, q, &dim);
        let mut pos = 1 + 4 * n;
        for m in &mut rep.mats {
            let len = m.data.len();
            let chunk = bytes.get(pos..pos + len).ok_or_else(bad)?;
            for (x, &b) in m.data.iter_mut().zip(chunk) {
                *x = Elem::from(b);
            }
            pos += len;
        }
        if pos != bytes.len() {
            return Err(bad());
        }
        rep.validate(quiver)?;
        Ok(rep)
    }

    /// `{"q": q, "dim": {...}, "mats": [[[row], …], …]}`
    pub fn to_json(&self, quiver: &Quiver) -> Value {
        let mats: Vec<Vec<Vec<Elem>>> = self.mats.iter().map(Mat::to_rows).collect();
        json!({ "q": self.q, "dim": quiver.dim_to_json(&self.dim), "mats": mats })
    }

    pub fn from_json(quiver: &Quiver, value: &Value) -> Result<Self> {
        let malformed = |msg: &str| Error::MalformedSpec(format!("representation: {msg}"));
        let q = value
            .get("q")
            .and_then(Value::as_u64)
            .ok_or_else(|| malformed("missing q"))?;
        Field::prime(q)?;
        let dim =
            quiver.dim_from_json(value.get("dim").ok_or_else(|| malformed("missing dim"))?)?;
        let mats_json = value
            .get("mats")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing mats"))?;
        let mut rep = FqRep::zero(quiver, q as u8, &dim);
        if mats_json.len() != rep.mats.len() {
            return Err(malformed("one matrix per arrow expected"));
        }
        for (m, mj) in rep.mats.iter_mut().zip(mats_json) {
            let rows = mj
                .as_array()
                .ok_or_else(|| malformed("matrix must be a list of rows"))?;
            if rows.len() != m.rows {
                return Err(malformed("wrong row count"));
            }
            for (r, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .ok_or_else(|| malformed("row must be a list"))?;
                if row.len() != m.cols {
                    return Err(malformed("wrong column count"));
                }
                for (c, x) in row.iter().enumerate() {
                    let x = x
                        .as_u64()
                        .ok_or_else(|| malformed("entries must be integers"))?;
                    if x >= q {
                        return Err(malformed("entry outside the field"));
                    }
                    m.set(r, c, x as Elem);
                }
            }
        }
        Ok(rep)
    }
}

/// A set of points of `R_d(F_q)`, stored as canonical encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySet {
    pub q: u8,
    pub dim: DimVector,
    members: BTreeSet<Vec<u8>>,
}

impl FamilySet {
    pub fn empty(q: u8, dim: DimVector) -> Self {
        FamilySet {
            q,
            dim,
            members: BTreeSet::new(),
        }
    }

    pub fn from_reps<'a>(q: u8, dim: DimVector, reps: impl IntoIterator<Item = &'a FqRep>) -> Self {
        FamilySet {
            q,
            dim,
            members: reps.into_iter().map(FqRep::encode).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &FqRep) -> bool {
        self.members.contains(&x.encode())
    }

    pub fn encodings(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.members.iter()
    }

    pub fn reps(&self, quiver: &Quiver) -> Vec<FqRep> {
        self.members
            .iter()
            .map(|b| FqRep::decode(quiver, b).expect("stored encodings are valid"))
            .collect()
    }

    fn check_compatible(&self, other: &FamilySet) -> Result<()> {
        if self.q != other.q || self.dim != other.dim {
            return Err(Error::Mismatch(
                "families live over different fields or dimension vectors".into(),
            ));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &FamilySet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &FamilySet) -> Result<FamilySet> {
        self.check_compatible(other)?;
        Ok(FamilySet {
            q: self.q,
            dim: self.dim.clone(),
            members: self.members.intersection(&other.members).cloned().collect(),
        })
    }

    pub fn union(&self, other: &FamilySet) -> Result<FamilySet> {
        self.check_compatible(other)?;
        Ok(FamilySet {
            q: self.q,
            dim: self.dim.clone(),
            members: self.members.union(&other.members).cloned().collect(),
        })
    }

    pub fn difference(&self, other: &FamilySet) -> Result<FamilySet> {
        self.check_compatible(other)?;
        Ok(FamilySet {
            q: self.q,
            dim: self.dim.clone(),
            members: self.members.difference(&other.members).cloned().collect(),
        })
    }

    /// SHA-256 over the concatenated sorted encodings, hex encoded.
    pub fn sha256(&self) -> String {
        let mut hasher = Sha256::new();
        for m in &self.members {
            hasher.update(m);
        }
        hex::encode(hasher.finalize())
    }

    /// `{"q", "dim", "count", "sha256"}`
    pub fn digest(&self, quiver: &Quiver) -> Value {
        json!({
            "q": self.q,
            "dim": quiver.dim_to_json(&self.dim),
            "count": self.len(),
            "sha256": self.sha256(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FirstInSecond,
    SecondInFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    StrictSubset(Direction),
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub relation: Relation,
    pub first: usize,
    pub second: usize,
    pub common: usize,
}

/// Exact set comparison of two families over the same `q` and `d`.
pub fn compare_families(a: &FamilySet, b: &FamilySet) -> Result<Comparison> {
    let common = a.intersection(b)?.len();
    let relation = match (common == a.len(), common == b.len()) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::StrictSubset(Direction::FirstInSecond),
        (false, true) => Relation::StrictSubset(Direction::SecondInFirst),
        (false, false) => Relation::Incomparable,
    };
    Ok(Comparison {
        relation,
        first: a.len(),
        second: b.len(),
        common,
    })
}

/// An element of `G_d(F_q)` with its inverse, one matrix per vertex.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub g: Vec<Mat>,
    pub inv: Vec<Mat>,
}

/// Brute-force oracle for one quiver and field.
pub struct Oracle<'q> {
    quiver: &'q Quiver,
    field: Field,
    flag_field: Field,
    enum_cap: u64,
    group_cap: u64,
    word_cap: u64,
    dynkin: bool,
    groups: Mutex<HashMap<DimVector, Arc<Vec<GroupElement>>>>,
    canon: Mutex<HashMap<Vec<u8>, Vec<u8>>>,
}

fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

impl<'q> Oracle<'q> {
    pub fn new(quiver: &'q Quiver, q: u64) -> Result<Self> {
        Ok(Oracle {
            quiver,
            field: Field::prime(q)?,
            flag_field: Field::extension(q, DEFAULT_FLAG_DEGREE)?,
            enum_cap: DEFAULT_ENUM_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            word_cap: DEFAULT_WORD_CAP,
            dynkin: false,
            groups: Mutex::new(HashMap::new()),
            canon: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_enum_cap(mut self, cap: u64) -> Self {
        self.enum_cap = cap;
        self
    }

    pub fn with_group_cap(mut self, cap: u64) -> Self {
        self.group_cap = cap;
        self
    }

    pub fn with_word_cap(mut self, cap: u64) -> Self {
        self.word_cap = cap;
        self
    }

    /// Declares the quiver representation-finite, enabling exact dimensions.
    pub fn with_dynkin(mut self, dynkin: bool) -> Self {
        self.dynkin = dynkin;
        self
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    pub fn q(&self) -> u8 {
        self.field.order() as u8
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Composition series are searched with subspaces defined over
    /// `F_{q^m}`; `m = 1` asks for `F_q`-rational series only.
    pub fn with_flag_degree(mut self, m: u32) -> Result<Self> {
        self.flag_field = Field::extension(u64::from(self.q()), m)?;
        Ok(self)
    }

    pub fn flag_degree(&self) -> u32 {
        self.flag_field.degree()
    }

    pub fn is_dynkin(&self) -> bool {
        self.dynkin
    }

    fn check_rep(&self, x: &FqRep) -> Result<()> {
        if x.q != self.q() {
            return Err(Error::Mismatch(format!(
                "representation over F_{} given to an oracle over F_{}",
                x.q,
                self.q()
            )));
        }
        x.validate(self.quiver)
    }

    /// `|R_d(F_q)|`, checked against the enumeration cap.
    pub fn rep_count(&self, d: &DimVector) -> Result<u64> {
        let (dim_r, _) = self.quiver.ambient_dims(d)?;
        match checked_pow(u64::from(self.q()), dim_r) {
            Some(n) if n <= self.enum_cap => Ok(n),
            _ => Err(Error::cap("q^dim R_d", self.enum_cap)),
        }
    }

    /// The point with the given index in row-major lexicographic order.
    pub fn rep_at(&self, d: &DimVector, index: u64) -> FqRep {
        let q = u64::from(self.q());
        let mut rep = FqRep::zero(self.quiver, self.q(), d);
        let mut rest = index;
        for m in rep.mats.iter_mut().rev() {
            for x in m.data.iter_mut().rev() {
                *x = (rest % q) as Elem;
                rest /= q;
            }
        }
        rep
    }

    /// Every point of `R_d(F_q)` once, in row-major lexicographic order.
    pub fn enumerate_reps(&self, d: &DimVector) -> Result<Vec<FqRep>> {
        let n = self.rep_count(d)?;
        Ok((0..n).map(|i| self.rep_at(d, i)).collect())
    }

    /// Points of `R_d(F_q)` satisfying `pred`, evaluated over disjoint index
    /// ranges in parallel.
    pub fn filter_reps<F>(&self, d: &DimVector, pred: F) -> Result<FamilySet>
    where
        F: Fn(&FqRep) -> Result<bool> + Sync,
    {
        let n = self.rep_count(d)?;
        let found: Result<Vec<Vec<u8>>> = (0..n)
            .into_par_iter()
            .filter_map(|i| {
                let x = self.rep_at(d, i);
                match pred(&x) {
                    Ok(true) => Some(Ok(x.encode())),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .collect();
        Ok(FamilySet {
            q: self.q(),
            dim: d.clone(),
            members: found?.into_iter().collect(),
        })
    }

    pub fn full_space(&self, d: &DimVector) -> Result<FamilySet> {
        self.filter_reps(d, |_| Ok(true))
    }

    /// Does `x` admit a composition series of type `word`?
    pub fn has_comp_series(&self, x: &FqRep, word: &Word) -> Result<bool> {
        self.check_rep(x)?;
        if word.degree(self.quiver) != x.dim {
            return Err(Error::DegreeMismatch(format!(
                "word {} does not have degree {}",
                word.display(self.quiver),
                self.quiver.display_dim(&x.dim)
            )));
        }
        Ok(self.series(x, word.letters()))
    }

    fn series(&self, x: &FqRep, word: &[Vertex]) -> bool {
        let Some((&top, rest)) = word.split_first() else {
            return x.dim.is_zero();
        };
        let f = &self.flag_field;
        let n = x.dim.get(top) as usize;
        // Functionals on X_top killing the images of all arrows into `top`.
        let mut images = Vec::new();
        for (m, &(_, h)) in x.mats.iter().zip(self.quiver.arrows()) {
            if h == top {
                images.push(m);
            }
        }
        let width: usize = images.iter().map(|m| m.cols).sum();
        let mut joined = Mat::zeros(n, width);
        let mut offset = 0;
        for m in images {
            for r in 0..n {
                for c in 0..m.cols {
                    joined.set(r, offset + c, m.get(r, c));
                }
            }
            offset += m.cols;
        }
        let functionals = projective_points(f, &joined.left_null_space(f), n);
        functionals
            .iter()
            .any(|phi| self.series(&self.restrict(x, top, phi), rest))
    }

    /// The subrepresentation equal to `x` except at `top`, where it is
    /// `ker φ` with basis `e_m − φ_m e_p` for `m ≠ p`, `p` the pivot of `φ`.
    fn restrict(&self, x: &FqRep, top: Vertex, phi: &[Elem]) -> FqRep {
        let f = &self.flag_field;
        let p = phi
            .iter()
            .position(|&c| c != 0)
            .expect("nonzero functional");
        let keep: Vec<usize> = (0..phi.len()).filter(|&m| m != p).collect();
        let mut coords = x.dim.coords().to_vec();
        coords[top] -= 1;
        let dim = DimVector::from_vec(coords).expect("smaller vector");
        let mats = x
            .mats
            .iter()
            .zip(self.quiver.arrows())
            .map(|(m, &(t, h))| {
                if h == top {
                    let mut out = Mat::zeros(keep.len(), m.cols);
                    for (r, &src) in keep.iter().enumerate() {
                        for c in 0..m.cols {
                            out.set(r, c, m.get(src, c));
                        }
                    }
                    out
                } else if t == top {
                    let mut out = Mat::zeros(m.rows, keep.len());
                    for r in 0..m.rows {
                        for (c, &src) in keep.iter().enumerate() {
                            let v = f.sub(m.get(r, src), f.mul(phi[src], m.get(r, p)));
                            out.set(r, c, v);
                        }
                    }
                    out
                } else {
                    m.clone()
                }
            })
            .collect();
        FqRep { q: x.q, dim, mats }
    }

    /// `E_ω(F_q)`.
    pub fn variety_points(&self, word: &Word) -> Result<FamilySet> {
        let d = word.degree(self.quiver);
        self.filter_reps(&d, |x| Ok(self.series(x, word.letters())))
    }

    /// `dim Hom(X, Y)`: solutions of `f_h X_α = Y_α f_t` for every arrow.
    pub fn hom_dim(&self, x: &FqRep, y: &FqRep) -> Result<u64> {
        self.check_rep(x)?;
        self.check_rep(y)?;
        let f = &self.field;
        let n = self.quiver.vertex_count();
        let (dx, dy) = (&x.dim, &y.dim);
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + (dy.get(v) * dx.get(v)) as usize;
        }
        let unknowns = offset[n];
        let var = |v: Vertex, r: usize, c: usize| offset[v] + r * dx.get(v) as usize + c;
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for (a, &(t, h)) in self.quiver.arrows().iter().enumerate() {
            let (xa, ya) = (&x.mats[a], &y.mats[a]);
            for r in 0..dy.get(h) as usize {
                for c in 0..dx.get(t) as usize {
                    let mut eq = vec![0 as Elem; unknowns];
                    for k in 0..dx.get(h) as usize {
                        let i = var(h, r, k);
                        eq[i] = f.add(eq[i], xa.get(k, c));
                    }
                    for k in 0..dy.get(t) as usize {
                        let i = var(t, k, c);
                        eq[i] = f.sub(eq[i], ya.get(r, k));
                    }
                    rows.push(eq);
                }
            }
        }
        let rank = Mat::from_rows(&rows, unknowns).rank(f);
        Ok((unknowns - rank) as u64)
    }

    pub fn end_dim(&self, x: &FqRep) -> Result<u64> {
        self.hom_dim(x, x)
    }

    /// `dim Ext¹(X, Y) = dim Hom(X, Y) − ⟨dim X, dim Y⟩`.
    pub fn ext_dim(&self, x: &FqRep, y: &FqRep) -> Result<u64> {
        let hom = i64::try_from(self.hom_dim(x, y)?)
            .map_err(|_| Error::ArithmeticOverflow("hom dimension"))?;
        let value = hom - self.quiver.euler_form(&x.dim, &y.dim)?;
        u64::try_from(value).map_err(|_| {
            Error::Mismatch(format!(
                "negative ext dimension {value}: hom computation is broken"
            ))
        })
    }

    /// `dim G_d − dim End(X)`.
    pub fn orbit_dim(&self, x: &FqRep) -> Result<u64> {
        let (_, dim_g) = self.quiver.ambient_dims(&x.dim)?;
        Ok(dim_g - self.end_dim(x)?)
    }

    /// `|G_d(F_q)| = Π_v |GL_{d_v}(F_q)|`, saturating.
    pub fn group_order(&self, d: &DimVector) -> u64 {
        let q = u128::from(self.q());
        let mut order: u128 = 1;
        for &n in d.coords() {
            let qn = q.checked_pow(n).unwrap_or(u128::MAX);
            let mut qk: u128 = 1;
            for _ in 0..n {
                order = order.saturating_mul(qn.saturating_sub(qk));
                qk = qk.saturating_mul(q);
            }
        }
        u64::try_from(order).unwrap_or(u64::MAX)
    }

    fn general_linear(&self, n: usize) -> Vec<(Mat, Mat)> {
        let f = &self.field;
        let q = u64::from(self.q());
        let count = q.pow((n * n) as u32);
        (0..count)
            .filter_map(|index| {
                let mut m = Mat::zeros(n, n);
                let mut rest = index;
                for x in m.data.iter_mut().rev() {
                    *x = (rest % q) as Elem;
                    rest /= q;
                }
                m.inverse(f).map(|inv| (m, inv))
            })
            .collect()
    }

    /// All of `G_d(F_q)`, cached per dimension vector.
    pub fn group_elements(&self, d: &DimVector) -> Result<Arc<Vec<GroupElement>>> {
        if self.group_order(d) > self.group_cap {
            return Err(Error::cap("|G_d(F_q)|", self.group_cap));
        }
        if let Some(g) = self.groups.lock().expect("group cache").get(d) {
            return Ok(Arc::clone(g));
        }
        let mut elements = vec![GroupElement {
            g: Vec::new(),
            inv: Vec::new(),
        }];
        for &n in d.coords() {
            let factor = self.general_linear(n as usize);
            let mut next = Vec::with_capacity(elements.len() * factor.len());
            for e in &elements {
                for (m, inv) in &factor {
                    let mut g = e.g.clone();
                    g.push(m.clone());
                    let mut gi = e.inv.clone();
                    gi.push(inv.clone());
                    next.push(GroupElement { g, inv: gi });
                }
            }
            elements = next;
        }
        let elements = Arc::new(elements);
        self.groups
            .lock()
            .expect("group cache")
            .insert(d.clone(), Arc::clone(&elements));
        Ok(elements)
    }

    /// `(g·X)_α = g_h X_α g_t^{-1}`.
    pub fn act(&self, g: &GroupElement, x: &FqRep) -> FqRep {
        let f = &self.field;
        let mats = x
            .mats
            .iter()
            .zip(self.quiver.arrows())
            .map(|(m, &(t, h))| g.g[h].mul(f, m).mul(f, &g.inv[t]))
            .collect();
        FqRep {
            q: x.q,
            dim: x.dim.clone(),
            mats,
        }
    }

    /// The `G_d(F_q)`-orbit of `x` as encodings.
    pub fn orbit(&self, x: &FqRep) -> Result<BTreeSet<Vec<u8>>> {
        self.check_rep(x)?;
        let group = self.group_elements(&x.dim)?;
        Ok(group
            .par_iter()
            .map(|g| self.act(g, x).encode())
            .collect::<Vec<_>>()
            .into_iter()
            .collect())
    }

    /// Lexicographically least orbit member, memoized for every member of
    /// each orbit computed.
    pub fn canonical_rep(&self, x: &FqRep) -> Result<FqRep> {
        let key = x.encode();
        if let Some(c) = self.canon.lock().expect("canon cache").get(&key) {
            return FqRep::decode(self.quiver, c);
        }
        let orbit = self.orbit(x)?;
        let least = orbit.iter().next().expect("orbit contains x").clone();
        let mut cache = self.canon.lock().expect("canon cache");
        for member in orbit {
            cache.insert(member, least.clone());
        }
        drop(cache);
        FqRep::decode(self.quiver, &least)
    }

    pub fn isomorphic(&self, x: &FqRep, y: &FqRep) -> Result<bool> {
        if x.dim != y.dim {
            return Ok(false);
        }
        Ok(self.canonical_rep(x)? == self.canonical_rep(y)?)
    }

    /// Is the family closed under `G_d(F_q)`?
    pub fn is_group_stable(&self, set: &FamilySet) -> Result<bool> {
        let group = self.group_elements(&set.dim)?;
        let reps = set.reps(self.quiver);
        Ok(reps.par_iter().all(|x| {
            group
                .iter()
                .all(|g| set.members.contains(&self.act(g, x).encode()))
        }))
    }

    fn max_orbit_dim(&self, set: &FamilySet) -> Result<Option<u64>> {
        let dims: Result<Vec<u64>> = set
            .reps(self.quiver)
            .par_iter()
            .map(|x| self.orbit_dim(x))
            .collect();
        Ok(dims?.into_iter().max())
    }

    /// `(lower, exact)` for `dim E_ω`: the largest orbit dimension among
    /// its points; exact when the quiver is flagged representation-finite.
    pub fn variety_dim(&self, word: &Word) -> Result<(u64, Option<u64>)> {
        let set = self.variety_points(word)?;
        let lower = self
            .max_orbit_dim(&set)?
            .expect("E_ω contains the semisimple point");
        Ok((lower, self.dynkin.then_some(lower)))
    }

    /// `dim R_d − dim E_ω` from [`Oracle::variety_dim`]: an upper bound in
    /// general, exact when flagged representation-finite.
    pub fn codim(&self, word: &Word) -> Result<(u64, Option<u64>)> {
        let (dim_r, _) = self.quiver.ambient_dims(&word.degree(self.quiver))?;
        let (lower, exact) = self.variety_dim(word)?;
        Ok((dim_r - lower, exact.map(|e| dim_r - e)))
    }

    /// A point of maximal orbit dimension; errors if two such points are
    /// not isomorphic.
    pub fn top_orbit(&self, set: &FamilySet) -> Result<FqRep> {
        let reps = set.reps(self.quiver);
        let dims: Result<Vec<u64>> = reps.par_iter().map(|x| self.orbit_dim(x)).collect();
        let dims = dims?;
        let best = *dims
            .iter()
            .max()
            .ok_or(Error::Mismatch("empty family".into()))?;
        let mut tops = reps
            .iter()
            .zip(&dims)
            .filter(|(_, &d)| d == best)
            .map(|(x, _)| x);
        let first = tops.next().expect("maximum is attained").clone();
        let orbit = self.orbit(&first)?;
        if tops.any(|x| !orbit.contains(&x.encode())) {
            return Err(Error::AmbiguousTop);
        }
        Ok(first)
    }

    /// Equality of `E_ω` and `E_ω'` for a representation-finite quiver,
    /// decided by both the top orbits and the point sets.
    pub fn dynkin_equal(&self, a: &Word, b: &Word) -> Result<bool> {
        if !self.dynkin {
            return Err(Error::NotDynkin);
        }
        let da = a.degree(self.quiver);
        if da != b.degree(self.quiver) {
            return Err(Error::DegreeMismatch(format!(
                "{} and {} have different degrees",
                a.display(self.quiver),
                b.display(self.quiver)
            )));
        }
        let sa = self.variety_points(a)?;
        let sb = self.variety_points(b)?;
        let ta = self.top_orbit(&sa)?;
        let tb = self.top_orbit(&sb)?;
        let by_orbit = self.isomorphic(&ta, &tb)?;
        let by_points = sa == sb;
        if by_orbit != by_points {
            return Err(Error::Mismatch(format!(
                "top orbits {} but point sets {} for {} and {}",
                if by_orbit { "agree" } else { "differ" },
                if by_points { "agree" } else { "differ" },
                a.display(self.quiver),
                b.display(self.quiver)
            )));
        }
        Ok(by_orbit)
    }

    /// `R_d(F_q)` minus every `E_ω(F_q)` that is a proper subset.
    pub fn s_d_points(&self, d: &DimVector) -> Result<FamilySet> {
        let full = self.full_space(d)?;
        let mut covered = FamilySet::empty(self.q(), d.clone());
        for w in words_of_degree(self.quiver, d, self.word_cap)? {
            let set = self.variety_points(&w)?;
            if set.len() < full.len() {
                covered = covered.union(&set)?;
            }
        }
        full.difference(&covered)
    }

    /// `min dim Hom(B, A)` over `A ∈ sa`, `B ∈ sb`.
    pub fn family_hom(&self, sb: &FamilySet, sa: &FamilySet) -> Result<u64> {
        let pairs = (sa.len() as u64).saturating_mul(sb.len() as u64);
        if pairs > self.enum_cap {
            return Err(Error::cap("number of representation pairs", self.enum_cap));
        }
        let ra = sa.reps(self.quiver);
        let rb = sb.reps(self.quiver);
        let mins: Result<Vec<u64>> = rb
            .par_iter()
            .map(|b| {
                let mut best = u64::MAX;
                for a in &ra {
                    best = best.min(self.hom_dim(b, a)?);
                    if best == 0 {
                        break;
                    }
                }
                Ok(best)
            })
            .collect();
        mins?
            .into_iter()
            .min()
            .ok_or(Error::Mismatch("empty family".into()))
    }

    /// `min dim Ext¹(B, A)` over `A ∈ R_d(F_q)`, `B ∈ R_e(F_q)`.
    pub fn generic_ext_oracle(&self, e: &DimVector, d: &DimVector) -> Result<u64> {
        let count_e = self.rep_count(e)?;
        let count_d = self.rep_count(d)?;
        if count_e.saturating_mul(count_d) > self.enum_cap {
            return Err(Error::cap("number of representation pairs", self.enum_cap));
        }
        let hom = self.family_hom(&self.full_space(e)?, &self.full_space(d)?)?;
        let value = i64::try_from(hom).map_err(|_| Error::ArithmeticOverflow("hom dimension"))?
            - self.quiver.euler_form(e, d)?;
        u64::try_from(value).map_err(|_| Error::Mismatch(format!("negative ext dimension {value}")))
    }
}

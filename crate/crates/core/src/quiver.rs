//! Quivers, dimension vectors and the Euler form.
//!
//! A [`Quiver`] is validated on construction: no loops, no oriented cycles,
//! unique vertex names. Parallel arrows are stored as repeated pairs so every
//! arrow-indexed structure (matrix tuples, zero patterns) has one slot per
//! arrow. The admissible vertex order is computed once and cached; all
//! orderings used elsewhere in the crate derive from it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Largest admissible entry of a dimension vector.
pub const MAX_ENTRY: u32 = 1_000_000;

/// Index of a vertex in the quiver's input vertex list.
pub type Vertex = usize;

/// A nonnegative integer vector indexed by vertex (input order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The unit vector `σ_i`.
    pub fn unit(n: usize, i: Vertex) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn from_vec(coords: Vec<u32>) -> Result<Self> {
        if let Some(&x) = coords.iter().find(|&&x| x > MAX_ENTRY) {
            return Err(Error::PreconditionViolated(format!(
                "dimension vector entry {x} exceeds {MAX_ENTRY}"
            )));
        }
        Ok(DimVector(coords))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: Vertex) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn scale(&self, k: u32) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub(crate) fn set(&mut self, i: Vertex, value: u32) {
        self.0[i] = value;
    }

    /// Every `e ≤ self`, in no particular order.
    pub fn subvectors(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector(vec![0; self.len()])];
        for (i, &bound) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for v in &out {
                for x in 0..=bound {
                    let mut w = v.clone();
                    w.0[i] = x;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

/// A total order on vertices in which every arrow points upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<Vertex>,
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn sequence(&self) -> &[Vertex] {
        &self.sequence
    }

    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
}

/// A finite quiver without loops or oriented cycles.
#[derive(Clone, Debug)]
pub struct Quiver {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    arrows: Vec<(Vertex, Vertex)>,
    order: VertexOrder,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds and validates a quiver from vertex names and `(tail, head)` pairs.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut resolved = Vec::with_capacity(arrows.len());
        for (t, h) in arrows {
            let (t, h) = (t.as_ref(), h.as_ref());
            let ti = *index
                .get(t)
                .ok_or_else(|| Error::UnknownVertex(t.to_string()))?;
            let hi = *index
                .get(h)
                .ok_or_else(|| Error::UnknownVertex(h.to_string()))?;
            if ti == hi {
                return Err(Error::LoopArrow(t.to_string()));
            }
            resolved.push((ti, hi));
        }
        let order = topological_order(&names, &resolved)?;
        Ok(Quiver {
            names,
            index,
            arrows: resolved,
            order,
        })
    }

    /// Parses the JSON quiver document `{"vertices": [...], "arrows": [[t, h], ...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: QuiverDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        let arrows: Vec<(&str, &str)> = doc
            .arrows
            .iter()
            .map(|(t, h)| (t.as_str(), h.as_str()))
            .collect();
        let vertices: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        Quiver::new(&vertices, &arrows)
    }

    pub fn to_json(&self) -> String {
        let doc = QuiverDoc {
            vertices: self.names.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(t, h)| (self.names[t].clone(), self.names[h].clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("quiver document serializes")
    }

    /// The `n`-Kronecker quiver `1 ⇉ 2` with `n` parallel arrows.
    pub fn kronecker(n: usize) -> Self {
        let arrows = vec![("1", "2"); n];
        Quiver::new(&["1", "2"], &arrows).expect("valid quiver")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arrows(&self) -> &[(Vertex, Vertex)] {
        &self.arrows
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Number of arrows `from → to`.
    pub fn arrow_count(&self, from: Vertex, to: Vertex) -> usize {
        self.arrows.iter().filter(|&&a| a == (from, to)).count()
    }

    /// Topological order of the vertices, ties broken by input position.
    pub fn admissible_order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn zero(&self) -> DimVector {
        DimVector::zero(self.vertex_count())
    }

    pub fn unit(&self, v: Vertex) -> DimVector {
        DimVector::unit(self.vertex_count(), v)
    }

    /// Builds a dimension vector from coordinates listed in admissible order.
    pub fn dim_from_display(&self, coords: &[u32]) -> Result<DimVector> {
        if coords.len() != self.vertex_count() {
            return Err(Error::DegreeMismatch(format!(
                "expected {} coordinates, got {}",
                self.vertex_count(),
                coords.len()
            )));
        }
        let mut v = vec![0; coords.len()];
        for (&vertex, &x) in self.order.sequence.iter().zip(coords) {
            v[vertex] = x;
        }
        DimVector::from_vec(v)
    }

    /// Coordinates of `d` listed in admissible order.
    pub fn dim_to_display(&self, d: &DimVector) -> Vec<u32> {
        self.order.sequence.iter().map(|&v| d.get(v)).collect()
    }

    /// Parses the JSON object form `{"vertex": n, ...}`; missing vertices are 0.
    pub fn dim_from_json(&self, value: &Value) -> Result<DimVector> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::MalformedSpec("dimension vector must be an object".into()))?;
        let mut d = self.zero();
        for (name, x) in obj {
            let v = self.vertex(name)?;
            let x = x
                .as_u64()
                .filter(|&x| x <= u64::from(MAX_ENTRY))
                .ok_or_else(|| {
                    Error::MalformedSpec(format!("entry for {name:?} must be in 0..={MAX_ENTRY}"))
                })?;
            d.set(v, x as u32);
        }
        Ok(d)
    }

    pub fn dim_to_json(&self, d: &DimVector) -> Value {
        let map = self
            .order
            .sequence
            .iter()
            .filter(|&&v| d.get(v) != 0)
            .map(|&v| (self.names[v].clone(), Value::from(d.get(v))))
            .collect();
        Value::Object(map)
    }

    /// Human-readable form, e.g. `(1,2,1)` in admissible order.
    pub fn display_dim(&self, d: &DimVector) -> String {
        let parts: Vec<String> = self
            .dim_to_display(d)
            .iter()
            .map(|x| x.to_string())
            .collect();
        format!("({})", parts.join(","))
    }

    /// The Euler form `⟨d,e⟩ = Σ d_i e_i − Σ_{i→j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        const WHAT: &str = "the Euler form";
        let mut acc: i64 = 0;
        for (a, b) in d.coords().iter().zip(e.coords()) {
            let p = i64::from(*a)
                .checked_mul(i64::from(*b))
                .ok_or(Error::ArithmeticOverflow(WHAT))?;
            acc = acc.checked_add(p).ok_or(Error::ArithmeticOverflow(WHAT))?;
        }
        for &(t, h) in &self.arrows {
            let p = i64::from(d.get(t))
                .checked_mul(i64::from(e.get(h)))
                .ok_or(Error::ArithmeticOverflow(WHAT))?;
            acc = acc.checked_sub(p).ok_or(Error::ArithmeticOverflow(WHAT))?;
        }
        Ok(acc)
    }

    /// `⟨d,e⟩ + ⟨e,d⟩`.
    pub fn symmetrized_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.euler_form(d, e)?
            .checked_add(self.euler_form(e, d)?)
            .ok_or(Error::ArithmeticOverflow("the symmetrized form"))
    }

    /// `(dim R_d, dim G_d)`.
    pub fn ambient_dims(&self, d: &DimVector) -> Result<(u64, u64)> {
        let mut dim_r: u64 = 0;
        for &(t, h) in &self.arrows {
            let p = u64::from(d.get(t)) * u64::from(d.get(h));
            dim_r = dim_r
                .checked_add(p)
                .ok_or(Error::ArithmeticOverflow("dim R_d"))?;
        }
        let mut dim_g: u64 = 0;
        for &x in d.coords() {
            dim_g = dim_g
                .checked_add(u64::from(x) * u64::from(x))
                .ok_or(Error::ArithmeticOverflow("dim G_d"))?;
        }
        Ok((dim_r, dim_g))
    }

    /// Graded lexicographic order on dimension vectors: first by total, then
    /// by the sorted word `σ_{v1}^{d_{v1}} σ_{v2}^{d_{v2}} …` in admissible
    /// order. In particular `σ_{v1} < σ_{v2} < …`.
    pub fn cmp_grlex(&self, a: &DimVector, b: &DimVector) -> Ordering {
        a.total().cmp(&b.total()).then_with(|| {
            for &v in &self.order.sequence {
                match a.get(v).cmp(&b.get(v)) {
                    Ordering::Equal => continue,
                    other => return other.reverse(),
                }
            }
            Ordering::Equal
        })
    }

    /// Every `e ≤ d` sorted by [`Quiver::cmp_grlex`].
    pub fn subvectors_grlex(&self, d: &DimVector) -> Vec<DimVector> {
        let mut subs = d.subvectors();
        subs.sort_by(|a, b| self.cmp_grlex(a, b));
        subs
    }

    /// All dimension vectors with the given total, sorted by [`Quiver::cmp_grlex`].
    pub fn vectors_with_total(&self, total: u32) -> Vec<DimVector> {
        fn fill(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
            if i + 1 == n {
                cur[i] = left;
                out.push(DimVector(cur.clone()));
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                fill(n, i + 1, left - x, cur, out);
            }
        }
        let n = self.vertex_count();
        if n == 0 {
            return if total == 0 {
                vec![DimVector(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        fill(n, 0, total, &mut vec![0; n], &mut out);
        out.sort_by(|a, b| self.cmp_grlex(a, b));
        out
    }

    /// True if the support of `d` is connected in the underlying graph.
    pub fn support_connected(&self, d: &DimVector) -> bool {
        let support: Vec<Vertex> = (0..self.vertex_count()).filter(|&v| d.get(v) > 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(t, h) in &self.arrows {
                let next = if t == v {
                    h
                } else if h == v {
                    t
                } else {
                    continue;
                };
                if d.get(next) > 0 && !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        support.iter().all(|&v| seen[v])
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

fn topological_order(names: &[String], arrows: &[(Vertex, Vertex)]) -> Result<VertexOrder> {
    let n = names.len();
    let mut indegree = vec![0usize; n];
    for &(_, h) in arrows {
        indegree[h] += 1;
    }
    let mut placed = vec![false; n];
    let mut sequence = Vec::with_capacity(n);
    while sequence.len() < n {
        // Kahn's algorithm; the lowest input position wins among sources.
        let Some(next) = (0..n).find(|&v| !placed[v] && indegree[v] == 0) else {
            return Err(Error::OrientedCycle(find_cycle(names, arrows, &placed)));
        };
        placed[next] = true;
        sequence.push(next);
        for &(t, h) in arrows {
            if t == next {
                indegree[h] -= 1;
            }
        }
    }
    let mut rank = vec![0; n];
    for (pos, &v) in sequence.iter().enumerate() {
        rank[v] = pos;
    }
    Ok(VertexOrder { sequence, rank })
}

/// Every unplaced vertex has an incoming arrow from another unplaced vertex,
/// so walking backwards along such arrows must revisit a vertex.
fn find_cycle(names: &[String], arrows: &[(Vertex, Vertex)], placed: &[bool]) -> Vec<String> {
    let start = placed
        .iter()
        .position(|&p| !p)
        .expect("some vertex unplaced");
    let mut path = vec![start];
    let mut current = start;
    loop {
        let pred = arrows
            .iter()
            .find(|&&(t, h)| h == current && !placed[t])
            .map(|&(t, _)| t)
            .expect("unplaced vertex has an unplaced predecessor");
        if let Some(pos) = path.iter().position(|&v| v == pred) {
            let mut cycle: Vec<String> = path[pos..].iter().map(|&v| names[v].clone()).collect();
            cycle.reverse();
            return cycle;
        }
        path.push(pred);
        current = pred;
    }
}

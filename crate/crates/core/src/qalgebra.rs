//! The free algebra over `ℚ[q]` on generators `E_i`, the quantum Serre
//! relations, their `q = 0` degeneration, and graded ideal components.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Vertex};
use crate::word::{words_of_degree, Word};

/// A polynomial in `q` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigRational::from_integer(BigInt::from(c))])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `c·q^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::from_integer(BigInt::from(c));
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The constant polynomial, if this is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.coeffs.len() <= 1).then(|| self.constant_term())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        QPoly::from_coeffs(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                coeffs[a + b] += x * y;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let dd = divisor.degree().ok_or(Error::NonPolynomialDivision)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            if !c.is_zero() {
                for (k, dc) in divisor.coeffs.iter().enumerate() {
                    rem[top - dd + k] -= &c * dc;
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonPolynomialDivision);
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Coefficients as strings, lowest degree first.
    pub fn to_json(&self) -> Value {
        json!(self
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>())
    }
}

fn fmt_monomial(c: &BigRational, k: usize, first: bool, out: &mut String) {
    let negative = c.is_negative();
    let abs = c.abs();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push(if negative { '-' } else { '+' });
    }
    let unit = abs.is_one();
    if !unit || k == 0 {
        if abs.is_integer() {
            out.push_str(&abs.to_string());
        } else {
            out.push_str(&format!("({abs})"));
        }
    }
    match k {
        0 => {}
        1 => out.push('q'),
        _ => out.push_str(&format!("q^{k}")),
    }
}

impl fmt::Display for QPoly {
    /// Highest degree first, no spaces: `q^2+q+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_monomial(c, k, first, &mut out);
            first = false;
        }
        write!(f, "{out}")
    }
}

/// `[M]! = (q − 1)(q² − 1)…(q^M − 1)`.
pub fn q_factorial(m: usize) -> QPoly {
    (1..=m).fold(QPoly::one(), |acc, k| {
        acc.mul(&QPoly::monomial(1, k).sub(&QPoly::one()))
    })
}

/// `[M+N over M] = [M+N]! / ([M]! [N]!)`.
pub fn q_binomial(m: usize, n: usize) -> Result<QPoly> {
    q_factorial(m + n).div_exact(&q_factorial(m).mul(&q_factorial(n)))
}

/// A noncommutative polynomial: words in the generators with `QPoly`
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<Word, QPoly>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn monomial(word: Word) -> Self {
        Self::term(word, QPoly::one())
    }

    pub fn term(word: Word, coeff: QPoly) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: QPoly) {
        let sum = match self.terms.remove(&word) {
            Some(c) => c.add(&coeff),
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(word, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Option<&QPoly> {
        self.terms.get(word)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&QPoly::constant(-1)))
    }

    /// Concatenation-bilinear product.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x.mul(y));
            }
        }
        out
    }

    /// The common degree of all terms; `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self, quiver: &Quiver) -> Option<DimVector> {
        let mut degrees = self.terms.keys().map(|w| w.degree(quiver));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Every coefficient replaced by its constant term.
    pub fn specialize_q0(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), QPoly::from_coeffs(vec![c.constant_term()]));
        }
        out
    }

    /// Plain-text rendering, e.g. `E_i^2 E_j - (q+1) E_i E_j E_i + q^2 E_j E_i^2`.
    /// Terms are listed in lexicographic order of admissible ranks.
    pub fn render(&self, quiver: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let order = quiver.admissible_order();
        let mut terms: Vec<(&Word, &QPoly)> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| {
            w.letters()
                .iter()
                .map(|&v| order.rank(v))
                .collect::<Vec<_>>()
        });
        let mut out = String::new();
        for (idx, (w, c)) in terms.into_iter().enumerate() {
            let lead_negative = c.coeffs().last().is_some_and(Signed::is_negative);
            let c = if lead_negative { c.neg() } else { c.clone() };
            if idx == 0 {
                if lead_negative {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if lead_negative { " - " } else { " + " });
            }
            let text = c.to_string();
            if c.as_constant().is_some() || c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1
            {
                if text != "1" {
                    out.push_str(&text);
                    out.push(' ');
                }
            } else {
                out.push_str(&format!("({text}) "));
            }
            out.push_str(&render_word(quiver, w));
        }
        out
    }

    /// `{"terms": [{"word": [...], "coeff": [...]}, ...]}`
    pub fn to_json(&self, quiver: &Quiver) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let names: Vec<&str> = w.letters().iter().map(|&v| quiver.name(v)).collect();
                json!({ "word": names, "coeff": c.to_json() })
            })
            .collect();
        json!({ "terms": terms })
    }
}

fn render_word(quiver: &Quiver, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut k = 0;
    while k < letters.len() {
        let mut run = 1;
        while k + run < letters.len() && letters[k + run] == letters[k] {
            run += 1;
        }
        let name = quiver.name(letters[k]);
        parts.push(if run == 1 {
            format!("E_{name}")
        } else {
            format!("E_{name}^{run}")
        });
        k += run;
    }
    parts.join(" ")
}

fn power_word(parts: &[(Vertex, usize)]) -> Word {
    let mut letters = Vec::new();
    for &(v, n) in parts {
        letters.extend(std::iter::repeat_n(v, n));
    }
    Word::new(letters)
}

/// The two Serre relations for the ordered pair `(i, j)`, of degrees
/// `(n+1)σ_i + σ_j` and `σ_i + (n+1)σ_j` with `n = #{i → j}`.
pub fn serre_relations(quiver: &Quiver, i: Vertex, j: Vertex) -> Result<(NCPoly, NCPoly)> {
    if i == j {
        return Err(Error::PreconditionViolated(
            "Serre relations need two distinct vertices".into(),
        ));
    }
    if quiver.arrow_count(j, i) > 0 {
        return Err(Error::PreconditionViolated(format!(
            "there is an arrow {} -> {}",
            quiver.name(j),
            quiver.name(i)
        )));
    }
    let n = quiver.arrow_count(i, j);
    let mut first = NCPoly::zero();
    let mut second = NCPoly::zero();
    for p in 0..=n + 1 {
        let pp = n + 1 - p;
        let binom = q_binomial(p, pp)?;
        let sign1 = if pp.is_multiple_of(2) { 1 } else { -1 };
        first.add_term(
            power_word(&[(i, p), (j, 1), (i, pp)]),
            QPoly::monomial(sign1, pp * pp.saturating_sub(1)).mul(&binom),
        );
        let sign2 = if p % 2 == 0 { 1 } else { -1 };
        second.add_term(
            power_word(&[(j, p), (i, 1), (j, pp)]),
            QPoly::monomial(sign2, p * p.saturating_sub(1)).mul(&binom),
        );
    }
    Ok((first, second))
}

pub fn specialize_q0(x: &NCPoly) -> NCPoly {
    x.specialize_q0()
}

/// Defining relations of `U⁺₀(Q)`: both specialized Serre relations for
/// every ordered pair of distinct vertices with no arrow `j → i`.
pub fn u0_relations(quiver: &Quiver) -> Vec<NCPoly> {
    let mut out = Vec::new();
    let order = quiver.admissible_order().sequence();
    for &i in order {
        for &j in order {
            if i != j && quiver.arrow_count(j, i) == 0 {
                let (a, b) = serre_relations(quiver, i, j).expect("precondition checked");
                for r in [a.specialize_q0(), b.specialize_q0()] {
                    if !r.is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// The degree-`d` component of a two-sided ideal, as a reduced basis.
#[derive(Clone, Debug)]
pub struct IdealComponent {
    pub words: Vec<Word>,
    /// Reduced row echelon rows over `words`.
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl IdealComponent {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<NCPoly> {
        self.rows
            .iter()
            .map(|row| {
                let mut p = NCPoly::zero();
                for (w, c) in self.words.iter().zip(row) {
                    if !c.is_zero() {
                        p.add_term(w.clone(), QPoly::from_coeffs(vec![c.clone()]));
                    }
                }
                p
            })
            .collect()
    }

    fn vector(&self, x: &NCPoly) -> Result<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.words.len()];
        for (w, c) in x.terms() {
            let idx = self
                .words
                .binary_search(w)
                .map_err(|_| Error::DegreeMismatch("element has the wrong degree".into()))?;
            v[idx] = c.as_constant().ok_or_else(|| {
                Error::PreconditionViolated("coefficients must be free of q".into())
            })?;
        }
        Ok(v)
    }

    /// Is `x` in this component?
    pub fn contains(&self, x: &NCPoly) -> Result<bool> {
        let mut v = self.vector(x)?;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &c * b;
                }
            }
        }
        Ok(v.iter().all(Zero::is_zero))
    }
}

fn reduce_into(rows: &mut Vec<Vec<BigRational>>, pivots: &mut Vec<usize>, mut v: Vec<BigRational>) {
    for (row, &p) in rows.iter().zip(pivots.iter()) {
        if !v[p].is_zero() {
            let c = v[p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &c * b;
            }
        }
    }
    let Some(p) = v.iter().position(|c| !c.is_zero()) else {
        return;
    };
    let inv = v[p].recip();
    for a in v.iter_mut() {
        *a *= &inv;
    }
    for row in rows.iter_mut() {
        if !row[p].is_zero() {
            let c = row[p].clone();
            for (a, b) in row.iter_mut().zip(&v) {
                *a -= &c * b;
            }
        }
    }
    let at = pivots.partition_point(|&x| x < p);
    pivots.insert(at, p);
    rows.insert(at, v);
}

/// Span of `{m₁·r·m₂}` in degree `d` for homogeneous, `q`-free relations.
pub fn graded_ideal(
    quiver: &Quiver,
    relations: &[NCPoly],
    d: &DimVector,
    cap: u64,
) -> Result<IdealComponent> {
    let mut words = words_of_degree(quiver, d, cap)?;
    words.sort();
    let mut rows = Vec::new();
    let mut pivots = Vec::new();
    let mut component = IdealComponent {
        words: words.clone(),
        rows: Vec::new(),
        pivots: Vec::new(),
    };
    for r in relations {
        let rd = r.homogeneous_degree(quiver).ok_or_else(|| {
            Error::PreconditionViolated("relations must be nonzero and homogeneous".into())
        })?;
        if !rd.leq(d) {
            continue;
        }
        let len = rd.total() as usize;
        let mut seen: HashSet<(Word, Word)> = HashSet::new();
        for w in &words {
            let letters = w.letters();
            for s in 0..=letters.len() - len {
                let middle = Word::new(letters[s..s + len].to_vec());
                if middle.degree(quiver) != rd {
                    continue;
                }
                let m1 = Word::new(letters[..s].to_vec());
                let m2 = Word::new(letters[s + len..].to_vec());
                if !seen.insert((m1.clone(), m2.clone())) {
                    continue;
                }
                let x = NCPoly::monomial(m1).mul(r).mul(&NCPoly::monomial(m2));
                reduce_into(&mut rows, &mut pivots, component.vector(&x)?);
            }
        }
    }
    component.rows = rows;
    component.pivots = pivots;
    Ok(component)
}

/// Dimension and reduced basis of the ideal component in degree `d`.
pub fn graded_ideal_dim(
    quiver: &Quiver,
    relations: &[NCPoly],
    d: &DimVector,
    cap: u64,
) -> Result<(usize, Vec<NCPoly>)> {
    let c = graded_ideal(quiver, relations, d, cap)?;
    Ok((c.dim(), c.basis()))
}

/// Do the monomials `w1` and `w2` coincide in `U⁺₀(Q)`?
pub fn u0_monomials_equal(quiver: &Quiver, w1: &Word, w2: &Word, cap: u64) -> Result<bool> {
    let d = w1.degree(quiver);
    if d != w2.degree(quiver) {
        return Err(Error::DegreeMismatch(format!(
            "{} and {} have different degrees",
            w1.display(quiver),
            w2.display(quiver)
        )));
    }
    if w1 == w2 {
        return Ok(true);
    }
    let component = graded_ideal(quiver, &u0_relations(quiver), &d, cap)?;
    component.contains(&NCPoly::monomial(w1.clone()).sub(&NCPoly::monomial(w2.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new(&["i", "j"], &[("i", "j")]).unwrap()
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(q_binomial(1, 1).unwrap().to_string(), "q+1");
        assert_eq!(q_binomial(4, 0).unwrap(), QPoly::one());
        assert_eq!(q_binomial(2, 2).unwrap().to_string(), "q^4+q^3+2q^2+q+1");
        assert_eq!(q_factorial(2).to_string(), "q^3-q^2-q+1");
        let r = QPoly::monomial(1, 2).div_exact(&QPoly::monomial(1, 1).add(&QPoly::one()));
        assert_eq!(r, Err(Error::NonPolynomialDivision));
    }

    #[test]
    fn serre_small_cases() {
        let free = Quiver::new::<&str>(&["i", "j"], &[]).unwrap();
        let (a, b) = serre_relations(&free, 0, 1).unwrap();
        assert_eq!(a.render(&free), "E_i E_j - E_j E_i");
        assert_eq!(b, a);

        let q = a2();
        let (a, _) = serre_relations(&q, 0, 1).unwrap();
        assert_eq!(
            a.render(&q),
            "E_i^2 E_j - (q+1) E_i E_j E_i + q^2 E_j E_i^2"
        );
        assert_eq!(a.homogeneous_degree(&q).unwrap().coords(), &[2, 1]);
        assert_eq!(a.specialize_q0().render(&q), "E_i^2 E_j - E_i E_j E_i");
        assert!(matches!(
            serre_relations(&q, 1, 0),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(NCPoly::zero().specialize_q0().is_zero());
    }

    #[test]
    fn ideal_dimensions() {
        let q = a2();
        let rels = u0_relations(&q);
        let d = q.dim_from_display(&[2, 1]).unwrap();
        let (dim, basis) = graded_ideal_dim(&q, &rels, &d, 1000).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(basis.len(), 1);
        assert_eq!(graded_ideal_dim(&q, &rels, &q.unit(0), 1000).unwrap().0, 0);

        let k = Quiver::kronecker(2);
        let d = k.dim_from_display(&[2, 2]).unwrap();
        assert_eq!(
            graded_ideal_dim(&k, &u0_relations(&k), &d, 1000).unwrap().0,
            0
        );
    }

    #[test]
    fn monomial_equality() {
        let q = a2();
        let w = |s| Word::parse(&q, s).unwrap();
        assert!(u0_monomials_equal(&q, &w("iij"), &w("iji"), 1000).unwrap());
        assert!(!u0_monomials_equal(&q, &w("iij"), &w("jii"), 1000).unwrap());
        assert!(matches!(
            u0_monomials_equal(&q, &w("ij"), &w("ii"), 1000),
            Err(Error::DegreeMismatch(_))
        ));
        let k = Quiver::kronecker(2);
        let w = |s| Word::parse(&k, s).unwrap();
        assert!(!u0_monomials_equal(&k, &w("1212"), &w("1122"), 1000).unwrap());
        assert!(u0_monomials_equal(&k, &w("1212"), &w("1212"), 1000).unwrap());
    }
}

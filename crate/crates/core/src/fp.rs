//! Dense linear algebra over a small finite field `F_{p^m}`.

use crate::error::{Error, Result};

/// Field elements are indices below the field order; the prime subfield
/// is `0..p` with its usual arithmetic.
pub type Elem = u16;

/// The field `F_{p^m}` with `p^m <= 65536`, built from a primitive polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Option<Vec<Elem>>,
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

fn digits(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Field {
    /// The prime field `F_p`, `p < 256`.
    pub fn prime(p: u64) -> Result<Self> {
        Field::extension(p, 1)
    }

    /// `F_{p^m}` for a prime `p < 256`.
    pub fn extension(p: u64, m: u32) -> Result<Self> {
        if p > 255 || !is_prime(p) {
            return Err(Error::NonPrimeField(p));
        }
        let order = (p as u128)
            .checked_pow(m)
            .filter(|&o| m >= 1 && o <= 1 << 16);
        let Some(order) = order else {
            return Err(Error::PreconditionViolated(format!(
                "field of order {p}^{m} is out of range"
            )));
        };
        let (p, order) = (p as u32, order as u32);
        // x^m = -(f_0 + f_1 x + ... + f_{m-1} x^{m-1}); search for a primitive f
        for code in 0..order {
            let f = digits(code, p, m);
            if f[0] == 0 {
                continue;
            }
            let times_x = |a: &[u32]| -> Vec<u32> {
                let top = a[m as usize - 1];
                let mut out = vec![0; m as usize];
                out[1..].copy_from_slice(&a[..m as usize - 1]);
                for (o, &fk) in out.iter_mut().zip(&f) {
                    *o = (*o + (p - fk) * top) % p;
                }
                out
            };
            let mut exp = Vec::with_capacity(order as usize - 1);
            let mut cur = digits(1, p, m);
            let mut primitive = true;
            for k in 0..order - 1 {
                let v = undigits(&cur, p);
                if k > 0 && v == 1 {
                    primitive = false;
                    break;
                }
                exp.push(v as Elem);
                cur = times_x(&cur);
            }
            if !primitive || undigits(&cur, p) != 1 {
                continue;
            }
            let mut log = vec![0u32; order as usize];
            for (k, &v) in exp.iter().enumerate() {
                log[v as usize] = k as u32;
            }
            let doubled: Vec<Elem> = exp.iter().chain(&exp).copied().collect();
            let mut field = Field {
                p,
                degree: m,
                order,
                exp: doubled,
                log,
                add: None,
            };
            if m > 1 && order <= 256 {
                let mut table = vec![0; (order * order) as usize];
                for a in 0..order {
                    for b in 0..order {
                        table[(a * order + b) as usize] = field.add_digits(a as Elem, b as Elem);
                    }
                }
                field.add = Some(table);
            }
            return Ok(field);
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (p, m) = (self.p, self.degree);
        let s: Vec<u32> = digits(u32::from(a), p, m)
            .into_iter()
            .zip(digits(u32::from(b), p, m))
            .map(|(x, y)| (x + y) % p)
            .collect();
        undigits(&s, p) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.degree == 1 {
            return ((u32::from(a) + u32::from(b)) % self.p) as Elem;
        }
        match &self.add {
            Some(t) => t[(u32::from(a) * self.order + u32::from(b)) as usize],
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.degree == 1 {
            return ((self.p - u32::from(a)) % self.p) as Elem;
        }
        let ds: Vec<u32> = digits(u32::from(a), self.p, self.degree)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        undigits(&ds, self.p) as Elem
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        let l = self.log[a as usize];
        self.exp[((self.order - 1 - l) % (self.order - 1)) as usize]
    }
}

/// A row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, pr * self.cols + j);
            }
            let scale = f.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), scale);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().row_reduce(f).len()
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Basis of `{x : A x = 0}`.
    pub fn null_space(&self, f: &Field) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0 as Elem; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(r, fc));
                }
                x
            })
            .collect()
    }

    /// Basis of `{y : y A = 0}`.
    pub fn left_null_space(&self, f: &Field) -> Vec<Vec<Elem>> {
        self.transpose().null_space(f)
    }

    pub fn inverse(&self, f: &Field) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.row_reduce(f);
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Some(out)
    }

    pub fn determinant(&self, f: &Field) -> Elem {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1 as Elem;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(c * n + j, pr * n + j);
                }
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Representatives of the nonzero vectors of the span of `basis` up to
/// scalars: coefficient vectors whose first nonzero entry is 1.
pub fn projective_points(f: &Field, basis: &[Vec<Elem>], len: usize) -> Vec<Vec<Elem>> {
    let q = u64::from(f.order());
    let r = basis.len() as u32;
    let Some(total) = q.checked_pow(r) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for index in 1..total {
        let mut coeffs = vec![0 as Elem; basis.len()];
        let mut rest = index;
        for c in coeffs.iter_mut().rev() {
            *c = (rest % q) as Elem;
            rest /= q;
        }
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0 as Elem; len];
        for (c, b) in coeffs.iter().zip(basis) {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        out.push(v);
    }
    out
}

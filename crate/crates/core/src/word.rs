//! Words over the vertex alphabet as composition types.
//!
//! The word `(i_1 … i_s)` names the family `E_ω` of representations with a
//! composition series `X = X_0 ⊃ X_1 ⊃ … ⊃ X_s = 0` whose factor
//! `X_{k−1}/X_k` is the simple `E_{i_k}`; the first letter is the top factor.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Vertex};

/// Default cap on `|Ω_d|` for the order search.
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;
/// Default cap on the node count of a Hasse diagram.
pub const DEFAULT_HASSE_CAP: u64 = 10_000;

/// A finite sequence of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Vertex>);

impl Word {
    pub fn new(letters: Vec<Vertex>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Parses a word: comma- or whitespace-separated vertex names, or a
    /// contiguous string when every vertex name is a single character.
    /// Surrounding parentheses are ignored.
    pub fn parse(quiver: &Quiver, text: &str) -> Result<Word> {
        let text = text.trim();
        let text = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text)
            .trim();
        if text.is_empty() {
            return Ok(Word::default());
        }
        let separated = text.contains(',') || text.contains(char::is_whitespace);
        let single_chars = quiver.names().iter().all(|n| n.chars().count() == 1);
        let tokens: Vec<String> = if separated {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        } else if single_chars {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            vec![text.to_string()]
        };
        tokens
            .iter()
            .map(|t| quiver.vertex(t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> WordDisplay<'a> {
        WordDisplay { word: self, quiver }
    }

    /// The letter-count vector `|ω|`.
    pub fn degree(&self, quiver: &Quiver) -> DimVector {
        let mut counts = vec![0u32; quiver.vertex_count()];
        for &v in &self.0 {
            counts[v] += 1;
        }
        DimVector::from_vec(counts).expect("word length fits")
    }

    /// `v(k)`: the number of occurrences of `i_k` at positions `≥ k`.
    pub fn v_function(&self) -> Vec<u32> {
        let mut seen = std::collections::HashMap::new();
        let mut v = vec![0; self.len()];
        for (pos, &letter) in self.0.iter().enumerate().rev() {
            let count = seen.entry(letter).or_insert(0u32);
            *count += 1;
            v[pos] = *count;
        }
        v
    }

    /// Number of pairs `k < l` with `i_k` ranked above `i_l`.
    pub fn inversions(&self, quiver: &Quiver) -> usize {
        let order = quiver.admissible_order();
        let ranks: Vec<usize> = self.0.iter().map(|&v| order.rank(v)).collect();
        let mut count = 0;
        for k in 0..ranks.len() {
            for l in k + 1..ranks.len() {
                if ranks[k] > ranks[l] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The word of degree `d` with letters ascending in admissible order.
    pub fn sorted_of_degree(quiver: &Quiver, d: &DimVector) -> Word {
        let mut letters = Vec::new();
        for &v in quiver.admissible_order().sequence() {
            letters.extend(std::iter::repeat_n(v, d.get(v) as usize));
        }
        Word(letters)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    quiver: &'a Quiver,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.quiver.names().iter().all(|n| n.chars().count() == 1);
        let names: Vec<&str> = self.word.0.iter().map(|&v| self.quiver.name(v)).collect();
        if single {
            write!(f, "({})", names.concat())
        } else {
            write!(f, "({})", names.join(","))
        }
    }
}

/// Forced-zero layout of one arrow's matrix. Row `r` (0-based) stands for
/// v-value `r + 1` at the head, column `c` for v-value `c + 1` at the tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowPattern {
    pub tail: Vertex,
    pub head: Vertex,
    pub rows: usize,
    pub cols: usize,
    zeros: Vec<bool>,
}

impl ArrowPattern {
    pub fn is_forced_zero(&self, row: usize, col: usize) -> bool {
        self.zeros[row * self.cols + col]
    }

    pub fn forced_zero_count(&self) -> usize {
        self.zeros.iter().filter(|&&z| z).count()
    }

    /// Rows rendered as `*` (free) and `0` (forced zero).
    pub fn render(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| if self.is_forced_zero(r, c) { '0' } else { '*' })
                    .collect()
            })
            .collect()
    }
}

/// One [`ArrowPattern`] per arrow, in the quiver's arrow order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPattern {
    pub arrows: Vec<ArrowPattern>,
}

/// Forced zeros of the normal shape of `E_ω`: for each arrow `t → h` and
/// each pair `k < l` with `i_k = h` and `i_l = t`, entry `(v(k), v(l))`.
pub fn zero_pattern(quiver: &Quiver, word: &Word) -> ZeroPattern {
    let degree = word.degree(quiver);
    let v = word.v_function();
    let letters = word.letters();
    let arrows = quiver
        .arrows()
        .iter()
        .map(|&(tail, head)| {
            let rows = degree.get(head) as usize;
            let cols = degree.get(tail) as usize;
            let mut zeros = vec![false; rows * cols];
            for k in 0..letters.len() {
                if letters[k] != head {
                    continue;
                }
                for l in k + 1..letters.len() {
                    if letters[l] == tail {
                        let (r, c) = (v[k] as usize - 1, v[l] as usize - 1);
                        zeros[r * cols + c] = true;
                    }
                }
            }
            ArrowPattern {
                tail,
                head,
                rows,
                cols,
                zeros,
            }
        })
        .collect();
    ZeroPattern { arrows }
}

/// Multinomial count of words with the given degree, saturating.
pub fn word_count(d: &DimVector) -> u64 {
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for &c in d.coords() {
        for j in 1..=u128::from(c) {
            placed += 1;
            count = count * placed / j;
            if count > u128::from(u64::MAX) {
                return u64::MAX;
            }
        }
    }
    count as u64
}

/// All words of degree `d`, in lexicographic order of admissible ranks.
pub fn words_of_degree(quiver: &Quiver, d: &DimVector, cap: u64) -> Result<Vec<Word>> {
    if word_count(d) > cap {
        return Err(Error::cap("number of words of the given degree", cap));
    }
    fn extend(
        order: &[Vertex],
        left: &mut Vec<u32>,
        current: &mut Vec<Vertex>,
        remaining: usize,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            out.push(Word(current.clone()));
            return;
        }
        for &v in order {
            if left[v] > 0 {
                left[v] -= 1;
                current.push(v);
                extend(order, left, current, remaining - 1, out);
                current.pop();
                left[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut left = d.coords().to_vec();
    extend(
        quiver.admissible_order().sequence(),
        &mut left,
        &mut Vec::new(),
        d.total() as usize,
        &mut out,
    );
    Ok(out)
}

/// Words reachable from `word` by one swap `(i j) → (j i)` with `i < j`.
fn swaps(quiver: &Quiver, word: &Word) -> Vec<Word> {
    let order = quiver.admissible_order();
    let letters = word.letters();
    (0..letters.len().saturating_sub(1))
        .filter(|&k| order.rank(letters[k]) < order.rank(letters[k + 1]))
        .map(|k| {
            let mut next = letters.to_vec();
            next.swap(k, k + 1);
            Word(next)
        })
        .collect()
}

fn same_degree(quiver: &Quiver, a: &Word, b: &Word) -> Result<()> {
    if a.degree(quiver) != b.degree(quiver) {
        return Err(Error::DegreeMismatch(format!(
            "{} and {} have different degrees",
            a.display(quiver),
            b.display(quiver)
        )));
    }
    Ok(())
}

/// The swap order: `ω ≤ ω'` iff `ω'` arises from `ω` by successive swaps
/// of adjacent increasing pairs. Decided by breadth-first search.
pub fn word_leq(quiver: &Quiver, lower: &Word, upper: &Word, cap: u64) -> Result<bool> {
    same_degree(quiver, lower, upper)?;
    if word_count(&lower.degree(quiver)) > cap {
        return Err(Error::cap("number of words of the given degree", cap));
    }
    if lower == upper {
        return Ok(true);
    }
    // Every swap raises the inversion count by exactly one.
    let target = upper.inversions(quiver);
    if lower.inversions(quiver) >= target {
        return Ok(false);
    }
    let mut seen = HashSet::from([lower.clone()]);
    let mut queue = VecDeque::from([lower.clone()]);
    while let Some(w) = queue.pop_front() {
        for next in swaps(quiver, &w) {
            if &next == upper {
                return Ok(true);
            }
            if next.inversions(quiver) < target && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// A true result certifies `E_ω ⊇ E_ω'`; false certifies nothing.
pub fn inclusion_implied(quiver: &Quiver, larger: &Word, smaller: &Word, cap: u64) -> Result<bool> {
    word_leq(quiver, larger, smaller, cap)
}

/// A finite poset given by its cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hasse {
    pub nodes: Vec<Word>,
    /// `(smaller, larger)` index pairs, sorted.
    pub edges: Vec<(usize, usize)>,
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }
    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}

/// The Hasse diagram of `Ω_d` under [`word_leq`]: full reachability over the
/// swap graph, then transitive reduction.
pub fn hasse_diagram(quiver: &Quiver, d: &DimVector, cap: u64) -> Result<Hasse> {
    let nodes = words_of_degree(quiver, d, cap)?;
    let n = nodes.len();
    let index: std::collections::HashMap<&Word, usize> =
        nodes.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let succ: Vec<Vec<usize>> = nodes
        .iter()
        .map(|w| swaps(quiver, w).iter().map(|s| index[s]).collect())
        .collect();
    let inv: Vec<usize> = nodes.iter().map(|w| w.inversions(quiver)).collect();
    let mut by_inv: Vec<usize> = (0..n).collect();
    by_inv.sort_by(|&a, &b| inv[b].cmp(&inv[a]));

    // Reflexive reachability, filled from the top of the poset down.
    let mut reach: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for &u in &by_inv {
        let mut acc = BitSet::new(n);
        acc.insert(u);
        for &s in &succ[u] {
            acc.union_with(&reach[s]);
        }
        reach[u] = acc;
    }

    let mut edges = Vec::new();
    for (u, out) in succ.iter().enumerate() {
        for &s in out {
            let covered = out.iter().any(|&t| t != s && reach[t].contains(s));
            if !covered && !edges.contains(&(u, s)) {
                edges.push((u, s));
            }
        }
    }
    edges.sort();
    Ok(Hasse { nodes, edges })
}

/// `−Σ_i |ω|_i(|ω|_i − 1)/2 + Σ_{k<l} #{arrows i_l → i_k}`, a lower bound
/// for the codimension of `E_ω` in `R_{|ω|}`.
pub fn codim_lower_bound(quiver: &Quiver, word: &Word) -> Result<i64> {
    const WHAT: &str = "the codimension bound";
    let n = quiver.vertex_count();
    let mut arrows = vec![0i64; n * n];
    for &(t, h) in quiver.arrows() {
        arrows[t * n + h] += 1;
    }
    let mut bound: i64 = 0;
    for &c in word.degree(quiver).coords() {
        let c = i64::from(c);
        bound = bound
            .checked_sub(c * (c - 1) / 2)
            .ok_or(Error::ArithmeticOverflow(WHAT))?;
    }
    let letters = word.letters();
    // counts[v] = occurrences of v strictly after the current position.
    let mut later = vec![0i64; n];
    for &ik in letters.iter().rev() {
        for (il, &count) in later.iter().enumerate() {
            bound = bound
                .checked_add(count * arrows[il * n + ik])
                .ok_or(Error::ArithmeticOverflow(WHAT))?;
        }
        later[ik] += 1;
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ijk_sink() -> Quiver {
        Quiver::new(&["i", "j", "k"], &[("i", "j"), ("k", "j")]).unwrap()
    }

    fn double_chain() -> Quiver {
        Quiver::new(
            &["i", "j", "k"],
            &[("i", "j"), ("i", "j"), ("j", "k"), ("j", "k")],
        )
        .unwrap()
    }

    fn a2() -> Quiver {
        Quiver::new(&["i", "j"], &[("i", "j")]).unwrap()
    }

    const LONG: &str = "iikijkkjjikijijjjkkij";

    #[test]
    fn degree_of_long_word() {
        let q = ijk_sink();
        let w = Word::parse(&q, LONG).unwrap();
        assert_eq!(w.degree(&q).coords(), &[7, 8, 6]);
        assert!(Word::parse(&q, "").unwrap().degree(&q).is_zero());
        let k = Quiver::kronecker(2);
        assert_eq!(Word::parse(&k, "12").unwrap().degree(&k).coords(), &[1, 1]);
    }

    #[test]
    fn v_function_examples() {
        let q = ijk_sink();
        let w = Word::parse(&q, LONG).unwrap();
        assert_eq!(
            w.v_function(),
            vec![7, 6, 6, 5, 8, 5, 4, 7, 6, 4, 3, 3, 5, 2, 4, 3, 2, 2, 1, 1, 1]
        );
        assert_eq!(Word::parse(&q, "ijk").unwrap().v_function(), vec![1, 1, 1]);
        assert_eq!(Word::parse(&q, "iii").unwrap().v_function(), vec![3, 2, 1]);
    }

    #[test]
    fn parse_forms() {
        let q = ijk_sink();
        let a = Word::parse(&q, "i,j,k").unwrap();
        assert_eq!(a, Word::parse(&q, "i j k").unwrap());
        assert_eq!(a, Word::parse(&q, "(ijk)").unwrap());
        assert_eq!(a.display(&q).to_string(), "(ijk)");
        assert_eq!(Word::parse(&q, "ix"), Err(Error::UnknownVertex("x".into())));
        let long = Quiver::new::<&str>(&["ab", "cd"], &[]).unwrap();
        assert_eq!(Word::parse(&long, "cd").unwrap().letters(), &[1]);
    }

    #[test]
    fn trivial_pattern_on_a2() {
        let q = a2();
        let p = zero_pattern(&q, &Word::parse(&q, "ij").unwrap());
        assert_eq!(p.arrows[0].render(), vec!["*"]);
        let p = zero_pattern(&q, &Word::parse(&q, "ji").unwrap());
        assert_eq!(p.arrows[0].render(), vec!["0"]);
    }

    #[test]
    fn word_leq_examples() {
        let q = double_chain();
        let top = Word::parse(&q, "ijjk").unwrap();
        let bottom = Word::parse(&q, "kjji").unwrap();
        assert!(word_leq(&q, &top, &bottom, DEFAULT_WORD_CAP).unwrap());
        assert!(!word_leq(&q, &bottom, &top, DEFAULT_WORD_CAP).unwrap());
        assert!(word_leq(&q, &top, &top, DEFAULT_WORD_CAP).unwrap());

        let free = Quiver::new::<&str>(&["i", "j"], &[]).unwrap();
        let ji = Word::parse(&free, "ji").unwrap();
        let ij = Word::parse(&free, "ij").unwrap();
        assert!(!word_leq(&free, &ji, &ij, DEFAULT_WORD_CAP).unwrap());
        assert!(matches!(
            word_leq(&free, &ji, &Word::parse(&free, "jj").unwrap(), 10),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn inclusion_examples() {
        let q = a2();
        let w = |s| Word::parse(&q, s).unwrap();
        assert!(inclusion_implied(&q, &w("ijiji"), &w("jiiji"), DEFAULT_WORD_CAP).unwrap());
        assert!(!inclusion_implied(&q, &w("ijiji"), &w("jiiij"), DEFAULT_WORD_CAP).unwrap());
    }

    #[test]
    fn small_hasse_diagrams() {
        let q = a2();
        let h = hasse_diagram(&q, &q.unit(0), DEFAULT_HASSE_CAP).unwrap();
        assert_eq!(h.nodes.len(), 1);
        assert!(h.edges.is_empty());

        let free = Quiver::new::<&str>(&["i", "j"], &[]).unwrap();
        let d = free.dim_from_display(&[1, 1]).unwrap();
        let h = hasse_diagram(&free, &d, DEFAULT_HASSE_CAP).unwrap();
        assert_eq!(h.nodes.len(), 2);
        assert_eq!(h.edges.len(), 1);
        let (a, b) = h.edges[0];
        assert_eq!(h.nodes[a].display(&free).to_string(), "(ij)");
        assert_eq!(h.nodes[b].display(&free).to_string(), "(ji)");
    }

    #[test]
    fn double_chain_hasse() {
        let q = double_chain();
        let d = q.dim_from_display(&[1, 2, 1]).unwrap();
        let h = hasse_diagram(&q, &d, DEFAULT_HASSE_CAP).unwrap();
        let mut got: Vec<(String, String)> = h
            .edges
            .iter()
            .map(|&(a, b)| {
                (
                    h.nodes[a].display(&q).to_string(),
                    h.nodes[b].display(&q).to_string(),
                )
            })
            .collect();
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("ijjk", "jijk"),
            ("ijjk", "ijkj"),
            ("jijk", "jjik"),
            ("jijk", "jikj"),
            ("ijkj", "jikj"),
            ("ijkj", "ikjj"),
            ("jjik", "jjki"),
            ("jikj", "jkij"),
            ("ikjj", "kijj"),
            ("jjki", "jkji"),
            ("jkij", "jkji"),
            ("jkij", "kjij"),
            ("kijj", "kjij"),
            ("jkji", "kjji"),
            ("kjij", "kjji"),
        ]
        .iter()
        .map(|(a, b)| (format!("({a})"), format!("({b})")))
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn long_word_patterns() {
        let q = ijk_sink();
        let w = Word::parse(&q, LONG).unwrap();
        let p = zero_pattern(&q, &w);
        assert_eq!(
            p.arrows[0].render(),
            vec![
                "*******", "0******", "0******", "0******", "00*****", "0000***", "0000***",
                "0000***"
            ]
        );
        assert_eq!(
            p.arrows[1].render(),
            vec!["******", "00****", "00****", "00****", "00****", "000***", "000***", "00000*"]
        );
    }

    #[test]
    fn codim_bounds() {
        let k = Quiver::kronecker(2);
        assert_eq!(
            codim_lower_bound(&k, &Word::parse(&k, "21").unwrap()).unwrap(),
            2
        );
        let q = a2();
        assert_eq!(
            codim_lower_bound(&q, &Word::parse(&q, "ij").unwrap()).unwrap(),
            0
        );
        assert_eq!(
            codim_lower_bound(&q, &Word::parse(&q, "jii").unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn word_counts() {
        let q = double_chain();
        let d = q.dim_from_display(&[1, 2, 1]).unwrap();
        assert_eq!(word_count(&d), 12);
        assert_eq!(words_of_degree(&q, &d, 100).unwrap().len(), 12);
        assert!(words_of_degree(&q, &d, 11).is_err());
    }
}

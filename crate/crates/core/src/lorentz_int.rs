//! The integral Lorentz group generated by the four Kac generators.
//!
//! `S1`, `S2` swap spatial axes (1,2) and (2,3), `S3` reflects axis 3 and `S4`
//! is the Minkowski reflection
//!
//! ```text
//!  2  1  1  1
//! -1  0 -1 -1
//! -1 -1  0 -1
//! -1 -1 -1  0
//! ```
//!
//! The commonly reproduced table has `+1` in row 3, column 4 of `S4`; that
//! matrix does not preserve the Minkowski form (the Gram product of columns
//! 1 and 4 is 2) and is available only through [`s4_as_printed`].
//!
//! All entries are arbitrary-precision integers.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, LatticeError, Result};

pub type Entries = [[BigInt; 4]; 4];
pub type IntVector = [BigInt; 4];

const ETA: [i64; 4] = [1, -1, -1, -1];

/// Largest word length accepted by [`enumerate_ball`].
pub const MAX_BALL_WORD_LEN: usize = 12;

/// Order of `S4` in the group.
pub const S4_ORDER: usize = 2;

/// A 4x4 integer matrix with no group guarantee.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix(pub Entries);

impl IntMatrix {
    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self {
        IntMatrix(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        let mut m = Self::from_i64([[0; 4]; 4]);
        for i in 0..4 {
            m.0[i][i] = BigInt::one();
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::from_i64([[0; 4]; 4]);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = BigInt::zero();
                for k in 0..4 {
                    if !self.0[i][k].is_zero() && !other.0[k][j].is_zero() {
                        acc += &self.0[i][k] * &other.0[k][j];
                    }
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].clone();
            }
        }
        out
    }

    /// `m^T eta m`.
    pub fn minkowski_gram(&self) -> Entries {
        let mut g: Entries = Default::default();
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = BigInt::zero();
                for k in 0..4 {
                    acc += &self.0[k][a] * &self.0[k][b] * ETA[k];
                }
                g[a][b] = acc;
            }
        }
        g
    }

    pub fn determinant(&self) -> BigInt {
        fn minor(m: &[Vec<BigInt>]) -> BigInt {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut det = BigInt::zero();
            for col in 0..m.len() {
                if m[0][col].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][col] * minor(&sub);
                if col % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
        let rows: Vec<Vec<BigInt>> = self.0.iter().map(|r| r.to_vec()).collect();
        minor(&rows)
    }

    /// Row-major entries as a JSON array of 16 values: numbers when they fit
    /// `i64`, decimal strings otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .flatten()
                .map(|v| match v.to_i64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::String(v.to_string()),
                })
                .collect(),
        )
    }

    /// Accepts the layout written by [`IntMatrix::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<IntMatrix> {
        let items = value
            .as_array()
            .filter(|a| a.len() == 16)
            .ok_or_else(|| LatticeError::Format("matrix must be a JSON array of 16 integers".into()))?;
        let mut m = IntMatrix::from_i64([[0; 4]; 4]);
        for (k, item) in items.iter().enumerate() {
            let text = match item {
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => return Err(LatticeError::Format(format!("matrix entry {k} is not an integer: {other}"))),
            };
            m.0[k / 4][k % 4] = BigInt::from_str(text.trim())
                .map_err(|e| LatticeError::Format(format!("matrix entry {k} ({text}) is not an integer: {e}")))?;
        }
        Ok(m)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// True iff `m^T eta m = eta` exactly.
pub fn preserves_metric(m: &IntMatrix) -> bool {
    let g = m.minkowski_gram();
    (0..4).all(|a| (0..4).all(|b| g[a][b] == BigInt::from(if a == b { ETA[a] } else { 0 })))
}

/// A matrix certified to satisfy `L^T eta L = eta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntLorentzMatrix(IntMatrix);

impl IntLorentzMatrix {
    pub fn identity() -> Self {
        IntLorentzMatrix(IntMatrix::identity())
    }

    pub fn entries(&self) -> &Entries {
        &self.0 .0
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.0 .0[i][j]
    }

    pub fn is_orthochronous(&self) -> bool {
        self.get(0, 0) >= &BigInt::one()
    }

    pub fn mul(&self, other: &IntLorentzMatrix) -> IntLorentzMatrix {
        IntLorentzMatrix(self.0.mul(&other.0))
    }

    /// `eta L^T eta`.
    pub fn inverse(&self) -> IntLorentzMatrix {
        let mut t = self.0.transpose();
        for i in 0..4 {
            for j in 0..4 {
                if ETA[i] * ETA[j] < 0 {
                    t.0[i][j] = -&t.0[i][j];
                }
            }
        }
        IntLorentzMatrix(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.0.to_json()
    }
}

impl TryFrom<IntMatrix> for IntLorentzMatrix {
    type Error = LatticeError;

    fn try_from(m: IntMatrix) -> Result<Self> {
        if preserves_metric(&m) {
            Ok(IntLorentzMatrix(m))
        } else {
            domain(format!("matrix [{m}] does not preserve the Minkowski form"))
        }
    }
}

impl fmt::Display for IntLorentzMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Letters of generator words: the four Kac generators and the three parity products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    S1,
    S2,
    S3,
    S4,
    P1,
    P2,
    P3,
}

impl Letter {
    pub const KAC: [Letter; 4] = [Letter::S1, Letter::S2, Letter::S3, Letter::S4];

    pub fn matrix(self) -> &'static IntLorentzMatrix {
        static TABLE: OnceLock<Vec<IntLorentzMatrix>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let s = |rows| IntLorentzMatrix::try_from(IntMatrix::from_i64(rows)).expect("generator preserves metric");
            let s1 = s([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]);
            let s2 = s([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
            let s3 = s([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]);
            let s4 = s([[2, 1, 1, 1], [-1, 0, -1, -1], [-1, -1, 0, -1], [-1, -1, -1, 0]]);
            let p2 = s2.mul(&s3).mul(&s2);
            let p1 = s1.mul(&p2).mul(&s1);
            let p3 = s3.clone();
            vec![s1, s2, s3, s4, p1, p2, p3]
        });
        &table[self as usize]
    }

    pub fn name(self) -> &'static str {
        match self {
            Letter::S1 => "S1",
            Letter::S2 => "S2",
            Letter::S3 => "S3",
            Letter::S4 => "S4",
            Letter::P1 => "P1",
            Letter::P2 => "P2",
            Letter::P3 => "P3",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Letter {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "S1" => Letter::S1,
            "S2" => Letter::S2,
            "S3" => Letter::S3,
            "S4" => Letter::S4,
            "P1" => Letter::P1,
            "P2" => Letter::P2,
            "P3" => Letter::P3,
            other => return domain(format!("unknown generator {other:?}")),
        })
    }
}

/// Kac generator by name (`"S1"` .. `"S4"`).
pub fn generator(name: &str) -> Result<IntLorentzMatrix> {
    match name.parse::<Letter>()? {
        l @ (Letter::S1 | Letter::S2 | Letter::S3 | Letter::S4) => Ok(l.matrix().clone()),
        other => domain(format!("{other} is a parity product, not a Kac generator")),
    }
}

/// `S4` with `+1` in row 3, column 4. Fails [`preserves_metric`].
pub fn s4_as_printed() -> IntMatrix {
    IntMatrix::from_i64([[2, 1, 1, 1], [-1, 0, -1, -1], [-1, -1, 0, 1], [-1, -1, -1, 0]])
}

/// `(P1, P2, P3) = (S1 S2 S3 S2 S1, S2 S3 S2, S3)`.
pub fn parity_products() -> (IntLorentzMatrix, IntLorentzMatrix, IntLorentzMatrix) {
    (Letter::P1.matrix().clone(), Letter::P2.matrix().clone(), Letter::P3.matrix().clone())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord(pub Vec<Letter>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|l| l.name()).collect()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&self.names().join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()
            .map(GeneratorWord)
    }
}

/// Left-to-right product of the word's letters.
pub fn eval_word(w: &GeneratorWord) -> Result<IntLorentzMatrix> {
    let m = w.0.iter().fold(IntLorentzMatrix::identity(), |acc, l| acc.mul(l.matrix()));
    if !preserves_metric(m.as_matrix()) {
        return Err(LatticeError::Invariant(format!("word {w} evaluated to a non-Lorentz matrix")));
    }
    Ok(m)
}

pub fn act(l: &IntLorentzMatrix, v: &IntVector) -> IntVector {
    let e = l.entries();
    std::array::from_fn(|i| (0..4).fold(BigInt::zero(), |acc, k| acc + &e[i][k] * &v[k]))
}

pub fn minkowski_sq(v: &IntVector) -> BigInt {
    (0..4).fold(BigInt::zero(), |acc, k| acc + &v[k] * &v[k] * ETA[k])
}

/// Breadth-first spheres of the Cayley graph on `{S1..S4}`: `spheres[r]`
/// holds the elements of word length exactly `r`, in discovery order.
pub fn ball_spheres(max_word_len: usize) -> Result<Vec<Vec<IntLorentzMatrix>>> {
    if max_word_len > MAX_BALL_WORD_LEN {
        return domain(format!(
            "max word length {max_word_len} exceeds the safety bound {MAX_BALL_WORD_LEN}"
        ));
    }
    let mut seen: HashSet<IntLorentzMatrix> = HashSet::new();
    seen.insert(IntLorentzMatrix::identity());
    let mut spheres = vec![vec![IntLorentzMatrix::identity()]];
    for _ in 0..max_word_len {
        let frontier = spheres.last().unwrap();
        let candidates: Vec<IntLorentzMatrix> = frontier
            .par_iter()
            .flat_map_iter(|m| Letter::KAC.iter().map(move |g| m.mul(g.matrix())))
            .collect();
        let mut next = Vec::new();
        for c in candidates {
            if !seen.contains(&c) {
                seen.insert(c.clone());
                next.push(c);
            }
        }
        spheres.push(next);
    }
    Ok(spheres)
}

/// All group elements reachable by words of length `<= max_word_len`,
/// sorted lexicographically by entries.
pub fn enumerate_ball(max_word_len: usize) -> Result<Vec<IntLorentzMatrix>> {
    let mut all: Vec<IntLorentzMatrix> = ball_spheres(max_word_len)?.into_iter().flatten().collect();
    all.sort();
    if let Some(bad) = all.iter().find(|m| !preserves_metric(m.as_matrix())) {
        return Err(LatticeError::Invariant(format!("enumerated non-Lorentz matrix [{bad}]")));
    }
    Ok(all)
}

/// Shortest `{S1, S2, S3}` words for the 48 signed permutations fixing the time axis.
fn finite_subgroup() -> &'static HashMap<IntLorentzMatrix, GeneratorWord> {
    static TABLE: OnceLock<HashMap<IntLorentzMatrix, GeneratorWord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashMap::new();
        let mut queue = VecDeque::new();
        table.insert(IntLorentzMatrix::identity(), GeneratorWord::empty());
        queue.push_back((IntLorentzMatrix::identity(), GeneratorWord::empty()));
        while let Some((m, w)) = queue.pop_front() {
            for g in [Letter::S1, Letter::S2, Letter::S3] {
                let next = m.mul(g.matrix());
                if !table.contains_key(&next) {
                    let mut nw = w.clone();
                    nw.0.push(g);
                    table.insert(next.clone(), nw.clone());
                    queue.push_back((next, nw));
                }
            }
        }
        table
    })
}

/// Number of signed permutations reached by `{S1, S2, S3}`.
pub fn finite_subgroup_order() -> usize {
    finite_subgroup().len()
}

/// Writes an orthochronous group element in the normal form
/// `[P-block] S4 [P-block] S4 ... S4 [tail]`.
///
/// Each `P-block` is `P1^a P2^b P3^c` with exponents 0 or 1 and the tail is a
/// shortest `{S1, S2, S3}` word. While `L[0][0] > 1` the parities are chosen
/// to make the spatial entries of column 0 non-positive, and `S4 P L` then
/// has a strictly smaller time-time entry; at `L[0][0] = 1` the remainder is
/// a signed permutation.
pub fn factorize(l: &IntLorentzMatrix) -> Result<GeneratorWord> {
    if !preserves_metric(l.as_matrix()) {
        return domain(format!("matrix [{l}] does not preserve the Minkowski form"));
    }
    if !l.is_orthochronous() {
        return domain(format!(
            "matrix [{l}] reverses time; the Kac generators only reach orthochronous elements"
        ));
    }
    let mut word = Vec::new();
    let mut cur = l.clone();
    let one = BigInt::one();
    while cur.get(0, 0) > &one {
        let before = cur.get(0, 0).clone();
        let mut block = IntLorentzMatrix::identity();
        for (axis, parity) in [(1, Letter::P1), (2, Letter::P2), (3, Letter::P3)] {
            if cur.get(axis, 0).is_positive() {
                word.push(parity);
                block = block.mul(parity.matrix());
            }
        }
        word.push(Letter::S4);
        cur = Letter::S4.matrix().mul(&block).mul(&cur);
        if cur.get(0, 0) >= &before {
            return Err(LatticeError::Invariant(format!(
                "reduction failed to decrease L[0][0] (was {before}, now {})",
                cur.get(0, 0)
            )));
        }
    }
    let tail = finite_subgroup().get(&cur).ok_or_else(|| {
        LatticeError::Invariant(format!("remainder [{cur}] is not a signed permutation"))
    })?;
    word.extend_from_slice(&tail.0);
    Ok(GeneratorWord(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: [i64; 4]) -> IntMatrix {
        let mut m = IntMatrix::from_i64([[0; 4]; 4]);
        for i in 0..4 {
            m.0[i][i] = d[i].into();
        }
        m
    }

    #[test]
    fn generators_are_certified_and_s3_is_diagonal() {
        for name in ["S1", "S2", "S3", "S4"] {
            assert!(preserves_metric(generator(name).unwrap().as_matrix()));
        }
        assert_eq!(generator("S3").unwrap().as_matrix(), &diag([1, 1, 1, -1]));
        assert!(generator("S5").is_err());
        assert!(generator("P1").is_err());
    }

    #[test]
    fn s1_swaps_axes_one_and_two() {
        let v: IntVector = [3, 5, 7, 11].map(BigInt::from);
        assert_eq!(act(&generator("S1").unwrap(), &v), [3, 7, 5, 11].map(BigInt::from));
    }

    #[test]
    fn printed_s4_gram_defect() {
        let p = s4_as_printed();
        assert!(!preserves_metric(&p));
        let g = p.minkowski_gram();
        assert_eq!(g[0][3], BigInt::from(2));
        let mut off = Vec::new();
        for a in 0..4 {
            for b in a..4 {
                let want = BigInt::from(if a == b { ETA[a] } else { 0 });
                if g[a][b] != want {
                    off.push((a, b, g[a][b].clone()));
                }
            }
        }
        assert_eq!(off, vec![(0, 3, BigInt::from(2)), (1, 3, BigInt::from(2))]);
    }

    #[test]
    fn preserves_metric_basics() {
        assert!(preserves_metric(&IntMatrix::identity()));
        assert!(!preserves_metric(&diag([2, 1, 1, 1])));
    }

    #[test]
    fn parity_products_are_single_reflections() {
        let (p1, p2, p3) = parity_products();
        assert_eq!(p1.as_matrix(), &diag([1, -1, 1, 1]));
        assert_eq!(p2.as_matrix(), &diag([1, 1, -1, 1]));
        assert_eq!(p3.as_matrix(), &diag([1, 1, 1, -1]));
    }

    #[test]
    fn s4_first_column() {
        let v: IntVector = [1, 0, 0, 0].map(BigInt::from);
        let r = act(&generator("S4").unwrap(), &v);
        assert_eq!(r, [2, -1, -1, -1].map(BigInt::from));
        assert_eq!(minkowski_sq(&r), BigInt::one());
    }

    #[test]
    fn word_parsing_and_json() {
        let w: GeneratorWord = "S2 S3,S2".parse().unwrap();
        assert_eq!(eval_word(&w).unwrap(), parity_products().1);
        assert!("S2 X".parse::<GeneratorWord>().is_err());
        let m = generator("S4").unwrap();
        let j = m.to_json();
        assert_eq!(j.to_string(), "[2,1,1,1,-1,0,-1,-1,-1,-1,0,-1,-1,-1,-1,0]");
        assert_eq!(&IntMatrix::from_json(&j).unwrap(), m.as_matrix());
        assert!(IntMatrix::from_json(&serde_json::json!([1, 2])).is_err());
    }

    #[test]
    fn huge_entries_survive_json() {
        let mut m = IntMatrix::identity();
        m.0[1][2] = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
        let back = IntMatrix::from_json(&serde_json::from_str(&m.to_json().to_string()).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn ball_bound_enforced() {
        assert!(enumerate_ball(MAX_BALL_WORD_LEN + 1).is_err());
    }

    #[test]
    fn finite_subgroup_is_hyperoctahedral() {
        assert_eq!(finite_subgroup_order(), 48);
    }

    #[test]
    fn factorize_rejects_bad_input() {
        let bad = IntLorentzMatrix(diag([2, 1, 1, 1]));
        assert!(factorize(&bad).is_err());
        let reversal = IntLorentzMatrix::try_from(diag([-1, 1, 1, 1])).unwrap();
        assert!(factorize(&reversal).is_err());
    }
}

//! Finite Coxeter groups: matrices, exact enumeration and the coset
//! machinery (shortest/longest coset representatives, longest elements,
//! the sets `X_s`).
//!
//! Elements are identified by dense ids assigned in ShortLex order of their
//! canonical (ShortLex-least) reduced words, so `id 0` is the identity and
//! `l(x) < l(y)` implies `id(x) < id(y)`.

mod field;
mod identities;
mod gens;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

pub use field::Surd;
pub use gens::GenSet;

/// Default element cap for [`WeylTable::enumerate`].
pub const DEFAULT_CAP: usize = 200_000;

/// Multiplication tables are materialized up to this group order.
const FULL_TABLE_MAX: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("coxeter matrix is empty")]
    Empty,
    #[error("coxeter matrix must be square with one row per generator")]
    NotSquare,
    #[error("coxeter matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry ({0}, {0}) must be 1")]
    BadDiagonal(usize),
    #[error("off-diagonal entry m[{0}][{1}] = {2} is not a valid Coxeter number")]
    InvalidEntry(usize, usize, u32),
    #[error("entry m[{0}][{1}] = {2} is outside the supported set {{2,3,4,5,6}}")]
    UnsupportedEntry(usize, usize, u32),
    #[error("duplicate or empty generator name {0:?}")]
    BadName(String),
    #[error("rank {0} exceeds the supported maximum of 16")]
    RankTooLarge(usize),
    #[error("enumeration produced more than {0} elements (infinite or too large)")]
    CapExceeded(usize),
    #[error("exact arithmetic overflowed during enumeration")]
    Overflow,
    #[error("unknown Coxeter type {0:?}")]
    UnknownType(String),
}

/// Generator index, `0..rank`.
pub type Gen = usize;

/// Element of a [`WeylTable`], by ShortLex rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeylElt(pub u32);

impl WeylElt {
    pub const IDENTITY: WeylElt = WeylElt(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Coxeter matrix with named generators. Entry `0` encodes `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    gens: Vec<String>,
    m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(gens: Vec<String>, m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let k = gens.len();
        if k == 0 {
            return Err(CoxeterError::Empty);
        }
        if k > 16 {
            return Err(CoxeterError::RankTooLarge(k));
        }
        if m.len() != k || m.iter().any(|row| row.len() != k) {
            return Err(CoxeterError::NotSquare);
        }
        for (i, name) in gens.iter().enumerate() {
            let ok = !name.is_empty()
                && !name.chars().any(char::is_whitespace)
                && name != "-"
                && !gens[..i].contains(name);
            if !ok {
                return Err(CoxeterError::BadName(name.clone()));
            }
        }
        for i in 0..k {
            if m[i][i] != 1 {
                return Err(CoxeterError::BadDiagonal(i));
            }
            for j in 0..k {
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::NotSymmetric(i, j));
                }
                if i != j {
                    match m[i][j] {
                        0 | 2..=6 => {}
                        1 => return Err(CoxeterError::InvalidEntry(i, j, 1)),
                        v => return Err(CoxeterError::UnsupportedEntry(i, j, v)),
                    }
                }
            }
        }
        Ok(CoxeterMatrix { gens, m })
    }

    /// Matrix with generators named `s0, s1, …`.
    pub fn with_default_names(m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let gens = (0..m.len()).map(|i| alloc::format!("s{i}")).collect();
        Self::new(gens, m)
    }

    /// Parses a type name such as `A3`, `B2`, `I2(5)`, `H3`, `G2` or a
    /// product `A1xA1xA1`. Generators are named `s0, s1, …` in block order.
    pub fn from_type_name(name: &str) -> Result<Self, CoxeterError> {
        let unknown = || CoxeterError::UnknownType(name.to_string());
        let mut blocks: Vec<Vec<Vec<u32>>> = Vec::new();
        for part in name.split(['x', '*']) {
            let part = part.trim();
            let block = parse_irreducible(part).ok_or_else(unknown)?;
            blocks.push(block);
        }
        let k: usize = blocks.iter().map(Vec::len).sum();
        let mut m = vec![vec![2u32; k]; k];
        let mut off = 0;
        for b in &blocks {
            for i in 0..b.len() {
                for j in 0..b.len() {
                    m[off + i][off + j] = b[i][j];
                }
            }
            off += b.len();
        }
        Self::with_default_names(m)
    }

    /// Block-diagonal sum of two matrices (reducible product type).
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> Result<Self, CoxeterError> {
        let k1 = self.rank();
        let k = k1 + other.rank();
        let mut m = vec![vec![2u32; k]; k];
        for i in 0..k {
            m[i][i] = 1;
        }
        for i in 0..k1 {
            for j in 0..k1 {
                m[i][j] = self.m[i][j];
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                m[k1 + i][k1 + j] = other.m[i][j];
            }
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(gens, m)
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn gen_index(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn entry(&self, i: Gen, j: Gen) -> u32 {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.m
    }

    /// Restriction to the generators in `j`, keeping their relative order.
    pub fn restrict(&self, j: GenSet) -> CoxeterMatrix {
        let idx: Vec<Gen> = j.iter().collect();
        let gens = idx.iter().map(|&i| self.gens[i].clone()).collect();
        let m = idx
            .iter()
            .map(|&a| idx.iter().map(|&b| self.m[a][b]).collect())
            .collect();
        CoxeterMatrix { gens, m }
    }

    /// Whether every generator subset of size at most `k` generates a
    /// finite group.
    pub fn is_k_spherical(&self, k: usize) -> bool {
        let all = GenSet::all(self.rank());
        all.subsets()
            .filter(|j| j.len() <= k && !j.is_empty())
            .all(|j| WeylTable::enumerate(&self.restrict(j), 20_000).is_ok())
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn parse_irreducible(part: &str) -> Option<Vec<Vec<u32>>> {
    let linear = |n: usize, last: u32| -> Vec<Vec<u32>> {
        let mut m = vec![vec![2u32; n]; n];
        for i in 0..n {
            m[i][i] = 1;
            if i + 1 < n {
                let v = if i + 2 == n { last } else { 3 };
                m[i][i + 1] = v;
                m[i + 1][i] = v;
            }
        }
        m
    };
    if let Some(rest) = part.strip_prefix("I2(") {
        let m: u32 = rest.strip_suffix(')')?.parse().ok()?;
        return Some(vec![vec![1, m], vec![m, 1]]);
    }
    let (letter, n) = part.split_at(1.min(part.len()));
    let n: usize = n.parse().ok()?;
    if n == 0 {
        return None;
    }
    match letter {
        "A" => Some(linear(n, 3)),
        "B" | "C" if n >= 2 => Some(linear(n, 4)),
        "G" if n == 2 => Some(vec![vec![1, 6], vec![6, 1]]),
        "H" if (2..=4).contains(&n) => {
            let mut m = linear(n, 3);
            m[0][1] = 5;
            m[1][0] = 5;
            Some(m)
        }
        "D" if n >= 4 => {
            let mut m = linear(n, 3);
            m[n - 2][n - 1] = 2;
            m[n - 1][n - 2] = 2;
            m[n - 3][n - 1] = 3;
            m[n - 1][n - 3] = 3;
            Some(m)
        }
        _ => None,
    }
}

/// Fully enumerated finite Coxeter group.
#[derive(Debug, Clone)]
pub struct WeylTable {
    matrix: CoxeterMatrix,
    length: Vec<u16>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    parent: Vec<u32>,
    last: Vec<u8>,
    support: Vec<GenSet>,
    full: Option<Vec<u32>>,
}

impl WeylTable {
    /// Enumerates `W` by breadth-first search, identifying elements through
    /// the orbit of `ρ = (1,…,1)` under the contragredient of the exact
    /// reflection representation.
    pub fn enumerate(matrix: &CoxeterMatrix, cap: usize) -> Result<Self, CoxeterError> {
        let k = matrix.rank();
        // coefficient[s][t] = 2cos(π/m_st): right multiplication by s sends
        // the key c to c' with c'_s = -c_s and c'_t = c_t + coeff·c_s.
        let mut coeff = vec![vec![Surd::zero(); k]; k];
        for s in 0..k {
            for t in 0..k {
                if s != t {
                    let m = matrix.entry(s, t);
                    coeff[s][t] = field::two_cos_pi_over(m)
                        .ok_or(CoxeterError::UnsupportedEntry(s, t, m))?;
                }
            }
        }
        let act = |key: &[Surd], s: Gen| -> Result<Vec<Surd>, CoxeterError> {
            let cs = &key[s];
            let mut out = Vec::with_capacity(k);
            for t in 0..k {
                if t == s {
                    out.push(cs.neg());
                } else if coeff[s][t].is_zero() {
                    out.push(key[t].clone());
                } else {
                    let v = coeff[s][t]
                        .checked_mul(cs)
                        .and_then(|d| key[t].checked_add(&d))
                        .ok_or(CoxeterError::Overflow)?;
                    out.push(v);
                }
            }
            Ok(out)
        };

        let mut length: Vec<u16> = vec![0];
        let mut parent: Vec<u32> = vec![0];
        let mut last: Vec<u8> = vec![u8::MAX];
        let mut right: Vec<u32> = vec![u32::MAX; k];
        let mut level: Vec<(u32, Vec<Surd>)> = vec![(0, vec![Surd::from_int(1); k])];
        let mut cur_len: u16 = 0;

        while !level.is_empty() {
            let mut next: Vec<(u32, Vec<Surd>)> = Vec::new();
            let mut seen: BTreeMap<Vec<Surd>, u32> = BTreeMap::new();
            for (id, key) in &level {
                for s in 0..k {
                    let ascent = key[s].signum().ok_or(CoxeterError::Overflow)?
                        == Ordering::Greater;
                    if !ascent {
                        continue;
                    }
                    let nk = act(key, s)?;
                    let nid = match seen.get(&nk) {
                        Some(&v) => v,
                        None => {
                            let v = length.len() as u32;
                            if length.len() >= cap {
                                return Err(CoxeterError::CapExceeded(cap));
                            }
                            length.push(cur_len + 1);
                            parent.push(*id);
                            last.push(s as u8);
                            right.extend(core::iter::repeat(u32::MAX).take(k));
                            seen.insert(nk.clone(), v);
                            next.push((v, nk));
                            v
                        }
                    };
                    right[*id as usize * k + s] = nid;
                    right[nid as usize * k + s] = *id;
                }
            }
            level = next;
            cur_len += 1;
        }
        debug_assert!(right.iter().all(|&v| v != u32::MAX));

        let n = length.len();
        let mut table = WeylTable {
            matrix: matrix.clone(),
            length,
            right,
            left: Vec::new(),
            inverse: vec![0; n],
            parent,
            last,
            support: vec![GenSet::EMPTY; n],
            full: None,
        };
        for w in 1..n {
            let p = table.parent[w] as usize;
            table.support[w] = table.support[p].with(table.last[w] as usize);
        }
        for w in 0..n {
            let word = table.word(WeylElt(w as u32));
            let mut x = WeylElt::IDENTITY;
            for &s in word.iter().rev() {
                x = table.right(x, s);
            }
            table.inverse[w] = x.0;
        }
        let mut left = vec![0u32; n * k];
        for w in 0..n {
            let wi = table.inverse[w] as usize;
            for s in 0..k {
                left[w * k + s] = table.inverse[table.right[wi * k + s] as usize];
            }
        }
        table.left = left;
        if n <= FULL_TABLE_MAX {
            let mut full = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    full[x * n + y] = table.mul_by_word(WeylElt(x as u32), WeylElt(y as u32)).0;
                }
            }
            table.full = Some(full);
        }
        Ok(table)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> + '_ {
        (0..self.size() as u32).map(WeylElt)
    }

    /// The generator `s` as a group element.
    pub fn gen(&self, s: Gen) -> WeylElt {
        self.right(WeylElt::IDENTITY, s)
    }

    /// Inverse of [`Self::gen`]: which generator `w` is, if it has length 1.
    pub fn as_gen(&self, w: WeylElt) -> Option<Gen> {
        if self.length(w) == 1 {
            Some(self.last[w.idx()] as usize)
        } else {
            None
        }
    }

    #[inline]
    pub fn length(&self, w: WeylElt) -> usize {
        self.length[w.idx()] as usize
    }

    #[inline]
    pub fn right(&self, w: WeylElt, s: Gen) -> WeylElt {
        WeylElt(self.right[w.idx() * self.rank() + s])
    }

    #[inline]
    pub fn left(&self, w: WeylElt, s: Gen) -> WeylElt {
        WeylElt(self.left[w.idx() * self.rank() + s])
    }

    pub fn gen_mult(&self, w: WeylElt, s: Gen, side: Side) -> WeylElt {
        match side {
            Side::Left => self.left(w, s),
            Side::Right => self.right(w, s),
        }
    }

    #[inline]
    pub fn inv(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.inverse[w.idx()])
    }

    pub fn mul(&self, x: WeylElt, y: WeylElt) -> WeylElt {
        match &self.full {
            Some(full) => WeylElt(full[x.idx() * self.size() + y.idx()]),
            None => self.mul_by_word(x, y),
        }
    }

    fn mul_by_word(&self, x: WeylElt, y: WeylElt) -> WeylElt {
        let mut out = x;
        for s in self.word(y) {
            out = self.right(out, s);
        }
        out
    }

    /// The ShortLex-least reduced word of `w`.
    pub fn word(&self, w: WeylElt) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.length(w));
        let mut cur = w.idx();
        while cur != 0 {
            out.push(self.last[cur] as usize);
            cur = self.parent[cur] as usize;
        }
        out.reverse();
        out
    }

    /// Evaluates an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[Gen]) -> WeylElt {
        word.iter().fold(WeylElt::IDENTITY, |w, &s| self.right(w, s))
    }

    /// Generators occurring in any reduced word of `w`.
    pub fn support(&self, w: WeylElt) -> GenSet {
        self.support[w.idx()]
    }

    pub fn in_parabolic(&self, w: WeylElt, j: GenSet) -> bool {
        self.support(w).is_subset(j)
    }

    /// Elements of `W_J` in id order.
    pub fn parabolic_elements(&self, j: GenSet) -> Vec<WeylElt> {
        self.elements().filter(|&w| self.in_parabolic(w, j)).collect()
    }

    /// Longest element of `W` (all generators).
    pub fn longest(&self) -> WeylElt {
        self.longest_element(GenSet::all(self.rank()))
    }

    /// `r_J`, the longest element of `W_J`.
    pub fn longest_element(&self, j: GenSet) -> WeylElt {
        self.ascend(WeylElt::IDENTITY, j)
    }

    /// `w_J`: the unique shortest element of `w·W_J`.
    pub fn min_coset_rep(&self, w: WeylElt, j: GenSet) -> WeylElt {
        let mut cur = w;
        'outer: loop {
            for t in j.iter() {
                let n = self.right(cur, t);
                if self.length(n) < self.length(cur) {
                    cur = n;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// `w^J`: the unique longest element of `w·W_J`.
    pub fn max_coset_rep(&self, w: WeylElt, j: GenSet) -> WeylElt {
        self.ascend(w, j)
    }

    fn ascend(&self, w: WeylElt, j: GenSet) -> WeylElt {
        let mut cur = w;
        'outer: loop {
            for t in j.iter() {
                let n = self.right(cur, t);
                if self.length(n) > self.length(cur) {
                    cur = n;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// `w⁻¹ s w` if it is a generator.
    pub fn conjugate_gen(&self, w: WeylElt, s: Gen) -> Option<Gen> {
        let c = self.mul(self.mul(self.inv(w), self.gen(s)), w);
        self.as_gen(c)
    }

    /// Membership in `X_s = { w : w⁻¹sw ∈ S, l(sw) = l(w)+1 }`; returns
    /// `t = w⁻¹sw` on success.
    pub fn in_x_s(&self, w: WeylElt, s: Gen) -> Option<Gen> {
        if self.length(self.left(w, s)) != self.length(w) + 1 {
            return None;
        }
        self.conjugate_gen(w, s)
    }

    /// All of `X_s`, in id order.
    pub fn x_s(&self, s: Gen) -> Vec<WeylElt> {
        self.elements().filter(|&w| self.in_x_s(w, s).is_some()).collect()
    }

    /// `w1 ≺ w2` iff `l(w1⁻¹ w2) = l(w2) − l(w1)`.
    pub fn prec(&self, w1: WeylElt, w2: WeylElt) -> bool {
        let d = self.length(self.mul(self.inv(w1), w2));
        self.length(w2) >= self.length(w1) && d == self.length(w2) - self.length(w1)
    }

    /// `r_J t r_J` for `t ∈ J` (the opposition involution of `J`).
    pub fn opposition_gen(&self, j: GenSet, t: Gen) -> Gen {
        let r = self.longest_element(j);
        self.conjugate_gen(r, t)
            .expect("conjugation by r_J permutes J")
    }

    /// Number of elements of each length.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.length.iter().copied().max().unwrap_or(0) as usize;
        let mut h = vec![0usize; max + 1];
        for &l in &self.length {
            h[l as usize] += 1;
        }
        h
    }

    /// `Σ_w q^{l(w)}`.
    pub fn poincare_at(&self, q: u64) -> u64 {
        self.length_histogram()
            .iter()
            .enumerate()
            .map(|(l, &c)| c as u64 * q.pow(l as u32))
            .sum()
    }

    pub fn format_word(&self, w: WeylElt) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "-".into();
        }
        let names: Vec<&str> = word.iter().map(|&s| self.matrix.gens[s].as_str()).collect();
        names.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> WeylTable {
        let m = CoxeterMatrix::from_type_name("A2").unwrap();
        WeylTable::enumerate(&m, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn a1_two_elements() {
        let m = CoxeterMatrix::with_default_names(vec![vec![1]]).unwrap();
        let w = WeylTable::enumerate(&m, 10).unwrap();
        assert_eq!(w.size(), 2);
        assert_eq!(w.length_histogram(), vec![1, 1]);
    }

    #[test]
    fn a2_histogram_and_words() {
        let w = a2();
        assert_eq!(w.size(), 6);
        assert_eq!(w.length_histogram(), vec![1, 2, 2, 1]);
        let (s, t) = (0, 1);
        let st = w.from_word(&[s, t]);
        let sts = w.from_word(&[s, t, s]);
        assert_eq!(w.word(sts), vec![0, 1, 0]);
        assert_eq!(w.from_word(&[t, s, t]), sts);
        assert_eq!(w.gen_mult(sts, s, Side::Right), st);
        assert_eq!(w.gen_mult(st, t, Side::Right), w.gen(s));
        assert_eq!(w.gen_mult(WeylElt::IDENTITY, s, Side::Right), w.gen(s));
    }

    #[test]
    fn affine_a1_hits_cap() {
        let m = CoxeterMatrix::with_default_names(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            WeylTable::enumerate(&m, 1000).unwrap_err(),
            CoxeterError::CapExceeded(1000)
        );
    }

    #[test]
    fn rejects_large_entries() {
        let err = CoxeterMatrix::with_default_names(vec![vec![1, 7], vec![7, 1]]).unwrap_err();
        assert_eq!(err, CoxeterError::UnsupportedEntry(0, 1, 7));
        assert!(matches!(
            CoxeterMatrix::with_default_names(vec![vec![1, 3], vec![2, 1]]),
            Err(CoxeterError::NotSymmetric(..))
        ));
        assert!(matches!(
            CoxeterMatrix::with_default_names(vec![vec![1, 1], vec![1, 1]]),
            Err(CoxeterError::InvalidEntry(..))
        ));
    }

    #[test]
    fn coset_representatives_a2() {
        let w = a2();
        let (s, t) = (0, 1);
        let st = w.from_word(&[s, t]);
        let sts = w.from_word(&[s, t, s]);
        let all = GenSet::all(2);
        assert_eq!(w.min_coset_rep(WeylElt::IDENTITY, GenSet::single(t)), WeylElt::IDENTITY);
        assert_eq!(w.min_coset_rep(st, GenSet::single(t)), w.gen(s));
        assert_eq!(w.min_coset_rep(sts, all), WeylElt::IDENTITY);
        assert_eq!(w.longest_element(GenSet::EMPTY), WeylElt::IDENTITY);
        assert_eq!(w.longest_element(GenSet::single(s)), w.gen(s));
        assert_eq!(w.longest_element(all), sts);
        assert_eq!(w.max_coset_rep(w.gen(s), GenSet::single(t)), st);
        assert_eq!(w.max_coset_rep(WeylElt::IDENTITY, all), sts);
        assert_eq!(w.max_coset_rep(w.gen(t), all), sts);
    }

    #[test]
    fn x_s_membership_a2() {
        let w = a2();
        let (s, t) = (0, 1);
        assert_eq!(w.in_x_s(WeylElt::IDENTITY, s), Some(s));
        let ts = w.from_word(&[t, s]);
        let x_j = w.mul(w.gen(s), w.longest());
        assert_eq!(x_j, ts);
        assert_eq!(w.in_x_s(ts, s), Some(t));
        assert_eq!(w.in_x_s(w.gen(t), s), None);
        for v in w.x_s(s) {
            assert!(w.prec(v, x_j));
            assert!(w.prec(WeylElt::IDENTITY, v));
            assert!(w.prec(v, v));
        }
    }

    #[test]
    fn type_names() {
        for (name, order) in [
            ("A3", 24),
            ("B3", 48),
            ("H3", 120),
            ("G2", 12),
            ("I2(5)", 10),
            ("A1xA1xA1", 8),
            ("A1xI2(6)", 24),
            ("D4", 192),
        ] {
            let m = CoxeterMatrix::from_type_name(name).unwrap();
            let w = WeylTable::enumerate(&m, DEFAULT_CAP).unwrap();
            assert_eq!(w.size(), order, "{name}");
        }
        assert!(CoxeterMatrix::from_type_name("Q7").is_err());
    }

    #[test]
    fn three_sphericity() {
        let a3 = CoxeterMatrix::from_type_name("A3").unwrap();
        assert!(a3.is_k_spherical(3));
        let affine_a2 =
            CoxeterMatrix::with_default_names(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]])
                .unwrap();
        assert!(affine_a2.is_k_spherical(2));
        assert!(!affine_a2.is_k_spherical(3));
    }
}

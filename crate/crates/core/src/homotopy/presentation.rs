//! Edge-path groups of chamber subsets and bounded decisions of their
//! triviality.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{components, Certificate, HomotopyError, TrivialityVerdict};
use crate::chambersys::{Building, Chamber, ChamberSet};
use crate::coxeter::GenSet;

/// Resource limits for [`simply_2_connected`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cosets: usize,
    /// Tietze elimination stops before relators grow past this many letters.
    pub max_relator_letters: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cosets: 100_000, max_relator_letters: 1_000_000 }
    }
}

/// Generator `g` is letter `2g`, its inverse `2g + 1`.
type Letter = u32;

#[inline]
fn inv(l: Letter) -> Letter {
    l ^ 1
}

fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| inv(l)).collect()
}

fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&inv(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == inv(w[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Presentation {
    pub gens: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    /// Free rank and non-unit diagonal entries of a diagonal form of the
    /// relation matrix; `None` on arithmetic overflow.
    pub fn abelianization(&self) -> Option<(usize, Vec<u128>)> {
        let rows = self.relators.len();
        let cols = self.gens;
        let mut a = vec![vec![0i128; cols]; rows];
        for (i, r) in self.relators.iter().enumerate() {
            for &l in r {
                let g = (l / 2) as usize;
                a[i][g] += if l % 2 == 0 { 1 } else { -1 };
            }
        }
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let mut pivot = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && pivot.map_or(true, |(_, _, p): (usize, usize, i128)| v.unsigned_abs() < p.unsigned_abs()) {
                        pivot = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] = a[i][j].checked_sub(q.checked_mul(a[t][j])?)?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = row[j].checked_sub(q.checked_mul(row[t])?)?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(p.unsigned_abs());
                t += 1;
            }
        }
        let torsion = diag.into_iter().filter(|&d| d != 1).collect();
        Some((cols - t, torsion))
    }

    /// Eliminates generators that occur exactly once in some relator.
    pub fn tietze(&mut self, max_letters: usize) {
        let mut alive = vec![true; self.gens];
        loop {
            let mut rels: Vec<Vec<Letter>> =
                self.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
            rels.sort();
            rels.dedup();
            self.relators = rels;
            let mut best: Option<(usize, usize, usize)> = None;
            for (ri, r) in self.relators.iter().enumerate() {
                let mut count: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
                for (pos, &l) in r.iter().enumerate() {
                    let e = count.entry(l / 2).or_insert((0, pos));
                    e.0 += 1;
                }
                for (_, &(c, pos)) in count.iter() {
                    if c == 1 && best.map_or(true, |(bri, _, _)| r.len() < self.relators[bri].len()) {
                        best = Some((ri, pos, r.len()));
                    }
                }
            }
            let Some((ri, pos, _)) = best else { break };
            let r = &self.relators[ri];
            let mut rot = r[pos..].to_vec();
            rot.extend_from_slice(&r[..pos]);
            let x = rot[0];
            let g = x / 2;
            // x·C = 1, so x = C⁻¹.
            let x_is = inverse_word(&rot[1..]);
            let (g_word, g_inv_word) =
                if x % 2 == 0 { (x_is.clone(), inverse_word(&x_is)) } else { (inverse_word(&x_is), x_is) };
            let mut next = Vec::with_capacity(self.relators.len() - 1);
            let mut total = 0;
            for (i, r) in self.relators.iter().enumerate() {
                if i == ri {
                    continue;
                }
                let mut w = Vec::with_capacity(r.len());
                for &l in r {
                    if l / 2 == g {
                        w.extend_from_slice(if l % 2 == 0 { &g_word } else { &g_inv_word });
                    } else {
                        w.push(l);
                    }
                }
                let w = cyclic_reduce(&w);
                total += w.len();
                next.push(w);
            }
            if total > max_letters {
                break;
            }
            self.relators = next;
            alive[g as usize] = false;
        }
        let mut renum = vec![u32::MAX; self.gens];
        let mut k = 0;
        for (g, &a) in alive.iter().enumerate() {
            if a {
                renum[g] = k;
                k += 1;
            }
        }
        for r in self.relators.iter_mut() {
            for l in r.iter_mut() {
                *l = renum[(*l / 2) as usize] * 2 + (*l % 2);
            }
        }
        self.gens = k as usize;
    }

    /// Order of the group by Todd–Coxeter enumeration over the trivial
    /// subgroup, or `None` once more than `cap` cosets have been defined.
    pub fn coset_count(&self, cap: usize) -> Option<usize> {
        CosetTable::new(self.gens, cap).enumerate(&self.relators)
    }
}

const UNDEF: u32 = u32::MAX;

struct CosetTable {
    cols: usize,
    cap: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(gens: usize, cap: usize) -> Self {
        let cols = 2 * gens;
        CosetTable { cols, cap, table: vec![UNDEF; cols], parent: vec![0], queue: Vec::new() }
    }

    #[inline]
    fn get(&self, c: u32, x: Letter) -> u32 {
        self.table[c as usize * self.cols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: Letter, d: u32) {
        self.table[c as usize * self.cols + x as usize] = d;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: Letter) -> bool {
        if self.parent.len() >= self.cap {
            return false;
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(core::iter::repeat(UNDEF).take(self.cols));
        self.set(c, x, d);
        self.set(d, inv(x), c);
        true
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols as Letter {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, inv(x), UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let ni = self.get(nu, inv(x));
                    if ni != UNDEF {
                        self.merge(mu, ni);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, inv(x), mu);
                    }
                }
            }
        }
    }

    /// Scans `c·w` from both ends, defining cosets as needed; `false` when
    /// the cap is reached.
    fn scan_and_fill(&mut self, c: u32, w: &[Letter]) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.get(b, inv(w[j - 1])) != UNDEF {
                b = self.get(b, inv(w[j - 1]));
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, inv(w[i]), f);
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }

    fn enumerate(mut self, relators: &[Vec<Letter>]) -> Option<usize> {
        if self.cols == 0 {
            return Some(1);
        }
        let mut c = 0u32;
        while (c as usize) < self.parent.len() {
            if self.live(c) {
                for r in relators {
                    if !self.scan_and_fill(c, r) {
                        return None;
                    }
                    if !self.live(c) {
                        break;
                    }
                }
                if self.live(c) {
                    for x in 0..self.cols as Letter {
                        if self.get(c, x) == UNDEF && !self.define(c, x) {
                            return None;
                        }
                    }
                }
            }
            c += 1;
        }
        Some((0..self.parent.len() as u32).filter(|&k| self.parent[k as usize] == k).count())
    }
}

/// The edge-path group of `(subset, (∼_s)_{s ∈ S})`: one generator per
/// edge outside a breadth-first spanning tree, one relator per
/// fundamental cycle of each connected piece of `R ∩ subset` for `R` a
/// residue of rank `min(2, rank)`.
pub(crate) fn edge_path_presentation(b: &Building, subset: &ChamberSet) -> Presentation {
    let all = GenSet::all(b.rank());
    let root = subset.members()[0];
    let mut parent = vec![usize::MAX; b.num_chambers()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(c) = queue.pop_front() {
        for (_, d) in b.neighbors(c) {
            if subset.contains(d) && parent[d] == usize::MAX {
                parent[d] = c;
                queue.push_back(d);
            }
        }
    }
    let mut edge_gen: BTreeMap<(Chamber, Chamber), u32> = BTreeMap::new();
    for &c in subset.members() {
        for (_, d) in b.neighbors(c) {
            if c < d && subset.contains(d) && parent[d] != c && parent[c] != d {
                let g = edge_gen.len() as u32;
                edge_gen.insert((c, d), g);
            }
        }
    }
    let letter = |x: Chamber, y: Chamber| -> Option<Letter> {
        let key = if x < y { (x, y) } else { (y, x) };
        edge_gen.get(&key).map(|&g| 2 * g + (x > y) as u32)
    };

    let pair_types: Vec<GenSet> = if b.rank() >= 2 {
        all.subsets().filter(|j| j.len() == 2).collect()
    } else {
        vec![all]
    };
    let mut relators = Vec::new();
    for j in pair_types {
        for comp in components(b, subset, j) {
            let in_comp = ChamberSet::from_iter(b.num_chambers(), comp.iter().copied());
            let croot = comp[0];
            let mut up = BTreeMap::from([(croot, croot)]);
            let mut queue = VecDeque::from([croot]);
            while let Some(c) = queue.pop_front() {
                for s in j.iter() {
                    for &d in b.panel_chambers(c, s) {
                        if in_comp.contains(d) && !up.contains_key(&d) {
                            up.insert(d, c);
                            queue.push_back(d);
                        }
                    }
                }
            }
            // Letters along c → parent → … → root.
            let to_root = |mut c: Chamber| -> Vec<Letter> {
                let mut w = Vec::new();
                while c != croot {
                    let p = up[&c];
                    w.extend(letter(c, p));
                    c = p;
                }
                w
            };
            for &u in &comp {
                for s in j.iter() {
                    for &v in b.panel_chambers(u, s) {
                        if u < v && in_comp.contains(v) && up[&v] != u && up[&u] != v {
                            let mut w = inverse_word(&to_root(u));
                            w.extend(letter(u, v));
                            w.extend(to_root(v));
                            let w = cyclic_reduce(&w);
                            if !w.is_empty() {
                                relators.push(w);
                            }
                        }
                    }
                }
            }
        }
    }
    Presentation { gens: edge_gen.len(), relators }
}

/// Decides, within `limits`, whether `(subset, (∼_s)_{s ∈ S})` is simply
/// 2-connected. A nonzero abelianization or a finite enumeration with more
/// than one coset proves nontriviality; a single coset proves triviality.
pub fn simply_2_connected(
    b: &Building,
    subset: &ChamberSet,
    limits: &Limits,
) -> Result<TrivialityVerdict, HomotopyError> {
    let comps = components(b, subset, GenSet::all(b.rank()));
    if comps.len() != 1 {
        return Err(HomotopyError::NotConnected);
    }
    let mut pres = edge_path_presentation(b, subset);
    if pres.gens == 0 {
        return Ok(TrivialityVerdict::trivial(Certificate::GroupOrder(1)));
    }
    if let Some((free_rank, torsion)) = pres.abelianization() {
        if free_rank > 0 || !torsion.is_empty() {
            return Ok(TrivialityVerdict::nontrivial(Certificate::Abelianization { free_rank, torsion }));
        }
    }
    pres.tietze(limits.max_relator_letters);
    match pres.coset_count(limits.max_cosets) {
        Some(1) => Ok(TrivialityVerdict::trivial(Certificate::GroupOrder(1))),
        Some(n) => Ok(TrivialityVerdict::nontrivial(Certificate::GroupOrder(n))),
        None => Ok(TrivialityVerdict::inconclusive(Certificate::Exhausted(limits.max_cosets))),
    }
}

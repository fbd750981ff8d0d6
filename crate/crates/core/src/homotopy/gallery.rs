use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{Certificate, HomotopyError, TrivialityVerdict};
use crate::chambersys::{Building, Chamber, ChamberSet};
use crate::coxeter::{Gen, GenSet};

/// Replacement candidates considered per segment in [`two_homotopic`].
const MAX_REPLACEMENTS: usize = 8;

/// A gallery `(c_0, …, c_k)` with the type of each step. Repetitions
/// `c ∼_s c` are allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gallery {
    chambers: Vec<Chamber>,
    types: Vec<Gen>,
}

impl Gallery {
    pub fn new(b: &Building, chambers: Vec<Chamber>, types: Vec<Gen>) -> Result<Self, HomotopyError> {
        if chambers.is_empty() {
            return Err(HomotopyError::Empty);
        }
        if types.len() + 1 != chambers.len() {
            return Err(HomotopyError::NotAGallery(types.len().min(chambers.len())));
        }
        for (i, &s) in types.iter().enumerate() {
            let (x, y) = (chambers[i], chambers[i + 1]);
            if s >= b.rank() || x >= b.num_chambers() || y >= b.num_chambers() || !b.adjacent(x, y, s) {
                return Err(HomotopyError::NotAGallery(i));
            }
        }
        Ok(Gallery { chambers, types })
    }

    /// The gallery through the given chambers; each step takes the type of
    /// the panel shared by its ends (type 0 for a repetition).
    pub fn from_chambers(b: &Building, chambers: Vec<Chamber>) -> Result<Self, HomotopyError> {
        if chambers.is_empty() {
            return Err(HomotopyError::Empty);
        }
        let mut types = Vec::with_capacity(chambers.len() - 1);
        for (i, pair) in chambers.windows(2).enumerate() {
            if pair[0] >= b.num_chambers() || pair[1] >= b.num_chambers() {
                return Err(HomotopyError::NotAGallery(i));
            }
            let s = (0..b.rank()).find(|&s| b.adjacent(pair[0], pair[1], s));
            types.push(s.ok_or(HomotopyError::NotAGallery(i))?);
        }
        Ok(Gallery { chambers, types })
    }

    pub fn trivial(c: Chamber) -> Self {
        Gallery { chambers: vec![c], types: Vec::new() }
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn types(&self) -> &[Gen] {
        &self.types
    }

    pub fn start(&self) -> Chamber {
        self.chambers[0]
    }

    pub fn end(&self) -> Chamber {
        *self.chambers.last().unwrap()
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn reversed(&self) -> Self {
        let mut chambers = self.chambers.clone();
        chambers.reverse();
        let mut types = self.types.clone();
        types.reverse();
        Gallery { chambers, types }
    }

    /// `G·H`, defined when `G` ends where `H` starts.
    pub fn concat(&self, other: &Gallery) -> Result<Self, HomotopyError> {
        if self.end() != other.start() {
            return Err(HomotopyError::EndpointMismatch);
        }
        let mut out = self.clone();
        out.chambers.extend_from_slice(&other.chambers[1..]);
        out.types.extend_from_slice(&other.types);
        Ok(out)
    }
}

/// Whether `G = X·G₀·Y` and `H = X·H₀·Y` with `G₀`, `H₀` both `J`-galleries
/// for one `J` with `|J| ≤ 2`.
pub fn elementary_2_homotopic(g: &Gallery, h: &Gallery) -> bool {
    if g.start() != h.start() || g.end() != h.end() {
        return false;
    }
    let (ng, nh) = (g.len(), h.len());
    let mut pmax = 0;
    while pmax < ng.min(nh) && g.types[pmax] == h.types[pmax] && g.chambers[pmax + 1] == h.chambers[pmax + 1] {
        pmax += 1;
    }
    let mut qmax = 0;
    while qmax < ng.min(nh)
        && g.types[ng - 1 - qmax] == h.types[nh - 1 - qmax]
        && g.chambers[ng - 1 - qmax] == h.chambers[nh - 1 - qmax]
    {
        qmax += 1;
    }
    for i in 0..=pmax {
        for j in 0..=qmax {
            if i + j > ng || i + j > nh {
                continue;
            }
            let ty = GenSet::from_gens(g.types[i..ng - j].iter().chain(&h.types[i..nh - j]).copied());
            if ty.len() <= 2 {
                return true;
            }
        }
    }
    false
}

/// Bounded search for a 2-homotopy between `G` and `H`; see
/// [`two_homotopic_within`].
pub fn two_homotopic(
    b: &Building,
    g: &Gallery,
    h: &Gallery,
    bound: usize,
) -> Result<TrivialityVerdict, HomotopyError> {
    two_homotopic_within(b, g, h, bound, None)
}

/// Breadth-first search from the closed gallery `G·H⁻¹` towards the
/// trivial gallery. A move replaces a segment lying in a residue of rank
/// at most 2 by a shortest gallery between its ends inside that residue
/// (and inside `subset`, when given) that is no longer than the segment.
/// At most `bound` galleries are visited.
pub fn two_homotopic_within(
    b: &Building,
    g: &Gallery,
    h: &Gallery,
    bound: usize,
    subset: Option<&ChamberSet>,
) -> Result<TrivialityVerdict, HomotopyError> {
    if g.start() != h.start() || g.end() != h.end() {
        return Err(HomotopyError::EndpointMismatch);
    }
    if destutter(g.chambers()) == destutter(h.chambers()) {
        return Ok(TrivialityVerdict::trivial(Certificate::Depth(0)));
    }
    let full;
    let subset = match subset {
        Some(s) => s,
        None => {
            full = ChamberSet::full(b.num_chambers());
            &full
        }
    };
    let mut lp = g.chambers().to_vec();
    lp.extend(h.chambers().iter().rev().skip(1));
    let start = destutter(&lp);
    let target = vec![g.start()];
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((cur, depth)) = queue.pop_front() {
        if cur == target {
            return Ok(TrivialityVerdict::trivial(Certificate::Depth(depth)));
        }
        for next in moves(b, &cur, subset) {
            if seen.len() >= bound {
                return Ok(TrivialityVerdict::inconclusive(Certificate::Exhausted(seen.len())));
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(TrivialityVerdict::inconclusive(Certificate::Exhausted(seen.len())))
}

fn destutter(chambers: &[Chamber]) -> Vec<Chamber> {
    let mut out: Vec<Chamber> = Vec::with_capacity(chambers.len());
    for &c in chambers {
        if out.last() != Some(&c) {
            out.push(c);
        }
    }
    out
}

fn step_type(b: &Building, x: Chamber, y: Chamber) -> Gen {
    (0..b.rank()).find(|&s| b.adjacent(x, y, s)).expect("consecutive chambers are adjacent")
}

fn moves(b: &Building, cur: &[Chamber], subset: &ChamberSet) -> Vec<Vec<Chamber>> {
    let mut out = Vec::new();
    let types: Vec<Gen> = cur.windows(2).map(|p| step_type(b, p[0], p[1])).collect();
    for i in 0..types.len() {
        let mut ty = GenSet::EMPTY;
        let mut searches: BTreeMap<GenSet, (Vec<u32>, Vec<Vec<Chamber>>)> = BTreeMap::new();
        for j in i..types.len() {
            ty = ty.with(types[j]);
            if ty.len() > 2 {
                break;
            }
            let seg_len = j + 1 - i;
            if seg_len < 2 {
                continue;
            }
            let (dist, preds) = searches.entry(ty).or_insert_with(|| restricted_bfs(b, cur[i], ty, subset));
            let end = cur[j + 1];
            let d = dist[end] as usize;
            if d > seg_len {
                continue;
            }
            for path in shortest_paths(preds, cur[i], end) {
                if path.len() - 1 == seg_len && path[..] == cur[i..=j + 1] {
                    continue;
                }
                let mut next = cur[..i].to_vec();
                next.extend_from_slice(&path);
                next.extend_from_slice(&cur[j + 2..]);
                out.push(destutter(&next));
            }
        }
    }
    out
}

fn restricted_bfs(b: &Building, x: Chamber, ty: GenSet, subset: &ChamberSet) -> (Vec<u32>, Vec<Vec<Chamber>>) {
    let n = b.num_chambers();
    let mut dist = vec![u32::MAX; n];
    let mut preds = vec![Vec::new(); n];
    dist[x] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for s in ty.iter() {
            for &z in b.panel_chambers(y, s) {
                if z == y || !subset.contains(z) {
                    continue;
                }
                if dist[z] == u32::MAX {
                    dist[z] = dist[y] + 1;
                    queue.push_back(z);
                }
                if dist[z] == dist[y] + 1 {
                    preds[z].push(y);
                }
            }
        }
    }
    (dist, preds)
}

fn shortest_paths(preds: &[Vec<Chamber>], from: Chamber, to: Chamber) -> Vec<Vec<Chamber>> {
    if to != from && preds[to].is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![vec![to]];
    while let Some(path) = stack.pop() {
        if out.len() >= MAX_REPLACEMENTS {
            break;
        }
        let head = *path.last().unwrap();
        if head == from {
            let mut p = path;
            p.reverse();
            out.push(p);
            continue;
        }
        for &p in preds[head].iter().rev() {
            let mut next = path.clone();
            next.push(p);
            stack.push(next);
        }
    }
    out
}

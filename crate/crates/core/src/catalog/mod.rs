//! Concrete finite buildings used as fixtures: Coxeter complexes,
//! generalized digons, flag complexes of `PG(2,q)` and `PG(3,q)`, the
//! symplectic quadrangle `W(q)`, and direct products.
//!
//! Points, lines and planes are ordered by their normalized coordinate
//! vectors so that generated chamber numberings are stable.

mod field;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::chambersys::{BuildError, Building, Chamber};
use crate::coxeter::{CoxeterError, CoxeterMatrix, WeylTable, DEFAULT_CAP};
use field::{dot, in_span, projective_points, rref, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unsupported field order q = {0} (only 2 and 3)")]
    UnsupportedQ(u32),
    #[error("digon sides must have at least two elements, got {0}x{1}")]
    DigonTooSmall(usize, usize),
    #[error("generator name {0:?} occurs in both factors")]
    NameClash(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// A fixture family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometrySpec {
    Thin(CoxeterMatrix),
    Digon { a: usize, b: usize },
    Pg2 { q: u32 },
    Pg3 { q: u32 },
    Sp4 { q: u32 },
    Product(Box<GeometrySpec>, Box<GeometrySpec>),
}

impl GeometrySpec {
    pub fn build(&self) -> Result<Building, CatalogError> {
        match self {
            GeometrySpec::Thin(m) => thin(m),
            GeometrySpec::Digon { a, b } => digon(*a, *b),
            GeometrySpec::Pg2 { q } => pg2(*q),
            GeometrySpec::Pg3 { q } => pg3(*q),
            GeometrySpec::Sp4 { q } => sp4(*q),
            GeometrySpec::Product(x, y) => product(&x.build()?, &y.build()?),
        }
    }

    /// Identifier used as the bundle name.
    pub fn name(&self) -> String {
        match self {
            GeometrySpec::Thin(m) => {
                let rows: Vec<String> = m
                    .rows()
                    .iter()
                    .flat_map(|r| r.iter().map(|v| v.to_string()))
                    .collect();
                format!("thin_{}", rows.join(""))
            }
            GeometrySpec::Digon { a, b } => format!("digon{a}x{b}"),
            GeometrySpec::Pg2 { q } => format!("pg2q{q}"),
            GeometrySpec::Pg3 { q } => format!("pg3q{q}"),
            GeometrySpec::Sp4 { q } => format!("sp4q{q}"),
            GeometrySpec::Product(x, y) => format!("{}_x_{}", x.name(), y.name()),
        }
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn field_order(q: u32) -> Result<u8, CatalogError> {
    match q {
        2 | 3 => Ok(q as u8),
        _ => Err(CatalogError::UnsupportedQ(q)),
    }
}

fn weyl(m: &CoxeterMatrix) -> Result<Arc<WeylTable>, CatalogError> {
    Ok(Arc::new(WeylTable::enumerate(m, DEFAULT_CAP)?))
}

/// Groups chamber ids by a key; each group becomes a panel.
fn panels_by_key<K: Ord>(n: usize, key: impl Fn(Chamber) -> K) -> Vec<Vec<Chamber>> {
    let mut map: alloc::collections::BTreeMap<K, Vec<Chamber>> = Default::default();
    for c in 0..n {
        map.entry(key(c)).or_default().push(c);
    }
    map.into_values().collect()
}

/// The Coxeter complex of `W`: chambers are the elements of `W` and the
/// `s`-panels are the pairs `{w, ws}`.
pub fn thin(matrix: &CoxeterMatrix) -> Result<Building, CatalogError> {
    let w = weyl(matrix)?;
    let n = w.size();
    let panels = (0..w.rank())
        .map(|s| {
            w.elements()
                .filter(|&x| w.length(w.right(x, s)) > w.length(x))
                .map(|x| vec![x.idx(), w.right(x, s).idx()])
                .collect()
        })
        .collect();
    Ok(Building::new(w, n, panels)?)
}

/// The generalized digon with `a` points and `b` lines, every point
/// incident with every line. Chamber `i·b + j` is the pair (point `i`,
/// line `j`).
pub fn digon(a: usize, b: usize) -> Result<Building, CatalogError> {
    if a < 2 || b < 2 {
        return Err(CatalogError::DigonTooSmall(a, b));
    }
    let m = CoxeterMatrix::new(names(&["p", "l"]), vec![vec![1, 2], vec![2, 1]])?;
    let w = weyl(&m)?;
    let n = a * b;
    let p_panels = panels_by_key(n, |c| c % b);
    let l_panels = panels_by_key(n, |c| c / b);
    Ok(Building::new(w, n, vec![p_panels, l_panels])?)
}

/// Flags of the projective plane `PG(2, q)`, type `A2` with generators
/// `p` (change the point) and `l` (change the line).
pub fn pg2(q: u32) -> Result<Building, CatalogError> {
    let q = field_order(q)?;
    let points = projective_points(q, 3);
    let lines = projective_points(q, 3);
    let mut flags = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for (j, a) in lines.iter().enumerate() {
            if dot(q, x, a) == 0 {
                flags.push((i, j));
            }
        }
    }
    let m = CoxeterMatrix::new(names(&["p", "l"]), vec![vec![1, 3], vec![3, 1]])?;
    let n = flags.len();
    let p_panels = panels_by_key(n, |c| flags[c].1);
    let l_panels = panels_by_key(n, |c| flags[c].0);
    Ok(Building::new(weyl(&m)?, n, vec![p_panels, l_panels])?)
}

/// All 2-dimensional subspaces of `F_q^dim`, as echelon bases, sorted.
fn lines_of(q: u8, points: &[Vector]) -> Vec<Vec<Vector>> {
    let mut out = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            out.push(rref(q, &[x.clone(), y.clone()]));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Flags (point, line, plane) of `PG(3, q)`, type `A3` with generators
/// `p`, `l`, `h`.
pub fn pg3(q: u32) -> Result<Building, CatalogError> {
    let q = field_order(q)?;
    let points = projective_points(q, 4);
    let planes = projective_points(q, 4);
    let lines = lines_of(q, &points);
    let mut flags = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for (j, l) in lines.iter().enumerate() {
            if !in_span(q, l, x) {
                continue;
            }
            for (k, h) in planes.iter().enumerate() {
                if l.iter().all(|v| dot(q, v, h) == 0) {
                    flags.push((i, j, k));
                }
            }
        }
    }
    let m = CoxeterMatrix::new(
        names(&["p", "l", "h"]),
        vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]],
    )?;
    let n = flags.len();
    let p_panels = panels_by_key(n, |c| (flags[c].1, flags[c].2));
    let l_panels = panels_by_key(n, |c| (flags[c].0, flags[c].2));
    let h_panels = panels_by_key(n, |c| (flags[c].0, flags[c].1));
    Ok(Building::new(weyl(&m)?, n, vec![p_panels, l_panels, h_panels])?)
}

/// `B(x, y) = x0·y2 − x2·y0 + x1·y3 − x3·y1`.
fn symplectic(q: u8, x: &[u8], y: &[u8]) -> u8 {
    let q32 = q as u32;
    let t = |a: u8, b: u8| a as u32 * b as u32;
    let pos = t(x[0], y[2]) + t(x[1], y[3]);
    let neg = t(x[2], y[0]) + t(x[3], y[1]);
    ((pos + q32 * q32 * 4 - neg) % q32) as u8
}

/// Point-line flags of the symplectic generalized quadrangle `W(q)`, type
/// `B2` with generators `p` and `l`.
pub fn sp4(q: u32) -> Result<Building, CatalogError> {
    let q = field_order(q)?;
    let points = projective_points(q, 4);
    let lines: Vec<Vec<Vector>> = lines_of(q, &points)
        .into_iter()
        .filter(|l| symplectic(q, &l[0], &l[1]) == 0)
        .collect();
    let mut flags = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for (j, l) in lines.iter().enumerate() {
            if in_span(q, l, x) {
                flags.push((i, j));
            }
        }
    }
    let m = CoxeterMatrix::new(names(&["p", "l"]), vec![vec![1, 4], vec![4, 1]])?;
    let n = flags.len();
    let p_panels = panels_by_key(n, |c| flags[c].1);
    let l_panels = panels_by_key(n, |c| flags[c].0);
    Ok(Building::new(weyl(&m)?, n, vec![p_panels, l_panels])?)
}

/// Direct product: chamber `x1·n2 + x2` is the pair `(x1, x2)`, and the
/// generators of `b1` come first.
pub fn product(b1: &Building, b2: &Building) -> Result<Building, CatalogError> {
    let m1 = b1.weyl().matrix();
    let m2 = b2.weyl().matrix();
    if let Some(g) = m1.gens().iter().find(|g| m2.gens().contains(g)) {
        return Err(CatalogError::NameClash(g.clone()));
    }
    let m = m1.direct_sum(m2)?;
    let (n1, n2) = (b1.num_chambers(), b2.num_chambers());
    let mut panels = Vec::new();
    for s in 0..b1.rank() {
        let mut ps = Vec::new();
        for p in b1.panels(s) {
            for x2 in 0..n2 {
                ps.push(p.iter().map(|&x1| x1 * n2 + x2).collect());
            }
        }
        panels.push(ps);
    }
    for s in 0..b2.rank() {
        let mut ps = Vec::new();
        for x1 in 0..n1 {
            for p in b2.panels(s) {
                ps.push(p.iter().map(|&x2| x1 * n2 + x2).collect());
            }
        }
        panels.push(ps);
    }
    Ok(Building::new(weyl(&m)?, n1 * n2, panels)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chamber_counts() {
        assert_eq!(pg2(2).unwrap().num_chambers(), 21);
        assert_eq!(pg2(3).unwrap().num_chambers(), 52);
        assert_eq!(sp4(2).unwrap().num_chambers(), 45);
        assert_eq!(digon(3, 4).unwrap().num_chambers(), 12);
        assert!(matches!(pg2(4), Err(CatalogError::UnsupportedQ(4))));
    }

    #[test]
    fn digon_panel_sizes() {
        let b = digon(3, 4).unwrap();
        assert!(b.panels(0).iter().all(|p| p.len() == 3));
        assert!(b.panels(1).iter().all(|p| p.len() == 4));
        b.validate().unwrap();
    }

    #[test]
    fn thin_complexes() {
        let a1 = thin(&CoxeterMatrix::from_type_name("A1").unwrap()).unwrap();
        assert_eq!(a1.num_chambers(), 2);
        assert_eq!(a1.panels(0).len(), 1);
        let a2 = thin(&CoxeterMatrix::from_type_name("A2").unwrap()).unwrap();
        assert_eq!(a2.panels(0).len(), 3);
        let w = a2.weyl();
        for x in w.elements() {
            for y in w.elements() {
                assert_eq!(a2.delta(x.idx(), y.idx()), w.mul(w.inv(x), y));
            }
        }
    }

    #[test]
    fn products() {
        let a = thin(&CoxeterMatrix::from_type_name("A1").unwrap()).unwrap();
        assert!(matches!(product(&a, &a), Err(CatalogError::NameClash(_))));
        let fano = pg2(2).unwrap();
        let t = thin(&CoxeterMatrix::new(names(&["u"]), vec![vec![1]]).unwrap()).unwrap();
        let b = product(&fano, &t).unwrap();
        assert_eq!(b.num_chambers(), 42);
        b.validate().unwrap();
    }

    #[test]
    fn spec_names() {
        assert_eq!(GeometrySpec::Pg2 { q: 2 }.name(), "pg2q2");
        assert_eq!(GeometrySpec::Digon { a: 3, b: 3 }.name(), "digon3x3");
    }
}

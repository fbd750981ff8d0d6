//! Vectors and subspaces over the prime fields F2 and F3.

use alloc::vec::Vec;

pub(crate) type Vector = Vec<u8>;

/// Nonzero vectors of length `dim` whose first nonzero entry is 1, in
/// lexicographic order: the points of `PG(dim-1, q)`.
pub(crate) fn projective_points(q: u8, dim: usize) -> Vec<Vector> {
    let total = (q as usize).pow(dim as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = alloc::vec![0u8; dim];
        let mut c = code;
        for i in (0..dim).rev() {
            v[i] = (c % q as usize) as u8;
            c /= q as usize;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

pub(crate) fn dot(q: u8, a: &[u8], b: &[u8]) -> u8 {
    (a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % q as u32) as u8
}

fn inv(q: u8, x: u8) -> u8 {
    (1..q).find(|&y| (x as u32 * y as u32) % q as u32 == 1).expect("nonzero element")
}

/// Reduced row echelon form of the span of `rows`, with zero rows removed.
pub(crate) fn rref(q: u8, rows: &[Vector]) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let k = inv(q, m[r][c]);
        for x in m[r].iter_mut() {
            *x = ((*x as u32 * k as u32) % q as u32) as u8;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] as u32;
                for j in 0..cols {
                    let sub = (f * m[r][j] as u32) % q as u32;
                    m[i][j] = ((m[i][j] as u32 + q as u32 - sub) % q as u32) as u8;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

/// Whether `v` lies in the row space of the echelon basis `basis`.
pub(crate) fn in_span(q: u8, basis: &[Vector], v: &[u8]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rref(q, &rows).len() == basis.len()
}

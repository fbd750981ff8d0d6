//! Exact arithmetic in the real multiquadratic field Q(√2, √3, √5).
//!
//! An element is stored as eight rational coordinates over the basis
//! `√d` for the square-free products `d` of subsets of {2, 3, 5}. The basis
//! index is a bitmask: bit 0 is √2, bit 1 is √3, bit 2 is √5.

use core::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};

pub(crate) type Rational = Ratio<i64>;

const PRIMES: [i64; 3] = [2, 3, 5];
const DIM: usize = 8;

/// Product of the primes selected by `mask`.
const fn radicand(mask: usize) -> i64 {
    let mut out = 1;
    let mut i = 0;
    while i < 3 {
        if mask & (1 << i) != 0 {
            out *= PRIMES[i];
        }
        i += 1;
    }
    out
}

/// An element of Q(√2, √3, √5).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surd([Rational; DIM]);

impl Surd {
    pub fn zero() -> Self {
        Surd([Rational::zero(); DIM])
    }

    pub fn from_int(v: i64) -> Self {
        let mut out = Self::zero();
        out.0[0] = Rational::from_integer(v);
        out
    }

    /// `num/den * √radicand` where `radicand` is a product of distinct primes
    /// from {2, 3, 5}.
    pub fn term(num: i64, den: i64, radicand_mask: usize) -> Self {
        let mut out = Self::zero();
        out.0[radicand_mask] = Rational::new(num, den);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(b)?;
        }
        Some(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.0.iter_mut() {
            *a = -*a;
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out = Self::zero();
        for i in 0..DIM {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                if other.0[j].is_zero() {
                    continue;
                }
                // √a·√b = gcd-part · √(a·b / gcd²); with square-free bitmasks
                // the shared primes come out as a rational factor.
                let shared = Rational::from_integer(radicand(i & j));
                let c = self.0[i].checked_mul(&other.0[j])?.checked_mul(&shared)?;
                let k = i ^ j;
                out.0[k] = out.0[k].checked_add(&c)?;
            }
        }
        Some(out)
    }

    /// Exact sign, decided by descending the tower
    /// Q ⊂ Q(√2) ⊂ Q(√2,√3) ⊂ Q(√2,√3,√5).
    pub fn signum(&self) -> Option<Ordering> {
        sign_at_level(&self.0, 3)
    }

    /// Floating-point approximation (diagnostics only).
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (mask, c) in self.0.iter().enumerate() {
            let c = *c.numer() as f64 / *c.denom() as f64;
            acc += c * libm_sqrt(radicand(mask) as f64);
        }
        acc
    }
}

fn libm_sqrt(x: f64) -> f64 {
    // Newton iteration; only used for diagnostics in no_std builds.
    if x <= 0.0 {
        return 0.0;
    }
    let mut g = x;
    for _ in 0..60 {
        g = 0.5 * (g + x / g);
    }
    g
}

fn sign_of(r: &Rational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of an element whose coordinates vanish outside the first
/// `2^level` basis slots.
fn sign_at_level(x: &[Rational; DIM], level: usize) -> Option<Ordering> {
    if level == 0 {
        return Some(sign_of(&x[0]));
    }
    let bit = 1usize << (level - 1);
    let mut a = [Rational::zero(); DIM];
    let mut b = [Rational::zero(); DIM];
    for i in 0..bit {
        a[i] = x[i];
        b[i] = x[i | bit];
    }
    let sa = sign_at_level(&a, level - 1)?;
    let sb = sign_at_level(&b, level - 1)?;
    if sb == Ordering::Equal {
        return Some(sa);
    }
    if sa == Ordering::Equal || sa == sb {
        return Some(sb);
    }
    // x = a + b√p with opposite signs: compare a² against p·b².
    let sa_ = Surd(a);
    let sb_ = Surd(b);
    let a2 = sa_.checked_mul(&sa_)?;
    let b2 = sb_.checked_mul(&sb_)?;
    let p = Rational::from_integer(PRIMES[level - 1]);
    let mut d = a2.0;
    for i in 0..bit {
        d[i] = d[i].checked_sub(&b2.0[i].checked_mul(&p)?)?;
    }
    let sd = sign_at_level(&d, level - 1)?;
    Some(match sd {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => sa,
        Ordering::Less => sb,
    })
}

/// `2·cos(π/m)` for the supported Coxeter matrix entries; `m = 0` encodes ∞
/// and yields 2.
pub fn two_cos_pi_over(m: u32) -> Option<Surd> {
    Some(match m {
        0 => Surd::from_int(2),
        2 => Surd::zero(),
        3 => Surd::from_int(1),
        4 => Surd::term(1, 1, 0b001),
        5 => Surd::term(1, 2, 0).checked_add(&Surd::term(1, 2, 0b100))?,
        6 => Surd::term(1, 1, 0b010),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_of_radicals() {
        let r2 = Surd::term(1, 1, 0b001);
        let r3 = Surd::term(1, 1, 0b010);
        let r6 = r2.checked_mul(&r3).unwrap();
        assert_eq!(r6, Surd::term(1, 1, 0b011));
        assert_eq!(r2.checked_mul(&r2).unwrap(), Surd::from_int(2));
        assert_eq!(r6.checked_mul(&r3).unwrap(), Surd::term(3, 1, 0b001));
    }

    #[test]
    fn golden_ratio_identity() {
        // φ = 2cos(π/5) satisfies φ² = φ + 1.
        let phi = two_cos_pi_over(5).unwrap();
        let lhs = phi.checked_mul(&phi).unwrap();
        let rhs = phi.checked_add(&Surd::from_int(1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn signs_near_cancellation() {
        // √2 + √3 - √10 ≈ -0.016
        let x = Surd::term(1, 1, 0b001)
            .checked_add(&Surd::term(1, 1, 0b010))
            .unwrap()
            .checked_sub(&Surd::term(1, 1, 0b101))
            .unwrap();
        assert_eq!(x.signum(), Some(Ordering::Less));
        assert_eq!(x.neg().signum(), Some(Ordering::Greater));
        // √3 + √5 - √15 ≈ 0.095
        let z = Surd::term(1, 1, 0b010)
            .checked_add(&Surd::term(1, 1, 0b100))
            .unwrap()
            .checked_sub(&Surd::term(1, 1, 0b110))
            .unwrap();
        assert_eq!(z.signum(), Some(Ordering::Greater));
        // 7 - 5√2 ≈ -0.071
        let y = Surd::from_int(7).checked_sub(&Surd::term(5, 1, 0b001)).unwrap();
        assert_eq!(y.signum(), Some(Ordering::Less));
        assert_eq!(Surd::zero().signum(), Some(Ordering::Equal));
    }

    #[test]
    fn sign_agrees_with_float() {
        let samples = [
            Surd::term(3, 2, 0b110).checked_sub(&Surd::term(7, 3, 0b011)).unwrap(),
            Surd::term(-1, 4, 0b111).checked_add(&Surd::term(5, 1, 0)).unwrap(),
            Surd::term(2, 1, 0b100).checked_sub(&Surd::term(3, 1, 0b001)).unwrap(),
        ];
        for s in &samples {
            let f = s.to_f64();
            let expect = if f > 0.0 { Ordering::Greater } else { Ordering::Less };
            assert_eq!(s.signum(), Some(expect), "{f}");
        }
    }
}

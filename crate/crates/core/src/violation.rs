use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A failed axiom or lemma check, with the chambers that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub chambers: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: &'static str, chambers: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation { axiom, chambers, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at chambers {:?}", self.axiom, self.chambers)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl core::error::Error for Violation {}

/// How many instances a lemma check covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaStats {
    pub name: &'static str,
    pub instances: usize,
}

/// Returns `Err` with a [`Violation`] unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $axiom:expr, $chambers:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::Violation::new($axiom, $chambers, alloc::format!($($fmt)+)).into());
        }
    };
}
pub(crate) use ensure;

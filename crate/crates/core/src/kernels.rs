//! Kernels of the power multipliers `nu^k` for `F^k` and `G^k`.
//!
//! `nu^k(M) = exp(pi i k v / 6)` with `v = f(M)` or `g(M)`, so `M` is in the
//! kernel iff `k v = 0 mod 12`. [`in_kernel_by_value`] evaluates that
//! directly; [`in_kernel_by_congruence`] uses only congruences on the
//! entries of `M`. The two must agree everywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::residue;
use crate::error::Result;
use crate::multiplier::{branch_of, branch_value, Level, Parity, ResidueClass};
use crate::sl2z::Mat2;

pub mod lemma;

/// Which kernel description applies, determined by `k mod 12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelFamily {
    /// `k = 0`: the whole group.
    Whole,
    /// `k = 6`.
    Six,
    /// `k = 3, 9`.
    Three,
    /// `k = 4, 8`.
    Four,
    /// `k = 2, 10`: intersection of the `Six` and `Four` kernels.
    Two,
    /// `k = 1, 5, 7, 11`: intersection of the `Three` and `Four` kernels.
    Unit,
}

/// The exponent `k` of `F^k` or `G^k`, reduced mod 12, with its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PowerClass {
    k_mod_12: u8,
    level: Level,
}

impl PowerClass {
    pub fn new(k: i64, level: Level) -> Self {
        PowerClass {
            k_mod_12: k.rem_euclid(12) as u8,
            level,
        }
    }

    pub fn k_mod_12(self) -> u8 {
        self.k_mod_12
    }

    pub fn level(self) -> Level {
        self.level
    }

    pub fn family(self) -> KernelFamily {
        match self.k_mod_12 {
            0 => KernelFamily::Whole,
            6 => KernelFamily::Six,
            3 | 9 => KernelFamily::Three,
            4 | 8 => KernelFamily::Four,
            2 | 10 => KernelFamily::Two,
            _ => KernelFamily::Unit,
        }
    }

    /// `12 / gcd(k, 12)`, the order of the image of `nu^k`.
    pub fn image_size(self) -> usize {
        12 / usize::from(self.k_mod_12).gcd(&12)
    }

    /// Every `PowerClass` with `k` in `0..12`.
    pub fn all(level: Level) -> impl Iterator<Item = PowerClass> {
        (0..12).map(move |k| PowerClass::new(k, level))
    }
}

impl fmt::Display for PowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} level={}", self.k_mod_12, self.level)
    }
}

/// `nu^k(M) = 1`, i.e. `k v(M) = 0 mod 12`.
pub fn in_kernel_by_value(m: &Mat2, pc: PowerClass) -> Result<bool> {
    let v = branch_value(m, pc.level)?;
    Ok((v * BigInt::from(pc.k_mod_12)).is_multiple_of(&BigInt::from(12)))
}

type Predicate = fn(&Mat2) -> bool;

/// Kernel membership from congruences on the entries alone.
pub fn in_kernel_by_congruence(m: &Mat2, pc: PowerClass) -> Result<bool> {
    // Validates membership before any predicate runs.
    branch_of(m, pc.level)?;
    let (six, three, four): (Predicate, Predicate, Predicate) = match pc.level {
        Level::Three => (six_level3, three_level3, four_level3),
        Level::Four => (six_level4, three_level4, four_level4),
    };
    Ok(match pc.family() {
        KernelFamily::Whole => true,
        KernelFamily::Six => six(m),
        KernelFamily::Three => three(m),
        KernelFamily::Four => four(m),
        KernelFamily::Two => six(m) && four(m),
        KernelFamily::Unit => three(m) && four(m),
    })
}

/// `S^(level j)` for `j` below the image size; their values are distinct and
/// exhaust the image of `nu^k`.
pub fn kernel_coset_reps(pc: PowerClass) -> Vec<Mat2> {
    let step = i64::from(pc.level.modulus());
    (0..pc.image_size() as i64)
        .map(|j| Mat2::s_pow(step * j))
        .collect()
}

fn congruent(x: &BigInt, y: i64, m: u64) -> bool {
    residue(&(x - y), m) == 0
}

fn reduced(m: &Mat2, n: u64) -> [u64; 4] {
    m.entries().map(|x| residue(x, n))
}

/// `x / n` when `n | x`.
fn quotient(x: &BigInt, n: i64) -> Option<BigInt> {
    let (q, r) = x.div_rem(&BigInt::from(n));
    (r == BigInt::from(0)).then_some(q)
}

/// `f` even: `M = I, (0,1;1,1), (1,1;1,0) mod 2`.
pub(crate) fn six_level3(m: &Mat2) -> bool {
    matches!(reduced(m, 2), [1, 0, 0, 1] | [0, 1, 1, 1] | [1, 1, 1, 0])
}

/// `f = 0 mod 4`, keyed by branch.
pub(crate) fn three_level3(m: &Mat2) -> bool {
    let branch = branch_of(m, Level::Three).expect("caller checked membership");
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    match (branch.residue_class, branch.c_parity) {
        (ResidueClass::PlusMinusIdentity, Parity::Odd) => congruent(&(a + d), -1, 4),
        (ResidueClass::PlusMinusIdentity, Parity::Even) => congruent(&(b - c - d), -1, 4),
        (ResidueClass::PlusMinusT, Parity::Odd) => congruent(&(a + d), 1, 4),
        (ResidueClass::PlusMinusT, Parity::Even) => congruent(&(b - c + d), -1, 4),
        (ResidueClass::PlusMinusS2Class, _) => unreachable!("level 3 has no S^2 class"),
    }
}

/// `f = 0 mod 3`: `b/3 = c/3 mod 3` when `3 | b, c`; `a/3 = -d/3 mod 3` when `3 | a, d`.
pub(crate) fn four_level3(m: &Mat2) -> bool {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    if let (Some(b3), Some(c3)) = (quotient(b, 3), quotient(c, 3)) {
        return congruent(&(b3 - c3), 0, 3);
    }
    if let (Some(a3), Some(d3)) = (quotient(a, 3), quotient(d, 3)) {
        return congruent(&(a3 + d3), 0, 3);
    }
    false
}

/// `g` even: `b - c = 0 mod 8` when `b, c` even; `a + d = 4 mod 8` when `a, d` even.
pub(crate) fn six_level4(m: &Mat2) -> bool {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    if residue(c, 2) == 0 {
        congruent(&(b - c), 0, 8)
    } else {
        congruent(&(a + d), 4, 8)
    }
}

/// `g = 0 mod 4`.
pub(crate) fn three_level4(m: &Mat2) -> bool {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    if residue(c, 2) == 1 {
        return match quotient(&(a + d), 4) {
            Some(q) => congruent(&q, -1, 4),
            None => false,
        };
    }
    let Some(q) = quotient(&(b - c), 4) else {
        return false;
    };
    if residue(b, 4) == 0 {
        congruent(&(q + d), 1, 4)
    } else {
        congruent(&(q - d), -1, 4)
    }
}

/// `g = 0 mod 3`: `M = +-I, +-T, +-(1,1;1,-1), +-(1,-1;-1,-1) mod 3`.
pub(crate) fn four_level4(m: &Mat2) -> bool {
    const CLASSES: [[i64; 4]; 4] = [[1, 0, 0, 1], [0, -1, 1, 0], [1, 1, 1, -1], [1, -1, -1, -1]];
    let r = reduced(m, 3);
    CLASSES.iter().any(|e| {
        let plus = e.map(|x| x.rem_euclid(3) as u64);
        let minus = e.map(|x| (-x).rem_euclid(3) as u64);
        r == plus || r == minus
    })
}

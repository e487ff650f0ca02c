//! Exact multiplier systems.
//!
//! `nu_eta` is the eta multiplier on all of `SL(2, Z)`. For the weight-one
//! quotients
//!
//! ```text
//! F(tau) = eta((tau - 1)/3) eta((tau + 1)/3)   on Gamma_{theta,3}
//! G(tau) = eta((tau - 1)/4) eta((tau + 1)/4)   on Gamma_{theta,4}
//! ```
//!
//! the multipliers are characters `nu_F = exp(pi i f / 6)`, `nu_G = exp(pi i g / 6)`
//! with integer-valued branch functions `f`, `g`. They are computed two ways:
//! from the closed forms ([`f_value`], [`g_value`]) and by splitting `M` into
//! two matrices acting on the shifted arguments ([`nu_via_decomposition`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::arith::{residue, symbol_lower_star, symbol_upper_star};
use crate::error::{Error, Result};
use crate::root24::Root24;
use crate::sl2z::Mat2;

/// The two levels for which multipliers are implemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Three,
    Four,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::Three, Level::Four];

    pub fn modulus(self) -> u32 {
        match self {
            Level::Three => 3,
            Level::Four => 4,
        }
    }
}

impl TryFrom<u32> for Level {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            3 => Ok(Level::Three),
            4 => Ok(Level::Four),
            other => Err(Error::UnsupportedLevel(other)),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.modulus())
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.modulus())
    }
}

/// `M` lies in `Gamma_{theta,N}`: `a = d` and `b = -c` mod `N`.
pub fn membership(m: &Mat2, n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidModulus {
            modulus: 0,
            min: 1,
            max: u32::MAX.into(),
        });
    }
    let n = BigInt::from(n);
    Ok((m.a() - m.d()).is_multiple_of(&n) && (m.b() + m.c()).is_multiple_of(&n))
}

fn require_member(m: &Mat2, level: Level) -> Result<()> {
    if membership(m, level.modulus())? {
        Ok(())
    } else {
        Err(Error::NotMember {
            matrix: m.to_string(),
            level: level.modulus(),
        })
    }
}

/// The eta multiplier, Knopp's closed formula with `sign(0) = +1`.
///
/// ```text
/// c odd:  (d/c)^* exp(pi i/12 [(a+d)c - bd(c^2-1) - 3c])
/// c even: (c/d)_* exp(pi i/12 [(a+d)c - bd(c^2-1) + 3d - 3 - 3cd])
/// ```
pub fn nu_eta(m: &Mat2) -> Root24 {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let base: BigInt = (a + d) * c - b * d * (c * c - 1);
    if c.is_odd() {
        let symbol = symbol_upper_star(d, c).expect("rows of a unimodular matrix are coprime");
        Root24::from_signed_twelfth(symbol, &(base - c * 3))
    } else {
        let symbol = symbol_lower_star(c, d).expect("d is odd when c is even");
        Root24::from_signed_twelfth(symbol, &(base + d * 3 - 3 - c * d * 3))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidueClass {
    /// `+-(1, 0; 0, 1)` mod the level.
    PlusMinusIdentity,
    /// `+-(0, -1; 1, 0)` mod the level.
    PlusMinusT,
    /// Level 4 only: `+-(1, 2; 2, 1)` (c even) and `+-(2, -1; 1, 2)` (c odd).
    PlusMinusS2Class,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: &BigInt) -> Self {
        if x.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Which closed-form case applies to a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplierBranch {
    pub level: Level,
    pub residue_class: ResidueClass,
    pub c_parity: Parity,
}

pub fn branch_of(m: &Mat2, level: Level) -> Result<MultiplierBranch> {
    require_member(m, level)?;
    let c_parity = Parity::of(m.c());
    let residue_class = match level {
        Level::Three => {
            if residue(m.b(), 3) == 0 {
                ResidueClass::PlusMinusIdentity
            } else {
                ResidueClass::PlusMinusT
            }
        }
        Level::Four => {
            let class = match (residue(m.a(), 4), residue(m.b(), 4)) {
                (1 | 3, 0) => ResidueClass::PlusMinusIdentity,
                (0, 1 | 3) => ResidueClass::PlusMinusT,
                _ => ResidueClass::PlusMinusS2Class,
            };
            // Mod 4 the class fixes the parity of c.
            let c_even = residue(m.c(), 2) == 0;
            let a_odd = residue(m.a(), 2) == 1;
            assert_eq!(c_even, a_odd, "level-4 member {m} has inconsistent parity");
            class
        }
    };
    Ok(MultiplierBranch {
        level,
        residue_class,
        c_parity,
    })
}

fn exact_div(num: BigInt, divisor: u32, context: &'static str, m: &Mat2) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(divisor));
    if !r.is_zero() {
        return Err(Error::Divisibility {
            divisor,
            context,
            matrix: m.to_string(),
        });
    }
    Ok(q)
}

/// Choice of formula for `f` in the `+-I` mod 3, c-even case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FFormula {
    /// `3(d - 1) + (b - c)d/3`.
    Definition,
    /// `3d + (b - c)d/3 + 6`, the unreduced exponent.
    Unreduced,
}

impl FFormula {
    pub const ALL: [FFormula; 2] = [FFormula::Definition, FFormula::Unreduced];
}

impl fmt::Display for FFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFormula::Definition => write!(f, "3(d-1)"),
            FFormula::Unreduced => write!(f, "3d+6"),
        }
    }
}

/// The level-3 branch function, `nu_F(M) = exp(pi i f(M) / 6)`.
///
/// ```text
/// +-I, c odd:   3c + (a+d)c/3 + 4bd/3
/// +-I, c even:  3(d-1) + (b-c)d/3
/// +-T, c odd:   3(c+2) + (a+d)c/3
/// +-T, c even:  3(d+1) + (b-c)d/3 + 4ac/3
/// ```
pub fn f_value(m: &Mat2) -> Result<BigInt> {
    f_value_with(m, FFormula::Definition)
}

pub fn f_value_with(m: &Mat2, formula: FFormula) -> Result<BigInt> {
    let branch = branch_of(m, Level::Three)?;
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let numerator: BigInt = match (branch.residue_class, branch.c_parity) {
        (ResidueClass::PlusMinusIdentity, Parity::Odd) => c * 9 + (a + d) * c + b * d * 4,
        (ResidueClass::PlusMinusIdentity, Parity::Even) => match formula {
            FFormula::Definition => (d - 1) * 9 + (b - c) * d,
            FFormula::Unreduced => d * 9 + (b - c) * d + 18,
        },
        (ResidueClass::PlusMinusT, Parity::Odd) => (c + 2) * 9 + (a + d) * c,
        (ResidueClass::PlusMinusT, Parity::Even) => (d + 1) * 9 + (b - c) * d + a * c * 4,
        (ResidueClass::PlusMinusS2Class, _) => unreachable!("level-3 branch"),
    };
    exact_div(numerator, 3, "f", m)
}

/// Constant term of the c-odd `g` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddConstant {
    /// `3(c + d - 2)`
    CPlusDMinusTwo,
    /// `3(d - 1)`
    DMinusOne,
}

/// Last factor of the c-odd `g` formula, `-cd(1 + ...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddQuartic {
    /// `-cd(1 + bc)`
    OnePlusBc,
    /// `-cd(1 + cd)`
    OnePlusCd,
}

/// A reading of the c-odd level-4 branch function. The c-even formula is
/// shared by all readings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GFormula {
    pub constant: OddConstant,
    pub quartic: OddQuartic,
}

impl GFormula {
    /// `3(c+d-2) + (a+d)c/4 + (b+c)d/4 - cd(1+bc)`.
    pub const DEFINITION: GFormula = GFormula {
        constant: OddConstant::CPlusDMinusTwo,
        quartic: OddQuartic::OnePlusBc,
    };

    pub const ALL: [GFormula; 4] = [
        GFormula::DEFINITION,
        GFormula {
            constant: OddConstant::CPlusDMinusTwo,
            quartic: OddQuartic::OnePlusCd,
        },
        GFormula {
            constant: OddConstant::DMinusOne,
            quartic: OddQuartic::OnePlusBc,
        },
        GFormula {
            constant: OddConstant::DMinusOne,
            quartic: OddQuartic::OnePlusCd,
        },
    ];
}

impl fmt::Display for GFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let constant = match self.constant {
            OddConstant::CPlusDMinusTwo => "3(c+d-2)",
            OddConstant::DMinusOne => "3(d-1)",
        };
        let quartic = match self.quartic {
            OddQuartic::OnePlusBc => "1+bc",
            OddQuartic::OnePlusCd => "1+cd",
        };
        write!(f, "{constant} / -cd({quartic})")
    }
}

/// The level-4 branch function, `nu_G(M) = exp(pi i g(M) / 6)`.
///
/// ```text
/// c odd:  3(c+d-2) + (a+d)c/4 + (b+c)d/4 - cd(1+bc)
/// c even: 3(d-c-1) + (b-c)d/4 + (a-d)c/4 + cd(1-ad)
/// ```
pub fn g_value(m: &Mat2) -> Result<BigInt> {
    g_value_with(m, GFormula::DEFINITION)
}

pub fn g_value_with(m: &Mat2, formula: GFormula) -> Result<BigInt> {
    require_member(m, Level::Four)?;
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let numerator: BigInt = if c.is_odd() {
        let constant: BigInt = match formula.constant {
            OddConstant::CPlusDMinusTwo => (c + d - 2) * 12,
            OddConstant::DMinusOne => (d - 1) * 12,
        };
        let quartic: BigInt = match formula.quartic {
            OddQuartic::OnePlusBc => b * c + 1,
            OddQuartic::OnePlusCd => c * d + 1,
        };
        constant + (a + d) * c + (b + c) * d - c * d * quartic * 4
    } else {
        (d - c - 1) * 12 + (b - c) * d + (a - d) * c + c * d * (1 - a * d) * 4
    };
    exact_div(numerator, 4, "g", m)
}

/// `f(M)` at level 3, `g(M)` at level 4.
pub fn branch_value(m: &Mat2, level: Level) -> Result<BigInt> {
    match level {
        Level::Three => f_value(m),
        Level::Four => g_value(m),
    }
}

pub fn nu_f(m: &Mat2) -> Result<Root24> {
    Ok(Root24::from_sixth(&f_value(m)?))
}

pub fn nu_g(m: &Mat2) -> Result<Root24> {
    Ok(Root24::from_sixth(&g_value(m)?))
}

/// `nu_F` or `nu_G` by level.
pub fn nu(m: &Mat2, level: Level) -> Result<Root24> {
    Ok(Root24::from_sixth(&branch_value(m, level)?))
}

/// `nu_{F^k}` or `nu_{G^k}`.
pub fn nu_power(m: &Mat2, level: Level, k: i64) -> Result<Root24> {
    Ok(nu(m, level)?.pow(k))
}

/// The pair `(M1, M2)` with `(M tau -+ 1)/N = M1((tau -+ 1)/N)`,
/// `M2((tau +- 1)/N)`, whose eta multipliers multiply to `nu(M)`.
///
/// For `+-I` mod 3 (level 3) and the c-even classes (level 4):
/// `M1 = (a-c, (b-d+a-c)/N; Nc, d+c)`, `M2 = (a+c, (b+d-a-c)/N; Nc, d-c)`.
/// Otherwise the shifts swap roles:
/// `M1 = (a-c, (b-d-a+c)/N; Nc, d-c)`, `M2 = (a+c, (b+d+a+c)/N; Nc, d+c)`.
pub fn decomposition_pair(m: &Mat2, level: Level) -> Result<(Mat2, Mat2)> {
    let branch = branch_of(m, level)?;
    let n = level.modulus();
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let same_shift = match level {
        Level::Three => branch.residue_class == ResidueClass::PlusMinusIdentity,
        Level::Four => branch.c_parity == Parity::Even,
    };
    let nc: BigInt = c * n;
    let (top1, d1, top2, d2) = if same_shift {
        (b - d + a - c, d + c, b + d - a - c, d - c)
    } else {
        (b - d - a + c, d - c, b + d + a + c, d + c)
    };
    let b1 = exact_div(top1, n, "decomposition M1", m)?;
    let b2 = exact_div(top2, n, "decomposition M2", m)?;
    let m1 = Mat2::new(a - c, b1, nc.clone(), d1).expect("decomposition preserves determinant");
    let m2 = Mat2::new(a + c, b2, nc, d2).expect("decomposition preserves determinant");
    Ok((m1, m2))
}

/// `nu_eta(M1) nu_eta(M2)` for the pair from [`decomposition_pair`].
pub fn nu_via_decomposition(m: &Mat2, level: Level) -> Result<Root24> {
    let (m1, m2) = decomposition_pair(m, level)?;
    Ok(nu_eta(&m1) * nu_eta(&m2))
}

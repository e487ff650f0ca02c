//! Integer number theory used by the eta multiplier: the Jacobi symbol and
//! the two starred extensions to negative lower arguments.
//!
//! - [`jacobi`]: classical `(c/d)` for positive odd `d`, by binary reciprocity
//! - [`symbol_upper_star`]: `(c/d)^* = (c/|d|)`
//! - [`symbol_lower_star`]: `(c/d)_*`, which flips sign when both arguments are negative
//! - [`symbol_product`]: `(c/(d-c))_* (c/(d+c))_*` for odd `c`, even `d`

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sign with `sign(0) = +1`.
pub fn sign(x: &BigInt) -> i8 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Returns the Jacobi symbol `(c/d)` for a positive odd `d`.
///
/// Never factors `d`; the iterative reciprocity loop runs in time polynomial
/// in the bit length of the arguments. Returns 0 exactly when `gcd(c, d) > 1`.
pub fn jacobi(c: &BigInt, d: &BigInt) -> Result<i8> {
    if !d.is_positive() || d.is_even() {
        return Err(Error::InvalidJacobiModulus(d.clone()));
    }
    let mut n: BigUint = d.magnitude().clone();
    let mut a: BigUint = c
        .mod_floor(d)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative");
    let mut result = 1i8;

    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        if twos % 2 == 1 {
            let n_mod_8 = low_bits(&n, 8);
            if n_mod_8 == 3 || n_mod_8 == 5 {
                result = -result;
            }
        }
        a >>= twos;
        std::mem::swap(&mut a, &mut n);
        if low_bits(&a, 4) == 3 && low_bits(&n, 4) == 3 {
            result = -result;
        }
        a %= &n;
    }

    Ok(if n.is_one() { result } else { 0 })
}

fn low_bits(x: &BigUint, m: u64) -> u64 {
    debug_assert!(m.is_power_of_two());
    x.iter_u64_digits().next().unwrap_or(0) & (m - 1)
}

fn check_symbol_args(c: &BigInt, d: &BigInt) -> Result<()> {
    if d.is_even() {
        return Err(Error::EvenLowerArgument {
            c: c.clone(),
            d: d.clone(),
        });
    }
    if !c.gcd(d).is_one() {
        return Err(Error::NotCoprime {
            c: c.clone(),
            d: d.clone(),
        });
    }
    Ok(())
}

/// `(c/d)^* = (c/|d|)` for odd `d` coprime to `c`.
pub fn symbol_upper_star(c: &BigInt, d: &BigInt) -> Result<i8> {
    check_symbol_args(c, d)?;
    jacobi(c, &d.abs())
}

/// `(c/d)_* = (c/|d|) (-1)^{((sign c - 1)/2)((sign d - 1)/2)}` for odd `d`
/// coprime to `c`, with `sign(0) = +1`.
pub fn symbol_lower_star(c: &BigInt, d: &BigInt) -> Result<i8> {
    check_symbol_args(c, d)?;
    let base = jacobi(c, &d.abs())?;
    Ok(if sign(c) < 0 && sign(d) < 0 {
        -base
    } else {
        base
    })
}

/// `(c/(d-c))_* (c/(d+c))_*` for odd `c`, even `d`, `gcd(c, d) = 1`.
///
/// The product always equals [`neg_one_pow_half`]`(c)`; the level-4 odd-`c`
/// multiplier relies on that identity.
pub fn symbol_product(c: &BigInt, d: &BigInt) -> Result<i8> {
    if c.is_even() || d.is_odd() {
        return Err(Error::SymbolProductParity {
            c: c.clone(),
            d: d.clone(),
        });
    }
    if !c.gcd(d).is_one() {
        return Err(Error::NotCoprime {
            c: c.clone(),
            d: d.clone(),
        });
    }
    let left = symbol_lower_star(c, &(d - c))?;
    let right = symbol_lower_star(c, &(d + c))?;
    Ok(left * right)
}

/// `(-1)^{(c-1)/2}` for odd `c`; the exponent may be negative, only its
/// parity matters.
pub fn neg_one_pow_half(c: &BigInt) -> i8 {
    debug_assert!(c.is_odd());
    let exponent: BigInt = (c - 1) / 2;
    if exponent.is_even() {
        1
    } else {
        -1
    }
}

/// Non-negative residue of `x` modulo `m` as a `u64`.
pub(crate) fn residue(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    match r.to_u64_digits() {
        (Sign::NoSign, _) => 0,
        (_, digits) => digits[0],
    }
}

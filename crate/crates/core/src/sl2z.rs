//! Exact arithmetic in `SL(2, Z)`.
//!
//! [`Mat2`] holds arbitrary-precision entries; the degree-4 monomials in the
//! multiplier exponents overflow machine words long before the matrices
//! themselves look large. [`ResidueMat`] is the image under reduction mod `N`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::residue;
use crate::error::{Error, Result};

/// An element `(a, b; c, d)` of `SL(2, Z)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mat2 {
    /// Builds a matrix, rejecting determinant other than 1.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                matrix: format!("{a},{b},{c},{d}"),
                det,
            });
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub(crate) fn new_unchecked(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Mat2 { a, b, c, d }
    }

    pub(crate) fn from_small(e: [i64; 4]) -> Self {
        Self::new_unchecked(e[0].into(), e[1].into(), e[2].into(), e[3].into())
    }

    pub fn identity() -> Self {
        Self::from_small([1, 0, 0, 1])
    }

    pub fn neg_identity() -> Self {
        Self::from_small([-1, 0, 0, -1])
    }

    /// Translation `S = (1, 1; 0, 1)`.
    pub fn s() -> Self {
        Self::from_small([1, 1, 0, 1])
    }

    /// Inversion `T = (0, -1; 1, 0)`.
    pub fn t() -> Self {
        Self::from_small([0, -1, 1, 0])
    }

    /// `S^n = (1, n; 0, 1)` for any integer `n`.
    pub fn s_pow(n: i64) -> Self {
        Self::from_small([1, n, 0, 1])
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<[i64; 4]> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `(d, -b; -c, a)`.
    pub fn inverse(&self) -> Self {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Automorphy factor `c tau + d`.
    pub fn automorphy(&self, tau: Complex64) -> Complex64 {
        to_f64(&self.c) * tau + to_f64(&self.d)
    }

    /// Moebius action `(a tau + b) / (c tau + d)` on the upper half plane.
    pub fn moebius(&self, tau: Complex64) -> Result<Complex64> {
        if tau.im.is_nan() || tau.im <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(tau.im));
        }
        let num = to_f64(&self.a) * tau + to_f64(&self.b);
        Ok(num / self.automorphy(tau))
    }

    /// Entrywise least non-negative residues mod `n` (the map `lambda_N`).
    pub fn reduce_mod(&self, n: u32) -> Result<ResidueMat> {
        if n < 2 {
            return Err(Error::InvalidModulus {
                modulus: n.into(),
                min: 2,
                max: u32::MAX.into(),
            });
        }
        let m = u64::from(n);
        let r = |x: &BigInt| residue(x, m) as u32;
        Ok(ResidueMat {
            entries: [r(&self.a), r(&self.b), r(&self.c), r(&self.d)],
            modulus: n,
        })
    }

    /// Membership in the principal congruence subgroup `Gamma(n)`.
    pub fn in_principal_congruence(&self, n: u32) -> Result<bool> {
        Ok(self.reduce_mod(n)?.is_identity())
    }

    /// Right multiplication by a generator, in place.
    pub fn apply(&mut self, g: Generator) {
        match g {
            // (a, b; c, d)(1, 1; 0, 1) = (a, a + b; c, c + d)
            Generator::S => {
                self.b += &self.a;
                self.d += &self.c;
            }
            Generator::SInv => {
                self.b -= &self.a;
                self.d -= &self.c;
            }
            // (a, b; c, d)(0, -1; 1, 0) = (b, -a; d, -c)
            Generator::T => {
                std::mem::swap(&mut self.a, &mut self.b);
                self.b = -std::mem::take(&mut self.b);
                std::mem::swap(&mut self.c, &mut self.d);
                self.d = -std::mem::take(&mut self.d);
            }
            Generator::TInv => {
                // (a, b; c, d)(0, 1; -1, 0) = (-b, a; -d, c)
                std::mem::swap(&mut self.a, &mut self.b);
                self.a = -std::mem::take(&mut self.a);
                std::mem::swap(&mut self.c, &mut self.d);
                self.c = -std::mem::take(&mut self.c);
            }
        }
    }

    /// Product of the generators in `word`, left to right.
    pub fn from_word(word: &[Generator]) -> Self {
        let mut m = Mat2::identity();
        for &g in word {
            m.apply(g);
        }
        m
    }
}

pub(crate) fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses the row-major exchange format `a,b,c,d`.
impl FromStr for Mat2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParseMatrix {
            input: s.to_string(),
            reason,
        };
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(fail(format!("expected 4 entries, found {}", parts.len())));
        }
        let mut e = Vec::with_capacity(4);
        for p in parts {
            let v = p
                .parse::<BigInt>()
                .map_err(|_| fail(format!("{p:?} is not an integer")))?;
            e.push(v);
        }
        let [a, b, c, d]: [BigInt; 4] = e.try_into().expect("length checked");
        Mat2::new(a, b, c, d).map_err(|err| fail(err.to_string()))
    }
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A matrix over `Z/NZ` with determinant 1, entries in `[0, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResidueMat {
    entries: [u32; 4],
    modulus: u32,
}

impl ResidueMat {
    /// Reduces arbitrary integers mod `n`; rejects a determinant not
    /// congruent to 1.
    pub fn from_i64s(e: [i64; 4], n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus {
                modulus: n.into(),
                min: 2,
                max: u32::MAX.into(),
            });
        }
        let m = i64::from(n);
        let r = e.map(|x| x.rem_euclid(m) as u32);
        let rm = ResidueMat {
            entries: r,
            modulus: n,
        };
        if rm.det() != 1 % n {
            return Err(Error::NotUnimodular {
                matrix: format!("{},{},{},{}", e[0], e[1], e[2], e[3]),
                det: (e[0] * e[3] - e[1] * e[2]).into(),
            });
        }
        Ok(rm)
    }

    pub fn entries(&self) -> [u32; 4] {
        self.entries
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn det(&self) -> u32 {
        let [a, b, c, d] = self.entries.map(u64::from);
        let m = u64::from(self.modulus);
        ((a * d % m + m - b * c % m) % m) as u32
    }

    pub fn is_identity(&self) -> bool {
        self.entries == [1, 0, 0, 1]
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus;
        ResidueMat {
            entries: self.entries.map(|x| (m - x) % m),
            modulus: m,
        }
    }
}

impl fmt::Display for ResidueMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "{a},{b},{c},{d} mod {}", self.modulus)
    }
}

/// Largest modulus accepted by [`enumerate_sl2`].
pub const ENUMERATION_BOUND: u32 = 64;

/// All of `SL(2, Z/NZ)` in lexicographic order, by brute force over the
/// `N^4` candidate matrices.
pub fn enumerate_sl2(n: u32) -> Result<Vec<ResidueMat>> {
    if !(2..=ENUMERATION_BOUND).contains(&n) {
        return Err(Error::InvalidModulus {
            modulus: n.into(),
            min: 2,
            max: ENUMERATION_BOUND.into(),
        });
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (a64, b64, c64, d64) = (a as u64, b as u64, c as u64, d as u64);
                    let m = n as u64;
                    if (a64 * d64 + m * m - b64 * c64 % m) % m == 1 % m {
                        out.push(ResidueMat {
                            entries: [a, b, c, d],
                            modulus: n,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `|SL(2, Z/NZ)| = N^3 prod_{p | N} (1 - p^-2)`.
pub fn sl2_order(n: u32) -> u64 {
    let mut order = u64::from(n).pow(3);
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let p64 = u64::from(p);
            order = order / (p64 * p64) * (p64 * p64 - 1);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    order
}

/// The generators `S`, `S^-1`, `T`, `T^-1` of `SL(2, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S,
    SInv,
    T,
    TInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::S, Generator::SInv, Generator::T, Generator::TInv];

    pub fn matrix(self) -> Mat2 {
        Mat2::from_word(&[self])
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" => Ok(Generator::S),
            "S^-1" | "S'" => Ok(Generator::SInv),
            "T" => Ok(Generator::T),
            "T^-1" | "T'" => Ok(Generator::TInv),
            _ => Err(Error::ParseWord {
                input: s.to_string(),
            }),
        }
    }
}

/// Parses a comma-separated generator word such as `S,T,S^-1`. The empty
/// string is the empty word.
pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Draws a word of uniformly random length in `1..=max_word_length` with
/// letters uniform over the four generators.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_word_length: usize) -> Vec<Generator> {
    let len = rng.random_range(1..=max_word_length.max(1));
    (0..len)
        .map(|_| Generator::ALL[rng.random_range(0..4)])
        .collect()
}

/// A single pseudo-random element, deterministic in `seed`.
pub fn random_element(seed: u64, max_word_length: usize) -> Mat2 {
    Sampler::new(seed, max_word_length).next_element()
}

/// Seeded stream of random `SL(2, Z)` elements, with rejection sampling for
/// subgroups described only by a membership predicate.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    max_word_length: usize,
}

impl Sampler {
    pub fn new(seed: u64, max_word_length: usize) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_word_length: max_word_length.max(1),
        }
    }

    /// Independent stream for a named consumer, so that suites sampling
    /// from the same base seed do not share draws.
    pub fn with_stream(seed: u64, stream: u64, max_word_length: usize) -> Self {
        let mut s = Self::new(seed, max_word_length);
        s.rng.set_stream(stream);
        s
    }

    pub fn next_element(&mut self) -> Mat2 {
        let word = random_word(&mut self.rng, self.max_word_length);
        Mat2::from_word(&word)
    }

    /// Next element satisfying `accept`. Loops until one is found.
    pub fn next_where(&mut self, mut accept: impl FnMut(&Mat2) -> bool) -> Mat2 {
        loop {
            let m = self.next_element();
            if accept(&m) {
                return m;
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d).unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            Mat2::new(2, 0, 0, 1),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn products() {
        let i = Mat2::identity();
        assert_eq!(&i * &i, i);
        assert_eq!(&Mat2::s() * &Mat2::s(), m(1, 2, 0, 1));
        assert_eq!(&Mat2::t() * &Mat2::t(), Mat2::neg_identity());
        assert_eq!(&Mat2::s() * &Mat2::t(), m(1, -1, 1, 0));
    }

    #[test]
    fn inverses() {
        assert_eq!(Mat2::identity().inverse(), Mat2::identity());
        assert_eq!(Mat2::s().inverse(), m(1, -1, 0, 1));
        let x = m(4, 9, 3, 7);
        assert_eq!(x.inverse(), m(7, -9, -3, 4));
        assert_eq!(&x * &x.inverse(), Mat2::identity());
    }

    #[test]
    fn generator_application_matches_products() {
        let x = m(4, 9, 3, 7);
        for g in Generator::ALL {
            let mut y = x.clone();
            y.apply(g);
            assert_eq!(y, &x * &g.matrix());
        }
        assert_eq!(Generator::SInv.matrix(), Mat2::s().inverse());
        assert_eq!(Generator::TInv.matrix(), Mat2::t().inverse());
    }

    #[test]
    fn words() {
        assert_eq!(Mat2::from_word(&parse_word("").unwrap()), Mat2::identity());
        assert_eq!(Mat2::from_word(&parse_word("S,T").unwrap()), m(1, -1, 1, 0));
        assert!(parse_word("S,X").is_err());
    }

    #[test]
    fn moebius_examples() {
        let i = Complex64::new(0.0, 1.0);
        assert!((Mat2::identity().moebius(i).unwrap() - i).norm() < 1e-15);
        assert!((Mat2::t().moebius(i).unwrap() - i).norm() < 1e-15);
        let z = Mat2::s().moebius(Complex64::new(0.0, 2.0)).unwrap();
        assert!((z - Complex64::new(1.0, 2.0)).norm() < 1e-15);
        assert!(Mat2::s().moebius(Complex64::new(0.0, 0.0)).is_err());
        assert!(Mat2::s().moebius(Complex64::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(Mat2::t().reduce_mod(3).unwrap().entries(), [0, 2, 1, 0]);
        assert!(m(4, 9, 3, 7).reduce_mod(3).unwrap().is_identity());
        assert_eq!(
            Mat2::neg_identity().reduce_mod(4).unwrap().entries(),
            [3, 0, 0, 3]
        );
        assert!(Mat2::t().reduce_mod(1).is_err());
        assert!(m(4, 9, 3, 7).in_principal_congruence(3).unwrap());
        assert!(!Mat2::s().in_principal_congruence(3).unwrap());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_sl2(2).unwrap().len(), 6);
        assert_eq!(enumerate_sl2(3).unwrap().len(), 24);
        assert_eq!(enumerate_sl2(4).unwrap().len(), 48);
        assert!(enumerate_sl2(1).is_err());
        assert!(enumerate_sl2(65).is_err());
    }

    #[test]
    fn enumeration_matches_order_formula() {
        for n in 2..=16 {
            assert_eq!(
                enumerate_sl2(n).unwrap().len() as u64,
                sl2_order(n),
                "N = {n}"
            );
        }
    }

    #[test]
    fn parse_and_display() {
        let x: Mat2 = "4,9,3,7".parse().unwrap();
        assert_eq!(x, m(4, 9, 3, 7));
        assert_eq!(x.to_string(), "4,9,3,7");
        assert_eq!("-1,0,0,-1".parse::<Mat2>().unwrap(), Mat2::neg_identity());
        assert!("1,2,3".parse::<Mat2>().is_err());
        assert!("1,1,1,1".parse::<Mat2>().is_err());
        assert!("1,a,0,1".parse::<Mat2>().is_err());
        assert!("1, 0,0,1".parse::<Mat2>().is_err());
    }

    #[test]
    fn random_elements_are_deterministic_and_unimodular() {
        assert_eq!(random_element(11, 20), random_element(11, 20));
        let mut s = Sampler::new(3, 20);
        for _ in 0..200 {
            assert!(s.next_element().det().is_one());
        }
        let a: Vec<Mat2> = {
            let mut s = Sampler::with_stream(5, 1, 20);
            (0..10).map(|_| s.next_element()).collect()
        };
        let b: Vec<Mat2> = {
            let mut s = Sampler::with_stream(5, 2, 20);
            (0..10).map(|_| s.next_element()).collect()
        };
        assert_ne!(a, b);
    }

    fn arb_mat(max_len: usize) -> impl Strategy<Value = Mat2> {
        any::<u64>().prop_map(move |seed| random_element(seed, max_len))
    }

    fn arb_tau() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, 0.5f64..3.0).prop_map(|(x, y)| Complex64::new(x, y))
    }

    proptest! {
        #[test]
        fn product_is_unimodular(x in arb_mat(20), y in arb_mat(20)) {
            prop_assert!((&x * &y).det().is_one());
        }

        #[test]
        fn action_is_compatible_with_product(x in arb_mat(8), y in arb_mat(8), tau in arb_tau()) {
            let lhs = (&x * &y).moebius(tau).unwrap();
            let rhs = x.moebius(y.moebius(tau).unwrap()).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()), "{} vs {}", lhs, rhs);
        }

        #[test]
        fn imaginary_part_transforms(x in arb_mat(12), tau in arb_tau()) {
            let image = x.moebius(tau).unwrap();
            let expected = tau.im / x.automorphy(tau).norm_sqr();
            prop_assert!(image.im > 0.0);
            prop_assert!((image.im - expected).abs() <= 1e-12 * expected.max(1e-300));
        }

        #[test]
        fn inverse_is_two_sided(x in arb_mat(20)) {
            prop_assert_eq!(&x * &x.inverse(), Mat2::identity());
            prop_assert_eq!(&x.inverse() * &x, Mat2::identity());
        }
    }
}

//! Right cosets of `Gamma_{theta,N}` in `SL(2, Z)` and its cusps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplier::{membership, Level};
use crate::sl2z::{enumerate_sl2, Mat2};

/// Representatives `R_i` with `SL(2, Z) = union of Gamma_{theta,N} R_i`.
pub fn coset_reps(level: Level) -> Vec<Mat2> {
    let entries: [[i64; 4]; 6] = match level {
        Level::Three => [
            [1, 0, 0, 1],
            [1, 1, 0, 1],
            [1, 2, 0, 1],
            [1, 0, -1, 1],
            [1, 1, -1, 0],
            [-1, 1, 1, -2],
        ],
        Level::Four => [
            [1, 0, 0, 1],
            [1, 1, 0, 1],
            [1, 2, 0, 1],
            [1, -1, 0, 1],
            [-1, 0, 1, -1],
            [-1, -1, 1, 0],
        ],
    };
    entries.into_iter().map(Mat2::from_small).collect()
}

/// The unique `i` with `M R_i^-1` in `Gamma_{theta,N}`.
///
/// Zero or several matches would mean the representatives do not partition
/// the group; that is reported as an error.
pub fn coset_rep_of(m: &Mat2, level: Level) -> Result<usize> {
    let n = level.modulus();
    let mut found = Vec::new();
    for (i, rep) in coset_reps(level).iter().enumerate() {
        if membership(&(m * &rep.inverse()), n)? {
            found.push(i);
        }
    }
    match found.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::CosetPartition {
            matrix: m.to_string(),
            level: n,
            matches: found.len(),
        }),
    }
}

/// Order of the image of `Gamma_{theta,N}` in `SL(2, Z/NZ)`.
pub fn image_order(level: Level) -> usize {
    let n = level.modulus();
    enumerate_sl2(n)
        .expect("level is a supported modulus")
        .into_iter()
        .filter(|r| {
            let [a, b, c, d] = r.entries();
            (a + n - d).is_multiple_of(n) && (b + c).is_multiple_of(n)
        })
        .count()
}

/// `|SL(2, Z/NZ)|` divided by [`image_order`], by enumeration.
///
/// `Gamma_{theta,N}` contains the principal congruence subgroup of level `N`
/// and is the full preimage of its image, so this is its index in `SL(2, Z)`.
pub fn index(level: Level) -> usize {
    let total = enumerate_sl2(level.modulus())
        .expect("level is a supported modulus")
        .len();
    total / image_order(level)
}

/// A point of `P^1(Q)`: `inf` or `p/q` in lowest terms with `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CuspPoint {
    Infinity,
    Rational { p: BigInt, q: BigInt },
}

impl CuspPoint {
    /// `p/q`, normalised; `q = 0` gives infinity.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q): (BigInt, BigInt) = (p.into(), q.into());
        if q.is_zero() {
            if p.is_zero() {
                return Err(Error::ParseCusp {
                    input: "0/0".into(),
                    reason: "numerator and denominator both zero".into(),
                });
            }
            return Ok(CuspPoint::Infinity);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Ok(CuspPoint::Rational { p, q })
    }

    pub fn integer(n: i64) -> Self {
        CuspPoint::Rational {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    /// Some `A` in `SL(2, Z)` with `A(inf) = self`.
    pub fn lift(&self) -> Mat2 {
        match self {
            CuspPoint::Infinity => Mat2::identity(),
            CuspPoint::Rational { p, q } => {
                // p v - q u = 1
                let e = p.extended_gcd(q);
                let (v, u) = if e.gcd.is_one() {
                    (e.x, -e.y)
                } else {
                    (-e.x, e.y)
                };
                Mat2::new(p.clone(), u, q.clone(), v).expect("Bezout coefficients")
            }
        }
    }

    /// Moebius action of `m`.
    pub fn act(&self, m: &Mat2) -> CuspPoint {
        let (p, q) = match self {
            CuspPoint::Infinity => (BigInt::one(), BigInt::zero()),
            CuspPoint::Rational { p, q } => (p.clone(), q.clone()),
        };
        let num = m.a() * &p + m.b() * &q;
        let den = m.c() * &p + m.d() * &q;
        CuspPoint::new(num, den).expect("unimodular image of a primitive vector")
    }
}

impl fmt::Display for CuspPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspPoint::Infinity => f.write_str("inf"),
            CuspPoint::Rational { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

/// Accepts `inf`, `p/q`, or an integer `p`.
impl FromStr for CuspPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseCusp {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(CuspPoint::Infinity);
        }
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p, q),
            None => (t, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| fail("numerator is not an integer"))?;
        let q: BigInt = q
            .parse()
            .map_err(|_| fail("denominator is not an integer"))?;
        CuspPoint::new(p, q).map_err(|_| fail("0/0 is not a point"))
    }
}

impl Serialize for CuspPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CuspPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Whether some member of `Gamma_{theta,N}` maps `x` to `y`.
///
/// With `A(inf) = x` and `B(inf) = y`, the maps `x -> y` in `SL(2, Z)` are
/// `+-B S^n A^-1`. The group contains `-I`, and the admissible `n` form a
/// coset of `hZ` with `h` the width of `y`, at most the index; so
/// `n` in `[-index, index]` suffices.
pub fn cusp_equivalent(x: &CuspPoint, y: &CuspPoint, level: Level) -> bool {
    witness(x, y, level).is_some()
}

/// A member `g` with `g(x) = y`, if one exists.
pub fn witness(x: &CuspPoint, y: &CuspPoint, level: Level) -> Option<Mat2> {
    let a_inv = x.lift().inverse();
    let b = y.lift();
    let bound = index(level) as i64;
    (-bound..=bound).find_map(|n| {
        let g = &(&b * &Mat2::s_pow(n)) * &a_inv;
        membership(&g, level.modulus())
            .expect("level is positive")
            .then_some(g)
    })
}

/// Partitions `points` into equivalence classes, keeping first-seen order
/// both within and across classes.
pub fn cusp_classes(points: &[CuspPoint], level: Level) -> Vec<Vec<CuspPoint>> {
    let mut classes: Vec<Vec<CuspPoint>> = Vec::new();
    for p in points {
        if classes.iter().any(|class| class.contains(p)) {
            continue;
        }
        match classes
            .iter_mut()
            .find(|class| cusp_equivalent(&class[0], p, level))
        {
            Some(class) => class.push(p.clone()),
            None => classes.push(vec![p.clone()]),
        }
    }
    classes
}

/// `inf` followed by `R(inf), R(0), R(-1), R(1)` for every coset
/// representative `R`.
///
/// Every cusp is `g R_i(inf)` for some member `g` and some `i`, so the images
/// `R_i(inf)` alone already meet every class.
pub fn candidate_cusps(level: Level) -> Vec<CuspPoint> {
    let seeds = [
        CuspPoint::Infinity,
        CuspPoint::integer(0),
        CuspPoint::integer(-1),
        CuspPoint::integer(1),
    ];
    let mut out = vec![CuspPoint::Infinity];
    for rep in coset_reps(level) {
        for s in &seeds {
            let image = s.act(&rep);
            if !out.contains(&image) {
                out.push(image);
            }
        }
    }
    out
}

/// Cusp classes with `inf` first and `-1` preferred as a class representative.
pub fn cusp_class_representatives(level: Level) -> Vec<CuspPoint> {
    let mut points = candidate_cusps(level);
    let minus_one = CuspPoint::integer(-1);
    if let Some(pos) = points.iter().position(|p| *p == minus_one) {
        let p = points.remove(pos);
        points.insert(1, p);
    }
    cusp_classes(&points, level)
        .into_iter()
        .map(|class| class[0].clone())
        .collect()
}

pub fn cusp_class_count(level: Level) -> usize {
    cusp_classes(&candidate_cusps(level), level).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2z::Sampler;

    fn cusp(s: &str) -> CuspPoint {
        s.parse().unwrap()
    }

    #[test]
    fn reps_are_unimodular_and_six() {
        for level in Level::ALL {
            let reps = coset_reps(level);
            assert_eq!(reps.len(), 6);
            for r in &reps {
                assert!(r.det().is_one());
            }
        }
    }

    #[test]
    fn rep_of_examples() {
        for level in Level::ALL {
            assert_eq!(coset_rep_of(&Mat2::identity(), level).unwrap(), 0);
            assert_eq!(coset_rep_of(&Mat2::s(), level).unwrap(), 1);
            assert_eq!(coset_rep_of(&Mat2::t(), level).unwrap(), 0);
        }
    }

    #[test]
    fn reps_pairwise_inequivalent() {
        for level in Level::ALL {
            let reps = coset_reps(level);
            for (i, r) in reps.iter().enumerate() {
                assert_eq!(coset_rep_of(r, level).unwrap(), i);
                for (j, s) in reps.iter().enumerate() {
                    let inside = membership(&(r * &s.inverse()), level.modulus()).unwrap();
                    assert_eq!(inside, i == j);
                }
            }
        }
    }

    #[test]
    fn sampled_matrices_hit_exactly_one_coset() {
        for level in Level::ALL {
            let mut sampler = Sampler::with_stream(17, u64::from(level.modulus()), 20);
            let mut hit = [false; 6];
            for _ in 0..300 {
                hit[coset_rep_of(&sampler.next_element(), level).unwrap()] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn index_by_enumeration() {
        assert_eq!(image_order(Level::Three), 4);
        assert_eq!(image_order(Level::Four), 8);
        assert_eq!(index(Level::Three), 6);
        assert_eq!(index(Level::Four), 6);
    }

    #[test]
    fn cusp_parsing_and_normalisation() {
        assert_eq!(cusp("inf"), CuspPoint::Infinity);
        assert_eq!(cusp("2/-4"), CuspPoint::new(-1, 2).unwrap());
        assert_eq!(cusp("-1"), CuspPoint::integer(-1));
        assert_eq!(cusp("3/0"), CuspPoint::Infinity);
        assert_eq!(cusp("-1").to_string(), "-1/1");
        assert!("0/0".parse::<CuspPoint>().is_err());
        assert!("x/2".parse::<CuspPoint>().is_err());
    }

    #[test]
    fn lift_maps_infinity_to_point() {
        for s in ["inf", "0", "-1", "5/7", "-12/35", "1/-3"] {
            let x = cusp(s);
            assert_eq!(CuspPoint::Infinity.act(&x.lift()), x, "{s}");
        }
    }

    #[test]
    fn equivalence_examples() {
        for level in Level::ALL {
            let inf = CuspPoint::Infinity;
            assert!(cusp_equivalent(&inf, &cusp("0"), level));
            assert!(!cusp_equivalent(&inf, &cusp("-1"), level));
            assert!(cusp_equivalent(&cusp("2/3"), &cusp("2/3"), level));
            let g = witness(&inf, &cusp("0"), level).unwrap();
            assert_eq!(inf.act(&g), cusp("0"));
        }
    }

    #[test]
    fn equivalence_is_an_equivalence_relation() {
        let tested = [
            "inf", "0", "1", "-1", "2", "-2", "1/2", "-1/2", "1/3", "-1/3", "2/3", "-2/3",
        ]
        .map(cusp);
        for level in Level::ALL {
            for x in &tested {
                for y in &tested {
                    let xy = cusp_equivalent(x, y, level);
                    assert_eq!(xy, cusp_equivalent(y, x, level));
                    for z in &tested {
                        if xy && cusp_equivalent(y, z, level) {
                            assert!(cusp_equivalent(x, z, level));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_cusp_classes() {
        for level in Level::ALL {
            assert_eq!(cusp_class_count(level), 2);
            assert_eq!(
                cusp_class_representatives(level),
                vec![CuspPoint::Infinity, CuspPoint::integer(-1)]
            );
        }
    }

    #[test]
    fn random_cusps_land_in_a_known_class() {
        for level in Level::ALL {
            let reps = cusp_class_representatives(level);
            let mut sampler = Sampler::with_stream(19, u64::from(level.modulus()), 16);
            for _ in 0..100 {
                let x = CuspPoint::Infinity.act(&sampler.next_element());
                let hits = reps
                    .iter()
                    .filter(|r| cusp_equivalent(r, &x, level))
                    .count();
                assert_eq!(hits, 1, "{x}");
            }
        }
    }
}

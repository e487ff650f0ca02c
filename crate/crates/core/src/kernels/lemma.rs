//! Residue-class lemmas behind the kernel predicates.
//!
//! Each lemma splits the members of a level into cases and states, per case,
//! that `m | v(M)` (with `v = f` or `g`) holds exactly when a congruence on the
//! entries holds, and exactly when `M` reduces into an explicit list of
//! classes. Since `v mod m` depends on quotients of entries, it is not a
//! function of `M` modulo the list modulus alone, so the check lifts: every
//! member with all entries in `[-box, box]` is tested.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{four_level3, four_level4, six_level3, six_level4, three_level3, three_level4};
use crate::arith::residue;
use crate::error::{Error, Result};
use crate::multiplier::{branch_of, branch_value, Level, Parity, ResidueClass};
use crate::report::Verdict;
use crate::sl2z::Mat2;

/// Default half-width of the entry box.
pub const DEFAULT_BOX: i64 = 40;

/// At most this many counterexamples are stored in a report; all are counted.
const MAX_STORED_COUNTEREXAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    /// `f` even, classes mod 2.
    #[serde(rename = "level3-mod2")]
    Level3Mod2,
    /// `f = 0 mod 4`, classes mod 4.
    #[serde(rename = "level3-mod4")]
    Level3Mod4,
    /// `f = 0 mod 3`, classes mod 9.
    #[serde(rename = "level3-mod3")]
    Level3Mod3,
    /// `g` even, classes mod 8.
    #[serde(rename = "level4-mod2")]
    Level4Mod2,
    /// `g = 0 mod 4`, classes mod 16.
    #[serde(rename = "level4-mod4")]
    Level4Mod4,
    /// `g = 0 mod 3`, classes mod 3.
    #[serde(rename = "level4-mod3")]
    Level4Mod3,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::Level3Mod2,
        LemmaId::Level3Mod4,
        LemmaId::Level3Mod3,
        LemmaId::Level4Mod2,
        LemmaId::Level4Mod4,
        LemmaId::Level4Mod3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Level3Mod2 => "level3-mod2",
            LemmaId::Level3Mod4 => "level3-mod4",
            LemmaId::Level3Mod3 => "level3-mod3",
            LemmaId::Level4Mod2 => "level4-mod2",
            LemmaId::Level4Mod4 => "level4-mod4",
            LemmaId::Level4Mod3 => "level4-mod3",
        }
    }

    pub fn level(self) -> Level {
        self.table().level
    }

    /// The `m` in `m | v(M)`.
    pub fn divisor(self) -> u64 {
        self.table().divisor
    }

    /// Modulus of the explicit class lists.
    pub fn list_modulus(self) -> i64 {
        self.table().list_modulus
    }

    /// Every listed class, reduced into `[0, list_modulus)`, per case.
    pub fn expected_classes(self) -> Vec<(&'static str, BTreeSet<[i64; 4]>)> {
        let table = self.table();
        table
            .cases
            .iter()
            .map(|case| (case.name, case.expected(table.list_modulus)))
            .collect()
    }

    fn table(self) -> &'static LemmaTable {
        match self {
            LemmaId::Level3Mod2 => &LEVEL3_MOD2,
            LemmaId::Level3Mod4 => &LEVEL3_MOD4,
            LemmaId::Level3Mod3 => &LEVEL3_MOD3,
            LemmaId::Level4Mod2 => &LEVEL4_MOD2,
            LemmaId::Level4Mod4 => &LEVEL4_MOD4,
            LemmaId::Level4Mod3 => &LEVEL4_MOD3,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

struct CaseTable {
    name: &'static str,
    selects: fn(&Mat2) -> bool,
    condition: fn(&Mat2) -> bool,
    /// Each listed class stands for itself and its negative.
    signed: bool,
    classes: &'static [[i64; 4]],
}

impl CaseTable {
    fn expected(&self, modulus: i64) -> BTreeSet<[i64; 4]> {
        let mut out = BTreeSet::new();
        for e in self.classes {
            out.insert(e.map(|x| x.rem_euclid(modulus)));
            if self.signed {
                out.insert(e.map(|x| (-x).rem_euclid(modulus)));
            }
        }
        out
    }
}

struct LemmaTable {
    level: Level,
    divisor: u64,
    list_modulus: i64,
    cases: &'static [CaseTable],
}

fn branch(m: &Mat2, level: Level) -> (ResidueClass, Parity) {
    let b = branch_of(m, level).expect("scan yields members only");
    (b.residue_class, b.c_parity)
}

fn identity_odd(m: &Mat2) -> bool {
    branch(m, Level::Three) == (ResidueClass::PlusMinusIdentity, Parity::Odd)
}
fn identity_even(m: &Mat2) -> bool {
    branch(m, Level::Three) == (ResidueClass::PlusMinusIdentity, Parity::Even)
}
fn t_odd(m: &Mat2) -> bool {
    branch(m, Level::Three) == (ResidueClass::PlusMinusT, Parity::Odd)
}
fn t_even(m: &Mat2) -> bool {
    branch(m, Level::Three) == (ResidueClass::PlusMinusT, Parity::Even)
}
fn c_odd(m: &Mat2) -> bool {
    residue(m.c(), 2) == 1
}
fn c_even(m: &Mat2) -> bool {
    residue(m.c(), 2) == 0
}
fn level4_identity(m: &Mat2) -> bool {
    branch(m, Level::Four).0 == ResidueClass::PlusMinusIdentity
}
fn level4_t(m: &Mat2) -> bool {
    branch(m, Level::Four).0 == ResidueClass::PlusMinusT
}
fn level4_s2_even(m: &Mat2) -> bool {
    branch(m, Level::Four) == (ResidueClass::PlusMinusS2Class, Parity::Even)
}
fn level4_s2_odd(m: &Mat2) -> bool {
    branch(m, Level::Four) == (ResidueClass::PlusMinusS2Class, Parity::Odd)
}

#[rustfmt::skip]
static LEVEL3_MOD2: LemmaTable = LemmaTable {
    level: Level::Three,
    divisor: 2,
    list_modulus: 2,
    cases: &[
        CaseTable {
            name: "c-odd",
            selects: c_odd,
            condition: six_level3,
            signed: false,
            classes: &[[1, 1, 1, 0], [0, 1, 1, 1]],
        },
        CaseTable {
            name: "c-even",
            selects: c_even,
            condition: six_level3,
            signed: false,
            classes: &[[1, 0, 0, 1]],
        },
    ],
};

#[rustfmt::skip]
static LEVEL3_MOD4: LemmaTable = LemmaTable {
    level: Level::Three,
    divisor: 4,
    list_modulus: 4,
    cases: &[
        CaseTable {
            name: "identity-c-odd",
            selects: identity_odd,
            condition: three_level3,
            signed: false,
            classes: &[
                [0, -1, 1, -1], [0, 1, -1, -1], [1, 1, 1, 2], [1, -1, -1, 2],
                [2, 1, 1, 1], [2, -1, -1, 1], [-1, -1, 1, 0], [-1, 1, -1, 0],
            ],
        },
        CaseTable {
            name: "identity-c-even",
            selects: identity_even,
            condition: three_level3,
            signed: false,
            classes: &[[1, 0, 0, 1], [1, 2, 2, 1], [-1, 0, 2, -1], [-1, 2, 0, -1]],
        },
        CaseTable {
            name: "t-c-odd",
            selects: t_odd,
            condition: three_level3,
            signed: false,
            classes: &[
                [0, -1, 1, 1], [0, 1, -1, 1], [1, -1, 1, 0], [1, 1, -1, 0],
                [2, 1, 1, -1], [2, -1, -1, -1], [-1, 1, 1, 2], [-1, -1, -1, 2],
            ],
        },
        CaseTable {
            name: "t-c-even",
            selects: t_even,
            condition: three_level3,
            signed: false,
            classes: &[[-1, 0, 0, -1], [-1, 2, 2, -1], [1, 0, 2, 1], [1, 2, 0, 1]],
        },
    ],
};

#[rustfmt::skip]
const MOD9_IDENTITY: &[[i64; 4]] = &[
    [1, 0, 0, 1], [1, 3, 3, 1], [1, -3, -3, 1],
    [4, 0, 0, -2], [4, 3, 3, -2], [4, -3, -3, -2],
    [-2, 0, 0, 4], [-2, 3, 3, 4], [-2, -3, -3, 4],
];

#[rustfmt::skip]
const MOD9_T: &[[i64; 4]] = &[
    [0, -1, 1, 0], [0, 2, 4, 0], [0, -4, -2, 0],
    [3, -1, 1, -3], [3, 2, 4, -3], [3, -4, -2, -3],
    [-3, -1, 1, 3], [-3, 2, 4, 3], [-3, -4, -2, 3],
];

#[rustfmt::skip]
static LEVEL3_MOD3: LemmaTable = LemmaTable {
    level: Level::Three,
    divisor: 3,
    list_modulus: 9,
    cases: &[
        CaseTable {
            name: "identity-c-odd",
            selects: identity_odd,
            condition: four_level3,
            signed: true,
            classes: MOD9_IDENTITY,
        },
        CaseTable {
            name: "identity-c-even",
            selects: identity_even,
            condition: four_level3,
            signed: true,
            classes: MOD9_IDENTITY,
        },
        CaseTable {
            name: "t-c-odd",
            selects: t_odd,
            condition: four_level3,
            signed: true,
            classes: MOD9_T,
        },
        CaseTable {
            name: "t-c-even",
            selects: t_even,
            condition: four_level3,
            signed: true,
            classes: MOD9_T,
        },
    ],
};

#[rustfmt::skip]
static LEVEL4_MOD2: LemmaTable = LemmaTable {
    level: Level::Four,
    divisor: 2,
    list_modulus: 8,
    cases: &[
        CaseTable {
            name: "identity",
            selects: level4_identity,
            condition: six_level4,
            signed: true,
            classes: &[[1, 0, 0, 1], [1, 4, 4, 1], [-3, 0, 0, -3], [-3, 4, 4, -3]],
        },
        CaseTable {
            name: "s2-c-even",
            selects: level4_s2_even,
            condition: six_level4,
            signed: true,
            classes: &[[1, 2, 2, -3], [1, -2, -2, -3], [-3, 2, 2, 1], [-3, -2, -2, 1]],
        },
        CaseTable {
            name: "t",
            selects: level4_t,
            condition: six_level4,
            signed: true,
            classes: &[[0, -1, 1, 4], [0, 3, -3, 4], [4, -1, 1, 0], [4, 3, -3, 0]],
        },
        CaseTable {
            name: "s2-c-odd",
            selects: level4_s2_odd,
            condition: six_level4,
            signed: true,
            classes: &[[2, -1, -3, 2], [2, 3, 1, 2], [-2, -1, -3, -2], [-2, 3, 1, -2]],
        },
    ],
};

#[rustfmt::skip]
static LEVEL4_MOD4: LemmaTable = LemmaTable {
    level: Level::Four,
    divisor: 4,
    list_modulus: 16,
    cases: &[
        CaseTable {
            name: "identity",
            selects: level4_identity,
            condition: three_level4,
            signed: false,
            classes: &[
                [1, 0, 0, 1], [1, 4, 4, 1], [1, -4, -4, 1], [1, 8, 8, 1],
                [5, 0, 0, -3], [5, 4, 4, -3], [5, -4, -4, -3], [5, 8, 8, -3],
                [-7, 0, 0, -7], [-7, 4, 4, -7], [-7, -4, -4, -7], [-7, 8, 8, -7],
                [-3, 0, 0, 5], [-3, 4, 4, 5], [-3, -4, -4, 5], [-3, 8, 8, 5],
                [-1, 0, 8, -1], [-1, 4, -4, -1], [-1, 8, 0, -1], [-1, -4, 4, -1],
                [3, 0, 8, -5], [3, 4, -4, -5], [3, 8, 0, -5], [3, -4, 4, -5],
                [7, 0, 8, 7], [7, 4, -4, 7], [7, 8, 0, 7], [7, -4, 4, 7],
                [-5, 0, 8, 3], [-5, 4, -4, 3], [-5, 8, 0, 3], [-5, -4, 4, 3],
            ],
        },
        CaseTable {
            name: "s2-c-even",
            selects: level4_s2_even,
            condition: three_level4,
            signed: false,
            classes: &[
                [1, 2, 2, 5], [5, 2, 2, 1], [-7, 2, 2, -3], [-3, 2, 2, -7],
                [1, 6, 6, 5], [5, 6, 6, 1], [-7, 6, 6, -3], [-3, 6, 6, -7],
                [1, -6, -6, 5], [5, -6, -6, 1], [-7, -6, -6, -3], [-3, -6, -6, -7],
                [1, -2, -2, 5], [5, -2, -2, 1], [-7, -2, -2, -3], [-3, -2, -2, -7],
                [3, 2, -6, 7], [7, 2, -6, 3], [-5, 2, -6, -1], [-1, 2, -6, -5],
                [3, 6, -2, 7], [7, 6, -2, 3], [-5, 6, -2, -1], [-1, 6, -2, -5],
                [3, -6, 2, 7], [7, -6, 2, 3], [-5, -6, 2, -1], [-1, -6, 2, -5],
                [3, -2, 6, 7], [7, -2, 6, 3], [-5, -2, 6, -1], [-1, -2, 6, -5],
            ],
        },
        CaseTable {
            name: "t",
            selects: level4_t,
            condition: three_level4,
            signed: false,
            classes: &[
                [0, 3, 5, -4], [0, 7, -7, -4], [0, -5, -3, -4], [0, -1, 1, -4],
                [4, 3, 5, 8], [4, 7, -7, 8], [4, -5, -3, 8], [4, -1, 1, 8],
                [8, 3, 5, 4], [8, 7, -7, 4], [8, -5, -3, 4], [8, -1, 1, 4],
                [-4, 3, 5, 0], [-4, 7, -7, 0], [-4, -5, -3, 0], [-4, -1, 1, 0],
                [0, 1, -1, -4], [0, 5, 3, -4], [0, -7, 7, -4], [0, -3, -5, -4],
                [4, 1, -1, 8], [4, 5, 3, 8], [4, -7, 7, 8], [4, -3, -5, 8],
                [8, 1, -1, 4], [8, 5, 3, 4], [8, -7, 7, 4], [8, -3, -5, 4],
                [-4, 1, -1, 0], [-4, 5, 3, 0], [-4, -7, 7, 0], [-4, -3, -5, 0],
            ],
        },
        CaseTable {
            name: "s2-c-odd",
            selects: level4_s2_odd,
            condition: three_level4,
            signed: false,
            classes: &[
                [2, 3, 1, -6], [6, 3, 1, 6], [-6, 3, 1, 2], [-2, 3, 1, -2],
                [2, 7, 5, -6], [6, 7, 5, 6], [-6, 7, 5, 2], [-2, 7, 5, -2],
                [2, -5, -7, -6], [6, -5, -7, 6], [-6, -5, -7, 2], [-2, -5, -7, -2],
                [2, -1, -3, -6], [6, -1, -3, 6], [-6, -1, -3, 2], [-2, -1, -3, -2],
                [2, -7, -5, -6], [6, -7, -5, 6], [-6, -7, -5, 2], [-2, -7, -5, -2],
                [2, -3, -1, -6], [6, -3, -1, 6], [-6, -3, -1, 2], [-2, -3, -1, -2],
                [2, 1, 3, -6], [6, 1, 3, 6], [-6, 1, 3, 2], [-2, 1, 3, -2],
                [2, 5, 7, -6], [6, 5, 7, 6], [-6, 5, 7, 2], [-2, 5, 7, -2],
            ],
        },
    ],
};

#[rustfmt::skip]
const MOD3_CLASSES: &[[i64; 4]] = &[[1, 0, 0, 1], [0, -1, 1, 0], [1, 1, 1, -1], [1, -1, -1, -1]];

#[rustfmt::skip]
static LEVEL4_MOD3: LemmaTable = LemmaTable {
    level: Level::Four,
    divisor: 3,
    list_modulus: 3,
    cases: &[
        CaseTable {
            name: "c-even",
            selects: c_even,
            condition: four_level4,
            signed: true,
            classes: MOD3_CLASSES,
        },
        CaseTable {
            name: "c-odd",
            selects: c_odd,
            condition: four_level4,
            signed: true,
            classes: MOD3_CLASSES,
        },
    ],
};

/// A member on which the lemma's three statements disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub matrix: String,
    pub case: &'static str,
    /// `f(M)` or `g(M)`.
    pub value: String,
    pub divisible: bool,
    pub condition_holds: bool,
    pub listed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: &'static str,
    pub members: usize,
    /// Members with `m | v(M)`.
    pub divisible: usize,
    pub expected_classes: usize,
    pub attained_classes: usize,
    /// Listed classes with no divisible member in the box.
    pub missing: Vec<String>,
    /// Attained classes absent from the list.
    pub unexpected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub level: Level,
    #[serde(rename = "box")]
    pub box_bound: i64,
    pub list_modulus: i64,
    pub members_scanned: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Union over cases of the classes of divisible members, sorted.
    pub attained_classes: Vec<String>,
    pub cases: Vec<CaseReport>,
    /// Whether attained and listed classes were compared; skipped for boxes
    /// too small to contain a lift of every class.
    pub classes_checked: bool,
    pub classes_match: bool,
    pub verdict: Verdict,
}

impl LemmaReport {
    pub fn missing_total(&self) -> usize {
        self.cases.iter().map(|c| c.missing.len()).sum()
    }
}

fn format_class(e: &[i64; 4]) -> String {
    format!("{},{},{},{}", e[0], e[1], e[2], e[3])
}

/// Members of `Gamma_{theta,N}` with every entry in `[-bound, bound]`, ordered
/// by `(a, b, c, d)`.
pub fn members_in_box(level: Level, bound: i64) -> Vec<[i64; 4]> {
    let n = i64::from(level.modulus());
    let member = move |e: &[i64; 4]| (e[0] - e[3]) % n == 0 && (e[1] + e[2]) % n == 0;
    let bound = bound.max(0);
    let mut out: Vec<[i64; 4]> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(move |a| {
            let mut found = Vec::new();
            for b in -bound..=bound {
                for c in -bound..=bound {
                    let bc1 = 1 + b * c;
                    if a == 0 {
                        if bc1 == 0 {
                            found.extend((-bound..=bound).map(|d| [a, b, c, d]));
                        }
                    } else if bc1 % a == 0 && (bc1 / a).abs() <= bound {
                        found.push([a, b, c, bc1 / a]);
                    }
                }
            }
            found.retain(member);
            found
        })
        .collect();
    out.sort_unstable();
    out
}

/// Exhaustively checks a lemma on every member in the box `|entries| <= bound`.
///
/// For each member the three statements `m | v(M)`, the case congruence, and
/// membership of `M mod list_modulus` in the list must agree; any
/// disagreement is a counterexample. Separately the attained classes are
/// compared with the list. A listed class that simply has no lift in the box
/// makes the verdict inconclusive rather than failed.
pub fn verify_residue_lemma(id: LemmaId, bound: i64) -> LemmaReport {
    let table = id.table();
    let modulus = table.list_modulus;
    let expected: Vec<BTreeSet<[i64; 4]>> =
        table.cases.iter().map(|c| c.expected(modulus)).collect();

    struct Row {
        case: usize,
        class: [i64; 4],
        divisible: bool,
        condition: bool,
        listed: bool,
        matrix: Mat2,
        value: String,
    }

    let members = members_in_box(table.level, bound);
    let rows: Vec<Row> = members
        .par_iter()
        .map(|e| {
            let m = Mat2::from_small(*e);
            let case = table
                .cases
                .iter()
                .position(|c| (c.selects)(&m))
                .expect("cases cover every member");
            let v = branch_value(&m, table.level).expect("scan yields members only");
            let class = e.map(|x| x.rem_euclid(modulus));
            Row {
                case,
                class,
                divisible: residue(&v, table.divisor) == 0,
                condition: (table.cases[case].condition)(&m),
                listed: expected[case].contains(&class),
                matrix: m,
                value: v.to_string(),
            }
        })
        .collect();

    let mut counterexamples = Vec::new();
    let mut counterexample_count = 0;
    let mut attained: Vec<BTreeSet<[i64; 4]>> = vec![BTreeSet::new(); table.cases.len()];
    let mut counts = vec![(0usize, 0usize); table.cases.len()];
    for row in &rows {
        counts[row.case].0 += 1;
        if row.divisible {
            counts[row.case].1 += 1;
            attained[row.case].insert(row.class);
        }
        if row.divisible != row.condition || row.divisible != row.listed {
            counterexample_count += 1;
            if counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
                counterexamples.push(Counterexample {
                    matrix: row.matrix.to_string(),
                    case: table.cases[row.case].name,
                    value: row.value.clone(),
                    divisible: row.divisible,
                    condition_holds: row.condition,
                    listed: row.listed,
                });
            }
        }
    }

    let classes_checked = bound > 1;
    let cases: Vec<CaseReport> = table
        .cases
        .iter()
        .enumerate()
        .map(|(i, case)| CaseReport {
            case: case.name,
            members: counts[i].0,
            divisible: counts[i].1,
            expected_classes: expected[i].len(),
            attained_classes: attained[i].len(),
            missing: expected[i]
                .difference(&attained[i])
                .map(format_class)
                .collect(),
            unexpected: attained[i]
                .difference(&expected[i])
                .map(format_class)
                .collect(),
        })
        .collect();
    let union: BTreeSet<[i64; 4]> = attained.iter().flatten().copied().collect();
    let classes_match = cases
        .iter()
        .all(|c| c.missing.is_empty() && c.unexpected.is_empty());

    let any_unexpected = cases.iter().any(|c| !c.unexpected.is_empty());
    let verdict = if counterexample_count > 0 || any_unexpected {
        Verdict::Fail
    } else if classes_checked && !classes_match {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };

    LemmaReport {
        lemma_id: id,
        level: table.level,
        box_bound: bound,
        list_modulus: modulus,
        members_scanned: rows.len(),
        counterexample_count,
        counterexamples,
        attained_classes: union.iter().map(format_class).collect(),
        cases,
        classes_checked,
        classes_match,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier::membership;

    #[test]
    fn parses_ids() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
        }
        assert!("level5-mod2".parse::<LemmaId>().is_err());
    }

    #[test]
    fn listed_classes_are_unimodular_members() {
        for id in LemmaId::ALL {
            let r = id.list_modulus();
            let n = i64::from(id.level().modulus());
            for (case, classes) in id.expected_classes() {
                for e in classes {
                    assert_eq!(
                        (e[0] * e[3] - e[1] * e[2] - 1).rem_euclid(r),
                        0,
                        "{id} {case}"
                    );
                    // The list modulus is a multiple of the level only for some lemmas.
                    if r % n == 0 {
                        assert_eq!((e[0] - e[3]).rem_euclid(n), 0, "{id} {case}");
                        assert_eq!((e[1] + e[2]).rem_euclid(n), 0, "{id} {case}");
                    }
                }
            }
        }
    }

    #[test]
    fn expected_class_counts() {
        let counts = |id: LemmaId| -> Vec<usize> {
            id.expected_classes().iter().map(|(_, s)| s.len()).collect()
        };
        assert_eq!(counts(LemmaId::Level3Mod4), [8, 4, 8, 4]);
        assert_eq!(counts(LemmaId::Level3Mod3), [18, 18, 18, 18]);
        assert_eq!(counts(LemmaId::Level4Mod2), [8, 8, 8, 8]);
        assert_eq!(counts(LemmaId::Level4Mod4), [32, 32, 32, 32]);
        assert_eq!(counts(LemmaId::Level4Mod3), [8, 8]);
    }

    #[test]
    fn box_members_match_brute_force() {
        for level in Level::ALL {
            let fast = members_in_box(level, 6);
            let mut slow = Vec::new();
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    for c in -6i64..=6 {
                        for d in -6i64..=6 {
                            if a * d - b * c == 1
                                && membership(&Mat2::from_small([a, b, c, d]), level.modulus())
                                    .unwrap()
                            {
                                slow.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn degenerate_box_passes_vacuously() {
        let report = verify_residue_lemma(LemmaId::Level3Mod4, 0);
        assert_eq!(report.members_scanned, 0);
        assert_eq!(report.verdict, Verdict::Pass);
        let report = verify_residue_lemma(LemmaId::Level4Mod2, 1);
        assert!(report.members_scanned > 0);
        assert!(!report.classes_checked);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn small_box_has_no_counterexamples() {
        for id in LemmaId::ALL {
            let report = verify_residue_lemma(id, 12);
            assert_eq!(
                report.counterexample_count, 0,
                "{id}: {:?}",
                report.counterexamples
            );
        }
    }

    #[test]
    fn report_json_keys() {
        let report = verify_residue_lemma(LemmaId::Level3Mod2, 3);
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "lemma_id",
            "box",
            "members_scanned",
            "counterexamples",
            "attained_classes",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["lemma_id"], "level3-mod2");
    }
}

//! The Kodaira singular-fiber table as a typed, queryable data model.
//!
//! Each fiber type carries four attributes: the Euler characteristic it
//! contributes, the order m of the local monodromy, the exponent d of the
//! local cyclic cover z^m = t^d, and the log canonical threshold c of the
//! fiber divisor. The attribute table is a static constant; [`self_check`]
//! verifies its internal identities (1 − c = e/12 for the seven singular
//! finite-monodromy types, gcd(d, m) = 1, and the star-pairing Euler sums)
//! and is run by the CLI at startup and by the acceptance suite.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KodairaError {
    #[error("infinite monodromy type {0}: attribute is blank in the fiber table")]
    InfiniteMonodromyType(KodairaType),
    #[error("invalid monodromy order {0}: expected one of 2, 3, 4, 6")]
    InvalidMonodromyOrder(u32),
    #[error("unknown Kodaira type tag {0:?}")]
    UnknownTag(String),
    #[error("fiber table self-check failed: {0}")]
    SelfCheck(String),
}

/// A Kodaira fiber type. `I(n)` and `IStar(n)` carry n ≥ 1; they have
/// infinite local monodromy and are excluded from all isotrivial
/// enumerations, but appear in the table and in non-isotrivial
/// canonical-bundle examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

/// Order of the local monodromy around the fiber, finite or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonodromyOrder {
    Finite(u32),
    Infinite,
}

impl MonodromyOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            MonodromyOrder::Finite(m) => Some(m),
            MonodromyOrder::Infinite => None,
        }
    }
}

impl fmt::Display for MonodromyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyOrder::Finite(m) => write!(f, "{m}"),
            MonodromyOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// The seven singular fiber types with finite local monodromy, in increasing
/// Euler-characteristic order. These are exactly the types that can occur as
/// general singular fibers of isotrivial fibrations.
pub const FINITE_SINGULAR_TYPES: [KodairaType; 7] = [
    KodairaType::II,
    KodairaType::III,
    KodairaType::IV,
    KodairaType::I0Star,
    KodairaType::IVStar,
    KodairaType::IIIStar,
    KodairaType::IIStar,
];

impl KodairaType {
    /// Euler characteristic contribution of the fiber. Total: I(n) gives n,
    /// IStar(n) gives n + 6.
    pub fn euler_characteristic(self) -> u32 {
        match self {
            KodairaType::I0 => 0,
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::I0Star => 6,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IIStar => 10,
            KodairaType::IIIStar => 9,
            KodairaType::IVStar => 8,
        }
    }

    /// Order of the local monodromy: finite for all types except I(n) and
    /// IStar(n) with n ≥ 1.
    pub fn monodromy_order(self) -> MonodromyOrder {
        match self {
            KodairaType::I0 => MonodromyOrder::Finite(1),
            KodairaType::I(_) | KodairaType::IStar(_) => MonodromyOrder::Infinite,
            KodairaType::II => MonodromyOrder::Finite(6),
            KodairaType::III => MonodromyOrder::Finite(4),
            KodairaType::IV => MonodromyOrder::Finite(3),
            KodairaType::I0Star => MonodromyOrder::Finite(2),
            KodairaType::IIStar => MonodromyOrder::Finite(6),
            KodairaType::IIIStar => MonodromyOrder::Finite(4),
            KodairaType::IVStar => MonodromyOrder::Finite(3),
        }
    }

    /// The exponent d of the local model z^m = t^d. Blank in the table for
    /// the infinite-monodromy types.
    pub fn local_exponent(self) -> Result<u32, KodairaError> {
        match self {
            KodairaType::I0
            | KodairaType::II
            | KodairaType::III
            | KodairaType::IV
            | KodairaType::I0Star => Ok(1),
            KodairaType::IIStar => Ok(5),
            KodairaType::IIIStar => Ok(3),
            KodairaType::IVStar => Ok(2),
            KodairaType::I(_) | KodairaType::IStar(_) => {
                Err(KodairaError::InfiniteMonodromyType(self))
            }
        }
    }

    /// Log canonical threshold of the fiber divisor. Blank in the table for
    /// IStar(n ≥ 1); equal to 1 for the smooth and I(n) types.
    pub fn lct(self) -> Result<Rational, KodairaError> {
        match self {
            KodairaType::I0 | KodairaType::I(_) => Ok(Rational::one()),
            KodairaType::II => Ok(Rational::new(5, 6)),
            KodairaType::III => Ok(Rational::new(3, 4)),
            KodairaType::IV => Ok(Rational::new(2, 3)),
            KodairaType::I0Star => Ok(Rational::new(1, 2)),
            KodairaType::IIStar => Ok(Rational::new(1, 6)),
            KodairaType::IIIStar => Ok(Rational::new(1, 4)),
            KodairaType::IVStar => Ok(Rational::new(1, 3)),
            KodairaType::IStar(_) => Err(KodairaError::InfiniteMonodromyType(self)),
        }
    }

    /// True exactly for I0*, II*, III*, IV* (the types characterizing type-A
    /// fibrations). IStar(n ≥ 1) is not in that list.
    pub fn is_star_type(self) -> bool {
        matches!(
            self,
            KodairaType::I0Star | KodairaType::IIStar | KodairaType::IIIStar | KodairaType::IVStar
        )
    }

    /// The star partner of the three additive pairs II/II*, III/III*, IV/IV*.
    pub fn star_partner(self) -> Option<KodairaType> {
        match self {
            KodairaType::II => Some(KodairaType::IIStar),
            KodairaType::III => Some(KodairaType::IIIStar),
            KodairaType::IV => Some(KodairaType::IVStar),
            KodairaType::IIStar => Some(KodairaType::II),
            KodairaType::IIIStar => Some(KodairaType::III),
            KodairaType::IVStar => Some(KodairaType::IV),
            _ => None,
        }
    }
}

/// The singular fiber types whose local monodromy has order exactly m, for
/// m ∈ {2, 3, 4, 6}. Enumeration over a group of order d unions these sets
/// over the divisors ≥ 2 of d.
pub fn types_for_monodromy_order(m: u32) -> Result<Vec<KodairaType>, KodairaError> {
    match m {
        2 => Ok(vec![KodairaType::I0Star]),
        3 => Ok(vec![KodairaType::IV, KodairaType::IVStar]),
        4 => Ok(vec![KodairaType::III, KodairaType::IIIStar]),
        6 => Ok(vec![KodairaType::II, KodairaType::IIStar]),
        other => Err(KodairaError::InvalidMonodromyOrder(other)),
    }
}

/// Verify the fiber table's internal identities. The table is the ground
/// truth for the rest of the toolkit, so this check runs at CLI startup.
pub fn self_check() -> Result<(), KodairaError> {
    let twelfth = |e: u32| Rational::new(e as i64, 12);
    for t in FINITE_SINGULAR_TYPES {
        let e = t.euler_characteristic();
        let c = t.lct().expect("finite type has lct");
        let d = t.local_exponent().expect("finite type has exponent");
        let m = t
            .monodromy_order()
            .finite()
            .expect("finite type has finite monodromy");
        if Rational::one() - &c != twelfth(e) {
            return Err(KodairaError::SelfCheck(format!(
                "1 - lct != euler/12 for {t}"
            )));
        }
        if !(1 <= d && d < m) {
            return Err(KodairaError::SelfCheck(format!(
                "exponent {d} out of [1, {m}) for {t}"
            )));
        }
        if d.gcd(&m) != 1 {
            return Err(KodairaError::SelfCheck(format!("gcd(d, m) != 1 for {t}")));
        }
        // d/m = 1 - c: the local model exponent reproduces the lct row
        if Rational::new(d as i64, m as i64) != Rational::one() - &c {
            return Err(KodairaError::SelfCheck(format!("d/m != 1 - c for {t}")));
        }
    }
    for t in [KodairaType::II, KodairaType::III, KodairaType::IV] {
        let partner = t.star_partner().expect("non-star member of a pair");
        if t.euler_characteristic() + partner.euler_characteristic() != 12 {
            return Err(KodairaError::SelfCheck(format!(
                "euler({t}) + euler({partner}) != 12"
            )));
        }
        if t.monodromy_order() != partner.monodromy_order() {
            return Err(KodairaError::SelfCheck(format!(
                "monodromy order differs in pair {t}/{partner}"
            )));
        }
    }
    for m in [2u32, 3, 4, 6] {
        for t in types_for_monodromy_order(m)? {
            if t.monodromy_order() != MonodromyOrder::Finite(m) {
                return Err(KodairaError::SelfCheck(format!(
                    "{t} listed at wrong order {m}"
                )));
            }
        }
    }
    if KodairaType::I0.euler_characteristic() != 0 || KodairaType::I0.lct() != Ok(Rational::one()) {
        return Err(KodairaError::SelfCheck("smooth fiber row corrupted".into()));
    }
    // presentation strings agree with the typed attributes on the concrete columns
    for col in table_columns() {
        if col.label == "In" || col.label == "In*" {
            continue;
        }
        let t: KodairaType = col.label.parse().map_err(|_| {
            KodairaError::SelfCheck(format!("unparseable column label {}", col.label))
        })?;
        let ok = col.euler == t.euler_characteristic().to_string()
            && col.monodromy_order == t.monodromy_order().to_string()
            && col.local_exponent
                == t.local_exponent()
                    .map(|d| d.to_string())
                    .unwrap_or_default()
            && col.lct == t.lct().map(|c| c.to_string()).unwrap_or_default();
        if !ok {
            return Err(KodairaError::SelfCheck(format!(
                "presentation column {} disagrees with typed attributes",
                col.label
            )));
        }
    }
    Ok(())
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IVStar => write!(f, "IV*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = KodairaError;

    /// Accepts the display forms ("I0*", "IV*") and the ascii aliases used in
    /// CLI arguments and golden files ("I0star", "IVstar", "I3star").
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace("STAR", "*");
        let (body, star) = match norm.strip_suffix('*') {
            Some(b) => (b, true),
            None => (norm.as_str(), false),
        };
        let t = match (body, star) {
            ("II", false) => KodairaType::II,
            ("III", false) => KodairaType::III,
            ("IV", false) => KodairaType::IV,
            ("II", true) => KodairaType::IIStar,
            ("III", true) => KodairaType::IIIStar,
            ("IV", true) => KodairaType::IVStar,
            (b, star) => {
                let n: u32 = b
                    .strip_prefix('I')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| KodairaError::UnknownTag(s.to_string()))?;
                match (n, star) {
                    (0, false) => KodairaType::I0,
                    (0, true) => KodairaType::I0Star,
                    (n, false) => KodairaType::I(n),
                    (n, true) => KodairaType::IStar(n),
                }
            }
        };
        Ok(t)
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // ascii tag, stable across JSON/CSV and the CLI argument syntax
        let tag = match self {
            KodairaType::I0 => "I0".to_string(),
            KodairaType::I(n) => format!("I{n}"),
            KodairaType::II => "II".to_string(),
            KodairaType::III => "III".to_string(),
            KodairaType::IV => "IV".to_string(),
            KodairaType::I0Star => "I0star".to_string(),
            KodairaType::IStar(n) => format!("I{n}star"),
            KodairaType::IIStar => "IIstar".to_string(),
            KodairaType::IIIStar => "IIIstar".to_string(),
            KodairaType::IVStar => "IVstar".to_string(),
        };
        serializer.serialize_str(&tag)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One column of the fiber table in presentation form, for the `table`
/// CLI subcommand. The two I_n columns keep their symbolic entries.
pub struct TableColumn {
    pub label: &'static str,
    pub euler: &'static str,
    pub monodromy_order: &'static str,
    pub local_exponent: &'static str,
    pub lct: &'static str,
}

/// The ten columns of the fiber table, in the printed order.
pub fn table_columns() -> Vec<TableColumn> {
    vec![
        TableColumn {
            label: "I0",
            euler: "0",
            monodromy_order: "1",
            local_exponent: "1",
            lct: "1/1",
        },
        TableColumn {
            label: "In",
            euler: "n",
            monodromy_order: "inf",
            local_exponent: "-",
            lct: "1/1",
        },
        TableColumn {
            label: "II",
            euler: "2",
            monodromy_order: "6",
            local_exponent: "1",
            lct: "5/6",
        },
        TableColumn {
            label: "III",
            euler: "3",
            monodromy_order: "4",
            local_exponent: "1",
            lct: "3/4",
        },
        TableColumn {
            label: "IV",
            euler: "4",
            monodromy_order: "3",
            local_exponent: "1",
            lct: "2/3",
        },
        TableColumn {
            label: "I0*",
            euler: "6",
            monodromy_order: "2",
            local_exponent: "1",
            lct: "1/2",
        },
        TableColumn {
            label: "In*",
            euler: "n+6",
            monodromy_order: "inf",
            local_exponent: "-",
            lct: "-",
        },
        TableColumn {
            label: "II*",
            euler: "10",
            monodromy_order: "6",
            local_exponent: "5",
            lct: "1/6",
        },
        TableColumn {
            label: "III*",
            euler: "9",
            monodromy_order: "4",
            local_exponent: "3",
            lct: "1/4",
        },
        TableColumn {
            label: "IV*",
            euler: "8",
            monodromy_order: "3",
            local_exponent: "2",
            lct: "1/3",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(KodairaType::I0Star.euler_characteristic(), 6);
        assert_eq!(KodairaType::IIStar.lct().unwrap(), Rational::new(1, 6));
        assert_eq!(
            KodairaType::I(3).monodromy_order(),
            MonodromyOrder::Infinite
        );
        assert_eq!(KodairaType::I(3).euler_characteristic(), 3);
        assert_eq!(KodairaType::IStar(2).euler_characteristic(), 8);
        assert_eq!(KodairaType::IVStar.local_exponent().unwrap(), 2);
    }

    #[test]
    fn blank_attributes_error() {
        assert!(matches!(
            KodairaType::I(1).local_exponent(),
            Err(KodairaError::InfiniteMonodromyType(_))
        ));
        assert!(matches!(
            KodairaType::IStar(1).lct(),
            Err(KodairaError::InfiniteMonodromyType(_))
        ));
        // I(n) keeps its lct of 1 even though the exponent is blank
        assert_eq!(KodairaType::I(5).lct().unwrap(), Rational::one());
    }

    #[test]
    fn star_predicate() {
        assert!(KodairaType::I0Star.is_star_type());
        assert!(!KodairaType::IV.is_star_type());
        assert!(!KodairaType::I(1).is_star_type());
        assert!(!KodairaType::IStar(1).is_star_type());
    }

    #[test]
    fn types_per_order() {
        assert_eq!(
            types_for_monodromy_order(2).unwrap(),
            vec![KodairaType::I0Star]
        );
        assert_eq!(
            types_for_monodromy_order(3).unwrap(),
            vec![KodairaType::IV, KodairaType::IVStar]
        );
        assert_eq!(
            types_for_monodromy_order(6).unwrap(),
            vec![KodairaType::II, KodairaType::IIStar]
        );
        assert!(types_for_monodromy_order(5).is_err());
    }

    #[test]
    fn self_check_passes() {
        self_check().unwrap();
    }

    #[test]
    fn lct_euler_identity() {
        for t in FINITE_SINGULAR_TYPES {
            let e = t.euler_characteristic();
            assert_eq!(
                Rational::one() - &t.lct().unwrap(),
                Rational::new(e as i64, 12),
                "1 - lct != e/12 for {t}"
            );
        }
    }

    #[test]
    fn star_pairs_sum_to_twelve() {
        for t in [KodairaType::II, KodairaType::III, KodairaType::IV] {
            let p = t.star_partner().unwrap();
            assert_eq!(t.euler_characteristic() + p.euler_characteristic(), 12);
            assert_eq!(t.monodromy_order(), p.monodromy_order());
        }
    }

    #[test]
    fn parse_tags() {
        for (s, t) in [
            ("I0", KodairaType::I0),
            ("I3", KodairaType::I(3)),
            ("II", KodairaType::II),
            ("I0star", KodairaType::I0Star),
            ("I0*", KodairaType::I0Star),
            ("IVstar", KodairaType::IVStar),
            ("iv*", KodairaType::IVStar),
            ("I2star", KodairaType::IStar(2)),
        ] {
            assert_eq!(s.parse::<KodairaType>().unwrap(), t, "parsing {s}");
        }
        assert!("V".parse::<KodairaType>().is_err());
    }
}

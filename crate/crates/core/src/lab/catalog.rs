use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which way an inequality points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `lhs >= rhs`.
    Ge,
    /// `lhs <= rhs`.
    Le,
}

/// Standing of an inequality for a given dimension and body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Conjecture,
    /// The statement carries a hypothesis the body does not meet, so a
    /// violation says nothing.
    OutsideHypothesis,
}

/// One entry of the inequality catalog, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum InequalityId {
    LoomisWhitney,
    Meyer,
    BmUpper,
    CgUpper {
        m: usize,
    },
    SqrtNLower,
    WeightedBm {
        a: Vec<f64>,
    },
    SquareLower,
    Pythagorean {
        m: usize,
        u: Vec<f64>,
    },
    ZonoidLower {
        m: usize,
    },
    MthLower {
        m: usize,
    },
    ReverseCs {
        m: usize,
    },
    CondEq111 {
        m: usize,
    },
    EasyBounds {
        m: usize,
        p: f64,
    },
    Trivmax {
        m: usize,
    },
    BmV1Lower,
    HeronN3,
    /// `c2 = None` uses the value attained by the regular cross-polytope.
    Prob4 {
        m: usize,
        c2: Option<f64>,
    },
    /// `c3 = None` uses the value attained by the regular cross-polytope.
    Prob5 {
        m: usize,
        c3: Option<f64>,
    },
}

/// Catalog names, in catalog order.
pub const NAMES: [&str; 18] = [
    "loomis_whitney",
    "meyer",
    "bm_upper",
    "cg_upper",
    "sqrt_n_lower",
    "weighted_bm",
    "square_lower",
    "pythagorean",
    "zonoid_lower",
    "mth_lower",
    "reverse_cs",
    "cond_eq111",
    "easy_bounds",
    "trivmax",
    "bm_v1_lower",
    "heron_n3",
    "prob4_family",
    "prob5_family",
];

impl InequalityId {
    pub fn name(&self) -> &'static str {
        use InequalityId::*;
        match self {
            LoomisWhitney => "loomis_whitney",
            Meyer => "meyer",
            BmUpper => "bm_upper",
            CgUpper { .. } => "cg_upper",
            SqrtNLower => "sqrt_n_lower",
            WeightedBm { .. } => "weighted_bm",
            SquareLower => "square_lower",
            Pythagorean { .. } => "pythagorean",
            ZonoidLower { .. } => "zonoid_lower",
            MthLower { .. } => "mth_lower",
            ReverseCs { .. } => "reverse_cs",
            CondEq111 { .. } => "cond_eq111",
            EasyBounds { .. } => "easy_bounds",
            Trivmax { .. } => "trivmax",
            BmV1Lower => "bm_v1_lower",
            HeronN3 => "heron_n3",
            Prob4 { .. } => "prob4_family",
            Prob5 { .. } => "prob5_family",
        }
    }

    pub fn orientation(&self) -> Orientation {
        use InequalityId::*;
        match self {
            LoomisWhitney
            | BmUpper
            | CgUpper { .. }
            | Pythagorean { .. }
            | ReverseCs { .. }
            | CondEq111 { .. } => Orientation::Le,
            _ => Orientation::Ge,
        }
    }

    /// The order `m` of the intrinsic volume on the left, resolved against
    /// the ambient dimension.
    pub fn order(&self, n: usize) -> usize {
        use InequalityId::*;
        match self {
            LoomisWhitney | Meyer => n,
            BmUpper | SqrtNLower | WeightedBm { .. } | SquareLower => n - 1,
            BmV1Lower => 1,
            HeronN3 => 2,
            CgUpper { m }
            | Pythagorean { m, .. }
            | ZonoidLower { m }
            | MthLower { m }
            | ReverseCs { m }
            | CondEq111 { m }
            | EasyBounds { m, .. }
            | Trivmax { m }
            | Prob4 { m, .. }
            | Prob5 { m, .. } => *m,
        }
    }

    /// Check parameters against the ambient dimension.
    pub fn validate(&self, n: usize) -> Result<()> {
        use InequalityId::*;
        if n < 2 {
            return Err(Error::invalid("inequalities need n >= 2"));
        }
        let range = |m: usize, lo: usize, hi: usize| -> Result<()> {
            if m < lo || m > hi {
                return Err(Error::invalid(format!(
                    "{}: m = {m} outside {lo}..={hi} for n = {n}",
                    self.name()
                )));
            }
            Ok(())
        };
        let len = |v: &[f64], what: &str| -> Result<()> {
            if v.len() != n {
                return Err(Error::invalid(format!(
                    "{}: {what} has {} entries, expected {n}",
                    self.name(),
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!(
                    "{}: {what} must be finite",
                    self.name()
                )));
            }
            Ok(())
        };
        match self {
            CgUpper { m } | Trivmax { m } => range(*m, 1, n - 1),
            ZonoidLower { m } => range(*m, 1, n - 1),
            MthLower { m } | CondEq111 { m } | Prob5 { m, .. } => range(*m, 1, n.saturating_sub(2)),
            ReverseCs { m } => range(*m, 1, n.saturating_sub(2)),
            Pythagorean { m, u } => {
                range(*m, 1, n - 1)?;
                len(u, "u")?;
                if u.iter().all(|&x| x == 0.0) {
                    return Err(Error::invalid("pythagorean: u must be nonzero"));
                }
                Ok(())
            }
            EasyBounds { m, p } => {
                range(*m, 1, n - 1)?;
                if !(p.is_finite() && *p > 0.0) {
                    return Err(Error::invalid("easy_bounds: p must be positive and finite"));
                }
                Ok(())
            }
            WeightedBm { a } => {
                len(a, "a")?;
                if a.iter().any(|&x| x <= 0.0) {
                    return Err(Error::invalid("weighted_bm: weights must be positive"));
                }
                Ok(())
            }
            Prob4 { m, c2 } => {
                range(*m, 1, n.saturating_sub(2))?;
                positive(*c2, "c2")
            }
            BmV1Lower if n < 3 => Err(Error::invalid("bm_v1_lower needs n >= 3")),
            HeronN3 if n != 3 => Err(Error::invalid("heron_n3 is stated for n = 3")),
            _ => Ok(()),
        }
        .and_then(|_| match self {
            Prob5 { c3, .. } => positive(*c3, "c3"),
            _ => Ok(()),
        })
    }

    /// Standing of the statement in `R^n`, before any body-specific
    /// hypothesis is checked. `zonotope` marks bodies known to be zonoids.
    pub fn status(&self, n: usize, zonotope: bool) -> Status {
        use InequalityId::*;
        match self {
            CgUpper { m } if *m == 1 || *m == n - 1 || zonotope => Status::Proven,
            CgUpper { .. } => Status::Conjecture,
            ReverseCs { m } if *m == 1 || *m + 2 == n => Status::Proven,
            ReverseCs { .. } => Status::Conjecture,
            ZonoidLower { m } if zonotope || *m == n - 1 => Status::Proven,
            ZonoidLower { .. } => Status::OutsideHypothesis,
            HeronN3 | Prob4 { .. } | Prob5 { .. } => Status::Conjecture,
            _ => Status::Proven,
        }
    }

    /// Every catalog entry with representative parameters for `R^n`.
    pub fn all(n: usize) -> Vec<InequalityId> {
        use InequalityId::*;
        let ones = vec![1.0; n];
        let mut out = vec![
            LoomisWhitney,
            Meyer,
            BmUpper,
            CgUpper { m: 1 },
            SqrtNLower,
            WeightedBm { a: ones.clone() },
            SquareLower,
            Pythagorean { m: 1, u: ones },
            ZonoidLower { m: 1 },
            MthLower { m: 1 },
            ReverseCs { m: 1 },
            CondEq111 { m: 1 },
            EasyBounds { m: 1, p: 2.0 },
            Trivmax { m: 1 },
        ];
        if n >= 3 {
            out.push(BmV1Lower);
        }
        if n == 3 {
            out.push(HeronN3);
        }
        out.push(Prob4 { m: 1, c2: None });
        out.push(Prob5 { m: 1, c3: None });
        out.retain(|id| id.validate(n).is_ok());
        out
    }
}

fn positive(c: Option<f64>, what: &str) -> Result<()> {
    match c {
        Some(c) if !(c.is_finite() && c > 0.0) => Err(Error::invalid(format!(
            "{what} must be positive and finite"
        ))),
        _ => Ok(()),
    }
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InequalityId::*;
        f.write_str(self.name())?;
        match self {
            CgUpper { m }
            | ZonoidLower { m }
            | MthLower { m }
            | ReverseCs { m }
            | CondEq111 { m }
            | Trivmax { m } => write!(f, ":m={m}"),
            WeightedBm { a } => write!(f, ":a={}", fmt_vec(a)),
            Pythagorean { m, u } => write!(f, ":m={m}:u={}", fmt_vec(u)),
            EasyBounds { m, p } => write!(f, ":m={m}:p={p:?}"),
            Prob4 { m, c2 } => {
                write!(f, ":m={m}")?;
                c2.map_or(Ok(()), |c| write!(f, ":c2={c:?}"))
            }
            Prob5 { m, c3 } => {
                write!(f, ":m={m}")?;
                c3.map_or(Ok(()), |c| write!(f, ":c3={c:?}"))
            }
            _ => Ok(()),
        }
    }
}

struct Params<'a> {
    id: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn take(&mut self, key: &str) -> Option<&'a str> {
        let pos = self.pairs.iter().position(|(k, _)| *k == key)?;
        Some(self.pairs.remove(pos).1)
    }

    fn need(&mut self, key: &str) -> Result<&'a str> {
        self.take(key)
            .ok_or_else(|| Error::invalid(format!("{}: missing parameter {key}", self.id)))
    }

    fn usize(&mut self, key: &str) -> Result<usize> {
        let s = self.need(key)?;
        s.parse().map_err(|_| {
            Error::invalid(format!(
                "{}: {key}={s} is not a nonnegative integer",
                self.id
            ))
        })
    }

    fn real(&self, key: &str, s: &str) -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{}: {key}={s} is not a number", self.id)))
    }

    fn f64(&mut self, key: &str) -> Result<f64> {
        let s = self.need(key)?;
        self.real(key, s)
    }

    fn opt_f64(&mut self, key: &str) -> Result<Option<f64>> {
        match self.take(key) {
            Some(s) => self.real(key, s).map(Some),
            None => Ok(None),
        }
    }

    fn vec(&mut self, key: &str) -> Result<Vec<f64>> {
        let s = self.need(key)?;
        s.split(',').map(|x| self.real(key, x)).collect()
    }

    fn finish(self) -> Result<()> {
        match self.pairs.first() {
            Some((k, _)) => Err(Error::invalid(format!(
                "{}: unexpected parameter {k}",
                self.id
            ))),
            None => Ok(()),
        }
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    /// `name` or `name:key=value:...`; vectors are comma-separated.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let name = parts.next().unwrap_or_default();
        let mut pairs = Vec::new();
        for part in parts {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::invalid(format!("{name}: parameter `{part}` is not key=value"))
            })?;
            pairs.push((k.trim(), v.trim()));
        }
        let mut p = Params { id: name, pairs };
        use InequalityId::*;
        let id = match name {
            "loomis_whitney" => LoomisWhitney,
            "meyer" => Meyer,
            "bm_upper" => BmUpper,
            "cg_upper" => CgUpper { m: p.usize("m")? },
            "sqrt_n_lower" => SqrtNLower,
            "weighted_bm" => WeightedBm { a: p.vec("a")? },
            "square_lower" => SquareLower,
            "pythagorean" => Pythagorean {
                m: p.usize("m")?,
                u: p.vec("u")?,
            },
            "zonoid_lower" => ZonoidLower { m: p.usize("m")? },
            "mth_lower" => MthLower { m: p.usize("m")? },
            "reverse_cs" => ReverseCs { m: p.usize("m")? },
            "cond_eq111" => CondEq111 { m: p.usize("m")? },
            "easy_bounds" => EasyBounds {
                m: p.usize("m")?,
                p: p.f64("p")?,
            },
            "trivmax" => Trivmax { m: p.usize("m")? },
            "bm_v1_lower" => BmV1Lower,
            "heron_n3" => HeronN3,
            "prob4_family" | "prob4" => Prob4 {
                m: p.usize("m")?,
                c2: p.opt_f64("c2")?,
            },
            "prob5_family" | "prob5" => Prob5 {
                m: p.usize("m")?,
                c3: p.opt_f64("c3")?,
            },
            _ => {
                return Err(Error::invalid(format!(
                    "unknown inequality `{name}`; known: {}",
                    NAMES.join(", ")
                )))
            }
        };
        p.finish()?;
        Ok(id)
    }
}

impl Serialize for InequalityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InequalityId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for n in 3..=5 {
            for id in InequalityId::all(n) {
                let s = id.to_string();
                assert_eq!(s.parse::<InequalityId>().unwrap(), id, "{s}");
                id.validate(n).unwrap();
            }
        }
        let id: InequalityId = "pythagorean:m=2:u=1,2,3.5".parse().unwrap();
        assert_eq!(
            id,
            InequalityId::Pythagorean {
                m: 2,
                u: vec![1.0, 2.0, 3.5]
            }
        );
    }

    #[test]
    fn arity_errors() {
        assert!("cg_upper".parse::<InequalityId>().is_err());
        assert!("meyer:m=1".parse::<InequalityId>().is_err());
        assert!("nope".parse::<InequalityId>().is_err());
        assert!(InequalityId::MthLower { m: 2 }.validate(3).is_err());
        assert!(InequalityId::WeightedBm { a: vec![1.0; 2] }
            .validate(3)
            .is_err());
    }

    #[test]
    fn statuses() {
        let cg = |m| InequalityId::CgUpper { m };
        assert_eq!(cg(1).status(3, false), Status::Proven);
        assert_eq!(cg(2).status(4, false), Status::Conjecture);
        assert_eq!(cg(2).status(4, true), Status::Proven);
        assert_eq!(cg(3).status(4, false), Status::Proven);
        assert_eq!(
            InequalityId::ReverseCs { m: 2 }.status(4, false),
            Status::Proven
        );
        assert_eq!(
            InequalityId::ReverseCs { m: 2 }.status(5, false),
            Status::Conjecture
        );
        assert_eq!(InequalityId::HeronN3.status(3, false), Status::Conjecture);
    }
}

//! The `body/1` JSON format.
//!
//! ```json
//! {"schema": "body/1", "kind": "vpolytope", "n": 3, "vertices": [[1.0, 0.0, 0.0], ...]}
//! {"schema": "body/1", "kind": "zonotope", "n": 3, "center": [...], "generators": [[...]]}
//! {"schema": "body/1", "kind": "ball", "n": 3, "center": [...], "radius": 1.0, "collapsed": [2]}
//! {"schema": "body/1", "kind": "named", "name": "cross", "n": 3}
//! ```
//!
//! Reals may be JSON numbers or decimal strings. Output always uses numbers
//! in shortest round-trip form, so write-read-write is byte-identical.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geom::{Ball, Body, Named, VPolytope, Zonotope};

pub const BODY_SCHEMA: &str = "body/1";

/// An `f64` that deserializes from a number or a decimal string.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Real;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a decimal string")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Real, E> {
                Ok(Real(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Real, E> {
                Ok(Real(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Real, E> {
                Ok(Real(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Real, E> {
                let x: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| E::custom(format!("`{v}` is not a real")))?;
                if !x.is_finite() {
                    return Err(E::custom(format!("`{v}` is not finite")));
                }
                Ok(Real(x))
            }
        }
        d.deserialize_any(V)
    }
}

fn reals(v: &[f64]) -> Vec<Real> {
    v.iter().copied().map(Real).collect()
}

fn floats(v: &[Real]) -> Vec<f64> {
    v.iter().map(|r| r.0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum NamedKind {
    Cross,
    Cube,
    K1,
    K2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Repr {
    Vpolytope {
        n: usize,
        vertices: Vec<Vec<Real>>,
    },
    Zonotope {
        n: usize,
        center: Vec<Real>,
        generators: Vec<Vec<Real>>,
    },
    Ball {
        n: usize,
        center: Vec<Real>,
        radius: Real,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        collapsed: Vec<usize>,
    },
    Named {
        name: NamedKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        disk_vertices: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct BodyFile {
    schema: String,
    #[serde(flatten)]
    repr: Repr,
}

fn to_repr(body: &Body) -> Repr {
    match body {
        Body::Polytope(p) => Repr::Vpolytope {
            n: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| reals(v)).collect(),
        },
        Body::Zonotope(z) => Repr::Zonotope {
            n: z.ambient_dim(),
            center: reals(z.center()),
            generators: z.generators().iter().map(|g| reals(g)).collect(),
        },
        Body::Ball(b) => Repr::Ball {
            n: b.ambient_dim(),
            center: reals(b.center()),
            radius: Real(b.radius()),
            collapsed: b.collapsed().to_vec(),
        },
        Body::Named(named) => {
            let (name, n, disk_vertices) = match *named {
                Named::Cross(n) => (NamedKind::Cross, Some(n), None),
                Named::Cube(n) => (NamedKind::Cube, Some(n), None),
                Named::K1 { disk_vertices } => (NamedKind::K1, None, Some(disk_vertices)),
                Named::K2 => (NamedKind::K2, None, None),
            };
            Repr::Named {
                name,
                n,
                disk_vertices,
            }
        }
    }
}

fn check_len(what: &str, v: &[Real], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(parse_err(format!(
            "{what} has {} coordinates, expected {n}",
            v.len()
        )));
    }
    Ok(())
}

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse {
        context: BODY_SCHEMA.into(),
        message: message.into(),
    }
}

fn from_repr(r: Repr) -> Result<Body> {
    Ok(match r {
        Repr::Vpolytope { n, vertices } => {
            for v in &vertices {
                check_len("vertex", v, n)?;
            }
            if vertices.is_empty() {
                crate::geom::VPolytope::empty(n).into()
            } else {
                VPolytope::from_points_in(n, vertices.iter().map(|v| floats(v)).collect())?.into()
            }
        }
        Repr::Zonotope {
            n,
            center,
            generators,
        } => {
            check_len("center", &center, n)?;
            for g in &generators {
                check_len("generator", g, n)?;
            }
            Zonotope::new(
                floats(&center),
                generators.iter().map(|g| floats(g)).collect(),
            )?
            .into()
        }
        Repr::Ball {
            n,
            center,
            radius,
            collapsed,
        } => {
            check_len("center", &center, n)?;
            Ball::with_collapsed(floats(&center), radius.0, collapsed)?.into()
        }
        Repr::Named {
            name,
            n,
            disk_vertices,
        } => {
            let need_n = || n.ok_or_else(|| parse_err("named body needs n"));
            let named = match name {
                NamedKind::Cross => Named::Cross(need_n()?),
                NamedKind::Cube => Named::Cube(need_n()?),
                NamedKind::K1 => Named::K1 {
                    disk_vertices: disk_vertices.unwrap_or(crate::geom::K1_DEFAULT_DISK_VERTICES),
                },
                NamedKind::K2 => Named::K2,
            };
            if let Some(n) = n {
                if n != named.ambient_dim() {
                    return Err(parse_err(format!(
                        "{name:?} lives in R^{}, not R^{n}",
                        named.ambient_dim()
                    )));
                }
            }
            Body::named(named)?
        }
    })
}

/// Pretty `body/1` text with a trailing newline.
pub fn body_to_json(body: &Body) -> String {
    let file = BodyFile {
        schema: BODY_SCHEMA.into(),
        repr: to_repr(body),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("bodies serialize");
    s.push('\n');
    s
}

pub fn body_from_json(text: &str) -> Result<Body> {
    let file: BodyFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    if file.schema != BODY_SCHEMA {
        return Err(parse_err(format!("unsupported schema `{}`", file.schema)));
    }
    from_repr(file.repr)
}

/// The body as a JSON value, for embedding in other documents.
pub fn body_to_value(body: &Body) -> serde_json::Value {
    serde_json::to_value(BodyFile {
        schema: BODY_SCHEMA.into(),
        repr: to_repr(body),
    })
    .expect("bodies serialize")
}

pub fn body_from_value(v: serde_json::Value) -> Result<Body> {
    body_from_json(&v.to_string())
}

/// SHA-256 of the compact canonical `body/1` encoding, in hex.
pub fn fingerprint(body: &Body) -> String {
    let compact = serde_json::to_string(&BodyFile {
        schema: BODY_SCHEMA.into(),
        repr: to_repr(body),
    })
    .expect("bodies serialize");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

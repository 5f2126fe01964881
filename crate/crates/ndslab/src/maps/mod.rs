//! Concrete map families on the three phase spaces, with exact algebra.

pub mod lazy;
pub mod odometer;
pub mod pl;
pub mod rotation;

pub use lazy::LazyPLMap;
pub use odometer::{AddingMachineMap, Truncation};
pub use pl::{FixedPoints, PLMap, Piece, Preimage, SlopeProfile};
pub use rotation::{Exactness, RotationMap};

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::space::{Point, SpaceTag};
use crate::{Error, Result};

/// Any map the toolkit knows how to run, tagged by kind. This is also the
/// wire format used in configs and reports: rationals are exact `"p/q"`
/// strings, never decimals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    Pl { breakpoints: Vec<Rational>, values: Vec<Rational> },
    Rotation { fraction: RotationFraction },
    AddingMachine { truncation: Truncation, word_length: usize },
    LazyPl { family: String },
}

/// A rotation amount: an exact `"p/q"` string or the name of a built-in
/// irrational surrogate. (`Exact` must come first so that untagged
/// deserialization only falls back to a name when the string is not a
/// rational.)
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RotationFraction {
    Exact(Rational),
    Named(String),
}

/// Runtime map value resolved from a [`MapSpec`].
#[derive(Clone, Debug)]
pub enum Map {
    Pl(PLMap),
    Rotation(RotationMap),
    AddingMachine(AddingMachineMap),
    LazyPl(LazyPLMap),
}

impl Map {
    pub fn space(&self) -> SpaceTag {
        match self {
            Map::Pl(_) | Map::LazyPl(_) => SpaceTag::Interval,
            Map::Rotation(_) => SpaceTag::Circle,
            Map::AddingMachine(_) => SpaceTag::Cantor,
        }
    }

    /// Evaluate at a runtime-tagged point. Cantor evaluations that drop a
    /// carry at the precision boundary surface as
    /// [`Error::PrecisionSaturated`].
    pub fn evaluate(&self, x: &Point) -> Result<Point> {
        match (self, x) {
            (Map::Pl(f), Point::Interval(p)) => {
                let y = f.evaluate(p.value())?;
                Ok(Point::Interval(crate::space::IntervalPoint::new(y)?))
            }
            (Map::LazyPl(f), Point::Interval(p)) => {
                let y = f.evaluate(p.value())?;
                Ok(Point::Interval(crate::space::IntervalPoint::new(y)?))
            }
            (Map::Rotation(f), Point::Circle(p)) => Ok(Point::Circle(f.evaluate(p))),
            (Map::AddingMachine(f), Point::Cantor(w)) => {
                let step = f.evaluate(w)?;
                if step.saturated {
                    return Err(Error::PrecisionSaturated);
                }
                Ok(Point::Cantor(step.word))
            }
            _ => Err(Error::SpaceMismatch {
                expected: match self.space() {
                    SpaceTag::Interval => "interval",
                    SpaceTag::Circle => "circle",
                    SpaceTag::Cantor => "cantor",
                },
                got: match x.tag() {
                    SpaceTag::Interval => "interval",
                    SpaceTag::Circle => "circle",
                    SpaceTag::Cantor => "cantor",
                },
            }),
        }
    }

    pub fn from_spec(spec: &MapSpec) -> Result<Map> {
        match spec {
            MapSpec::Pl { breakpoints, values } => {
                Ok(Map::Pl(PLMap::new(breakpoints.clone(), values.clone())?))
            }
            MapSpec::Rotation { fraction } => Ok(Map::Rotation(resolve_rotation(fraction)?)),
            MapSpec::AddingMachine { truncation, word_length } => {
                let map = match truncation {
                    Truncation::Full => AddingMachineMap::full(),
                    Truncation::FirstN(n) => {
                        if *n > *word_length {
                            return Err(Error::Config(format!(
                                "truncation {n} exceeds word_length {word_length}"
                            )));
                        }
                        AddingMachineMap::first_n(*n)?
                    }
                };
                Ok(Map::AddingMachine(map))
            }
            MapSpec::LazyPl { family } => Ok(Map::LazyPl(resolve_lazy_family(family)?)),
        }
    }

    pub fn to_spec(&self, word_length: usize) -> MapSpec {
        match self {
            Map::Pl(f) => MapSpec::Pl {
                breakpoints: f.breakpoints().to_vec(),
                values: f.values().to_vec(),
            },
            Map::Rotation(r) => MapSpec::Rotation {
                fraction: if r.is_irrational_tagged() {
                    RotationFraction::Named("golden".into())
                } else {
                    RotationFraction::Exact(r.fraction().clone())
                },
            },
            Map::AddingMachine(f) => {
                MapSpec::AddingMachine { truncation: f.truncation(), word_length }
            }
            Map::LazyPl(f) => MapSpec::LazyPl {
                family: match f.flip_from() {
                    None => "bump_train".to_string(),
                    Some(m) => format!("bump_train:{m}"),
                },
            },
        }
    }
}

fn resolve_rotation(fraction: &RotationFraction) -> Result<RotationMap> {
    match fraction {
        RotationFraction::Exact(r) => Ok(RotationMap::new(r.clone())),
        RotationFraction::Named(name) => match name.as_str() {
            "golden" => Ok(RotationMap::golden_surrogate()),
            other => Err(Error::Config(format!(
                "unknown irrational rotation name {other:?} (known: \"golden\")"
            ))),
        },
    }
}

/// `"bump_train"` is the limit map; `"bump_train:m"` is the modified map
/// `f_m`.
fn resolve_lazy_family(family: &str) -> Result<LazyPLMap> {
    match family.split_once(':') {
        None if family == "bump_train" => Ok(LazyPLMap::bump_train()),
        Some(("bump_train", m)) => {
            let m: usize = m
                .parse()
                .map_err(|_| Error::Config(format!("bad modification index in {family:?}")))?;
            LazyPLMap::bump_train_modified(m)
        }
        _ => Err(Error::Config(format!(
            "unknown lazy family {family:?} (known: \"bump_train\", \"bump_train:m\")"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn map_spec_round_trips() {
        let specs = vec![
            MapSpec::Pl {
                breakpoints: vec![rat(0, 1), rat(1, 2), rat(1, 1)],
                values: vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            },
            MapSpec::Rotation { fraction: RotationFraction::Exact(rat(1, 8)) },
            MapSpec::Rotation { fraction: RotationFraction::Named("golden".into()) },
            MapSpec::AddingMachine { truncation: Truncation::FirstN(3), word_length: 32 },
            MapSpec::AddingMachine { truncation: Truncation::Full, word_length: 32 },
            MapSpec::LazyPl { family: "bump_train:2".into() },
        ];
        for spec in specs {
            let json = serde_json::to_string(&spec).unwrap();
            let back: MapSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
            Map::from_spec(&spec).unwrap();
        }
    }

    #[test]
    fn wire_format_matches_contract() {
        let spec = MapSpec::Rotation { fraction: RotationFraction::Exact(rat(1, 8)) };
        assert_eq!(serde_json::to_string(&spec).unwrap(), r#"{"kind":"rotation","fraction":"1/8"}"#);
        let spec = MapSpec::AddingMachine { truncation: Truncation::Full, word_length: 16 };
        assert_eq!(
            serde_json::to_string(&spec).unwrap(),
            r#"{"kind":"adding_machine","truncation":"full","word_length":16}"#
        );
        let spec: MapSpec =
            serde_json::from_str(r#"{"kind":"adding_machine","truncation":5,"word_length":16}"#)
                .unwrap();
        assert_eq!(
            spec,
            MapSpec::AddingMachine { truncation: Truncation::FirstN(5), word_length: 16 }
        );
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(Map::from_spec(&MapSpec::Rotation {
            fraction: RotationFraction::Named("pi".into())
        })
        .is_err());
        assert!(Map::from_spec(&MapSpec::LazyPl { family: "sawtooth".into() }).is_err());
        assert!(Map::from_spec(&MapSpec::AddingMachine {
            truncation: Truncation::FirstN(40),
            word_length: 32
        })
        .is_err());
    }

    #[test]
    fn evaluate_dispatch_checks_spaces() {
        let m = Map::Pl(PLMap::tent());
        let p = Point::Circle(crate::space::CirclePoint::new(rat(1, 4)));
        assert!(matches!(m.evaluate(&p), Err(Error::SpaceMismatch { .. })));
    }
}

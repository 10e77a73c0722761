//! JSON shapes for spaces, words and dilation witnesses. Scalars travel as strings.

use serde::{Deserialize, Serialize};

use crate::dser::{Factor, Generator, Word};
use crate::error::{Error, Result};
use crate::local_global::{Conjugator, DilationCase, DilationWitness, Target};
use crate::matrix::Matrix;
use crate::quad_space::{AmbientSpace, Direction, HomMatrix};
use crate::ring::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub ring: String,
    pub gram: Vec<Vec<String>>,
    pub hyperbolic_rank: usize,
}

impl SpaceJson {
    pub fn from_space(space: &AmbientSpace) -> SpaceJson {
        SpaceJson {
            ring: space.ring().to_string(),
            gram: space.phi().to_strings(),
            hyperbolic_rank: space.m(),
        }
    }

    pub fn to_space(&self) -> Result<AmbientSpace> {
        let ring = Ring::parse(&self.ring)?;
        AmbientSpace::new(&Matrix::parse(&ring, &self.gram)?, self.hyperbolic_rank)
    }
}

fn default_exp() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FactorJson {
    CoordAlpha {
        i: usize,
        j: usize,
        y: String,
        #[serde(default = "default_exp")]
        exp: i8,
    },
    CoordBetaStar {
        i: usize,
        j: usize,
        y: String,
        #[serde(default = "default_exp")]
        exp: i8,
    },
    FullAlpha {
        entries: Vec<Vec<String>>,
        #[serde(default = "default_exp")]
        exp: i8,
    },
    FullBetaStar {
        entries: Vec<Vec<String>>,
        #[serde(default = "default_exp")]
        exp: i8,
    },
    Eichler {
        u: Vec<String>,
        v: Vec<String>,
        r: String,
        #[serde(default = "default_exp")]
        exp: i8,
    },
    Bass {
        p0: Vec<String>,
        a0: String,
        w0: Vec<String>,
        #[serde(default = "default_exp")]
        exp: i8,
    },
    Matrix {
        entries: Vec<Vec<String>>,
        #[serde(default = "default_exp")]
        exp: i8,
    },
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn scalars(ring: &Ring, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|t| ring.parse_scalar(t)).collect()
}

impl FactorJson {
    pub fn from_factor(f: &Factor) -> FactorJson {
        let exp = f.exp;
        match &f.gen {
            Generator::Coord { kind, i, j, y } => {
                let (i, j, y) = (*i, *j, y.to_string());
                match kind {
                    Direction::Alpha => FactorJson::CoordAlpha { i, j, y, exp },
                    Direction::BetaStar => FactorJson::CoordBetaStar { i, j, y, exp },
                }
            }
            Generator::Full(h) => {
                let entries = h.entries.to_strings();
                match h.direction {
                    Direction::Alpha => FactorJson::FullAlpha { entries, exp },
                    Direction::BetaStar => FactorJson::FullBetaStar { entries, exp },
                }
            }
            Generator::Eichler { u, v, r } => FactorJson::Eichler {
                u: strings(u),
                v: strings(v),
                r: r.to_string(),
                exp,
            },
            Generator::Bass { p0, a0, w0 } => FactorJson::Bass {
                p0: strings(p0),
                a0: a0.to_string(),
                w0: strings(w0),
                exp,
            },
            Generator::Matrix(m) => FactorJson::Matrix {
                entries: m.to_strings(),
                exp,
            },
        }
    }

    pub fn to_factor(&self, space: &AmbientSpace) -> Result<Factor> {
        let ring = space.ring();
        let (gen, exp) = match self {
            FactorJson::CoordAlpha { i, j, y, exp } => {
                (Generator::coord(Direction::Alpha, *i, *j, ring.parse_scalar(y)?), *exp)
            }
            FactorJson::CoordBetaStar { i, j, y, exp } => {
                (Generator::coord(Direction::BetaStar, *i, *j, ring.parse_scalar(y)?), *exp)
            }
            FactorJson::FullAlpha { entries, exp } => (
                Generator::Full(HomMatrix::new(Direction::Alpha, Matrix::parse(ring, entries)?)),
                *exp,
            ),
            FactorJson::FullBetaStar { entries, exp } => (
                Generator::Full(HomMatrix::new(Direction::BetaStar, Matrix::parse(ring, entries)?)),
                *exp,
            ),
            FactorJson::Eichler { u, v, r, exp } => (
                Generator::Eichler {
                    u: scalars(ring, u)?,
                    v: scalars(ring, v)?,
                    r: ring.parse_scalar(r)?,
                },
                *exp,
            ),
            FactorJson::Bass { p0, a0, w0, exp } => (
                Generator::Bass {
                    p0: scalars(ring, p0)?,
                    a0: ring.parse_scalar(a0)?,
                    w0: scalars(ring, w0)?,
                },
                *exp,
            ),
            FactorJson::Matrix { entries, exp } => (Generator::Matrix(Matrix::parse(ring, entries)?), *exp),
        };
        if exp != 1 && exp != -1 {
            return Err(Error::Parse(format!("exp must be 1 or -1, got {exp}")));
        }
        gen.validate(space)?;
        Ok(Factor { gen, exp })
    }
}

pub fn word_to_json(w: &Word) -> Vec<FactorJson> {
    w.factors().iter().map(FactorJson::from_factor).collect()
}

pub fn word_from_json(space: &AmbientSpace, factors: &[FactorJson]) -> Result<Word> {
    let factors = factors
        .iter()
        .map(|f| f.to_factor(space))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::from_factors(space, factors))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugatorJson {
    pub kind: Direction,
    pub i: usize,
    pub j: usize,
    pub a: String,
    pub r: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetJson {
    pub kind: Direction,
    pub k: usize,
    pub l: usize,
    pub x: String,
}

/// Input of a single-generator dilation. `d` defaults to the case minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationInput {
    pub space: SpaceJson,
    pub conj: ConjugatorJson,
    pub target: TargetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
}

impl DilationInput {
    pub fn parse(&self) -> Result<(AmbientSpace, Conjugator, Target)> {
        let space = self.space.to_space()?;
        let ring = space.ring();
        let conj = Conjugator {
            kind: self.conj.kind,
            i: self.conj.i,
            j: self.conj.j,
            a: ring.parse_scalar(&self.conj.a)?,
            r: self.conj.r,
        };
        let target = Target {
            kind: self.target.kind,
            k: self.target.k,
            l: self.target.l,
            x: ring.parse_scalar(&self.target.x)?,
        };
        Ok((space, conj, target))
    }

    /// The budget to use: the given `d` or the minimum for the case.
    pub fn budget(&self) -> u32 {
        self.d.unwrap_or_else(|| {
            let case = DilationCase::classify(self.conj.kind, self.conj.i, self.target.kind, self.target.k);
            case.d_min(self.conj.r, 1)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub input: DilationInput,
    pub case: DilationCase,
    pub d: u32,
    pub word: Vec<FactorJson>,
    pub min_s_order: Option<i64>,
    pub verified: bool,
}

impl WitnessJson {
    pub fn from_witness(space: &AmbientSpace, w: &DilationWitness) -> WitnessJson {
        WitnessJson {
            input: DilationInput {
                space: SpaceJson::from_space(space),
                conj: ConjugatorJson {
                    kind: w.conj.kind,
                    i: w.conj.i,
                    j: w.conj.j,
                    a: w.conj.a.to_string(),
                    r: w.conj.r,
                },
                target: TargetJson {
                    kind: w.target.kind,
                    k: w.target.k,
                    l: w.target.l,
                    x: w.target.x.to_string(),
                },
                d: Some(w.d),
            },
            case: w.case,
            d: w.d,
            word: word_to_json(&w.word),
            min_s_order: w.min_s_order,
            verified: w.verified,
        }
    }

    /// Rebuilds the witness; the word lives over the base ring of the input space.
    pub fn to_witness(&self) -> Result<(AmbientSpace, DilationWitness)> {
        let (space, conj, target) = self.input.parse()?;
        let base = crate::local_global::base_space(&space)?;
        let word = word_from_json(&base, &self.word)?;
        Ok((
            space,
            DilationWitness {
                case: self.case,
                conj,
                target,
                d: self.d,
                word,
                min_s_order: self.min_s_order,
                verified: self.verified,
            },
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> MatrixJson {
        MatrixJson {
            ring: m.ring().to_string(),
            entries: m.to_strings(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        Matrix::parse(&Ring::parse(&self.ring)?, &self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_global::dilate_generator;

    #[test]
    fn word_round_trip() {
        let r = Ring::parse("QQ[s,x][1/s]").unwrap();
        let space = AmbientSpace::diagonal(&r, &[2, 1], 2).unwrap();
        let mut w = Word::coord(&space, Direction::Alpha, 1, 2, r.parse_scalar("s^3*x").unwrap());
        w.push_factor(Factor::new(Generator::coord(Direction::BetaStar, 2, 1, r.parse_scalar("x/s").unwrap())).inverse());
        let h = HomMatrix::new(Direction::BetaStar, Matrix::parse(&r, &[vec!["1".into(), "x".into()], vec!["0".into(), "s".into()]]).unwrap());
        w.push(Generator::Full(h));
        let text = serde_json::to_string(&word_to_json(&w)).unwrap();
        assert!(text.starts_with(r#"[{"kind":"CoordAlpha","i":1,"j":2,"y":"s^3*x","exp":1}"#), "{text}");
        let back: Vec<FactorJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(word_from_json(&space, &back).unwrap(), w);
    }

    #[test]
    fn space_round_trip() {
        let r = Ring::parse("GF(10007)[t]").unwrap();
        let sp = AmbientSpace::new(&Matrix::parse(&r, &[vec!["2".into(), "1".into()], vec!["1".into(), "1".into()]]).unwrap(), 3).unwrap();
        let j = SpaceJson::from_space(&sp);
        let text = serde_json::to_string(&j).unwrap();
        let back: SpaceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_space().unwrap(), sp);
    }

    #[test]
    fn witness_round_trip() {
        let input: DilationInput = serde_json::from_str(
            r#"{"space":{"ring":"QQ[s,x][1/s]","gram":[["2"]],"hyperbolic_rank":2},
                "conj":{"kind":"alpha","i":1,"j":1,"a":"x","r":1},
                "target":{"kind":"alpha","k":2,"l":1,"x":"1"}}"#,
        )
        .unwrap();
        let (space, c, t) = input.parse().unwrap();
        let w = dilate_generator(&space, &c, &t, input.budget()).unwrap();
        let j = WitnessJson::from_witness(&space, &w);
        let text = serde_json::to_string(&j).unwrap();
        let back: WitnessJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_witness().unwrap().1, w);
    }
}

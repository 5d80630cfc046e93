use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::{ChartId, Coord, OddGen, SuperFunction, ThetaMonomial};

use super::{parse_coord, parse_in};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<String>,
    pub num: String,
    pub den: String,
}

/// `{chart, terms: [{monomial, num, den}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub chart: u32,
    pub terms: Vec<TermJson>,
}

pub fn to_json(f: &SuperFunction) -> FunctionJson {
    let terms = f
        .terms()
        .map(|(m, c)| TermJson {
            monomial: m.gens().iter().map(ToString::to_string).collect(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect();
    FunctionJson { chart: f.chart().0, terms }
}

pub fn from_json(j: &FunctionJson) -> Result<SuperFunction> {
    let chart = ChartId(j.chart);
    let mut out = SuperFunction::zero().in_chart(chart);
    for t in &j.terms {
        let gens = t
            .monomial
            .iter()
            .map(|g| match parse_coord(g) {
                Some(Coord::Odd(g)) => Ok(g),
                _ => Err(Error::Precondition(format!("'{g}' is not an odd generator"))),
            })
            .collect::<Result<Vec<OddGen>>>()?;
        let Some((sign, mono)) = ThetaMonomial::from_product(&gens) else {
            continue;
        };
        let num = scalar_of(&t.num)?;
        let den = scalar_of(&t.den)?;
        let mut c = &num / &den;
        if sign < 0 {
            c = -c;
        }
        out = &out + &SuperFunction::from_terms([(mono, c)]).in_chart(chart);
    }
    Ok(out)
}

fn scalar_of(text: &str) -> Result<Scalar> {
    let f = parse_in(text, ChartId::default())?;
    if f.num_terms() > 1 || !f.terms().all(|(m, _)| m.is_empty()) {
        return Err(Error::Precondition(format!("'{text}' is not an even scalar")));
    }
    Ok(f.body())
}

//! Structured JSON form of motives; lossless, unlike the text form which
//! leaves symbol spaces implicit.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::laurent::HalfLaurent;
use crate::motive::{MonSymbol, Monomial, Motive};
use crate::registry::Registry;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveJson {
    pub space: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbols: Vec<SymbolJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bundle: Vec<String>,
    /// `(k, c)` pairs meaning `c · L^(k/2)`; integers are decimal strings.
    pub coeff: Vec<(i64, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub name: String,
    /// Space of the symbol; defaults to the motive's space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub power: u32,
}

fn one() -> u32 {
    1
}

fn is_one(n: &u32) -> bool {
    *n == 1
}

impl MotiveJson {
    pub fn from_motive(reg: &Registry, m: &Motive) -> Self {
        let bs = reg.bundle_space(m.space().as_str()).ok();
        let terms = m
            .terms()
            .map(|((mono, bits), c)| TermJson {
                symbols: mono
                    .factors()
                    .map(|(s, e)| SymbolJson {
                        name: s.name.to_string(),
                        space: (&s.space != m.space()).then(|| s.space.to_string()),
                        order: Some(s.order),
                        power: e,
                    })
                    .collect(),
                bundle: match bs {
                    Some(bs) => bs.names_of(*bits).into_iter().map(String::from).collect(),
                    None => bits.ones().map(|i| format!("#{i}")).collect(),
                },
                coeff: c.terms().map(|(k, v)| (k, v.to_string())).collect(),
            })
            .collect();
        MotiveJson {
            space: m.space().to_string(),
            terms,
        }
    }

    pub fn to_motive(&self, reg: &Registry) -> Result<Motive> {
        let space = reg.space_id(&self.space)?;
        let bs = reg.bundle_space(&self.space)?;
        let mut out = Motive::zero(space.clone());
        for t in &self.terms {
            let mut factors = vec![];
            for s in &t.symbols {
                let sym_space = match &s.space {
                    Some(n) => reg.space_id(n)?,
                    None => space.clone(),
                };
                let declared = match reg.symbol(&sym_space, &s.name) {
                    Ok(Some(info)) => Some(info.symbol.order),
                    Ok(None) => s.name.strip_prefix("mu_").and_then(|n| n.parse().ok()),
                    Err(_) => None,
                };
                let order = match (declared, s.order) {
                    (Some(d), Some(o)) if d != o => {
                        return Err(MotiveError::InvalidDeclaration(format!(
                            "symbol {} has order {d}, not {o}",
                            s.name
                        )))
                    }
                    (Some(d), _) => d,
                    (None, Some(o)) => o,
                    (None, None) => return Err(MotiveError::unknown("symbol", s.name.clone())),
                };
                if let Ok(Some(info)) = reg.symbol(&sym_space, &s.name) {
                    if info.cover.is_some() {
                        return Err(MotiveError::InvalidDeclaration(format!(
                            "cover {} must be given through its bundle class",
                            s.name
                        )));
                    }
                }
                if s.power == 0 {
                    return Err(MotiveError::InvalidDeclaration("symbol power 0".into()));
                }
                factors.push((MonSymbol::new(&s.name, sym_space, order), s.power));
            }
            let bits = bs.class_of(&t.bundle)?.bits;
            let mut c = HalfLaurent::zero();
            for (k, v) in &t.coeff {
                let v: BigInt = v.parse().map_err(|_| MotiveError::Parse {
                    text: v.clone(),
                    message: "not an integer".into(),
                })?;
                c.add_term(*k, &v);
            }
            let mono = Monomial::from_factors(factors);
            out = out.try_add(&Motive::term(space.clone(), mono, bits, c))?;
        }
        reg.validate_motive(&out)?;
        Ok(out)
    }
}

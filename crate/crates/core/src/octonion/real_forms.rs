//! Real forms of F4 read off from the signature of a real twisted composition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::OctonionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealFormF4 {
    Split,
    Rank1,
    #[serde(alias = "anisotropic")]
    Aniso,
}

impl fmt::Display for RealFormF4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealFormF4::Split => "split",
            RealFormF4::Rank1 => "rank1",
            RealFormF4::Aniso => "aniso",
        })
    }
}

/// Signature data of a real twisted composition (L, M, q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RealCompositionSignature {
    /// L = R×R×R, one signature per 8-dimensional factor.
    Rrr([(u32, u32); 3]),
    /// L = R×C: signature of the real factor V and complex dimension of W.
    Rc { real: (u32, u32), complex_rank: u32 },
}

impl RealCompositionSignature {
    fn validate(&self) -> Result<(), OctonionError> {
        let check = |(p, q): (u32, u32)| {
            if p + q == 8 {
                Ok(())
            } else {
                Err(OctonionError::InvalidSignature(format!("factor signature ({p},{q}) does not sum to 8")))
            }
        };
        match self {
            RealCompositionSignature::Rrr(f) => f.iter().try_for_each(|&s| check(s)),
            RealCompositionSignature::Rc { real, complex_rank } => {
                check(*real)?;
                if *complex_rank != 8 {
                    return Err(OctonionError::InvalidSignature(format!(
                        "complex factor has rank {complex_rank}, expected 8"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Signature of the norm on J(L, M): L contributes (3,0) or (2,1), a complex
/// factor of rank d contributes (d, d), real factors contribute their own.
pub fn total_signature(sig: &RealCompositionSignature) -> Result<(u32, u32), OctonionError> {
    sig.validate()?;
    Ok(match sig {
        RealCompositionSignature::Rrr(f) => f.iter().fold((3, 0), |(r, s), (p, q)| (r + p, s + q)),
        RealCompositionSignature::Rc { real, complex_rank } => (2 + real.0 + complex_rank, 1 + real.1 + complex_rank),
    })
}

fn form_of_total(t: (u32, u32)) -> Option<RealFormF4> {
    match t {
        (15, 12) => Some(RealFormF4::Split),
        (11, 16) => Some(RealFormF4::Rank1),
        (27, 0) => Some(RealFormF4::Aniso),
        _ => None,
    }
}

/// Real form of Aut(J(L, M)). For L = R×C the real factor is only determined
/// up to the sign of q, so both orientations of its signature are tried.
pub fn real_form_from_signature(sig: &RealCompositionSignature) -> Result<RealFormF4, OctonionError> {
    let total = total_signature(sig)?;
    if let Some(f) = form_of_total(total) {
        return Ok(f);
    }
    if let RealCompositionSignature::Rc { real: (p, q), complex_rank } = sig {
        let flipped = RealCompositionSignature::Rc { real: (*q, *p), complex_rank: *complex_rank };
        if let Some(f) = form_of_total(total_signature(&flipped)?) {
            return Ok(f);
        }
    }
    Err(OctonionError::UnrecognizedSignature(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use RealCompositionSignature::*;

    #[test]
    fn lemma_cases() {
        assert_eq!(real_form_from_signature(&Rrr([(4, 4); 3])), Ok(RealFormF4::Split));
        assert_eq!(real_form_from_signature(&Rrr([(8, 0); 3])), Ok(RealFormF4::Aniso));
        assert_eq!(real_form_from_signature(&Rrr([(8, 0), (0, 8), (0, 8)])), Ok(RealFormF4::Rank1));
        assert_eq!(real_form_from_signature(&Rc { real: (5, 3), complex_rank: 8 }), Ok(RealFormF4::Split));
        assert_eq!(real_form_from_signature(&Rc { real: (7, 1), complex_rank: 8 }), Ok(RealFormF4::Rank1));
        assert_eq!(real_form_from_signature(&Rc { real: (1, 7), complex_rank: 8 }), Ok(RealFormF4::Rank1));
    }

    #[test]
    fn totals() {
        assert_eq!(total_signature(&Rrr([(4, 4); 3])), Ok((15, 12)));
        assert_eq!(total_signature(&Rc { real: (5, 3), complex_rank: 8 }), Ok((15, 12)));
        assert_eq!(total_signature(&Rrr([(8, 0), (0, 8), (0, 8)])), Ok((11, 16)));
    }

    #[test]
    fn rejects() {
        assert!(matches!(
            real_form_from_signature(&Rrr([(8, 0), (8, 0), (0, 8)])),
            Err(OctonionError::UnrecognizedSignature(_))
        ));
        assert!(matches!(
            real_form_from_signature(&Rrr([(8, 1), (8, 0), (0, 8)])),
            Err(OctonionError::InvalidSignature(_))
        ));
        assert!(matches!(
            real_form_from_signature(&Rc { real: (4, 4), complex_rank: 8 }),
            Err(OctonionError::UnrecognizedSignature(_))
        ));
    }
}

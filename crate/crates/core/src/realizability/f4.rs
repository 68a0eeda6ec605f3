//! Realizability of a datum (L, E, σ, β) in a group of type F4 over Q.
//! Finite places never obstruct, so everything is decided at the real place.

use serde::Serialize;

use super::{RealFormF4, Reason, Verdict};
use crate::arith::local::Place;
use crate::error::RealizabilityError;
use crate::etale::datum::{rho_data, validate_datum, Datum, DEFAULT_PROBE_BOUND};

/// L ⊗ R.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LType {
    #[serde(rename = "R^3")]
    Rrr,
    #[serde(rename = "RxC")]
    Rc,
}

/// The real-place case table.
pub fn classification_condition(form: RealFormF4, l: LType, rho: usize) -> bool {
    match (form, l) {
        (RealFormF4::Split, LType::Rrr) => rho % 2 == 0,
        (RealFormF4::Split, LType::Rc) => rho % 2 == 1,
        (RealFormF4::Aniso, LType::Rrr) => rho == 0,
        (RealFormF4::Aniso, LType::Rc) => false,
        (RealFormF4::Rank1, LType::Rrr) => rho % 2 == 0,
        (RealFormF4::Rank1, LType::Rc) => rho == 1,
    }
}

fn condition_text(form: RealFormF4) -> &'static str {
    match form {
        RealFormF4::Split => "(i) split: L = R^3 and rho even, or L = RxC and rho odd",
        RealFormF4::Aniso => "(ii) anisotropic: L = R^3 and rho = 0",
        RealFormF4::Rank1 => "(iii) rank 1: L = R^3 and rho even, or L = RxC and rho = 1",
    }
}

#[derive(Serialize)]
struct RhoRow {
    theta: String,
    places: usize,
    rho: usize,
}

/// Local realizability of (G_v, α_v), where G_∞ has the given real form.
pub fn f4_local(form: RealFormF4, datum: &Datum, v: Place) -> Result<Verdict, RealizabilityError> {
    let rho = rho_data(datum).map_err(|e| RealizabilityError::InvalidDatum(e.to_string()))?;
    match v {
        Place::Prime(_) => Ok(Verdict::from_reasons(vec![Reason::new(
            Some(v),
            "finite place: the F4 group is split and every datum is realizable",
            true,
        )])),
        Place::Real => {
            let l = if rho.totally_real { LType::Rrr } else { LType::Rc };
            let pass = classification_condition(form, l, rho.total);
            let rows: Vec<RhoRow> = rho
                .per_theta
                .iter()
                .map(|t| RhoRow {
                    theta: format!("({}, {}]", t.theta.low, t.theta.high),
                    places: t.places.len(),
                    rho: t.rho,
                })
                .collect();
            Ok(Verdict::from_reasons(vec![Reason::new(Some(v), condition_text(form), pass)])
                .witness("real_form", &form)
                .witness("L_inf", &l)
                .witness("rho", &rho.total)
                .witness("rho_per_theta", &rows))
        }
    }
}

/// Global realizability: validity of the datum, then the real place.
pub fn f4_classify_global(datum: &Datum, form: RealFormF4) -> Result<Verdict, RealizabilityError> {
    f4_classify_global_with(datum, form, DEFAULT_PROBE_BOUND)
}

pub fn f4_classify_global_with(
    datum: &Datum,
    form: RealFormF4,
    probe_bound: u64,
) -> Result<Verdict, RealizabilityError> {
    let report = validate_datum(datum, probe_bound);
    if !report.ok() {
        let failed: Vec<String> = report
            .failures()
            .iter()
            .map(|c| format!("{} at {}: {}", c.check, c.place.map_or("Q".to_string(), |p| p.to_string()), c.detail))
            .collect();
        return Err(RealizabilityError::InvalidDatum(failed.join("; ")));
    }
    let real = f4_local(form, datum, Place::Real)?;
    let mut reasons = vec![Reason::new(None, "datum: rank and discriminant conditions", true)];
    reasons.extend(real.reasons);
    reasons.push(Reason::new(None, "finite places: the F4 group is split and every datum is realizable", true));
    let mut verdict = Verdict::from_reasons(reasons);
    verdict.witnesses = real.witnesses;
    Ok(verdict.witness("datum_report", &report).with_bound(probe_bound))
}

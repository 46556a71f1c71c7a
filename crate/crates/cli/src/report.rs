//! Report assembly. Every Dold class, period set and verdict is recomputed
//! here from the matrix being reported.

use std::collections::BTreeSet;

use algper::census::CensusReport;
use algper::lefschetz::{
    algebraic_periods, lefschetz_numbers, odd_vanishing_check, orders_lcm,
    periodic_point_certificate, PeriodGuarantee,
};
use algper::zeta::{mper_from_factorization, zeta_from_dold};
use algper::{DoldClass, Error, HomologyModel, SurfaceKind, SurfaceModel};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::json;

/// Iterate count used for the printed sequence when no cyclotomic bound
/// exists.
pub const FALLBACK_ITERATES: usize = 12;

/// A report together with whether the model turned out quasi-unipotent.
pub struct Analysis {
    pub report: Value,
    pub quasi_unipotent: bool,
}

pub fn certificates(d: &DoldClass) -> Value {
    Value::Array(
        periodic_point_certificate(d)
            .into_iter()
            .map(|g| {
                let periods = match g {
                    PeriodGuarantee::Period(n) => vec![n],
                    PeriodGuarantee::PeriodOrHalf(n) => vec![n, n / 2],
                };
                json!({
                    "n": g.n(),
                    "periods": periods,
                    "statement": g.to_string(),
                })
            })
            .collect(),
    )
}

fn form_verdicts(model: &HomologyModel) -> (Value, Value) {
    if !model.kind().is_orientable() {
        return (Value::Null, Value::Null);
    }
    let m = model.matrix();
    let sym = m.is_symplectic().map(Value::from).unwrap_or(Value::Null);
    let anti = m
        .is_antisymplectic()
        .map(Value::from)
        .unwrap_or(Value::Null);
    (sym, anti)
}

/// Full analysis of a model. `max_iter` overrides the printed sequence
/// length, which defaults to twice the lcm of the cyclotomic orders.
pub fn analyze(model: &HomologyModel, max_iter: Option<usize>) -> Analysis {
    let mut flags: Vec<String> = Vec::new();
    let orders = model.cyclotomic_orders();
    let quasi_unipotent = orders.is_ok();
    let default_len = match &orders {
        Ok(o) => 2 * orders_lcm(o) as usize,
        Err(e) => {
            flags.push(e.to_string());
            FALLBACK_ITERATES
        }
    };
    let len = max_iter.unwrap_or(default_len);
    let lefschetz = lefschetz_numbers(model, len);

    let dold = match algebraic_periods(model) {
        Ok(d) => Some(d),
        Err(Error::NotQuasiUnipotent { .. }) => None,
        Err(e) => {
            flags.push(e.to_string());
            None
        }
    };

    let (symplectic, antisymplectic) = form_verdicts(model);
    let odd_vanishing = (model.kind() == SurfaceKind::OrientableReversing).then(|| {
        odd_vanishing_check(model, len as u64)
            .unwrap_or_else(|_| lefschetz.iter().step_by(2).all(Zero::is_zero))
    });

    let mut report = Map::new();
    report.insert("kind".into(), model.kind().as_str().into());
    report.insert("genus".into(), model.genus().into());
    report.insert(
        "euler_characteristic".into(),
        json::big(&model.euler_characteristic()),
    );
    report.insert("matrix".into(), json::matrix(model.matrix()));
    report.insert("charpoly".into(), json::polynomial(model.charpoly()));
    report.insert(
        "cyclotomic_factorization".into(),
        orders
            .as_ref()
            .map(json::multiplicities)
            .unwrap_or(Value::Null),
    );
    report.insert("lefschetz".into(), json::big_list(&lefschetz));

    match &dold {
        Some(d) => {
            let ap_odd = d.odd_support();
            let mper = mper_from_factorization(&zeta_from_dold(d));
            if mper != ap_odd {
                flags.push(format!(
                    "minimal Lefschetz periods {mper:?} from the zeta function differ from odd algebraic periods {ap_odd:?}"
                ));
            }
            report.insert("dold".into(), json::dold(d));
            report.insert("algebraic_periods".into(), json::set(&d.support()));
            report.insert("ap_odd".into(), json::set(&ap_odd));
            report.insert("mper_l".into(), json::set(&mper));
            report.insert("certificates".into(), certificates(d));
        }
        None => {
            for key in [
                "dold",
                "algebraic_periods",
                "ap_odd",
                "mper_l",
                "certificates",
            ] {
                report.insert(key.into(), Value::Null);
            }
        }
    }

    report.insert(
        "verdicts".into(),
        json!({
            "quasi_unipotent": quasi_unipotent,
            "symplectic": symplectic,
            "antisymplectic": antisymplectic,
            "odd_vanishing": odd_vanishing,
        }),
    );
    report.insert("mode".into(), Value::Null);
    report.insert("target".into(), Value::Null);
    report.insert("achieved".into(), Value::Null);
    report.insert("pieces".into(), Value::Null);
    report.insert("deviation".into(), false.into());
    report.insert("flags".into(), json!(flags));
    Analysis {
        report: Value::Object(report),
        quasi_unipotent,
    }
}

fn set_text(s: &BTreeSet<u64>) -> String {
    let parts: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Report for a realization: the analysis of its model plus target,
/// achieved periods, the piece list and the deviation flag.
pub fn realization(s: &SurfaceModel) -> Value {
    let Analysis { mut report, .. } = analyze(s.model(), None);
    let obj = report
        .as_object_mut()
        .expect("analysis report is an object");
    let achieved = obj
        .get("algebraic_periods")
        .and_then(Value::as_array)
        .map(|xs| {
            xs.iter()
                .filter_map(Value::as_u64)
                .collect::<BTreeSet<u64>>()
        })
        .unwrap_or_default();
    let target = s.target().elements();
    let deviation = achieved != *target;
    if deviation {
        let flags = obj["flags"].as_array_mut().expect("flags is an array");
        flags.push(Value::from(format!(
            "achieved periods {} differ from target {}",
            set_text(&achieved),
            set_text(target)
        )));
    }
    let pieces: Vec<Value> = s
        .pieces()
        .iter()
        .map(|p| json!({"n": p.n, "tau": p.tau, "copies": p.copies}))
        .collect();
    obj.insert(
        "mode".into(),
        s.mode()
            .map(|m| Value::from(m.as_str()))
            .unwrap_or(Value::Null),
    );
    obj.insert("target".into(), json::set(target));
    obj.insert("achieved".into(), json::set(&achieved));
    obj.insert("pieces".into(), Value::Array(pieces));
    obj.insert("deviation".into(), deviation.into());
    report
}

pub fn census(r: &CensusReport) -> Value {
    let mut obj = Map::new();
    obj.insert("genus".into(), r.genus.into());
    obj.insert(
        "exact_count".into(),
        json::big(&BigInt::from(r.exact_count.clone())),
    );
    obj.insert("hr_estimate".into(), Value::from(r.hr_estimate));
    obj.insert("ratio".into(), Value::from(r.ratio));
    obj.insert(
        "correspondence".into(),
        r.correspondence
            .map(|c| Value::from(c.as_str()))
            .unwrap_or(Value::Null),
    );
    let partitions = r.sample_dold_classes.as_ref().map(|classes| {
        Value::Array(
            classes
                .iter()
                .map(|(p, d)| json!({"parts": p.parts(), "dold": json::dold(d)}))
                .collect(),
        )
    });
    obj.insert("partitions".into(), partitions.unwrap_or(Value::Null));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use algper::matrix::companion_cycle_quotient;
    use algper::realize::realize;
    use algper::{IntMatrix, ReversingMode, TargetSet};

    #[test]
    fn identity_model() {
        let model =
            HomologyModel::new_strict(SurfaceKind::OrientablePreserving, 2, IntMatrix::identity(4))
                .unwrap();
        let a = analyze(&model, None);
        assert!(a.quasi_unipotent);
        assert_eq!(a.report["dold"], json!({"1": -2}));
        assert_eq!(a.report["lefschetz"], json!([-2, -2]));
        assert_eq!(a.report["verdicts"]["symplectic"], json!(true));
        assert_eq!(a.report["verdicts"]["odd_vanishing"], Value::Null);
        assert_eq!(
            a.report["certificates"][0]["statement"],
            json!("1 ∈ Per(h)")
        );
    }

    #[test]
    fn hyperbolic_model_is_truncated() {
        let m = IntMatrix::from_rows(vec![vec![2, 1], vec![1, 1]]).unwrap();
        let model = HomologyModel::new(SurfaceKind::OrientablePreserving, 1, m).unwrap();
        let a = analyze(&model, None);
        assert!(!a.quasi_unipotent);
        assert_eq!(
            a.report["lefschetz"].as_array().unwrap().len(),
            FALLBACK_ITERATES
        );
        assert_eq!(a.report["dold"], Value::Null);
        assert_eq!(a.report["verdicts"]["quasi_unipotent"], json!(false));
        assert_eq!(a.report["flags"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn nonorientable_companion() {
        let model =
            HomologyModel::new(SurfaceKind::NonOrientable, 3, companion_cycle_quotient(3)).unwrap();
        let a = analyze(&model, None);
        assert_eq!(a.report["algebraic_periods"], json!([1, 3]));
        assert_eq!(a.report["verdicts"]["symplectic"], Value::Null);
    }

    #[test]
    fn faithful_deviation_is_flagged() {
        let s = realize(
            &"4".parse::<TargetSet>().unwrap(),
            SurfaceKind::OrientableReversing,
            ReversingMode::Faithful,
        )
        .unwrap();
        let r = realization(&s);
        assert_eq!(r["achieved"], json!([2, 4]));
        assert_eq!(r["deviation"], json!(true));
        assert_eq!(r["mode"], json!("faithful"));
        assert_eq!(r["verdicts"]["odd_vanishing"], json!(true));
        let flags = r["flags"].as_array().unwrap();
        assert!(flags.iter().any(|f| f.as_str().unwrap().contains("{2, 4}")));

        let s = realize(
            &"4".parse::<TargetSet>().unwrap(),
            SurfaceKind::OrientableReversing,
            ReversingMode::Corrected,
        )
        .unwrap();
        let r = realization(&s);
        assert_eq!(r["deviation"], json!(false));
        assert_eq!(r["flags"], json!([]));
    }
}

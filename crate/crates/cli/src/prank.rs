use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use fermat_prank::counting::{prank_general, prank_general_naive};
use fermat_prank::families::{
    closed_form, counter_feasible, counter_gamma, match_families, twisted_gamma, FamilyCurve, FamilyId,
};
use fermat_prank::oracle::{prank_oracle, DEFAULT_GENUS_CAP};
use fermat_prank::{Error, FermatContext, Method, PRankReport};

use crate::args::{CurveKind, MethodArg, PrankArgs};
use crate::output::{opt, render, OutputRecord};
use crate::{Failure, EXIT_INTERNAL, EXIT_OK};

/// Work budget for the counter when it only serves as a cross-check.
pub const CHECK_BUDGET: f64 = 2e9;

pub const HEADER: [&str; 8] = ["curve", "p", "gamma", "genus", "method", "supersingular", "agreement", "status"];

pub fn cells(r: &OutputRecord) -> Vec<String> {
    vec![
        r.curve.clone(),
        r.p.to_string(),
        opt(&r.gamma),
        opt(&r.genus),
        r.method.clone(),
        opt(&r.supersingular),
        r.agreement_cell(),
        r.status.clone(),
    ]
}

pub fn run(args: &PrankArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let mut record = evaluate(args)?;
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    render(out, args.format, &HEADER, std::slice::from_ref(&record), cells)?;
    Ok(if record.status == "ok" { EXIT_OK } else { EXIT_INTERNAL })
}

fn need<T>(x: Option<T>, flag: &str, curve: CurveKind) -> Result<T, Error> {
    x.ok_or_else(|| Error::param(format!("--{flag} is required for --curve {curve:?}").to_lowercase()))
}

pub fn evaluate(args: &PrankArgs) -> Result<OutputRecord, Error> {
    match args.curve {
        CurveKind::Fermat => {
            let m = need(args.m, "m", args.curve)?;
            let n = need(args.n, "n", args.curve)?;
            fermat_record(args.p, m, n, args.method)
        }
        CurveKind::Cn => {
            let n = need(args.n, "n", args.curve)?;
            fermat_record(args.p, 2, n, args.method)
        }
        CurveKind::Dn => {
            let n = need(args.n, "n", args.curve)?;
            let closed = |p| twisted_gamma(p, n);
            let mut rec = other_record(args.p, FamilyCurve::Twisted { n }, args.method, closed)?;
            rec.params.insert("n", n);
            rec.genus = Some((n / 2).to_string());
            Ok(rec)
        }
        CurveKind::Dgz | CurveKind::Bks => {
            let h = need(args.h, "h", args.curve)?;
            let (curve, fam) = if args.curve == CurveKind::Dgz {
                (FamilyCurve::Dgz { h }, FamilyId::Dgz { h })
            } else {
                (FamilyCurve::Bks { h }, FamilyId::Bks { h })
            };
            let closed = |p| closed_form(p, &fam).map(|r| r.gamma);
            let mut rec = other_record(args.p, curve, args.method, closed)?;
            rec.family = Some(fam.name().to_string());
            rec.params.insert("h", h as u64);
            Ok(rec)
        }
    }
}

fn set_agreement(rec: &mut OutputRecord, values: BTreeMap<String, String>) {
    let gamma = rec.gamma.clone().unwrap_or_default();
    if values.values().any(|v| *v != gamma) {
        rec.status = "MISMATCH".into();
    }
    rec.agreement = Some(values);
}

fn fermat_record(p: u64, m: u64, n: u64, method: MethodArg) -> Result<OutputRecord, Error> {
    let ctx = FermatContext::new(p, m, n)?;
    let mut rec = OutputRecord::new(FamilyCurve::Fermat { m, n }.to_string(), p);
    rec.params.insert("m", m);
    rec.params.insert("n", n);
    rec.genus = Some(ctx.genus.to_string());
    let families = if ctx.genus > 0 { match_families(p, m, n)? } else { Vec::new() };
    let report: PRankReport = match method {
        MethodArg::Auto | MethodArg::Dp => prank_general(&ctx)?,
        MethodArg::Naive => prank_general_naive(&ctx)?,
        MethodArg::Oracle => prank_oracle(&ctx)?,
        MethodArg::Closed => {
            let fam = families
                .first()
                .ok_or_else(|| Error::param(format!("no closed form known for {}", rec.curve)))?;
            rec.family = Some(fam.to_string());
            closed_form(p, fam)?
        }
    };
    rec.gamma = Some(report.gamma.to_string());
    rec.method = report.method.to_string();
    rec.supersingular = if ctx.genus > 0 {
        Some(ctx.is_supersingular()?.supersingular)
    } else {
        None
    };
    if method == MethodArg::Auto && ctx.genus > 0 {
        let mut values = BTreeMap::new();
        values.insert(Method::DigitDp.to_string(), report.gamma.to_string());
        if ctx.genus <= DEFAULT_GENUS_CAP {
            values.insert(Method::Oracle.to_string(), prank_oracle(&ctx)?.gamma.to_string());
        }
        for fam in &families {
            values.insert(format!("{}[{}]", fam.name(), fam.params()), closed_form(p, fam)?.gamma.to_string());
        }
        if let Some(fam) = families.first() {
            rec.family = Some(fam.to_string());
        }
        set_agreement(&mut rec, values);
    }
    Ok(rec)
}

fn other_record(
    p: u64,
    curve: FamilyCurve,
    method: MethodArg,
    closed: impl Fn(u64) -> Result<num_bigint::BigUint, Error>,
) -> Result<OutputRecord, Error> {
    let mut rec = OutputRecord::new(curve.to_string(), p);
    match method {
        MethodArg::Naive | MethodArg::Oracle => {
            return Err(Error::param(format!("method {method:?} is only available for y^m = x^n + 1").to_lowercase()));
        }
        MethodArg::Dp => {
            rec.gamma = Some(counter_gamma(p, curve)?.to_string());
            rec.method = Method::DigitDp.to_string();
        }
        MethodArg::Closed | MethodArg::Auto => {
            let gamma = closed(p)?;
            rec.gamma = Some(gamma.to_string());
            rec.method = Method::ClosedForm.to_string();
            if method == MethodArg::Auto {
                let mut values = BTreeMap::new();
                values.insert(Method::ClosedForm.to_string(), gamma.to_string());
                // the counter is authoritative whenever it runs
                if counter_feasible(p, curve, CHECK_BUDGET) {
                    let counted = counter_gamma(p, curve)?.to_string();
                    values.insert(Method::DigitDp.to_string(), counted.clone());
                    rec.gamma = Some(counted);
                    rec.method = Method::DigitDp.to_string();
                }
                set_agreement(&mut rec, values);
            }
        }
    }
    Ok(rec)
}

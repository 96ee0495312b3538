use std::io::Write;

use fermat_prank::families::{
    closed_form, counter_feasible, counter_gamma, family_curve, hyper_counter, hyper_delta_table,
    hyper_gamma_from_delta, twisted_even_table, DeltaItem, FamilyCurve, FamilyId, HyperShape, TwistedItem,
};
use fermat_prank::Error;
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{AlphaCases, TableArgs, TableId};
use crate::output::render;
use crate::prank::CHECK_BUDGET;
use crate::{thread_pool, Failure, EXIT_MISMATCH, EXIT_OK};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub table: u8,
    pub family: String,
    pub params: String,
    pub curve: String,
    pub closed_form: String,
    pub counter: String,
    /// `ok`, `MISMATCH` or `n/a`
    pub agreement: String,
    pub note: String,
}

pub const HEADER: [&str; 8] = ["table", "family", "params", "curve", "closed_form", "counter", "agreement", "note"];

fn cells(r: &Row) -> Vec<String> {
    vec![
        r.table.to_string(),
        r.family.clone(),
        r.params.clone(),
        r.curve.clone(),
        r.closed_form.clone(),
        r.counter.clone(),
        r.agreement.clone(),
        r.note.clone(),
    ]
}

/// A row to evaluate: a family instance, or a family with no instance at this `p`.
#[derive(Debug, Clone)]
enum Entry {
    Family(FamilyId),
    HyperItem { n: u64, item: DeltaItem },
    TwistedItem { n: u64, item: TwistedItem },
    Missing { family: String, reason: String },
}

fn na_row(table: u8, family: String, params: String, curve: String, reason: String) -> Row {
    Row {
        table,
        family,
        params,
        curve,
        closed_form: "-".into(),
        counter: "-".into(),
        agreement: "n/a".into(),
        note: reason,
    }
}

fn compare(table: u8, family: String, params: String, curve: FamilyCurve, closed: BigUint, p: u64, note: String) -> Result<Row, Error> {
    let (counter, agreement) = if counter_feasible(p, curve, CHECK_BUDGET) {
        let c = counter_gamma(p, curve)?;
        let flag = if c == closed { "ok" } else { "MISMATCH" };
        (c.to_string(), flag.to_string())
    } else {
        ("-".to_string(), "n/a".to_string())
    };
    let note = if agreement == "n/a" && note.is_empty() { "counter out of range".to_string() } else { note };
    Ok(Row {
        table,
        family,
        params,
        curve: curve.to_string(),
        closed_form: closed.to_string(),
        counter,
        agreement,
        note,
    })
}

fn evaluate(table: u8, p: u64, entry: &Entry) -> Result<Row, Error> {
    match entry {
        Entry::Missing { family, reason } => Ok(na_row(table, family.clone(), String::new(), String::new(), reason.clone())),
        Entry::Family(fam) => {
            let curve = match family_curve(p, fam) {
                Ok(c) => c,
                Err(Error::NotApplicable { condition, .. }) => {
                    return Ok(na_row(table, fam.name().into(), fam.params(), String::new(), format!("needs {condition}")));
                }
                Err(Error::Range(reason)) => {
                    return Ok(na_row(table, fam.name().into(), fam.params(), String::new(), reason));
                }
                Err(e) => return Err(e),
            };
            let closed = closed_form(p, fam)?.gamma;
            compare(table, fam.name().into(), fam.params(), curve, closed, p, String::new())
        }
        Entry::HyperItem { n, item } => {
            let t = hyper_delta_table(p, *n)?;
            let value = item_value(&t.items, item)?;
            let closed = hyper_gamma_from_delta(p, *n, t.h, &value)?;
            let counted = hyper_counter(p, *n)?;
            let flag = if counted == closed { "ok" } else { "MISMATCH" };
            Ok(Row {
                table,
                family: "hyper-delta".into(),
                params: format!("n={n} alpha={}", t.alpha),
                curve: FamilyCurve::Fermat { m: 2, n: *n }.to_string(),
                closed_form: closed.to_string(),
                counter: counted.to_string(),
                agreement: flag.into(),
                note: format!("{}; delta={value}", item.hypothesis()),
            })
        }
        Entry::TwistedItem { n, item } => {
            let t = twisted_even_table(p, *n)?;
            let value = item_value(&t.items, item)?;
            let closed = hyper_gamma_from_delta(p, *n, t.h, &value)?;
            let curve = FamilyCurve::Twisted { n: *n };
            let note = format!("{}; delta={value}", item.hypothesis());
            compare(table, "twisted-even".into(), format!("n={n} alpha={}", t.alpha), curve, closed, p, note)
        }
    }
}

fn item_value<I: PartialEq + Copy>(items: &[(I, BigInt)], item: &I) -> Result<BigInt, Error> {
    items
        .iter()
        .find(|(i, _)| i == item)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::internal("table item vanished between search and evaluation"))
}

fn smallest_half_q(p: u64) -> u32 {
    if p == 3 {
        2
    } else {
        1
    }
}

fn entries(args: &TableArgs) -> Result<Vec<Entry>, Error> {
    let p = args.p;
    let fam = Entry::Family;
    let out = match args.table {
        TableId::FermatFamilies => vec![
            fam(FamilyId::DivisorsOfPMinusPlusOne { m: p.saturating_sub(1), n: p + 1 }),
            fam(FamilyId::ByQMinusOne { m: p + 1, h: 2 }),
            fam(FamilyId::CubicNormSquare),
            fam(FamilyId::CubicNormByCubeMinusOne),
            fam(FamilyId::HalfSquare { h: smallest_half_q(p) }),
            fam(FamilyId::HalfByQMinusOne { h: smallest_half_q(p) }),
            fam(FamilyId::PowersMinusOne { a: 1, b: 2 }),
            fam(FamilyId::PlusMinusEven { a: 1, b: 2 }),
            fam(FamilyId::PlusMinusOdd { a: 1, b: 1 }),
        ],
        TableId::ZeroFamilies => vec![
            fam(FamilyId::Char2CoprimeOrders { m: 3, n: 7, u: 2, v: 3 }),
            fam(FamilyId::PlusOneDivisors { m: p + 1, n: p * p + 1, u: 1, v: 2 }),
            fam(FamilyId::Char2PlusMinus { m: 3, n: 7, u: 1, v: 3 }),
        ],
        TableId::HyperFamilies => args
            .r
            .iter()
            .flat_map(|r| HyperShape::ALL.into_iter().map(move |shape| fam(FamilyId::Hyper { shape, r: r as u32 })))
            .collect(),
        TableId::HyperDelta => {
            let mut found: Vec<Vec<Entry>> = vec![Vec::new(); DeltaItem::ALL.len()];
            if p != 2 {
                for n in (3..=args.max_n).filter(|n| n % p != 0) {
                    let t = hyper_delta_table(p, n)?;
                    for (k, item) in DeltaItem::ALL.into_iter().enumerate() {
                        let wanted = args.alpha_cases == AlphaCases::All || found[k].is_empty();
                        if wanted && t.items.iter().any(|(i, _)| *i == item) {
                            found[k].push(Entry::HyperItem { n, item });
                        }
                    }
                }
            }
            let mut out = Vec::new();
            for (item, rows) in DeltaItem::ALL.into_iter().zip(found) {
                if rows.is_empty() {
                    out.push(missing("hyper-delta", item.hypothesis(), p, args.max_n));
                }
                out.extend(rows);
            }
            out
        }
        TableId::TwistedDelta => {
            let mut found: Vec<Vec<Entry>> = vec![Vec::new(); TwistedItem::ALL.len()];
            if p != 2 {
                for n in (2..=args.max_n).step_by(2).filter(|n| n % p != 0) {
                    let t = twisted_even_table(p, n)?;
                    for (k, item) in TwistedItem::ALL.into_iter().enumerate() {
                        let wanted = args.alpha_cases == AlphaCases::All || found[k].is_empty();
                        if wanted && t.items.iter().any(|(i, _)| *i == item) {
                            found[k].push(Entry::TwistedItem { n, item });
                        }
                    }
                }
            }
            let mut out = Vec::new();
            for (item, rows) in TwistedItem::ALL.into_iter().zip(found) {
                if rows.is_empty() {
                    out.push(missing("twisted-even", item.hypothesis(), p, args.max_n));
                }
                out.extend(rows);
            }
            out
        }
    };
    Ok(out)
}

fn missing(family: &str, hypothesis: &str, p: u64, max_n: u64) -> Entry {
    let reason = if p == 2 {
        format!("{hypothesis}: needs p odd")
    } else {
        format!("{hypothesis}: no n <= {max_n} at p={p}")
    };
    Entry::Missing {
        family: family.into(),
        reason,
    }
}

/// Rows of one table at the given parameters, in a fixed order.
pub fn rows(args: &TableArgs) -> Result<Vec<Row>, Failure> {
    fermat_prank::arith::ensure_prime(args.p)?;
    let list = entries(args)?;
    let number = args.table.number();
    let pool = thread_pool(args.jobs)?;
    let rows: Result<Vec<Row>, Error> = pool.install(|| list.par_iter().map(|e| evaluate(number, args.p, e)).collect());
    Ok(rows?)
}

pub fn run(args: &TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows = rows(args)?;
    render(out, args.format, &HEADER, &rows, cells)?;
    let mismatch = rows.iter().any(|r| r.agreement == "MISMATCH");
    Ok(if mismatch { EXIT_MISMATCH } else { EXIT_OK })
}

use std::io::Write;
use std::time::Instant;

use fermat_prank::counting::prank_general;
use fermat_prank::families::FamilyCurve;
use fermat_prank::FermatContext;
use rayon::prelude::*;

use crate::args::SweepArgs;
use crate::output::{opt, render, OutputRecord};
use crate::{thread_pool, Failure, EXIT_OK};

pub const HEADER: [&str; 5] = ["p", "m", "n", "genus", "gamma"];

fn cells(r: &OutputRecord) -> Vec<String> {
    let gamma = match &r.error {
        Some(e) => format!("error: {e}"),
        None => opt(&r.gamma),
    };
    vec![
        r.p.to_string(),
        r.params["m"].to_string(),
        r.params["n"].to_string(),
        opt(&r.genus),
        gamma,
    ]
}

pub fn record(p: u64, m: u64, n: u64) -> OutputRecord {
    let start = Instant::now();
    let mut rec = OutputRecord::new(FamilyCurve::Fermat { m, n }.to_string(), p);
    rec.params.insert("m", m);
    rec.params.insert("n", n);
    let result = FermatContext::new(p, m, n).and_then(|ctx| {
        let report = prank_general(&ctx)?;
        Ok((ctx.genus, report))
    });
    match result {
        Ok((genus, report)) => {
            rec.genus = Some(genus.to_string());
            rec.gamma = Some(report.gamma.to_string());
            rec.method = report.method.to_string();
            rec.supersingular = report.supersingular;
        }
        Err(e) => {
            rec.status = "error".into();
            rec.error = Some(e.to_string());
        }
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    rec
}

pub fn run(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let grid: Vec<(u64, u64, u64)> = args
        .p_list
        .iter()
        .flat_map(|&p| args.m_range.iter().flat_map(move |m| args.n_range.iter().map(move |n| (p, m, n))))
        .collect();
    let pool = thread_pool(args.jobs)?;
    let records: Vec<OutputRecord> = pool.install(|| grid.par_iter().map(|&(p, m, n)| record(p, m, n)).collect());
    render(out, args.format, &HEADER, &records, cells)?;
    Ok(EXIT_OK)
}

use std::io::Write;

use fermat_prank::counting::prank_general;
use fermat_prank::families::FamilyCurve;
use fermat_prank::FermatContext;
use serde::Serialize;

use crate::args::ClassifyArgs;
use crate::output::{opt, render};
use crate::{Failure, EXIT_OK};

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub curve: String,
    pub p: u64,
    pub genus: String,
    /// `None` for rational curves
    pub supersingular: Option<bool>,
    /// smallest `k` with `p^k = -1` modulo both exponents
    pub witness: Option<u64>,
    /// verdict of the closed criterion, when the exponents have one of its shapes
    pub special_form: Option<bool>,
    pub gamma: String,
}

pub const HEADER: [&str; 7] = ["curve", "p", "genus", "supersingular", "witness", "special_form", "gamma"];

pub fn classify(p: u64, m: u64, n: u64) -> Result<Classification, fermat_prank::Error> {
    let ctx = FermatContext::new(p, m, n)?;
    let gamma = prank_general(&ctx)?.gamma;
    let (supersingular, witness) = if ctx.genus == 0 {
        (None, None)
    } else {
        let s = ctx.is_supersingular()?;
        (Some(s.supersingular), s.witness)
    };
    let special_form = ctx.supersingular_special();
    if let (Some(a), Some(b)) = (special_form, supersingular) {
        if a != b {
            return Err(fermat_prank::Error::internal(format!(
                "closed criterion says {a}, search says {b} for p={p} m={m} n={n}"
            )));
        }
    }
    Ok(Classification {
        curve: FamilyCurve::Fermat { m, n }.to_string(),
        p,
        genus: ctx.genus.to_string(),
        supersingular,
        witness,
        special_form,
        gamma: gamma.to_string(),
    })
}

pub fn run(args: &ClassifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let c = classify(args.p, args.m, args.n)?;
    render(out, args.format, &HEADER, std::slice::from_ref(&c), |c| {
        vec![
            c.curve.clone(),
            c.p.to_string(),
            c.genus.clone(),
            opt(&c.supersingular),
            opt(&c.witness),
            opt(&c.special_form),
            c.gamma.clone(),
        ]
    })?;
    Ok(EXIT_OK)
}

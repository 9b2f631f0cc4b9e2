//! One-shot command line driver: parse a curve, run the pipeline, verify
//! against enumeration on request, and emit a text or JSON report.
//!
//! Exit codes: 0 success, 2 parse or validation failure, 3 precision
//! failure, 4 verification disagreement, 5 enumeration budget exceeded.

mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use hyperzeta::{
    assemble_zeta, plan_with_overrides, verify_counts, BasisKind, Error, LiftedCurve,
    VerifyReport, DEFAULT_BUDGET,
};

use input::{JobConfig, RawArgs};
use report::Report;

fn main() -> ExitCode {
    let args = RawArgs::parse();
    let job = match JobConfig::resolve(args) {
        Ok(job) => job,
        Err(e) => return fail(&e),
    };
    match run(&job) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {}", e);
    ExitCode::from(exit_class(e))
}

fn exit_class(e: &Error) -> u8 {
    match e {
        Error::GuardExhausted { .. }
        | Error::LiftAmbiguous { .. }
        | Error::NotRational { .. }
        | Error::NotUnit
        | Error::NonUnitLeading
        | Error::PrecisionOutOfRange { .. } => 3,
        Error::BudgetExceeded { .. } => 5,
        _ => 2,
    }
}

fn run(job: &JobConfig) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let genus = job.spec.genus()? as u32;
    let plan = plan_with_overrides(
        genus,
        job.spec.p,
        job.spec.n,
        job.precision,
        job.guard,
        job.trunc,
    )?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.threads.unwrap_or(0))
        .build()
        .expect("thread pool construction");

    let (curve, result) = pool.install(|| -> Result<_, Error> {
        let curve = LiftedCurve::validate(&job.spec, Some(plan))?;
        let result = assemble_zeta(&curve, job.basis)?;
        Ok((curve, result))
    })?;

    let verify: Option<VerifyReport> = if job.verify_depth > 0 {
        let modulus: Vec<u64> =
            curve.zq().modulus_coeffs().iter().map(|&x| x % job.spec.p).collect();
        Some(pool.install(|| {
            verify_counts(&job.spec, &modulus, &result.numerator, job.verify_depth, DEFAULT_BUDGET)
        }))
    } else {
        None
    };

    let report = Report::build(&curve, &result, verify.as_ref(), started.elapsed());
    match job.format {
        input::Format::Text => print!("{}", report.to_text()),
        input::Format::JsonLike => println!("{}", report.to_json()),
    }

    if let Some(v) = &verify {
        if !v.all_checked_agree() {
            eprintln!("error: verification disagreed with the enumeration oracle");
            return Ok(ExitCode::from(4));
        }
        if v.any_budget_exceeded() {
            eprintln!("error: verification depth exceeds the enumeration budget");
            return Ok(ExitCode::from(5));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisArg {
    Y1,
    Y3,
}

impl From<BasisArg> for BasisKind {
    fn from(b: BasisArg) -> BasisKind {
        match b {
            BasisArg::Y1 => BasisKind::YPowerOne,
            BasisArg::Y3 => BasisKind::YPowerThree,
        }
    }
}

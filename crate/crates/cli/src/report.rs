//! Report assembly. The JSON object and the text table carry the same
//! fields; everything under `telemetry` varies run to run, the rest is
//! byte-stable for a fixed input and version.

use std::fmt::Write as _;
use std::time::Duration;

use hyperzeta::{BasisKind, LiftedCurve, VerifyReport, ZetaResult};
use serde::Serialize;



#[derive(Serialize)]
pub struct Report {
    input: InputEcho,
    plan: PlanEcho,
    result: ResultEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyEcho>,
    telemetry: Telemetry,
}

#[derive(Serialize)]
struct InputEcho {
    p: u64,
    n: usize,
    genus: usize,
    /// Extension modulus actually used, constant first, reduced mod p.
    modulus: Vec<u64>,
    /// Coefficients of the lifted polynomial: the digits in [0, p) shared
    /// by P over F_q and its lift.
    curve: Vec<Vec<u64>>,
    basis: &'static str,
}

#[derive(Serialize)]
struct PlanEcho {
    target_digits: u32,
    guard: u32,
    scale: u32,
    working_digits: u32,
    series_truncation: u32,
}

#[derive(Serialize)]
struct ResultEcho {
    numerator: Vec<i128>,
    group_order: i128,
    counts: Vec<i128>,
    guard_digits_used: u32,
}

#[derive(Serialize)]
struct VerifyEcho {
    entries: Vec<VerifyEntryEcho>,
    all_agree: bool,
    budget_exceeded: bool,
}

#[derive(Serialize)]
struct VerifyEntryEcho {
    extension: u32,
    from_numerator: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<u128>,
    status: &'static str,
}

#[derive(Serialize)]
struct Telemetry {
    wall_ms: f64,
    matrix_ms: f64,
    charpoly_ms: f64,
    lift_ms: f64,
    peak_rss_bytes: u64,
}

impl Report {
    pub fn build(

        curve: &LiftedCurve,
        result: &ZetaResult,
        verify: Option<&VerifyReport>,
        wall: Duration,
    ) -> Report {
        let zq = curve.zq();
        let p = zq.p();
        let modulus: Vec<u64> = zq.modulus_coeffs().iter().map(|&x| x % p).collect();
        let curve_digits: Vec<Vec<u64>> = curve
            .ptilde()
            .coeffs()
            .iter()
            .map(|c| c.coeffs().to_vec())
            .collect();
        let plan = &result.plan;
        Report {
            input: InputEcho {
                p,
                n: zq.extension_degree(),
                genus: curve.genus(),
                modulus,
                curve: curve_digits,
                basis: match result.basis {
                    BasisKind::YPowerOne => "y1",
                    BasisKind::YPowerThree => "y3",
                },
            },
            plan: PlanEcho {
                target_digits: plan.target_digits,
                guard: plan.guard,
                scale: plan.scale,
                working_digits: plan.working_digits,
                series_truncation: plan.series_trunc,
            },
            result: ResultEcho {
                numerator: result.numerator.clone(),
                group_order: result.group_order,
                counts: result.counts.clone(),
                guard_digits_used: result.shift_used,
            },
            verify: verify.map(|v| VerifyEcho {
                entries: v
                    .entries
                    .iter()
                    .map(|e| VerifyEntryEcho {
                        extension: e.extension,
                        from_numerator: e.from_numerator,
                        oracle: e.oracle,
                        status: match e.agree {
                            Some(true) => "agree",
                            Some(false) => "disagree",
                            None => "budget-exceeded",
                        },
                    })
                    .collect(),
                all_agree: v.all_checked_agree(),
                budget_exceeded: v.any_budget_exceeded(),
            }),
            telemetry: Telemetry {
                wall_ms: wall.as_secs_f64() * 1e3,
                matrix_ms: result.timings.matrix_us as f64 / 1e3,
                charpoly_ms: result.timings.charpoly_us as f64 / 1e3,
                lift_ms: result.timings.lift_us as f64 / 1e3,
                peak_rss_bytes: peak_rss_bytes(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let q_desc = if self.input.n == 1 {
            format!("F_{}", self.input.p)
        } else {
            format!("F_{}^{}", self.input.p, self.input.n)
        };
        let _ = writeln!(out, "curve        y^2 = P(x) over {}, genus {}", q_desc, self.input.genus);
        let _ = writeln!(out, "p, n         {}, {}", self.input.p, self.input.n);
        let _ = writeln!(out, "modulus      {}", join_u64(&self.input.modulus));
        let polys: Vec<String> = self.input.curve.iter().map(|c| join_u64(c)).collect();
        let _ = writeln!(out, "P digits     [{}]", polys.join("], ["));
        let _ = writeln!(
            out,
            "precision    N={} guard={} scale={} (Nw={}), series K={}, basis {}",
            self.plan.target_digits,
            self.plan.guard,
            self.plan.scale,
            self.plan.working_digits,
            self.plan.series_truncation,
            self.input.basis
        );
        let q_terms: Vec<String> = self
            .result
            .numerator
            .iter()
            .enumerate()
            .map(|(i, a)| match i {
                0 => format!("{}", a),
                1 => format!("{} t", a),
                _ => format!("{} t^{}", a, i),
            })
            .collect();
        let _ = writeln!(out, "Q(t)         {}", q_terms.join(" + "));
        let _ = writeln!(out, "group order  {}", self.result.group_order);
        let counts: Vec<String> = self
            .result
            .counts
            .iter()
            .enumerate()
            .map(|(i, c)| format!("m={}: {}", i + 1, c))
            .collect();
        let _ = writeln!(out, "counts       {}", counts.join("   "));
        let _ = writeln!(out, "guard used   {}", self.result.guard_digits_used);
        if let Some(v) = &self.verify {
            let entries: Vec<String> = v
                .entries
                .iter()
                .map(|e| match e.oracle {
                    Some(o) => format!("m={} {} (oracle {})", e.extension, e.status, o),
                    None => format!("m={} {}", e.extension, e.status),
                })
                .collect();
            let _ = writeln!(out, "verify       {}", entries.join("   "));
        }
        let _ = writeln!(
            out,
            "timing       wall {:.1} ms (matrix {:.1}, charpoly {:.1}, lift {:.1})",
            self.telemetry.wall_ms,
            self.telemetry.matrix_ms,
            self.telemetry.charpoly_ms,
            self.telemetry.lift_ms
        );
        let _ = writeln!(out, "peak rss     {} bytes", self.telemetry.peak_rss_bytes);
        out
    }
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Peak-memory estimate from /proc/self/status: the high-water mark when
/// the kernel reports one, otherwise the resident size at report time
/// (sampled right after the computation), zero when neither is available.
fn peak_rss_bytes() -> u64 {
    let Ok(text) = std::fs::read_to_string("/proc/self/status") else {
        return 0;
    };
    let field = |key: &str| -> Option<u64> {
        text.lines().find_map(|line| {
            line.strip_prefix(key)
                .and_then(|rest| rest.trim().trim_end_matches("kB").trim().parse::<u64>().ok())
        })
    };
    field("VmHWM:").or_else(|| field("VmRSS:")).unwrap_or(0) * 1024
}

